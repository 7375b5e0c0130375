//! The `qpot` command line front end.
//!
//! Subcommands:
//!
//! * `static`: static quasi-potential of a density profile, with minimizer data;
//! * `path`:   optimal relaxation path into a target profile;
//! * `relax`:  relaxation-time bound vs. the measured settling time;
//! * `action`: action breakdown of a stored space-time field;
//! * `verify`: the acceptance suites.
//!
//! Models travel as JSON descriptors (see [`ModelDescriptor`]), profiles and
//! space-time fields as `t,x,rho` CSV. A profile file is a field with a single
//! time block; when a file holds several blocks the last one is used. Worker
//! threads come from `--threads`, falling back to the `QPOT_THREADS`
//! environment variable.

pub mod suites;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::action::{entropy_production, sampler_bound, total_action};
use crate::fields::{Profile, SpaceTimeField};
use crate::model::{BoundarySpec, Model, ModelDescriptor, Phase};
use crate::paths::{
    build_path, default_horizon, relaxation_time_bound, time_to_stationarity, PathOptions,
    Snapshots,
};
use crate::statics::quasi_potential_static;
use crate::tol;

/// Errors surfaced to the shell. Input problems exit with 2, failed
/// verification with 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

fn input(context: impl std::fmt::Display, err: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{context}: {err}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "qpot",
    version,
    about = "Quasi-potentials and optimal relaxation paths for driven lattice gases"
)]
pub struct Cli {
    /// Worker threads (overrides QPOT_THREADS; defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the static quasi-potential of a density profile.
    Static(StaticArgs),
    /// Build the optimal relaxation path into a target profile.
    Path(PathArgs),
    /// Compare the relaxation-time bound with the measured settling time.
    Relax(RelaxArgs),
    /// Split a stored space-time field into its action contributions.
    Action(ActionArgs),
    /// Run acceptance suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct StaticArgs {
    /// Model descriptor (JSON).
    #[arg(long)]
    pub model: PathBuf,
    /// Density profile (CSV `t,x,rho`).
    #[arg(long)]
    pub profile: PathBuf,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    /// Model descriptor (JSON).
    #[arg(long)]
    pub model: PathBuf,
    /// Target profile (CSV `t,x,rho`).
    #[arg(long)]
    pub target: PathBuf,
    /// Output path field (CSV).
    #[arg(long)]
    pub out: PathBuf,
    /// Also store the auxiliary (reversed) evolution.
    #[arg(long)]
    pub aux: Option<PathBuf>,
    /// Evolution horizon; defaults to a phase-dependent bound.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Jump position for coexistence targets.
    #[arg(long)]
    pub anchor: Option<f64>,
    /// Courant number.
    #[arg(long, default_value_t = tol::CFL)]
    pub cfl: f64,
    /// Keep about this many time slices instead of every step.
    #[arg(long)]
    pub snapshots: Option<usize>,
    /// Render the path as an SVG heat map.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// One output per optimal jump position, suffixed `-y<position>`.
    #[arg(long)]
    pub enumerate_y: bool,
}

#[derive(Debug, Args)]
pub struct RelaxArgs {
    /// Model descriptor (JSON).
    #[arg(long)]
    pub model: PathBuf,
    /// Initial profile (CSV `t,x,rho`).
    #[arg(long)]
    pub initial: Option<PathBuf>,
    /// Draw a seeded random initial profile instead of reading one.
    #[arg(long)]
    pub random_seed: Option<u64>,
    /// Cell count for random initial profiles.
    #[arg(long, default_value_t = 200)]
    pub cells: usize,
    /// Evolution horizon; defaults to 1.5x the bound when one exists.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Courant number.
    #[arg(long, default_value_t = tol::CFL)]
    pub cfl: f64,
    /// L1 distance to the stationary profile that counts as settled.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    /// Model descriptor (JSON).
    #[arg(long)]
    pub model: PathBuf,
    /// Space-time field (CSV `t,x,rho`).
    #[arg(long)]
    pub field: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run a single suite by name.
    #[arg(long)]
    pub suite: Option<String>,
    /// List suite names and exit.
    #[arg(long)]
    pub list: bool,
}

/// Run a parsed invocation. `Ok(Some(text))` is the payload for stdout;
/// `verify` prints progressively and returns `None`.
pub fn run(cli: &Cli) -> Result<Option<String>, CliError> {
    init_threads(cli.threads);
    match &cli.command {
        Command::Static(args) => cmd_static(args),
        Command::Path(args) => cmd_path(args),
        Command::Relax(args) => cmd_relax(args),
        Command::Action(args) => cmd_action(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn thread_request(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("QPOT_THREADS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
    .filter(|&n| n > 0)
}

/// Size the global worker pool: an explicit count wins, then `QPOT_THREADS`,
/// then one thread per core. Only the first call in a process takes effect.
pub fn init_threads(flag: Option<usize>) {
    if let Some(n) = thread_request(flag) {
        // a second init in the same process keeps the first pool; fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn load_model(path: &Path) -> Result<(Model, BoundarySpec), CliError> {
    let text = fs::read_to_string(path).map_err(|e| input(path.display(), e))?;
    Model::from_json(&text).map_err(|e| input(path.display(), e))
}

fn load_field(path: &Path) -> Result<SpaceTimeField, CliError> {
    let file = fs::File::open(path).map_err(|e| input(path.display(), e))?;
    SpaceTimeField::read_csv(io::BufReader::new(file)).map_err(|e| input(path.display(), e))
}

fn load_profile(path: &Path) -> Result<Profile, CliError> {
    Ok(load_field(path)?.last().clone())
}

fn store_field(path: &Path, field: &SpaceTimeField) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|e| input(path.display(), e))?;
    field
        .write_csv(io::BufWriter::new(file))
        .map_err(|e| input(path.display(), e))
}

fn phase_name(phase: Phase) -> &'static str {
    match phase {
        Phase::LowDensity => "low-density",
        Phase::HighDensity => "high-density",
        Phase::MaximalCurrent => "maximal-current",
        Phase::Coexistence => "coexistence",
    }
}

fn to_pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

fn cmd_static(args: &StaticArgs) -> Result<Option<String>, CliError> {
    let (model, spec) = load_model(&args.model)?;
    let profile = load_profile(&args.profile)?;
    let result =
        quasi_potential_static(&model, &spec, &profile).map_err(|e| input("static value", e))?;
    let payload = json!({
        "value": result.value,
        "phase": phase_name(spec.phase),
        "rho_l": spec.rho_l,
        "rho_r": spec.rho_r,
        "shock_positions": result.shock_positions.as_ref().map(|m| &m.intervals),
        "representatives": result.shock_positions.as_ref().map(|m| m.representatives()),
        "envelope": result.envelope.as_ref().map(|e| e.values()),
    });
    Ok(Some(to_pretty(&payload)))
}

fn check_cfl(cfl: f64) -> Result<(), CliError> {
    if cfl > 0.0 && cfl <= 1.0 {
        Ok(())
    } else {
        Err(CliError::Input(format!("--cfl {cfl} not in (0, 1]")))
    }
}

fn path_options(
    args: &PathArgs,
    model: &Model,
    spec: &BoundarySpec,
    target: &Profile,
) -> Result<PathOptions, CliError> {
    check_cfl(args.cfl)?;
    let mut opts = PathOptions {
        cfl: args.cfl,
        horizon: args.horizon,
        shock_anchor: args.anchor,
        snapshots: Snapshots::EveryStep,
    };
    if let Some(k) = args.snapshots {
        let k = k.max(2);
        let horizon = match args.horizon {
            Some(t) => t,
            None => default_horizon(model, spec, target, &opts)
                .map_err(|e| input("path construction", e))?,
        };
        let times = (0..k)
            .map(|i| horizon * i as f64 / (k - 1) as f64)
            .collect();
        opts.snapshots = Snapshots::Times(times);
    }
    Ok(opts)
}

fn suffixed(path: &Path, y: f64) -> PathBuf {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("path");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}-y{y:.4}.{ext}"))
}

fn cmd_path(args: &PathArgs) -> Result<Option<String>, CliError> {
    let (model, spec) = load_model(&args.model)?;
    let target = load_profile(&args.target)?;
    let opts = path_options(args, &model, &spec, &target)?;

    let anchors: Vec<Option<f64>> = if args.enumerate_y {
        let result = quasi_potential_static(&model, &spec, &target)
            .map_err(|e| input("static value", e))?;
        let minimizers = result.shock_positions.ok_or_else(|| {
            CliError::Input("--enumerate-y needs boundary data with rho_l < rho_r".into())
        })?;
        minimizers.representatives().into_iter().map(Some).collect()
    } else {
        vec![args.anchor]
    };

    let mut written = Vec::new();
    let mut summary = json!(null);
    for anchor in anchors {
        let opts = PathOptions {
            shock_anchor: anchor,
            ..opts.clone()
        };
        let result =
            build_path(&model, &spec, &target, &opts).map_err(|e| input("path construction", e))?;
        let out = match (args.enumerate_y, result.anchor) {
            (true, Some(y)) => suffixed(&args.out, y),
            _ => args.out.clone(),
        };
        store_field(&out, &result.path)?;
        if let Some(aux) = &args.aux {
            let aux = match (args.enumerate_y, result.anchor) {
                (true, Some(y)) => suffixed(aux, y),
                _ => aux.clone(),
            };
            store_field(&aux, &result.auxiliary)?;
        }
        if let Some(plot) = &args.plot {
            let plot = match (args.enumerate_y, result.anchor) {
                (true, Some(y)) => suffixed(plot, y),
                _ => plot.clone(),
            };
            let svg = render_heatmap(&result.path, model.capacity());
            fs::write(&plot, svg).map_err(|e| input(plot.display(), e))?;
        }
        summary = json!({
            "horizon": result.horizon,
            "theta": result.theta.is_finite().then_some(result.theta),
            "anchor": result.anchor,
            "snapshots": result.path.n_times(),
            "cells": result.path.n_cells(),
        });
        written.push(out.display().to_string());
    }
    let payload = json!({ "written": written, "last": summary });
    Ok(Some(to_pretty(&payload)))
}

fn random_profile(model: &Model, seed: u64, cells: usize) -> Result<Profile, CliError> {
    if cells < 3 {
        return Err(CliError::Input(format!("--cells {cells} too small")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = model.capacity();
    let values = (0..cells)
        .map(|_| cap * rng.gen_range(0.02..0.98))
        .collect();
    Ok(Profile::from_values(values).expect("cells checked nonzero"))
}

fn cmd_relax(args: &RelaxArgs) -> Result<Option<String>, CliError> {
    check_cfl(args.cfl)?;
    let (model, spec) = load_model(&args.model)?;
    let initial = match (&args.initial, args.random_seed) {
        (Some(path), None) => load_profile(path)?,
        (None, Some(seed)) => random_profile(&model, seed, args.cells)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "give either --initial or --random-seed, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Input(
                "an initial profile is required (--initial or --random-seed)".into(),
            ))
        }
    };
    let bound = relaxation_time_bound(&model, &spec, &initial);
    let horizon = args
        .horizon
        .or(bound.map(|b| 1.5 * b))
        .unwrap_or(16.0 / model.flux().max_abs_speed());
    let measured = time_to_stationarity(&model, &spec, &initial, horizon, args.cfl, args.tol)
        .map_err(|e| input("evolution", e))?;
    let payload = json!({
        "phase": phase_name(spec.phase),
        "bound": bound,
        "measured": measured,
        "horizon": horizon,
        "tol": args.tol,
    });
    Ok(Some(to_pretty(&payload)))
}

fn cmd_action(args: &ActionArgs) -> Result<Option<String>, CliError> {
    let (model, spec) = load_model(&args.model)?;
    let field = load_field(&args.field)?;
    let breakdown =
        total_action(&model, &spec, &field).map_err(|e| input("action evaluation", e))?;
    let production =
        entropy_production(&model, &field).map_err(|e| input("action evaluation", e))?;
    let sampler = sampler_bound(&model, &field).map_err(|e| input("action evaluation", e))?;
    let payload = json!({
        "bulk": breakdown.bulk,
        "left": breakdown.left,
        "right": breakdown.right,
        "total": breakdown.total,
        "floor": breakdown.floor,
        "j0": production.j0,
        "negative": production.negative,
        "sampler_bound": sampler,
        "dx": production.dx,
        "dt": production.dt,
    });
    Ok(Some(to_pretty(&payload)))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Option<String>, CliError> {
    if args.list {
        return Ok(Some(suites::NAMES.join("\n")));
    }
    let selected: Vec<&str> = match &args.suite {
        Some(name) => {
            let name = suites::NAMES
                .iter()
                .find(|&&n| n == name)
                .ok_or_else(|| CliError::Input(format!("unknown suite {name:?}, try --list")))?;
            vec![name]
        }
        None => suites::NAMES.to_vec(),
    };
    let mut failed = 0usize;
    for name in &selected {
        let report = suites::run(name).expect("validated name");
        println!("{report}");
        let _ = io::stdout().flush();
        if !report.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        Ok(None)
    } else {
        Err(CliError::Failure(format!(
            "{failed} of {} suites failed",
            selected.len()
        )))
    }
}

const HEAT_STOPS: [(f64, [u8; 3]); 5] = [
    (0.00, [13, 8, 135]),
    (0.25, [126, 3, 168]),
    (0.50, [204, 71, 120]),
    (0.75, [248, 149, 64]),
    (1.00, [240, 249, 33]),
];

fn heat_color(v: f64) -> String {
    let v = v.clamp(0.0, 1.0);
    let mut rgb = HEAT_STOPS[HEAT_STOPS.len() - 1].1;
    for w in HEAT_STOPS.windows(2) {
        let ((a, ca), (b, cb)) = (w[0], w[1]);
        if v <= b {
            let s = if b > a { (v - a) / (b - a) } else { 0.0 };
            rgb = [0, 1, 2]
                .map(|i| (ca[i] as f64 + s * (cb[i] as f64 - ca[i] as f64)).round() as u8);
            break;
        }
    }
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}

/// Self-contained SVG heat map of a field, t upward, x rightward.
pub fn render_heatmap(field: &SpaceTimeField, capacity: f64) -> String {
    const LEFT: f64 = 46.0;
    const TOP: f64 = 14.0;
    const W: f64 = 700.0;
    const H: f64 = 460.0;
    let cols = field.n_cells().min(220);
    let rows = field.n_times().min(220);
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.0} {:.0}\" font-family=\"sans-serif\" font-size=\"12\">",
        LEFT + W + 14.0,
        TOP + H + 34.0
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");
    let cw = W / cols as f64;
    let ch = H / rows as f64;
    for r in 0..rows {
        let j = ((r as f64 + 0.5) / rows as f64 * field.n_times() as f64) as usize;
        let profile = field.profile(j.min(field.n_times() - 1));
        let y = TOP + H - (r + 1) as f64 * ch;
        for c in 0..cols {
            let i = ((c as f64 + 0.5) / cols as f64 * field.n_cells() as f64) as usize;
            let v = profile.values()[i.min(field.n_cells() - 1)] / capacity;
            let _ = write!(
                svg,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
                LEFT + c as f64 * cw,
                y,
                cw + 0.5,
                ch + 0.5,
                heat_color(v)
            );
        }
    }
    let times = field.times();
    let (t0, t1) = (times[0], times[times.len() - 1]);
    let _ = write!(
        svg,
        "<text x=\"{:.0}\" y=\"{:.0}\">x = 0</text><text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"end\">x = 1</text>",
        LEFT,
        TOP + H + 16.0,
        LEFT + W,
        TOP + H + 16.0
    );
    let _ = write!(
        svg,
        "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"end\">t = {t1:.2}</text><text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"end\">t = {t0:.2}</text>",
        LEFT - 6.0,
        TOP + 10.0,
        LEFT - 6.0,
        TOP + H
    );
    svg.push_str("</svg>");
    svg
}

/// Parse a JSON descriptor into a model without touching the filesystem,
/// for embedding in other front ends.
pub fn model_from_descriptor_text(text: &str) -> Result<(Model, BoundarySpec), CliError> {
    Model::from_json(text).map_err(|e| input("model descriptor", e))
}

/// Serialize a descriptor for the bundled exclusion model, handy for
/// generating example inputs.
pub fn example_descriptor(rho_l: f64, rho_r: f64) -> String {
    let d: ModelDescriptor = serde_json::from_value(json!({
        "flux": "asep",
        "rho_l": rho_l,
        "rho_r": rho_r,
    }))
    .expect("literal descriptor");
    serde_json::to_string_pretty(&d).expect("descriptor serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn write_profile(dir: &Path, name: &str, profile: &Profile) -> PathBuf {
        let field = SpaceTimeField::new(vec![0.0], vec![profile.clone()]).unwrap();
        let path = dir.join(name);
        let file = fs::File::create(&path).unwrap();
        field.write_csv(io::BufWriter::new(file)).unwrap();
        path
    }

    fn write_model(dir: &Path, rho_l: f64, rho_r: f64) -> PathBuf {
        let path = dir.join("model.json");
        fs::write(&path, example_descriptor(rho_l, rho_r)).unwrap();
        path
    }

    #[test]
    fn static_reports_value_and_minimizers() {
        let dir = tempfile::tempdir().unwrap();
        let model = write_model(dir.path(), 0.2, 0.6);
        let profile = write_profile(dir.path(), "p.csv", &Profile::uniform(0.2, 64));
        let out = cmd_static(&StaticArgs {
            model,
            profile,
        })
        .unwrap()
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["phase"], "low-density");
        assert_abs_diff_eq!(v["value"].as_f64().unwrap(), 0.0, epsilon = 1e-9);
        assert!(v["shock_positions"].is_array());
        assert!(v["envelope"].is_null());
    }

    #[test]
    fn path_roundtrips_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let model = write_model(dir.path(), 0.2, 0.6);
        let target = write_profile(dir.path(), "t.csv", &Profile::uniform(0.3, 80));
        let out = dir.path().join("path.csv");
        let plot = dir.path().join("path.svg");
        let args = PathArgs {
            model,
            target,
            out: out.clone(),
            aux: None,
            horizon: Some(4.0),
            anchor: None,
            cfl: 0.9,
            snapshots: Some(9),
            plot: Some(plot.clone()),
            enumerate_y: false,
        };
        cmd_path(&args).unwrap();
        let field = load_field(&out).unwrap();
        assert_eq!(field.n_cells(), 80);
        assert_eq!(field.n_times(), 9);
        assert_abs_diff_eq!(
            field.last().l1_distance(&Profile::uniform(0.3, 80)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let svg = fs::read_to_string(&plot).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<rect"));
    }

    #[test]
    fn relax_reports_bound_and_measured() {
        let dir = tempfile::tempdir().unwrap();
        let model = write_model(dir.path(), 0.2, 0.6);
        let initial = write_profile(dir.path(), "i.csv", &Profile::uniform(0.3, 100));
        let out = cmd_relax(&RelaxArgs {
            model,
            initial: Some(initial),
            random_seed: None,
            cells: 200,
            horizon: None,
            cfl: 0.9,
            tol: 1e-6,
        })
        .unwrap()
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let bound = v["bound"].as_f64().unwrap();
        let measured = v["measured"].as_f64().unwrap();
        assert_abs_diff_eq!(bound, 2.0, epsilon = 1e-12);
        assert!(measured > 0.0 && measured <= 1.5 * bound);
    }

    #[test]
    fn action_matches_the_library_breakdown() {
        let dir = tempfile::tempdir().unwrap();
        let model_path = write_model(dir.path(), 0.2, 0.6);
        let (model, spec) = load_model(&model_path).unwrap();
        let result = build_path(
            &model,
            &spec,
            &Profile::uniform(0.35, 60),
            &PathOptions {
                horizon: Some(3.0),
                ..PathOptions::default()
            },
        )
        .unwrap();
        let field_path = dir.path().join("f.csv");
        store_field(&field_path, &result.path).unwrap();
        let out = cmd_action(&ActionArgs {
            model: model_path,
            field: field_path,
        })
        .unwrap()
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let expected = total_action(&model, &spec, &result.path).unwrap();
        assert_abs_diff_eq!(
            v["total"].as_f64().unwrap(),
            expected.total,
            epsilon = 1e-12
        );
        assert!(v["j0"].as_f64().unwrap() <= v["bulk"].as_f64().unwrap() + 1e-12);
    }

    #[test]
    fn bad_descriptor_exits_with_input_error() {
        let dir = tempfile::tempdir().unwrap();
        let model = dir.path().join("model.json");
        fs::write(&model, "{\"flux\": \"asep\"").unwrap();
        let profile = write_profile(dir.path(), "p.csv", &Profile::uniform(0.2, 16));
        let err = cmd_static(&StaticArgs { model, profile }).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn enumerate_writes_one_field_per_position() {
        let dir = tempfile::tempdir().unwrap();
        let model = write_model(dir.path(), 0.3, 0.7);
        let target = write_profile(dir.path(), "t.csv", &Profile::step(0.3, 0.7, 0.5, 64));
        let out = dir.path().join("path.csv");
        let args = PathArgs {
            model,
            target,
            out,
            aux: None,
            horizon: Some(1.0),
            anchor: None,
            cfl: 0.9,
            snapshots: Some(3),
            plot: None,
            enumerate_y: true,
        };
        let out_text = cmd_path(&args).unwrap().unwrap();
        let v: serde_json::Value = serde_json::from_str(&out_text).unwrap();
        let written = v["written"].as_array().unwrap();
        assert!(!written.is_empty());
        for name in written {
            assert!(name.as_str().unwrap().contains("-y"));
            assert!(Path::new(name.as_str().unwrap()).exists());
        }
    }

    #[test]
    fn thread_request_prefers_the_flag() {
        assert_eq!(thread_request(Some(3)), Some(3));
        assert_eq!(thread_request(Some(0)), None);
    }

    #[test]
    fn heat_colors_interpolate_endpoints() {
        assert_eq!(heat_color(0.0), "#0d0887");
        assert_eq!(heat_color(1.0), "#f0f921");
        assert!(heat_color(0.4).starts_with('#'));
    }

    #[test]
    fn cli_parses_verify_with_suite() {
        let cli = Cli::try_parse_from(["qpot", "verify", "--suite", "involution"]).unwrap();
        match cli.command {
            Command::Verify(args) => assert_eq!(args.suite.as_deref(), Some("involution")),
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["qpot", "bogus"]).is_err());
    }
}
