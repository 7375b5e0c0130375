//! Acceptance suites behind `qpot verify`.
//!
//! Each suite checks one published guarantee of the library end to end:
//! model symmetries, the jump/boundary inequalities with their exact equality
//! sets, closure of the dynamic action against the static value, the
//! catalogue of closed-form relaxation diagrams, the half-line Hopf solver on
//! random admissible data, optimality of the hull envelope, finite-time
//! landing on the stationary set, ordering of the action estimators, and
//! cross-validation of the three solvers. Suites draw their randomness from
//! fixed seeds so a failure reproduces exactly.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::action::{entropy_production, sampler_bound, total_action};
use crate::fields::{Profile, SpaceTimeField};
use crate::model::{Model, Phase, Side};
use crate::paths::diagrams::uniform_target_diagram;
use crate::paths::{build_path, stationary_profile, PathOptions, Snapshots};
use crate::solver::{
    hopf_half_line, solve_ibvp, HalfLineData, MonotoneStep, Record, VariationalSolver,
};
use crate::statics::{optimal_envelope, quasi_potential_static, s_rarefaction_at};
use crate::tol;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub criterion: usize,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {}  {:<13} {}  {:>7.2}s  {}",
            self.criterion,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.seconds,
            self.detail
        )
    }
}

/// Suite names in criterion order.
pub const NAMES: [&str; 9] = [
    "involution",
    "inequalities",
    "closure",
    "oracle",
    "hopf",
    "envelope",
    "stationarity",
    "ordering",
    "cross-solver",
];

/// Run one suite by name.
pub fn run(name: &str) -> Option<SuiteReport> {
    let (criterion, body): (usize, fn(&mut Check)) = match name {
        "involution" => (1, involution),
        "inequalities" => (2, inequalities),
        "closure" => (3, closure),
        "oracle" => (4, oracle),
        "hopf" => (5, hopf),
        "envelope" => (6, envelope),
        "stationarity" => (7, stationarity),
        "ordering" => (8, ordering),
        "cross-solver" => (9, cross_solver),
        _ => return None,
    };
    let mut check = Check::default();
    let start = Instant::now();
    body(&mut check);
    let seconds = start.elapsed().as_secs_f64();
    if let Some(budget) = check.budget {
        if seconds > budget {
            check.fail(format!(
                "runtime {seconds:.2}s exceeds the {budget:.0}s budget"
            ));
        }
    }
    Some(SuiteReport {
        criterion,
        name: NAMES[criterion - 1],
        passed: check.failures.is_empty(),
        seconds,
        detail: check.detail(),
    })
}

/// Run every suite in criterion order.
pub fn run_all() -> Vec<SuiteReport> {
    NAMES.iter().map(|n| run(n).expect("known name")).collect()
}

const MAX_REPORTED: usize = 6;

#[derive(Default)]
struct Check {
    failures: Vec<String>,
    dropped: usize,
    notes: Vec<String>,
    budget: Option<f64>,
}

impl Check {
    fn set_budget(&mut self, seconds: f64) {
        self.budget = Some(seconds);
    }

    fn assert(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(msg());
            } else {
                self.dropped += 1;
            }
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        } else {
            self.dropped += 1;
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn detail(&self) -> String {
        if self.failures.is_empty() {
            self.notes.join("; ")
        } else if self.dropped == 0 {
            self.failures.join("; ")
        } else {
            format!("{} (+{} more)", self.failures.join("; "), self.dropped)
        }
    }
}

fn asep_pair(rho_l: f64, rho_r: f64) -> (Model, crate::model::BoundarySpec) {
    let model = Model::asep();
    let spec = model.boundary_spec(rho_l, rho_r).expect("interior data");
    (model, spec)
}

/// Grid that stays clear of ρ*, the data, and their conjugates, so every
/// equality-set classification below is unambiguous at 1e-9.
fn offset_nodes(cap: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| cap * (j as f64 + 0.5) / n as f64)
        .collect()
}

/// Criterion 1: the involution φ, the entropy curvature chain rule, the
/// symmetry of K, and evenness of the current in the chemical potential,
/// on the exclusion model and a tilted variant.
fn involution(check: &mut Check) {
    check.set_budget(1.0);
    let models = [
        ("exclusion", Model::asep()),
        ("cubic", Model::cubic(0.2).expect("tilt in range")),
    ];
    let mut worst = 0.0f64;
    for (label, model) in &models {
        let flux = model.flux();
        let cap = flux.capacity();
        let rs = flux.rho_star();
        check.assert((flux.phi(rs) - rs).abs() <= 1e-8, || {
            format!("{label}: fixed point drift {:.2e}", (flux.phi(rs) - rs).abs())
        });
        check.assert(
            flux.f(0.0).abs() <= 1e-12 && flux.f(cap).abs() <= 1e-12,
            || format!("{label}: flux does not vanish at the walls"),
        );
        let mut prev = f64::INFINITY;
        for rho in offset_nodes(cap, 1000) {
            let phi = flux.phi(rho);
            let theta = model.hprime(rho);
            let defects = [
                ("phi is an involution", (flux.phi(phi) - rho).abs()),
                ("f matches across phi", (flux.f(phi) - flux.f(rho)).abs()),
                (
                    "curvature chain rule",
                    (model.hsecond(rho) + model.hsecond(phi) * flux.phi_prime(rho)).abs(),
                ),
                ("K is phi-symmetric", (model.big_k(phi) - model.big_k(rho)).abs()),
                (
                    "current is even",
                    (model.chem_flux(-theta) - model.chem_flux(theta)).abs(),
                ),
            ];
            for (tag, e) in defects {
                worst = worst.max(e);
                check.assert(e <= 1e-8, || {
                    format!("{label}: {tag} off by {e:.2e} at rho = {rho:.4}")
                });
            }
            check.assert(phi < prev, || {
                format!("{label}: phi not strictly decreasing at rho = {rho:.4}")
            });
            prev = phi;
        }
    }
    check.note(format!("2 models x 1000 nodes, worst defect {worst:.1e}"));
}

/// Criterion 2: sign of the jump production, nonpositivity of the
/// traveling-wave cost with its single equality pair, negativity of the
/// self-speed cost, the boundary-cost lower bounds with exact equality sets,
/// and the two cross inequalities, on three shock-regime boundary pairs.
fn inequalities(check: &mut Check) {
    check.set_budget(30.0);
    let model = Model::asep();
    let cap = model.capacity();
    let nodes = offset_nodes(cap, 200);

    for (i, &rm) in nodes.iter().enumerate() {
        for (j, &rp) in nodes.iter().enumerate() {
            let pi = model.pi_production(rm, rp);
            let ok = match i.cmp(&j) {
                std::cmp::Ordering::Less => pi < 0.0,
                std::cmp::Ordering::Equal => pi == 0.0,
                std::cmp::Ordering::Greater => pi > 0.0,
            };
            check.assert(ok, || {
                format!("jump production sign wrong at ({rm:.4}, {rp:.4}): {pi:.2e}")
            });
        }
    }

    for &(rho_l, rho_r) in &[(0.2, 0.6), (0.3, 0.9), (0.3, 0.7)] {
        let spec = model.boundary_spec(rho_l, rho_r).expect("interior data");
        inequalities_for_spec(check, &model, &spec, &nodes);
    }
    check.note("3 boundary pairs x 200 nodes".into());
}

fn inequalities_for_spec(
    check: &mut Check,
    model: &Model,
    spec: &crate::model::BoundarySpec,
    nodes: &[f64],
) {
    let flux = model.flux();
    let rs = flux.rho_star();
    let tag = format!("({}, {})", spec.rho_l, spec.rho_r);
    let n = nodes.len();
    let f_l = flux.f(spec.rho_l);
    let f_r = flux.f(spec.rho_r);

    // entropic jumps: sigma- plus jump production is nonpositive, strictly on
    // the grid, with equality exactly at the conjugated data pair
    let rows: Vec<(f64, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let rm = nodes[i];
            let mut row_worst = f64::NEG_INFINITY;
            let mut equality = false;
            for &rp in &nodes[i + 1..] {
                let v = flux.shock_speed(rm, rp);
                let val = model.sigma(rm, v, spec) + model.pi_production(rm, rp);
                row_worst = row_worst.max(val);
                equality |= val.abs() <= 1e-9;
            }
            (row_worst, equality)
        })
        .collect();
    let pair_worst = rows.iter().fold(f64::NEG_INFINITY, |a, r| a.max(r.0));
    check.assert(pair_worst <= 1e-9, || {
        format!("{tag}: traveling-wave cost reaches {pair_worst:.2e}")
    });
    check.assert(!rows.iter().any(|r| r.1), || {
        format!("{tag}: unexpected grid equality in the traveling-wave cost")
    });
    let (pm, pp) = (flux.phi(spec.rho_r), flux.phi(spec.rho_l));
    let v_eq = flux.shock_speed(pm, pp);
    for side in [pm, pp] {
        let at = model.sigma(side, v_eq, spec) + model.pi_production(pm, pp);
        check.assert(at.abs() <= 1e-9, || {
            format!("{tag}: no equality at the conjugate pair, value {at:.2e}")
        });
    }
    for i in (0..n).step_by(8) {
        for j in (i + 1..n).step_by(8) {
            let v = flux.shock_speed(nodes[i], nodes[j]);
            let d = (model.sigma(nodes[i], v, spec) - model.sigma(nodes[j], v, spec)).abs();
            check.assert(d <= 1e-8, || {
                format!(
                    "{tag}: sigma disagrees across the jump at ({:.4}, {:.4}): {d:.2e}",
                    nodes[i], nodes[j]
                )
            });
        }
    }

    // self-speed cost stays strictly negative
    let sup = nodes
        .iter()
        .map(|&r| model.sigma(r, flux.fprime(r), spec))
        .fold(f64::NEG_INFINITY, f64::max);
    check.assert(sup < 0.0, || {
        format!("{tag}: sup sigma(rho, f'(rho)) = {sup:.2e}")
    });

    // boundary costs dominate the relative entropy flux; equality exactly on
    // the admissible trace sets
    let mut probes = nodes.to_vec();
    probes.extend([
        spec.rho_l,
        spec.rho_r,
        flux.phi(spec.rho_l),
        flux.phi(spec.rho_r),
    ]);
    for &r in &probes {
        let gap_l =
            model.boundary_cost_left(r, spec.rho_l).expect("interior") - model.relative_g(r, spec.rho_l);
        check.assert(gap_l >= -1e-9, || {
            format!("{tag}: left cost undercuts g at rho = {r:.4} by {gap_l:.2e}")
        });
        let member_l = model.in_admissible_set(Side::Right, r, spec.rho_l, tol::MINIMIZER);
        check.assert((gap_l <= 1e-9) == member_l, || {
            format!("{tag}: left equality set mismatch at rho = {r:.4} (gap {gap_l:.2e})")
        });

        let gap_r =
            model.boundary_cost_right(r, spec.rho_r).expect("interior") + model.relative_g(r, spec.rho_r);
        check.assert(gap_r >= -1e-9, || {
            format!("{tag}: right cost undercuts -g at rho = {r:.4} by {gap_r:.2e}")
        });
        let member_r = model.in_admissible_set(Side::Left, r, spec.rho_r, tol::MINIMIZER);
        check.assert((gap_r <= 1e-9) == member_r, || {
            format!("{tag}: right equality set mismatch at rho = {r:.4} (gap {gap_r:.2e})")
        });
    }

    // cross inequalities between the two boundaries
    let low_eq = f_l <= f_r + 1e-12;
    for &r in nodes.iter().filter(|&&r| r <= rs) {
        let d = -model.relative_g(r, spec.rho_l) - model.boundary_cost_right(r, spec.rho_r).expect("interior");
        check.assert(d <= 1e-9, || {
            format!("{tag}: low cross inequality fails at rho = {r:.4}: {d:.2e}")
        });
        check.assert(d.abs() > 1e-9, || {
            format!("{tag}: unexpected low cross equality at rho = {r:.4}")
        });
    }
    let d_at_l = -model.boundary_cost_right(spec.rho_l, spec.rho_r).expect("interior");
    if low_eq {
        check.assert(d_at_l.abs() <= 1e-12, || {
            format!("{tag}: low cross equality missing at rho_l, value {d_at_l:.2e}")
        });
    } else {
        check.assert(d_at_l < -1e-9, || {
            format!("{tag}: low cross equality should fail at rho_l, value {d_at_l:.2e}")
        });
    }

    let high_eq = f_l >= f_r - 1e-12;
    for &r in nodes.iter().filter(|&&r| r >= rs) {
        let d = model.relative_g(r, spec.rho_r) - model.boundary_cost_left(r, spec.rho_l).expect("interior");
        check.assert(d <= 1e-9, || {
            format!("{tag}: high cross inequality fails at rho = {r:.4}: {d:.2e}")
        });
        check.assert(d.abs() > 1e-9, || {
            format!("{tag}: unexpected high cross equality at rho = {r:.4}")
        });
    }
    let d_at_r = -model.boundary_cost_left(spec.rho_r, spec.rho_l).expect("interior");
    if high_eq {
        check.assert(d_at_r.abs() <= 1e-12, || {
            format!("{tag}: high cross equality missing at rho_r, value {d_at_r:.2e}")
        });
    } else {
        check.assert(d_at_r < -1e-9, || {
            format!("{tag}: high cross equality should fail at rho_r, value {d_at_r:.2e}")
        });
    }
}

/// Criterion 3: the action of the constructed path closes on the static
/// value for uniform targets across all four phases.
fn closure(check: &mut Check) {
    check.set_budget(300.0);
    let cases = [
        (0.2, 0.6, Phase::LowDensity),
        (0.4, 0.8, Phase::HighDensity),
        (0.3, 0.7, Phase::Coexistence),
        (0.7, 0.3, Phase::MaximalCurrent),
    ];
    let mut worst = 0.0f64;
    for &(rho_l, rho_r, phase) in &cases {
        let (model, spec) = asep_pair(rho_l, rho_r);
        check.assert(spec.phase == phase, || {
            format!("({rho_l}, {rho_r}) classified as {:?}", spec.phase)
        });
        for &rho in &[0.25, 0.5, 0.75] {
            let target = Profile::uniform(rho, 400);
            let s = quasi_potential_static(&model, &spec, &target)
                .expect("regime dispatch")
                .value;
            let result =
                build_path(&model, &spec, &target, &PathOptions::default()).expect("construction");
            let act = total_action(&model, &spec, &result.path).expect("uniform grid");
            let allowed = 0.05 * s.max(0.01);
            let err = (act.total - s).abs();
            worst = worst.max(err / allowed);
            check.assert(err <= allowed, || {
                format!(
                    "({rho_l}, {rho_r}) target {rho}: |I - S| = {err:.2e} over {allowed:.2e} (S = {s:.4})"
                )
            });
        }
    }
    check.note(format!(
        "12 scenarios, worst gap at {:.0}% of tolerance",
        worst * 100.0
    ));
}

struct OracleCase {
    rho_l: f64,
    rho_r: f64,
    rho: f64,
    anchor: Option<f64>,
    label: &'static str,
}

/// Criterion 4: the Godunov path construction reproduces every tabulated
/// closed-form relaxation diagram in L1 at three probe times.
fn oracle(check: &mut Check) {
    let cases = [
        OracleCase { rho_l: 0.2, rho_r: 0.6, rho: 0.10, anchor: None, label: "entering-fan" },
        OracleCase { rho_l: 0.2, rho_r: 0.6, rho: 0.45, anchor: None, label: "entering-jump" },
        OracleCase { rho_l: 0.3, rho_r: 0.7, rho: 0.50, anchor: Some(0.4), label: "standing-jump" },
        OracleCase { rho_l: 0.45, rho_r: 0.25, rho: 0.80, anchor: None, label: "high-plateau-chase" },
        OracleCase { rho_l: 0.45, rho_r: 0.25, rho: 0.52, anchor: None, label: "jump-meets-fan-chase" },
        OracleCase { rho_l: 0.45, rho_r: 0.25, rho: 0.48, anchor: None, label: "entering-jump" },
        OracleCase { rho_l: 0.45, rho_r: 0.25, rho: 0.30, anchor: None, label: "entering-fan" },
        OracleCase { rho_l: 0.7, rho_r: 0.3, rho: 0.75, anchor: None, label: "sonic-fan" },
        OracleCase { rho_l: 0.7, rho_r: 0.3, rho: 0.25, anchor: None, label: "sonic-fan" },
        OracleCase { rho_l: 0.8, rho_r: 0.6, rho: 0.30, anchor: None, label: "low-plateau-chase" },
        OracleCase { rho_l: 0.8, rho_r: 0.6, rho: 0.45, anchor: None, label: "jump-meets-fan-chase" },
        OracleCase { rho_l: 0.8, rho_r: 0.6, rho: 0.55, anchor: None, label: "entering-jump" },
        OracleCase { rho_l: 0.8, rho_r: 0.6, rho: 0.90, anchor: None, label: "entering-fan" },
    ];
    let n = 800;
    let mut worst = 0.0f64;
    for case in &cases {
        let (model, spec) = asep_pair(case.rho_l, case.rho_r);
        let reference = match uniform_target_diagram(&model, &spec, case.rho, case.anchor) {
            Ok(d) => d,
            Err(e) => {
                check.fail(format!(
                    "({}, {}) target {}: {e}",
                    case.rho_l, case.rho_r, case.rho
                ));
                continue;
            }
        };
        check.assert(reference.label == case.label, || {
            format!(
                "({}, {}) target {}: diagram {} where {} was expected",
                case.rho_l, case.rho_r, case.rho, reference.label, case.label
            )
        });
        let opts = PathOptions {
            horizon: Some(2.2),
            shock_anchor: case.anchor,
            snapshots: Snapshots::Times(vec![0.2, 1.0, 2.0]),
            ..PathOptions::default()
        };
        let target = Profile::uniform(case.rho, n);
        let result = build_path(&model, &spec, &target, &opts).expect("construction");
        let aux = &result.auxiliary;
        let raster = reference
            .diagram
            .rasterize(model.flux(), aux.times(), n)
            .expect("matching grids");
        for (j, &t) in aux.times().iter().enumerate() {
            let d = aux
                .profile(j)
                .l1_distance(raster.profile(j))
                .expect("same grid");
            worst = worst.max(d);
            check.assert(d <= 0.02, || {
                format!(
                    "{} for ({}, {}) target {} at t = {t}: L1 gap {d:.4}",
                    case.label, case.rho_l, case.rho_r, case.rho
                )
            });
        }
    }
    check.note(format!(
        "{} diagrams x 3 probe times, worst L1 gap {worst:.4}",
        cases.len()
    ));
}

/// Criterion 5: on random data satisfying the one-sided mass bound, the
/// half-line Hopf solution equals the left state strictly behind the front.
fn hopf(check: &mut Check) {
    let model = Model::asep();
    let flux = model.flux();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51AB);
    let dx = 1.0 / 64.0;
    let cells = 256;
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let r = rng.gen_range(0.02..0.90);
        let rho = rng.gen_range((r + 0.02)..0.97);
        // each sample keeps the running integral below rho * x at the cell
        // edges (hence everywhere, both sides being linear per cell); the
        // final cell also stays below rho so the constant continuation
        // preserves the bound
        let mut samples = Vec::with_capacity(cells);
        let mut acc = 0.0;
        for i in 0..cells {
            let edge = (i + 1) as f64 * dx;
            let mut cap = ((rho * edge - acc) / dx).min(1.0);
            if i == cells - 1 {
                cap = cap.min(rho);
            }
            let u = rng.gen_range(0.0..cap);
            samples.push(u);
            acc += u * dx;
        }
        let data = HalfLineData {
            left_state: r,
            samples: &samples,
            dx,
        };
        let front = flux.shock_speed(r, rho);
        for &t in &[0.5, 1.0, 2.0] {
            let hi = t * front - 2.0 * dx;
            let lo = -1.5;
            if hi <= lo {
                continue;
            }
            for k in 0..40 {
                let x = lo + (hi - lo) * (k as f64 + 0.5) / 40.0;
                let err = (hopf_half_line(flux, &data, t, x) - r).abs();
                worst = worst.max(err);
                checked += 1;
                check.assert(err <= 1e-8, || {
                    format!("r = {r:.3}, rho = {rho:.3}, t = {t}, x = {x:.3}: |u - r| = {err:.2e}")
                });
            }
        }
    }
    check.assert(checked >= 2000, || {
        format!("only {checked} points fell behind the front")
    });
    check.note(format!(
        "{checked} probe points over 50 data sets, worst defect {worst:.1e}"
    ));
}

/// Criterion 6: the truncated-hull envelope beats every randomly drawn
/// admissible envelope.
fn envelope(check: &mut Check) {
    let margins: Vec<Result<f64, String>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let model = Model::asep();
            let mut rng = ChaCha8Rng::seed_from_u64(0xE57 + i);
            let rho_r = rng.gen_range(0.05..0.90);
            let rho_l = rng.gen_range((rho_r + 0.03)..0.97);
            let spec = model
                .boundary_spec(rho_l, rho_r)
                .map_err(|e| e.to_string())?;
            let profile =
                Profile::from_values((0..64).map(|_| rng.gen_range(0.02..0.98)).collect())
                    .expect("nonempty");
            let best = optimal_envelope(&model, &spec, &profile).map_err(|e| e.to_string())?;
            let s_best =
                s_rarefaction_at(&model, &spec, &profile, &best).map_err(|e| e.to_string())?;
            let mut min_margin = f64::INFINITY;
            for _ in 0..10_000 {
                let mut vals: Vec<f64> =
                    (0..64).map(|_| rng.gen_range(rho_r..rho_l)).collect();
                vals.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
                let cand = Profile::from_values(vals).expect("nonempty");
                let s = s_rarefaction_at(&model, &spec, &profile, &cand)
                    .map_err(|e| e.to_string())?;
                min_margin = min_margin.min(s_best - s);
            }
            Ok(min_margin)
        })
        .collect();
    let mut worst = f64::INFINITY;
    for (i, m) in margins.iter().enumerate() {
        match m {
            Ok(margin) => {
                worst = worst.min(*margin);
                check.assert(*margin >= -1e-9, || {
                    format!("profile {i}: a random envelope wins by {:.2e}", -margin)
                });
            }
            Err(e) => check.fail(format!("profile {i}: {e}")),
        }
    }
    check.note(format!(
        "100 profiles x 10000 envelopes, smallest margin {worst:.1e}"
    ));
}

/// Criterion 7: in the bounded phases the auxiliary evolution lands on the
/// flipped stationary profile strictly inside its horizon; in the open phase
/// it only approaches, monotonically.
fn stationarity(check: &mut Check) {
    let n = 200;
    let cases: [(f64, f64, f64, Option<f64>); 3] = [
        (0.2, 0.6, 0.45, None),
        (0.4, 0.8, 0.55, None),
        (0.3, 0.7, 0.50, Some(0.4)),
    ];
    for &(rho_l, rho_r, rho, anchor) in &cases {
        let (model, spec) = asep_pair(rho_l, rho_r);
        let opts = PathOptions {
            shock_anchor: anchor,
            ..PathOptions::default()
        };
        let result =
            build_path(&model, &spec, &Profile::uniform(rho, n), &opts).expect("construction");
        let aux = &result.auxiliary;
        let expected =
            stationary_profile(&model, &spec, n, result.anchor.unwrap_or(0.5)).flipped();
        let d_end = aux.last().l1_distance(&expected).expect("same grid");
        check.assert(d_end <= 1e-9, || {
            format!("({rho_l}, {rho_r}) target {rho}: final gap {d_end:.2e}")
        });
        let landed = aux
            .times()
            .iter()
            .zip(aux.profiles())
            .find(|(_, p)| p.l1_distance(&expected).expect("same grid") <= 1e-6)
            .map(|(&t, _)| t);
        match landed {
            Some(t) => {
                check.assert(t <= result.horizon, || {
                    format!(
                        "({rho_l}, {rho_r}) target {rho}: landed at {t:.2} after the horizon {:.2}",
                        result.horizon
                    )
                });
                check.note(format!(
                    "({rho_l}, {rho_r}): landed at t = {t:.2} of {:.2}",
                    result.horizon
                ));
            }
            None => check.fail(format!(
                "({rho_l}, {rho_r}) target {rho}: never within 1e-6 of the stationary profile"
            )),
        }
    }

    let (model, spec) = asep_pair(0.7, 0.3);
    let times: Vec<f64> = (0..=40).map(|i| 10.0 * i as f64 / 40.0).collect();
    let opts = PathOptions {
        snapshots: Snapshots::Times(times),
        ..PathOptions::default()
    };
    let result =
        build_path(&model, &spec, &Profile::uniform(0.25, n), &opts).expect("construction");
    let flat = Profile::uniform(model.rho_star(), n);
    let dist: Vec<f64> = result
        .auxiliary
        .profiles()
        .iter()
        .map(|p| p.l1_distance(&flat).expect("same grid"))
        .collect();
    let d_last = *dist.last().expect("snapshots recorded");
    check.assert(d_last > 1e-6, || {
        format!("open phase reached the flat profile, final distance {d_last:.2e}")
    });
    let start = dist.len() * 2 / 5;
    for k in start..dist.len() - 1 {
        check.assert(dist[k + 1] <= dist[k] + 1e-7, || {
            format!(
                "open-phase distance grew between snapshots {k} and {} ({:.3e} to {:.3e})",
                k + 1,
                dist[k],
                dist[k + 1]
            )
        });
    }
    check.note(format!("open phase: distance {d_last:.1e} after t = 10"));
}

fn smooth(values: &mut [f64]) {
    let prev = values.to_vec();
    let n = prev.len();
    for (i, v) in values.iter_mut().enumerate() {
        let a = prev[i.saturating_sub(1)];
        let b = prev[(i + 1).min(n - 1)];
        *v = 0.25 * a + 0.5 * prev[i] + 0.25 * b;
    }
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, steps: usize, dt: f64) -> SpaceTimeField {
    let mut values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..0.9)).collect();
    smooth(&mut values);
    smooth(&mut values);
    let mut times = vec![0.0];
    let mut profiles = vec![Profile::from_values(values.clone()).expect("nonempty")];
    for s in 1..=steps {
        let mut kick: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.05..0.05)).collect();
        smooth(&mut kick);
        smooth(&mut kick);
        for (v, k) in values.iter_mut().zip(&kick) {
            *v = (*v + k).clamp(0.05, 0.95);
        }
        times.push(s as f64 * dt);
        profiles.push(Profile::from_values(values.clone()).expect("nonempty"));
    }
    SpaceTimeField::new(times, profiles).expect("uniform grid")
}

/// Criterion 8: estimator ordering on arbitrary fields, and exchange of the
/// signed residual parts under space-time reversal.
fn ordering(check: &mut Check) {
    let (model, spec) = asep_pair(0.2, 0.6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0D8E);
    let mut worst_swap = 0.0f64;
    for fi in 0..50 {
        let field = random_field(&mut rng, 64, 48, 0.004);
        let est = entropy_production(&model, &field).expect("uniform grid");
        check.assert(est.j0 <= est.bulk + 1e-12, || {
            format!("field {fi}: single-entropy bound {:.3e} above the family bound {:.3e}", est.j0, est.bulk)
        });
        let act = total_action(&model, &spec, &field).expect("uniform grid");
        check.assert(act.left >= -1e-12 && act.right >= -1e-12, || {
            format!("field {fi}: negative boundary cost")
        });
        check.assert(act.total >= act.bulk - 1e-12, || {
            format!("field {fi}: total below bulk")
        });
        let sampler = sampler_bound(&model, &field).expect("uniform grid");
        check.assert(sampler <= act.total + act.floor + 1e-9, || {
            format!(
                "field {fi}: sampler bound {:.3e} above total {:.3e} + floor {:.3e}",
                sampler, act.total, act.floor
            )
        });
        let est_rev =
            entropy_production(&model, &field.reversed(true)).expect("uniform grid");
        let scale = est.bulk.max(est.negative).max(1e-9);
        let swap = (est_rev.bulk - est.negative)
            .abs()
            .max((est_rev.negative - est.bulk).abs())
            / scale;
        worst_swap = worst_swap.max(swap);
        check.assert(swap <= 0.05, || {
            format!("field {fi}: reversal imbalance {:.2}%", swap * 100.0)
        });
    }
    check.note(format!(
        "50 random fields, worst reversal imbalance {:.2e}",
        worst_swap
    ));
}

/// Criterion 9: Godunov, exact characteristics, and the variational solver
/// agree on nonincreasing interior data.
fn cross_solver(check: &mut Check) {
    let model = Model::asep();
    let flux = model.flux();
    let n = 400;
    let ramp_edges: Vec<f64> = (1..20).map(|k| 0.3 + 0.4 * k as f64 / 20.0).collect();
    let ramp_values: Vec<f64> = (0..20).map(|j| 0.85 - 0.7 * j as f64 / 19.0).collect();
    let scenarios: [(&str, Vec<f64>, Vec<f64>, f64); 3] = [
        ("single step", vec![0.5], vec![0.7, 0.4], 0.3),
        (
            "staircase",
            vec![0.3, 0.45, 0.6],
            vec![0.9, 0.65, 0.45, 0.2],
            0.3,
        ),
        ("ramp", ramp_edges, ramp_values, 0.25),
    ];
    let mut worst = 0.0f64;
    for (label, edges, values, t_end) in scenarios {
        let hull = MonotoneStep::new(edges, values.clone()).expect("nonincreasing");
        let initial = hull.profile(flux, 0.0, n);
        let exact = hull.profile(flux, t_end, n);
        let (rho_l, rho_r) = (values[0], *values.last().expect("nonempty"));
        let sol = solve_ibvp(
            flux,
            &initial,
            |_| rho_l,
            |_| rho_r,
            t_end,
            Record::Times(&[t_end]),
            tol::CFL,
        )
        .expect("stable run");
        let godunov = sol.field.last();
        let variational = VariationalSolver::new(flux, &initial, rho_l, rho_r).density(t_end);
        let limit = 2.0 / n as f64;
        let pairs = [
            ("godunov vs characteristics", godunov, &exact),
            ("godunov vs variational", godunov, &variational),
            ("characteristics vs variational", &exact, &variational),
        ];
        for (pair, a, b) in pairs {
            let d = a.l1_distance(b).expect("same grid");
            worst = worst.max(d);
            check.assert(d <= limit, || {
                format!("{label}: {pair} differ by {d:.5} (limit {limit:.5})")
            });
        }
    }
    check.note(format!(
        "3 scenarios x 3 solver pairs, worst L1 gap {worst:.5}"
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve_and_unknown_does_not() {
        assert!(run("no-such-suite").is_none());
        assert_eq!(NAMES.len(), 9);
    }

    #[test]
    fn the_fast_model_suite_passes() {
        let report = run("involution").expect("known name");
        assert!(report.passed, "{}", report.detail);
        assert_eq!(report.criterion, 1);
    }

    #[test]
    fn reports_render_one_line() {
        let report = SuiteReport {
            criterion: 3,
            name: "closure",
            passed: true,
            seconds: 1.25,
            detail: "12 scenarios".into(),
        };
        let line = report.to_string();
        assert!(line.contains("criterion 3"));
        assert!(line.contains("PASS"));
        assert!(!line.contains('\n'));
    }
}
