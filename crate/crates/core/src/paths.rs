//! Least-action relaxation paths.
//!
//! The dynamic cost of steering the density from the stationary profile to a
//! target ρ is carried entirely by an auxiliary entropic evolution: flip the
//! target in space, evolve it forward with flipped boundary data, and read the
//! path as the time reversal ρ(t, x) = ρ̃(T − t, 1 − x). The auxiliary problem
//! splits by the ordering of the boundary data.
//!
//! For ρ_l < ρ_r the optimal path grows a jump at a position y minimizing
//! y ↦ ∫₀ʸ (ρ − ρ_c); in the auxiliary frame that jump appears at ỹ = 1 − y
//! as a reverse discontinuity with traces φ(ρ_l) | φ(ρ_r), travelling at the
//! conjugated Rankine-Hugoniot speed until it leaves the domain. We realise it
//! by evolving two Godunov fields, one per side of the moving line, each
//! pinned to its trace value across the line, and stitching them; once the
//! line exits, the stitched state continues as a single field with the datum
//! of the absorbing side on both ends.
//!
//! For ρ_l ≥ ρ_r no jump is produced: the auxiliary data come from the exact
//! rarefaction evolution of the conjugated optimal envelope (a nonincreasing
//! profile, solved by characteristics), and the auxiliary field is a plain
//! boundary-driven Godunov run.

pub mod diagrams;

use crate::fields::{FieldError, Profile, SpaceTimeField};
use crate::model::{BoundarySpec, Model, ModelError, Phase, StationarySet};
use crate::solver::{godunov_flux, solve_ibvp, MonotoneStep, Record, SolverError};
use crate::statics::{optimal_envelope, s_shock_min, StaticsError};
use crate::tol;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PathError {
    #[error("boundary data are in the wrong regime for this construction: {0}")]
    WrongRegime(&'static str),
    #[error("horizon must be positive, got {0}")]
    Horizon(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Statics(#[from] StaticsError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which time levels of the auxiliary evolution to keep.
#[derive(Clone, Debug, Default)]
pub enum Snapshots {
    #[default]
    EveryStep,
    /// Snapshots at the step times closest to the requested instants.
    Times(Vec<f64>),
}

#[derive(Clone, Debug)]
pub struct PathOptions {
    /// Courant number for the interior evolutions.
    pub cfl: f64,
    /// Evolution horizon; `None` picks a phase-dependent default long enough
    /// to absorb every wave the construction emits.
    pub horizon: Option<f64>,
    /// Jump position y for the grown discontinuity (ρ_l < ρ_r only). `None`
    /// takes the leftmost minimizer of the position functional.
    pub shock_anchor: Option<f64>,
    pub snapshots: Snapshots,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions {
            cfl: tol::CFL,
            horizon: None,
            shock_anchor: None,
            snapshots: Snapshots::EveryStep,
        }
    }
}

/// A relaxation path from the stationary profile to the target, together
/// with the auxiliary evolution it was read from.
#[derive(Clone, Debug)]
pub struct PathResult {
    /// ρ(t, x), t ∈ [0, T]: starts at the stationary profile, ends at the
    /// target.
    pub path: SpaceTimeField,
    /// ρ̃(t, x) = ρ(T − t, 1 − x): starts at the flipped target.
    pub auxiliary: SpaceTimeField,
    pub horizon: f64,
    /// Time the reverse jump spends inside the domain (0 when none is grown,
    /// ∞ for a standing jump on the coexistence line).
    pub theta: f64,
    /// Jump position in path coordinates, when one was grown.
    pub anchor: Option<f64>,
}

/// The profile the path starts from: the unique stationary profile, or the
/// standing-shock family member at `anchor` on the coexistence line.
pub fn stationary_profile(model: &Model, spec: &BoundarySpec, n: usize, anchor: f64) -> Profile {
    match model.stationary_set(spec) {
        StationarySet::Uniform(v) => Profile::uniform(v, n),
        StationarySet::ShockFamily { rho_l, rho_r } => Profile::step(rho_l, rho_r, anchor, n),
    }
}

pub fn build_path(
    model: &Model,
    spec: &BoundarySpec,
    target: &Profile,
    opts: &PathOptions,
) -> Result<PathResult, PathError> {
    if spec.rho_l < spec.rho_r {
        build_path_shock_regime(model, spec, target, opts)
    } else {
        build_path_rarefaction_regime(model, spec, target, opts)
    }
}

/// Jump position in path coordinates: the option override, or the leftmost
/// minimizer of y ↦ ∫₀ʸ (ρ − ρ_c).
fn resolve_anchor(
    model: &Model,
    spec: &BoundarySpec,
    target: &Profile,
    opts: &PathOptions,
) -> Result<f64, PathError> {
    match opts.shock_anchor {
        Some(y) => Ok(y.clamp(0.0, 1.0)),
        None => Ok(s_shock_min(model, spec, target)?.1.leftmost()),
    }
}

/// Exit time of the auxiliary jump line starting at ỹ with speed v.
fn line_exit_time(ytil: f64, v: f64) -> f64 {
    if v > 0.0 {
        (1.0 - ytil) / v
    } else if v < 0.0 {
        ytil / -v
    } else if !(f64::EPSILON..=1.0 - f64::EPSILON).contains(&ytil) {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Default evolution horizon for [`build_path`]: generous wave-arithmetic
/// bounds on the time the auxiliary field needs to reach the flipped
/// stationary profile (asymptotic in the maximal-current phase).
pub fn default_horizon(
    model: &Model,
    spec: &BoundarySpec,
    target: &Profile,
    opts: &PathOptions,
) -> Result<f64, PathError> {
    let flux = model.flux();
    let rs = flux.rho_star();
    if spec.rho_l < spec.rho_r {
        let wl = flux.phi(spec.rho_l);
        let wr = flux.phi(spec.rho_r);
        let y0 = resolve_anchor(model, spec, target, opts)?;
        let v = match spec.phase {
            Phase::Coexistence => 0.0,
            _ => flux.shock_speed(wl, wr),
        };
        let theta = line_exit_time(1.0 - y0, v);
        let theta_fin = if theta.is_finite() { theta } else { 0.0 };
        let absorb = match spec.phase {
            Phase::Coexistence => {
                let in_l = flux.shock_speed(spec.rho_l, rs);
                let in_r = -flux.shock_speed(rs, spec.rho_r);
                4.0 * (1.0 / in_l).max(1.0 / in_r)
            }
            _ if v < 0.0 => {
                // datum ρ_l sweeps in from the left; the slowest content it
                // can meet is capped halfway between ρ* and φ(ρ_l)
                let c = target.max().clamp(wr, 0.5 * (rs + wl));
                3.0 / flux.shock_speed(spec.rho_l, c)
            }
            _ => {
                let c = target.min().clamp(0.5 * (rs + wr), wl);
                3.0 / -flux.shock_speed(c, spec.rho_r)
            }
        };
        Ok(theta_fin + absorb)
    } else {
        match spec.phase {
            Phase::MaximalCurrent => Ok(20.0 / flux.max_abs_speed()),
            Phase::LowDensity => {
                let tmax = target.max();
                if tmax <= rs + 1e-9 {
                    let s = if tmax > spec.rho_l + 1e-9 {
                        flux.shock_speed(spec.rho_l, tmax)
                    } else {
                        flux.fprime(spec.rho_l)
                    };
                    Ok(1.0 + 2.0 / s)
                } else {
                    // the entering front has to chase the fan draining the
                    // heavy remnant through the right boundary
                    let t2 = -1.0 / flux.fprime(flux.phi(spec.rho_l));
                    let c2 = flux.fprime_inv(-0.5 / t2);
                    Ok(2.0 * t2 + 3.0 / flux.shock_speed(spec.rho_l, c2))
                }
            }
            _ => {
                let tmin = target.min();
                if tmin >= rs - 1e-9 {
                    let s = if tmin < spec.rho_r - 1e-9 {
                        -flux.shock_speed(tmin, spec.rho_r)
                    } else {
                        -flux.fprime(spec.rho_r)
                    };
                    Ok(1.0 + 2.0 / s)
                } else {
                    let t2 = 1.0 / flux.fprime(flux.phi(spec.rho_r));
                    let c2 = flux.fprime_inv(0.5 / t2);
                    Ok(2.0 * t2 + 3.0 / -flux.shock_speed(c2, spec.rho_r))
                }
            }
        }
    }
}

fn record_steps(snapshots: &Snapshots, steps: usize, dt: f64) -> Vec<usize> {
    match snapshots {
        Snapshots::EveryStep => (0..=steps).collect(),
        Snapshots::Times(ts) => {
            let mut idx: Vec<usize> = ts
                .iter()
                .map(|&t| ((t / dt).round() as usize).min(steps))
                .collect();
            idx.sort_unstable();
            idx.dedup();
            idx
        }
    }
}

/// Path construction for ρ_l < ρ_r: grow a jump at the anchor position.
///
/// Auxiliary frame: the line starts at ỹ = 1 − y and moves at the speed of
/// the φ(ρ_l) | φ(ρ_r) jump. While it is inside, the field left of the line
/// sees data (ρ_r, φ(ρ_l)) and the field right of it (φ(ρ_r), ρ_l); the
/// traces pinned at the line are imposed by rewriting the cells beyond it
/// every step, so each one-sided field carries the correct jump trace without
/// ever seeing the other side. After the line exits, the datum of the
/// absorbing side acts on both boundaries.
pub fn build_path_shock_regime(
    model: &Model,
    spec: &BoundarySpec,
    target: &Profile,
    opts: &PathOptions,
) -> Result<PathResult, PathError> {
    if spec.rho_l >= spec.rho_r {
        return Err(PathError::WrongRegime("needs ρ_l < ρ_r"));
    }
    let flux = model.flux();
    let n = target.len();
    let dx = target.dx();
    let wl = flux.phi(spec.rho_l);
    let wr = flux.phi(spec.rho_r);

    let y0 = resolve_anchor(model, spec, target, opts)?;
    let ytil = 1.0 - y0;
    let v = match spec.phase {
        Phase::Coexistence => 0.0,
        _ => flux.shock_speed(wl, wr),
    };
    let theta = line_exit_time(ytil, v);
    let exit_right = v > 0.0 || (v == 0.0 && ytil >= 0.5);
    let rho_b = if exit_right { spec.rho_r } else { spec.rho_l };

    let horizon = match opts.horizon {
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(PathError::Horizon(t)),
        None => default_horizon(model, spec, target, opts)?,
    };
    let dt_max = opts.cfl * dx / flux.max_abs_speed();
    let steps = ((horizon / dt_max).ceil() as usize).max(1);
    let dt = horizon / steps as f64;
    let lam = dt / dx;
    let half = 0.5 * dx;

    let aux0 = target.flipped();
    let mut minus = aux0.values().to_vec();
    let mut plus = aux0.values().to_vec();
    let mut merged: Option<Vec<f64>> = None;
    let mut fluxes = vec![0.0; n + 1];
    let centers: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dx).collect();

    // A moving line is rendered as a short ramp sliding continuously with z.
    // A sharp interface would advance by whole-cell flips, and those flips
    // carry spurious production that does not vanish with the mesh; a
    // translating ramp keeps the recorded jump at its Rankine-Hugoniot
    // production rate, like the smeared fronts the scheme itself emits. A
    // standing line stays sharp: it is an exact fixed point of the scheme.
    let ramp = if v == 0.0 { 0.0 } else { 6.0 * dx };
    let stitch = |minus: &[f64], plus: &[f64], z: f64| -> Vec<f64> {
        centers
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if ramp == 0.0 {
                    return if c < z { minus[i] } else { plus[i] };
                }
                let s = (c - z) / ramp + 0.5;
                if s <= 0.0 {
                    minus[i]
                } else if s >= 1.0 {
                    plus[i]
                } else {
                    (1.0 - s) * minus[i] + s * plus[i]
                }
            })
            .collect()
    };
    let advance = |cells: &mut [f64], ghost_l: f64, ghost_r: f64, fluxes: &mut [f64]| {
        fluxes[0] = godunov_flux(flux, ghost_l, cells[0]);
        fluxes[n] = godunov_flux(flux, cells[n - 1], ghost_r);
        for i in 1..n {
            fluxes[i] = godunov_flux(flux, cells[i - 1], cells[i]);
        }
        for (i, c) in cells.iter_mut().enumerate() {
            *c -= lam * (fluxes[i + 1] - fluxes[i]);
        }
    };

    let wanted = record_steps(&opts.snapshots, steps, dt);
    let mut next_wanted = 0usize;
    let mut times = Vec::with_capacity(wanted.len());
    let mut snaps = Vec::with_capacity(wanted.len());
    if wanted.first() == Some(&0) {
        times.push(0.0);
        snaps.push(aux0.clone());
        next_wanted = 1;
    }

    for step in 0..steps {
        let t = step as f64 * dt;
        if merged.is_none() {
            let z = ytil + v * t;
            let done =
                t >= theta || (v < 0.0 && z <= half) || (v > 0.0 && z >= 1.0 - half);
            if done {
                merged = Some(stitch(&minus, &plus, z));
            }
        }
        match merged.as_mut() {
            Some(state) => advance(state, rho_b, rho_b, &mut fluxes),
            None => {
                let z = ytil + v * t;
                for i in 0..n {
                    if centers[i] > z {
                        minus[i] = wl;
                    } else {
                        plus[i] = wr;
                    }
                }
                advance(&mut minus, spec.rho_r, wl, &mut fluxes);
                advance(&mut plus, wr, spec.rho_l, &mut fluxes);
            }
        }
        if wanted.get(next_wanted) == Some(&(step + 1)) {
            let t1 = (step + 1) as f64 * dt;
            let snap = match merged.as_ref() {
                Some(state) => state.clone(),
                None => stitch(&minus, &plus, ytil + v * t1),
            };
            times.push(t1);
            snaps.push(Profile::from_values(snap)?);
            next_wanted += 1;
        }
    }

    let auxiliary = SpaceTimeField::new(times, snaps)?;
    let path = auxiliary.reversed(true);
    Ok(PathResult {
        path,
        auxiliary,
        horizon,
        theta,
        anchor: Some(y0),
    })
}

/// Path construction for ρ_l ≥ ρ_r: no jump is grown.
///
/// The auxiliary data are read off the exact rarefaction evolution of the
/// conjugated optimal envelope, G̃(0, x) = φ(F(1 − x)) padded with φ(ρ_r) on
/// the left and φ(ρ_l) on the right; the pads flowing in reproduce the
/// boundary-driven parts of that evolution. The auxiliary field itself is a
/// Godunov run from the flipped target under the data t ↦ φ(G̃(t, 0⁺)),
/// φ(G̃(t, 1⁻)).
pub fn build_path_rarefaction_regime(
    model: &Model,
    spec: &BoundarySpec,
    target: &Profile,
    opts: &PathOptions,
) -> Result<PathResult, PathError> {
    if spec.rho_l < spec.rho_r {
        return Err(PathError::WrongRegime("needs ρ_l ≥ ρ_r"));
    }
    let flux = model.flux();
    let n = target.len();
    let dx = target.dx();

    let envelope = optimal_envelope(model, spec, target)?;
    let mut values = Vec::with_capacity(n + 2);
    values.push(flux.phi(spec.rho_r));
    for i in 0..n {
        let g = flux.phi(envelope.values()[n - 1 - i]);
        // guard against rounding at the envelope's clamped ends
        values.push(g.min(*values.last().unwrap()));
    }
    values.push(flux.phi(spec.rho_l).min(*values.last().unwrap()));
    let edges: Vec<f64> = (0..=n).map(|i| i as f64 * dx).collect();
    let hull = MonotoneStep::new(edges, values)?;

    let horizon = match opts.horizon {
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(PathError::Horizon(t)),
        None => default_horizon(model, spec, target, opts)?,
    };
    let aux0 = target.flipped();
    let record = match &opts.snapshots {
        Snapshots::EveryStep => Record::EveryStep,
        Snapshots::Times(ts) => Record::Times(ts),
    };
    let sol = solve_ibvp(
        flux,
        &aux0,
        |t| flux.phi(hull.eval(flux, t, 0.0)),
        |t| flux.phi(hull.eval(flux, t, 1.0)),
        horizon,
        record,
        opts.cfl,
    )?;

    let auxiliary = sol.field;
    let path = auxiliary.reversed(true);
    Ok(PathResult {
        path,
        auxiliary,
        horizon,
        theta: 0.0,
        anchor: None,
    })
}

/// Wave-arithmetic upper bound on the time the forward evolution of
/// `initial` needs to reach the stationary profile, when one exists in
/// finite time. Returns `None` in the maximal-current phase (relaxation is
/// only asymptotic) and when the initial values sit too close to a conjugate
/// plateau for the entering fronts to make progress.
pub fn relaxation_time_bound(
    model: &Model,
    spec: &BoundarySpec,
    initial: &Profile,
) -> Option<f64> {
    let flux = model.flux();
    let rs = flux.rho_star();
    let margin = 1e-6 * flux.capacity();
    let (lo, hi) = (initial.min(), initial.max());
    match spec.phase {
        Phase::MaximalCurrent => None,
        Phase::LowDensity => {
            if hi >= flux.phi(spec.rho_l) - margin {
                return None;
            }
            let s = if hi > spec.rho_l {
                flux.shock_speed(spec.rho_l, hi)
            } else {
                flux.fprime(spec.rho_l)
            };
            let mut t = 1.0 / s;
            // content above φ(ρ_r) throttles the drain through the right
            // boundary to the stationary current
            if spec.rho_r > rs && hi > flux.phi(spec.rho_r) {
                t += flux.capacity() / (flux.f(spec.rho_r) - flux.f(spec.rho_l));
            }
            Some(t)
        }
        Phase::HighDensity => {
            if lo <= flux.phi(spec.rho_r) + margin {
                return None;
            }
            let s = if lo < spec.rho_r {
                -flux.shock_speed(lo, spec.rho_r)
            } else {
                -flux.fprime(spec.rho_r)
            };
            let mut t = 1.0 / s;
            if spec.rho_l < rs && lo < flux.phi(spec.rho_l) {
                t += flux.capacity() / (flux.f(spec.rho_l) - flux.f(spec.rho_r));
            }
            Some(t)
        }
        Phase::Coexistence => {
            if lo <= spec.rho_l + margin || hi >= spec.rho_r - margin {
                return None;
            }
            let vl = flux.shock_speed(spec.rho_l, hi);
            let vr = -flux.shock_speed(lo, spec.rho_r);
            Some(1.0 / (vl + vr))
        }
    }
}

/// First time the forward Godunov evolution stops moving (sup-norm step
/// difference at most `tol`, with no later step exceeding it); `None` if it
/// is still moving at the horizon.
pub fn time_to_stationarity(
    model: &Model,
    spec: &BoundarySpec,
    initial: &Profile,
    horizon: f64,
    cfl: f64,
    tol: f64,
) -> Result<Option<f64>, PathError> {
    let sol = solve_ibvp(
        model.flux(),
        initial,
        |_| spec.rho_l,
        |_| spec.rho_r,
        horizon,
        Record::EveryStep,
        cfl,
    )?;
    let profiles = sol.field.profiles();
    let mut last_active = None;
    for k in 0..profiles.len() - 1 {
        let d = profiles[k]
            .values()
            .iter()
            .zip(profiles[k + 1].values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if d > tol {
            last_active = Some(k + 1);
        }
    }
    Ok(match last_active {
        None => Some(0.0),
        Some(j) if j == profiles.len() - 1 => None,
        Some(j) => Some(sol.field.times()[j]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelDescriptor;
    use approx::assert_abs_diff_eq;

    fn asep(rho_l: f64, rho_r: f64) -> (Model, BoundarySpec) {
        let descr: ModelDescriptor =
            serde_json::from_str(&format!(r#"{{"flux":"asep","rho_l":{rho_l},"rho_r":{rho_r}}}"#))
                .unwrap();
        let (model, spec) = Model::from_descriptor(&descr).unwrap();
        (model, spec)
    }

    fn linf(a: &Profile, b: &Profile) -> f64 {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn shock_regime_path_relaxes_to_the_low_density_profile() {
        let (model, spec) = asep(0.2, 0.6);
        let target = Profile::uniform(0.45, 200);
        let res = build_path(&model, &spec, &target, &PathOptions::default()).unwrap();
        assert_eq!(res.anchor, Some(1.0));
        assert_abs_diff_eq!(res.theta, 0.0);
        // endpoints: the path starts at the stationary profile and ends at
        // the target exactly
        assert_abs_diff_eq!(linf(res.path.last(), &target), 0.0);
        let stationary = Profile::uniform(0.2, 200);
        assert!(linf(res.path.first(), &stationary) <= 1e-9);
        // the reversal convention: aux(t) = flip(path(T − t))
        assert_abs_diff_eq!(
            linf(&res.auxiliary.first().flipped(), res.path.last()),
            0.0
        );
    }

    #[test]
    fn shock_regime_matches_the_interior_jump_solution() {
        let (model, spec) = asep(0.2, 0.6);
        let flux = model.flux();
        let n = 400;
        let rho = 0.45;
        let target = Profile::uniform(rho, n);
        let opts = PathOptions {
            horizon: Some(2.5),
            snapshots: Snapshots::Times(vec![0.4, 1.5]),
            ..PathOptions::default()
        };
        let res = build_path(&model, &spec, &target, &opts).unwrap();
        // uniform target below the critical density: the auxiliary field is
        // the single entering jump ρ_l | ρ at its Rankine-Hugoniot speed
        let v = flux.shock_speed(0.2, rho);
        for (t, p) in res.auxiliary.times().iter().zip(res.auxiliary.profiles()) {
            let exact = Profile::step(0.2, rho, (v * t).min(1.0), n);
            assert!(p.l1_distance(&exact).unwrap() < 0.02, "t = {t}");
        }
    }

    #[test]
    fn coexistence_path_places_the_jump_where_asked() {
        let (model, spec) = asep(0.3, 0.7);
        let n = 200;
        let target = Profile::uniform(0.5, n);
        let opts = PathOptions {
            shock_anchor: Some(0.4),
            ..PathOptions::default()
        };
        let res = build_path(&model, &spec, &target, &opts).unwrap();
        assert!(res.theta.is_infinite());
        let wanted = Profile::step(0.3, 0.7, 0.4, n);
        assert!(res.path.first().l1_distance(&wanted).unwrap() <= 2.0 / n as f64);
    }

    #[test]
    fn rarefaction_regime_path_relaxes_to_the_high_density_profile() {
        let (model, spec) = asep(0.8, 0.6);
        let n = 200;
        let target = Profile::uniform(0.75, n);
        let opts = PathOptions {
            horizon: Some(8.0),
            ..PathOptions::default()
        };
        let res = build_path(&model, &spec, &target, &opts).unwrap();
        assert!(res.anchor.is_none());
        assert_abs_diff_eq!(linf(res.path.last(), &target), 0.0);
        let stationary = Profile::uniform(0.6, n);
        assert!(linf(res.path.first(), &stationary) <= 1e-9);
    }

    #[test]
    fn maximal_current_path_approaches_the_sonic_profile() {
        let (model, spec) = asep(0.7, 0.3);
        let n = 200;
        let target = Profile::uniform(0.25, n);
        let res = build_path(&model, &spec, &target, &PathOptions::default()).unwrap();
        let sonic = Profile::uniform(0.5, n);
        let d_end = res.path.first().l1_distance(&sonic).unwrap();
        let (_, mid) = res.auxiliary.nearest(0.3 * res.horizon);
        let d_mid = mid.l1_distance(&sonic).unwrap();
        assert!(d_end < 0.05, "still {d_end} from the sonic profile");
        assert!(d_end < 0.5 * d_mid, "no decay: {d_mid} -> {d_end}");
    }

    #[test]
    fn relaxation_bound_covers_the_measured_time() {
        let (model, spec) = asep(0.2, 0.6);

        let initial = Profile::uniform(0.3, 200);
        let bound = relaxation_time_bound(&model, &spec, &initial).unwrap();
        assert_abs_diff_eq!(bound, 1.0 / ((0.21 - 0.16) / 0.1), epsilon = 1e-12);
        let t = time_to_stationarity(&model, &spec, &initial, 1.5 * bound, tol::CFL, 1e-13)
            .unwrap()
            .expect("should settle inside the bound");
        assert!(t > 0.9 * bound && t <= 1.25 * bound, "t = {t}, bound = {bound}");
    }

    #[test]
    fn relaxation_bound_allows_for_boundary_injected_mass() {
        let (model, spec) = asep(0.2, 0.6);

        let crossing = 1.0 / ((0.25 - 0.16) / 0.3);
        let initial = Profile::uniform(0.5, 200);
        let bound = relaxation_time_bound(&model, &spec, &initial).unwrap();
        assert_abs_diff_eq!(bound, crossing + 1.0 / (0.24 - 0.16), epsilon = 1e-12);
        let t = time_to_stationarity(&model, &spec, &initial, bound, tol::CFL, 1e-13)
            .unwrap()
            .expect("should settle inside the bound");
        assert!(t > crossing, "the plain crossing time {crossing} was enough (t = {t})");
        assert!(t <= bound, "t = {t}, bound = {bound}");
    }

    #[test]
    fn coexistence_fronts_meet_inside_the_bound() {
        let (model, spec) = asep(0.3, 0.7);
        let initial = Profile::uniform(0.5, 200);
        let bound = relaxation_time_bound(&model, &spec, &initial).unwrap();
        let t = time_to_stationarity(&model, &spec, &initial, 2.0 * bound, tol::CFL, 1e-13)
            .unwrap()
            .expect("standing shock should form");
        assert!(t <= 1.5 * bound, "t = {t}, bound = {bound}");
    }

    #[test]
    fn maximal_current_never_settles() {
        let (model, spec) = asep(0.7, 0.3);
        let initial = Profile::uniform(0.4, 150);
        assert!(relaxation_time_bound(&model, &spec, &initial).is_none());
        let t = time_to_stationarity(&model, &spec, &initial, 8.0, tol::CFL, 1e-13).unwrap();
        assert!(t.is_none(), "settled at {t:?}");
    }
}
