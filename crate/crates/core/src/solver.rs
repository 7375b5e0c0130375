//! Solvers for the initial-boundary value problem on (0,1).
//!
//! Four routes to the entropy solution, used to cross-check each other:
//! a Godunov finite-volume scheme with relaxed boundary data imposed through
//! ghost cells, a half-line Hopf-Lax formula, exact forward characteristics
//! for nonincreasing data, and a dynamic-programming evaluation of the
//! boundary variational formula whose spatial derivative is the solution.

use crate::fields::{FieldError, Profile, SpaceTimeField};
use crate::model::FluxModel;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("cfl number must lie in (0,1], got {0}")]
    Cfl(f64),
    #[error("horizon must be positive, got {0}")]
    Horizon(f64),
    #[error("record time {0} outside [0, horizon]")]
    RecordTime(f64),
    #[error("initial data must be nonincreasing for the characteristics solver")]
    NotMonotone,
    #[error("edges must be strictly increasing with one more value than edges")]
    BadStep,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// State the Godunov solver places at the interface between left value `a`
/// and right value `b`: the argmin of f over [a,b] for a ≤ b, the argmax of
/// f over [b,a] otherwise.
pub fn godunov_state(flux: &FluxModel, a: f64, b: f64) -> f64 {
    if a <= b {
        if flux.f(a) <= flux.f(b) {
            a
        } else {
            b
        }
    } else {
        flux.rho_star().clamp(b, a)
    }
}

/// Godunov numerical flux f(ω(a,b)).
pub fn godunov_flux(flux: &FluxModel, a: f64, b: f64) -> f64 {
    flux.f(godunov_state(flux, a, b))
}

/// Which time levels of the evolution to keep.
#[derive(Clone, Debug)]
pub enum Record<'a> {
    /// Snapshots at the step times closest to the requested instants
    /// (plus the initial one when 0 is requested).
    Times(&'a [f64]),
    /// Every step, initial profile included.
    EveryStep,
}

/// Output of the finite-volume evolution.
#[derive(Clone, Debug)]
pub struct IbvpSolution {
    pub field: SpaceTimeField,
    /// All step times, 0 through the horizon.
    pub step_times: Vec<f64>,
    /// First interior cell value at each step time.
    pub left_trace: Vec<f64>,
    /// Last interior cell value at each step time.
    pub right_trace: Vec<f64>,
    pub dt: f64,
    /// Time-integrated flux through the left boundary.
    pub inflow: f64,
    /// Time-integrated flux through the right boundary.
    pub outflow: f64,
}

/// Godunov evolution of `initial` under boundary data `left`/`right`
/// (functions of time, imposed in the relaxed sense through ghost cells).
/// Uses a uniform step at the requested CFL number.
pub fn solve_ibvp(
    flux: &FluxModel,
    initial: &Profile,
    left: impl Fn(f64) -> f64,
    right: impl Fn(f64) -> f64,
    horizon: f64,
    record: Record,
    cfl: f64,
) -> Result<IbvpSolution, SolverError> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(SolverError::Cfl(cfl));
    }
    if !(horizon > 0.0) {
        return Err(SolverError::Horizon(horizon));
    }
    let n = initial.len();
    let dx = initial.dx();
    let dt_max = cfl * dx / flux.max_abs_speed();
    let steps = ((horizon / dt_max).ceil() as usize).max(1);
    let dt = horizon / steps as f64;

    let record_steps: Vec<usize> = match record {
        Record::EveryStep => (0..=steps).collect(),
        Record::Times(ts) => {
            let mut idx: Vec<usize> = Vec::with_capacity(ts.len());
            for &t in ts {
                if !(0.0..=horizon * (1.0 + 1e-12)).contains(&t) {
                    return Err(SolverError::RecordTime(t));
                }
                idx.push(((t / dt).round() as usize).min(steps));
            }
            idx.sort_unstable();
            idx.dedup();
            idx
        }
    };

    let mut rho: Vec<f64> = initial.values().to_vec();
    let mut fluxes = vec![0.0; n + 1];
    let mut snap_times = Vec::with_capacity(record_steps.len());
    let mut snaps = Vec::with_capacity(record_steps.len());
    let mut step_times = Vec::with_capacity(steps + 1);
    let mut left_trace = Vec::with_capacity(steps + 1);
    let mut right_trace = Vec::with_capacity(steps + 1);
    let mut inflow = 0.0;
    let mut outflow = 0.0;

    step_times.push(0.0);
    left_trace.push(rho[0]);
    right_trace.push(rho[n - 1]);
    let mut next_record = 0;
    if record_steps.first() == Some(&0) {
        snap_times.push(0.0);
        snaps.push(Profile::from_values(rho.clone())?);
        next_record = 1;
    }

    for step in 0..steps {
        let t = step as f64 * dt;
        fluxes[0] = godunov_flux(flux, left(t), rho[0]);
        fluxes[n] = godunov_flux(flux, rho[n - 1], right(t));
        for i in 1..n {
            fluxes[i] = godunov_flux(flux, rho[i - 1], rho[i]);
        }
        let lam = dt / dx;
        for i in 0..n {
            rho[i] -= lam * (fluxes[i + 1] - fluxes[i]);
        }
        inflow += dt * fluxes[0];
        outflow += dt * fluxes[n];
        let t1 = (step + 1) as f64 * dt;
        step_times.push(t1);
        left_trace.push(rho[0]);
        right_trace.push(rho[n - 1]);
        if record_steps.get(next_record) == Some(&(step + 1)) {
            snap_times.push(t1);
            snaps.push(Profile::from_values(rho.clone())?);
            next_record += 1;
        }
    }

    Ok(IbvpSolution {
        field: SpaceTimeField::new(snap_times, snaps)?,
        step_times,
        left_trace,
        right_trace,
        dt,
        inflow,
        outflow,
    })
}

/// Initial datum for the half-line formula: a constant state on x < 0 and
/// piecewise-constant samples on x > 0 (cell width `dx`, extended to the
/// right by the final sample).
#[derive(Clone, Debug)]
pub struct HalfLineData<'a> {
    pub left_state: f64,
    pub samples: &'a [f64],
    pub dx: f64,
}

impl HalfLineData<'_> {
    fn sample(&self, x: f64) -> f64 {
        if x < 0.0 {
            return self.left_state;
        }
        let i = ((x / self.dx) as usize).min(self.samples.len() - 1);
        self.samples[i]
    }
}

/// Entropy solution on the line by the Hopf-Lax formula,
/// u(t,x) = (f′)⁻¹((x − y*)/t) with y* minimizing −∫_0^y u0 + t f*((x−y)/t).
/// The minimization is exact: per sample cell the objective is convex with an
/// explicit interior stationary point, and the x < 0 ray has a closed form.
pub fn hopf_half_line(flux: &FluxModel, data: &HalfLineData, t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        return data.sample(x);
    }
    let s_max = flux.fprime(0.0);
    let s_min = flux.fprime(flux.capacity());
    let value = |y: f64| -> f64 {
        let u0_int = if y <= 0.0 {
            data.left_state * y
        } else {
            let mut acc = 0.0;
            let full = ((y / data.dx) as usize).min(data.samples.len());
            for (i, &v) in data.samples[..full].iter().enumerate() {
                let a = i as f64 * data.dx;
                let b = ((i + 1) as f64 * data.dx).min(y);
                acc += v * (b - a);
            }
            let covered = full as f64 * data.dx;
            if y > covered {
                acc += data.sample(covered) * (y - covered);
            }
            acc
        };
        -u0_int + t * flux.conjugate((x - y) / t)
    };

    let mut best_y = 0.0;
    let mut best = value(0.0);
    let mut consider = |y: f64| {
        let v = value(y);
        if v < best {
            best = v;
            best_y = y;
        }
    };

    // the ray y ≤ 0 carries the constant state; convex objective with
    // stationary point where the leg slope equals f′(left_state)
    for y in [x - t * flux.fprime(data.left_state), x - t * s_max] {
        if y < 0.0 {
            consider(y);
        }
    }
    // cells intersecting the feasible window [x − t·f′(0), x − t·f′(K)]
    let y_lo = (x - t * s_max).max(0.0);
    let y_hi = x - t * s_min;
    if y_hi > 0.0 {
        let j_lo = (y_lo / data.dx) as usize;
        let j_hi = (y_hi / data.dx).ceil() as usize;
        for j in j_lo..=j_hi {
            let u0 = data.samples[j.min(data.samples.len() - 1)];
            let a = (j as f64 * data.dx).max(y_lo);
            let b = ((j + 1) as f64 * data.dx).min(y_hi);
            if b < a {
                continue;
            }
            let stat = x - t * flux.fprime(u0);
            consider(stat.clamp(a, b));
        }
    }
    flux.fprime_inv((x - best_y) / t)
}

/// Nonincreasing piecewise-constant initial datum on the line:
/// `values[0]` left of `edges[0]`, `values[i]` on (edges[i−1], edges[i]),
/// the last value to the right of the last edge.
#[derive(Clone, Debug)]
pub struct MonotoneStep {
    edges: Vec<f64>,
    values: Vec<f64>,
}

impl MonotoneStep {
    pub fn new(edges: Vec<f64>, values: Vec<f64>) -> Result<Self, SolverError> {
        if values.len() != edges.len() + 1 || edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SolverError::BadStep);
        }
        if values.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            return Err(SolverError::NotMonotone);
        }
        Ok(MonotoneStep { edges, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Exact solution by characteristics. Nonincreasing data produce only
    /// rarefaction waves, so constant regions translate at their
    /// characteristic speed and each down-jump opens a centered fan; the
    /// regions tile the line in their original order.
    pub fn eval(&self, flux: &FluxModel, t: f64, x: f64) -> f64 {
        if t <= 0.0 {
            let i = self.edges.partition_point(|&e| e <= x);
            return self.values[i];
        }
        // breakpoints alternate: end of constant region j, end of fan j
        let m = self.edges.len();
        let mut lo = 0usize;
        let mut hi = 2 * m;
        while lo < hi {
            let mid = (lo + hi) / 2;
            let j = mid / 2;
            let bp = if mid % 2 == 0 {
                self.edges[j] + t * flux.fprime(self.values[j])
            } else {
                self.edges[j] + t * flux.fprime(self.values[j + 1])
            };
            if bp <= x {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo == 2 * m {
            return self.values[m];
        }
        if lo % 2 == 0 {
            self.values[lo / 2]
        } else {
            flux.fprime_inv((x - self.edges[lo / 2]) / t)
        }
    }

    /// Sample the solution at the cell centers of an n-cell grid on (0,1).
    pub fn profile(&self, flux: &FluxModel, t: f64, n: usize) -> Profile {
        Profile::from_fn(n, |x| self.eval(flux, t, x))
    }
}

/// Dynamic-programming evaluation of the boundary variational formula with
/// constant boundary data: R(t,x) is the best value over characteristics
/// that start on the initial potential, may dwell at either boundary paying
/// the boundary flux rate, and move with speeds in [f′(K), f′(0)] paying the
/// concave running profit f⋆(γ̇) = inf_ρ [γ̇ρ − f(ρ)]. The density is the
/// x-derivative of R, read off the optimal final leg slope.
pub struct VariationalSolver<'a> {
    flux: &'a FluxModel,
    rho0: Vec<f64>,
    r0: Vec<f64>,
    dx: f64,
    /// dwell rate at the left boundary, f(min(ρ_l, ρ*))
    c0: f64,
    /// dwell rate at the right boundary, f(max(ρ_r, ρ*))
    c1: f64,
    s_max: f64,
    s_min: f64,
}

/// Time-grid resolution for the dwell scans.
const DWELL_GRID: usize = 2048;

impl<'a> VariationalSolver<'a> {
    pub fn new(flux: &'a FluxModel, initial: &Profile, rho_l: f64, rho_r: f64) -> Self {
        let rho0 = initial.values().to_vec();
        let dx = initial.dx();
        let mut r0 = Vec::with_capacity(rho0.len() + 1);
        r0.push(0.0);
        for &v in &rho0 {
            r0.push(r0.last().unwrap() + v * dx);
        }
        let star = flux.rho_star();
        VariationalSolver {
            flux,
            rho0,
            r0,
            dx,
            c0: flux.f(rho_l.min(star)),
            c1: flux.f(rho_r.max(star)),
            s_max: flux.fprime(0.0),
            s_min: flux.fprime(flux.capacity()),
        }
    }

    fn fstar(&self, theta: f64) -> f64 {
        -self.flux.conjugate(theta)
    }

    fn r0_at(&self, y: f64) -> f64 {
        crate::numerics::lerp_uniform(&self.r0, 0.0, self.dx, y)
    }

    /// Best initial-leg value into boundary position `target` (0 or 1) at
    /// time tau: max over y of R0(y) + tau·f⋆((target − y)/tau).
    fn arrival(&self, target: f64, tau: f64) -> f64 {
        if tau <= 0.0 {
            return self.r0_at(target);
        }
        let y_lo = (target - tau * self.s_max).max(0.0);
        let y_hi = (target - tau * self.s_min).min(1.0);
        let mut best = f64::NEG_INFINITY;
        let j_lo = (y_lo / self.dx) as usize;
        let j_hi = ((y_hi / self.dx).ceil() as usize).min(self.rho0.len());
        for j in j_lo..j_hi {
            let a = (j as f64 * self.dx).max(y_lo);
            let b = ((j + 1) as f64 * self.dx).min(y_hi);
            if b < a {
                continue;
            }
            // concave in y within the cell; stationary where the slope's
            // density matches the cell density
            let stat = target - tau * self.flux.fprime(self.rho0[j]);
            let y = stat.clamp(a, b);
            let v = self.r0_at(y) + tau * self.fstar((target - y) / tau);
            if v > best {
                best = v;
            }
        }
        best
    }

    /// Value and final-leg density at (t, x).
    fn solve(&self, t: f64, x: f64, precomp: &DwellTables) -> (f64, f64) {
        let mut best = f64::NEG_INFINITY;
        let mut density = 0.0;

        // interior class: straight characteristic from the initial line
        {
            let y_lo = (x - t * self.s_max).max(0.0);
            let y_hi = (x - t * self.s_min).min(1.0);
            let j_lo = (y_lo / self.dx) as usize;
            let j_hi = ((y_hi / self.dx).ceil() as usize).min(self.rho0.len());
            for j in j_lo..j_hi {
                let a = (j as f64 * self.dx).max(y_lo);
                let b = ((j + 1) as f64 * self.dx).min(y_hi);
                if b < a {
                    continue;
                }
                let stat = x - t * self.flux.fprime(self.rho0[j]);
                let y = stat.clamp(a, b);
                let v = self.r0_at(y) + t * self.fstar((x - y) / t);
                if v > best {
                    best = v;
                    density = self.flux.fprime_inv((x - y) / t);
                }
            }
        }

        // final leg out of a dwell at the left boundary
        if x <= 1e-14 {
            if precomp.w0[DWELL_GRID] > best {
                best = precomp.w0[DWELL_GRID];
                density = self.flux.fprime_inv(0.0);
            }
        } else {
            let d_min = x / self.s_max;
            for (k, &w) in precomp.w0.iter().enumerate() {
                let t2 = t * k as f64 / DWELL_GRID as f64;
                let d = t - t2;
                if d < d_min || w == f64::NEG_INFINITY {
                    continue;
                }
                let v = w + d * self.fstar(x / d);
                if v > best {
                    best = v;
                    density = self.flux.fprime_inv(x / d);
                }
            }
        }

        // final leg out of a dwell at the right boundary
        if x >= 1.0 - 1e-14 {
            if precomp.w1[DWELL_GRID] > best {
                best = precomp.w1[DWELL_GRID];
                density = self.flux.fprime_inv(0.0);
            }
        } else {
            let d_min = (1.0 - x) / (-self.s_min);
            for (k, &w) in precomp.w1.iter().enumerate() {
                let t2 = t * k as f64 / DWELL_GRID as f64;
                let d = t - t2;
                if d < d_min || w == f64::NEG_INFINITY {
                    continue;
                }
                let v = w + d * self.fstar(-(1.0 - x) / d);
                if v > best {
                    best = v;
                    density = self.flux.fprime_inv(-(1.0 - x) / d);
                }
            }
        }

        (best, density)
    }

    fn tables(&self, t: f64) -> DwellTables {
        let g = DWELL_GRID;
        let dt = t / g as f64;
        // best value at the moment a dwell at 0 (resp. 1) ends, over both
        // one-dwell and two-dwell histories
        let s0: Vec<f64> = (0..=g).map(|k| self.arrival(0.0, k as f64 * dt)).collect();
        let s1: Vec<f64> = (0..=g).map(|k| self.arrival(1.0, k as f64 * dt)).collect();
        let d0 = dwell_scan(&s0, self.c0, dt);
        let d1 = dwell_scan(&s1, self.c1, dt);
        // crossings between the boundaries
        let cross_min_01 = 1.0 / self.s_max;
        let cross_min_10 = 1.0 / (-self.s_min);
        let mut e1 = vec![f64::NEG_INFINITY; g + 1];
        let mut e0 = vec![f64::NEG_INFINITY; g + 1];
        for k3 in 0..=g {
            let t3 = k3 as f64 * dt;
            for k2 in 0..k3 {
                let tau = t3 - k2 as f64 * dt;
                if tau >= cross_min_01 {
                    let v = d0[k2] + tau * self.fstar(1.0 / tau);
                    if v > e1[k3] {
                        e1[k3] = v;
                    }
                }
                if tau >= cross_min_10 {
                    let v = d1[k2] + tau * self.fstar(-1.0 / tau);
                    if v > e0[k3] {
                        e0[k3] = v;
                    }
                }
            }
        }
        let d01 = dwell_scan(&e1, self.c1, dt);
        let d10 = dwell_scan(&e0, self.c0, dt);
        let w0: Vec<f64> = d0.iter().zip(&d10).map(|(a, b)| a.max(*b)).collect();
        let w1: Vec<f64> = d1.iter().zip(&d01).map(|(a, b)| a.max(*b)).collect();
        DwellTables { w0, w1 }
    }

    /// R(t, x).
    pub fn value(&self, t: f64, x: f64) -> f64 {
        if t <= 0.0 {
            return self.r0_at(x);
        }
        let tables = self.tables(t);
        self.solve(t, x, &tables).0
    }

    /// Density profile at time t on the initial grid.
    pub fn density(&self, t: f64) -> Profile {
        let n = self.rho0.len();
        if t <= 0.0 {
            return Profile::from_values(self.rho0.clone()).unwrap();
        }
        let tables = self.tables(t);
        Profile::from_fn(n, |x| self.solve(t, x, &tables).1)
    }
}

struct DwellTables {
    w0: Vec<f64>,
    w1: Vec<f64>,
}

/// max over t1 ≤ t2 of arrive[t1] − c·(t2 − t1), by prefix scan.
fn dwell_scan(arrive: &[f64], c: f64, dt: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(arrive.len());
    let mut run = f64::NEG_INFINITY;
    for (k, &a) in arrive.iter().enumerate() {
        let t = k as f64 * dt;
        let shifted = if a == f64::NEG_INFINITY { a } else { a + c * t };
        if shifted > run {
            run = shifted;
        }
        out.push(if run == f64::NEG_INFINITY {
            run
        } else {
            run - c * t
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn asep() -> FluxModel {
        FluxModel::asep()
    }

    #[test]
    fn godunov_interface_states() {
        let f = asep();
        // increasing jump: pick the endpoint with the smaller flux
        assert_abs_diff_eq!(godunov_state(&f, 0.2, 0.6), 0.2);
        assert_abs_diff_eq!(godunov_state(&f, 0.2, 0.9), 0.9);
        // decreasing jump: transonic fans go through the maximizer
        assert_abs_diff_eq!(godunov_state(&f, 0.7, 0.2), 0.5);
        assert_abs_diff_eq!(godunov_state(&f, 0.45, 0.2), 0.45);
        assert_abs_diff_eq!(godunov_state(&f, 0.9, 0.6), 0.6);
    }

    #[test]
    fn shock_propagates_at_rankine_hugoniot_speed() {
        let f = asep();
        let n = 200;
        let initial = Profile::step(0.2, 0.6, 0.3, n);
        let sol = solve_ibvp(&f, &initial, |_| 0.2, |_| 0.6, 1.0, Record::Times(&[1.0]), 0.9)
            .unwrap();
        // speed (f(0.6) − f(0.2))/0.4 = 0.2, so the jump sits at 0.5
        let exact = Profile::step(0.2, 0.6, 0.5, n);
        let err = sol.field.last().l1_distance(&exact).unwrap();
        assert!(err < 2.0 / n as f64, "shock L1 error {err}");
    }

    #[test]
    fn rarefaction_matches_characteristics() {
        let f = asep();
        let n = 400;
        let initial = Profile::step(0.45, 0.25, 0.4, n);
        let sol = solve_ibvp(&f, &initial, |_| 0.45, |_| 0.25, 0.5, Record::Times(&[0.5]), 0.9)
            .unwrap();
        let step = MonotoneStep::new(vec![0.4], vec![0.45, 0.25]).unwrap();
        let exact = step.profile(&f, 0.5, n);
        let err = sol.field.last().l1_distance(&exact).unwrap();
        assert!(err < 2.0 / n as f64, "fan L1 error {err}");
    }

    #[test]
    fn mass_balance_is_exact() {
        let f = asep();
        let initial = Profile::from_fn(128, |x| 0.3 + 0.2 * (6.0 * x).sin().abs());
        let sol = solve_ibvp(&f, &initial, |_| 0.7, |_| 0.2, 0.8, Record::Times(&[0.8]), 0.9)
            .unwrap();
        let gained = sol.field.last().total_mass() - initial.total_mass();
        assert_abs_diff_eq!(gained, sol.inflow - sol.outflow, epsilon = 1e-12);
    }

    #[test]
    fn max_principle_and_order_preservation() {
        let f = asep();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let lo: Vec<f64> = (0..100).map(|_| rng.gen_range(0.1..0.5)).collect();
            let hi: Vec<f64> = lo.iter().map(|v| v + rng.gen_range(0.0..0.4)).collect();
            let dl = rng.gen_range(0.1..0.5);
            let dr = rng.gen_range(0.1..0.5);
            let run = |vals: Vec<f64>| {
                solve_ibvp(
                    &f,
                    &Profile::from_values(vals).unwrap(),
                    |_| dl,
                    |_| dr,
                    0.6,
                    Record::Times(&[0.6]),
                    0.9,
                )
                .unwrap()
            };
            let a = run(lo.clone());
            let b = run(hi.clone());
            let bound_hi = hi
                .iter()
                .fold(dl.max(dr), |m, &v| m.max(v));
            for (x, y) in a.field.last().values().iter().zip(b.field.last().values()) {
                assert!(x <= &(y + 1e-12), "ordering violated");
                assert!(*y <= bound_hi + 1e-12 && *x >= 0.0);
            }
        }
    }

    #[test]
    fn low_density_phase_relaxes_to_left_datum() {
        let f = asep();
        let initial = Profile::uniform(0.5, 100);
        let sol = solve_ibvp(&f, &initial, |_| 0.2, |_| 0.6, 8.0, Record::Times(&[8.0]), 0.9)
            .unwrap();
        let err = sol
            .field
            .last()
            .l1_distance(&Profile::uniform(0.2, 100))
            .unwrap();
        assert!(err < 0.01, "relaxation residual {err}");
    }

    #[test]
    fn hopf_constant_state_is_invariant() {
        let f = asep();
        let samples = vec![0.35; 64];
        let data = HalfLineData {
            left_state: 0.35,
            samples: &samples,
            dx: 1.0 / 16.0,
        };
        for &(t, x) in &[(0.3, 0.1), (1.0, -0.5), (2.0, 1.5)] {
            assert_abs_diff_eq!(hopf_half_line(&f, &data, t, x), 0.35, epsilon = 1e-12);
        }
    }

    #[test]
    fn hopf_standing_shock() {
        let f = asep();
        // 0.3 on the left, 0.7 on the right: zero-speed shock at the origin
        let samples = vec![0.7; 256];
        let data = HalfLineData {
            left_state: 0.3,
            samples: &samples,
            dx: 1.0 / 64.0,
        };
        for &x in &[-0.8, -0.3, -0.05] {
            assert_abs_diff_eq!(hopf_half_line(&f, &data, 1.0, x), 0.3, epsilon = 1e-10);
        }
        for &x in &[0.05, 0.4, 1.2] {
            assert_abs_diff_eq!(hopf_half_line(&f, &data, 1.0, x), 0.7, epsilon = 1e-10);
        }
    }

    #[test]
    fn hopf_rarefaction_fan() {
        let f = asep();
        let samples = vec![0.2; 256];
        let data = HalfLineData {
            left_state: 0.7,
            samples: &samples,
            dx: 1.0 / 64.0,
        };
        let t = 0.8;
        // fan between t·f′(0.7) and t·f′(0.2)
        assert_abs_diff_eq!(hopf_half_line(&f, &data, t, -0.5), 0.7, epsilon = 1e-10);
        assert_abs_diff_eq!(hopf_half_line(&f, &data, t, 0.6), 0.2, epsilon = 1e-10);
        let x = 0.1;
        let u = hopf_half_line(&f, &data, t, x);
        assert_abs_diff_eq!(f.fprime(u), x / t, epsilon = 1e-10);
    }

    #[test]
    fn characteristics_tile_the_line() {
        let f = asep();
        let step = MonotoneStep::new(vec![0.0, 0.5], vec![0.8, 0.5, 0.1]).unwrap();
        let t = 0.4;
        // left constant region
        assert_abs_diff_eq!(step.eval(&f, t, -0.5), 0.8, epsilon = 1e-12);
        // fan from the first edge
        let x = 0.0 + t * f.fprime(0.65);
        assert_abs_diff_eq!(step.eval(&f, t, x), 0.65, epsilon = 1e-10);
        // middle constant region: between fan ends
        let x = 0.5 * (0.0 + t * f.fprime(0.5) + 0.5 + t * f.fprime(0.5));
        assert_abs_diff_eq!(step.eval(&f, t, x), 0.5, epsilon = 1e-12);
        // far right
        assert_abs_diff_eq!(step.eval(&f, t, 2.0), 0.1, epsilon = 1e-12);
    }

    #[test]
    fn characteristics_reject_increasing_data() {
        assert!(matches!(
            MonotoneStep::new(vec![0.0], vec![0.2, 0.6]),
            Err(SolverError::NotMonotone)
        ));
    }

    #[test]
    fn variational_interior_matches_characteristics() {
        let f = asep();
        let n = 200;
        let initial = Profile::step(0.45, 0.25, 0.4, n);
        let vs = VariationalSolver::new(&f, &initial, 0.45, 0.25);
        let step = MonotoneStep::new(vec![0.4], vec![0.45, 0.25]).unwrap();
        let t = 0.5;
        let err = vs
            .density(t)
            .l1_distance(&step.profile(&f, t, n))
            .unwrap();
        assert!(err < 2.0 / n as f64, "variational fan error {err}");
    }

    #[test]
    fn variational_reproduces_stationary_value() {
        let f = asep();
        let initial = Profile::uniform(0.2, 100);
        let vs = VariationalSolver::new(&f, &initial, 0.2, 0.6);
        let t = 2.0;
        // stationary uniform state: R(t,x) = ρx − f(ρ)t
        for &x in &[0.25, 0.6, 0.9] {
            assert_abs_diff_eq!(
                vs.value(t, x),
                0.2 * x - f.f(0.2) * t,
                epsilon = 2e-3
            );
        }
        let err = vs
            .density(t)
            .l1_distance(&Profile::uniform(0.2, 100))
            .unwrap();
        assert!(err < 0.02, "stationary density error {err}");
    }

    #[test]
    fn variational_matches_godunov_with_boundary_waves() {
        let f = asep();
        let n = 200;
        // supercritical left datum floods the system from the left
        let initial = Profile::uniform(0.3, n);
        let (dl, dr) = (0.65, 0.25);
        let t = 0.7;
        let g = solve_ibvp(&f, &initial, |_| dl, |_| dr, t, Record::Times(&[t]), 0.9).unwrap();
        let vs = VariationalSolver::new(&f, &initial, dl, dr);
        let err = vs.density(t).l1_distance(g.field.last()).unwrap();
        assert!(err < 4.0 / n as f64, "variational boundary error {err}");
    }
}
