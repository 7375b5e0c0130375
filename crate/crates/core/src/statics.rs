//! The static large-deviation functional of a density profile.
//!
//! Two regimes, split by the ordering of the boundary data. For ρ_l < ρ_r the
//! functional couples the profile to a shock position y:
//!
//!   S[ρ, y] = ∫_0^y [h(ρ) − ρh′(ρ_l) + k(ρ_l)] + ∫_y^1 [h(ρ) − ρh′(ρ_r) + k(ρ_r)],
//!
//! minimized exactly over y (the integrand is piecewise linear in y on a
//! piecewise-constant profile) and offset by min(K(ρ_l), K(ρ_r)). For
//! ρ_l ≥ ρ_r it couples to a nonincreasing envelope F with values in
//! [ρ_r, ρ_l]:
//!
//!   S[ρ, F] = ∫_0^1 [h(ρ) − ρh′(F) + k(F)],
//!
//! maximized in closed form through a slope-truncated convex hull of the
//! density primitive and offset by the maximum of K over [ρ_r, ρ_l].

use crate::fields::Profile;
use crate::model::{BoundarySpec, Model, ModelError};
use crate::tol;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StaticsError {
    #[error("boundary data must satisfy rho_l < rho_r for the shock form")]
    NotShockRegime,
    #[error("boundary data must satisfy rho_l >= rho_r for the envelope form")]
    NotRarefactionRegime,
    #[error("envelope must be nonincreasing with values in [{lo:.4}, {hi:.4}]")]
    BadEnvelope { lo: f64, hi: f64 },
    #[error("profile and envelope grids differ: {0} vs {1}")]
    GridMismatch(usize, usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Locations extremizing the shock-position functional, as a union of
/// disjoint closed intervals (single points degenerate to [a, a]).
#[derive(Clone, Debug, PartialEq)]
pub struct MinimizerSet {
    pub intervals: Vec<(f64, f64)>,
}

impl MinimizerSet {
    fn from_edge_values(values: &[f64], best: f64, eps: f64, dx: f64) -> Self {
        let mut intervals = Vec::new();
        let mut run: Option<(usize, usize)> = None;
        for (i, &v) in values.iter().enumerate() {
            if v <= best + eps {
                run = Some(match run {
                    Some((a, _)) => (a, i),
                    None => (i, i),
                });
            } else if let Some((a, b)) = run.take() {
                intervals.push((a as f64 * dx, b as f64 * dx));
            }
        }
        if let Some((a, b)) = run {
            intervals.push((a as f64 * dx, b as f64 * dx));
        }
        MinimizerSet { intervals }
    }

    pub fn leftmost(&self) -> f64 {
        self.intervals[0].0
    }

    pub fn contains(&self, y: f64, eps: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(a, b)| y >= a - eps && y <= b + eps)
    }

    /// One representative per interval (the left end).
    pub fn representatives(&self) -> Vec<f64> {
        self.intervals.iter().map(|&(a, _)| a).collect()
    }
}

/// Result of the regime dispatch in [`quasi_potential_static`].
#[derive(Clone, Debug)]
pub struct StaticValue {
    pub value: f64,
    /// Optimal shock positions (ρ_l < ρ_r only).
    pub shock_positions: Option<MinimizerSet>,
    /// Optimal envelope (ρ_l ≥ ρ_r only).
    pub envelope: Option<Profile>,
}

fn require_shock(spec: &BoundarySpec) -> Result<(), StaticsError> {
    if spec.rho_l < spec.rho_r {
        Ok(())
    } else {
        Err(StaticsError::NotShockRegime)
    }
}

fn require_rarefaction(spec: &BoundarySpec) -> Result<(), StaticsError> {
    if spec.rho_l >= spec.rho_r {
        Ok(())
    } else {
        Err(StaticsError::NotRarefactionRegime)
    }
}

/// S[ρ, y] for an arbitrary shock position, exact on the cell grid.
pub fn s_shock_at(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
    y: f64,
) -> Result<f64, StaticsError> {
    require_shock(spec)?;
    let dx = profile.dx();
    let (hl, hr) = (model.hprime(spec.rho_l), model.hprime(spec.rho_r));
    let (kl, kr) = (model.k(spec.rho_l), model.k(spec.rho_r));
    let mut h_tot = 0.0;
    let mut mass_left = 0.0;
    let mut mass_tot = 0.0;
    for (i, &v) in profile.values().iter().enumerate() {
        let (a, b) = (i as f64 * dx, (i + 1) as f64 * dx);
        h_tot += model.h(v) * dx;
        mass_tot += v * dx;
        mass_left += v * (y.clamp(a, b) - a);
    }
    let y = y.clamp(0.0, 1.0);
    Ok(h_tot - hl * mass_left + kl * y - hr * (mass_tot - mass_left) + kr * (1.0 - y))
}

/// Values of the shock-position functional y ↦ ∫_0^y ρ − ρ_c·y at all cell
/// edges. Minimizers of S[ρ, ·] coincide with minimizers of this function.
pub fn position_functional(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
) -> Result<Vec<f64>, StaticsError> {
    require_shock(spec)?;
    let rho_c = model.rho_critical(spec)?;
    let dx = profile.dx();
    let mut out = Vec::with_capacity(profile.len() + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for &v in profile.values() {
        acc += (v - rho_c) * dx;
        out.push(acc);
    }
    Ok(out)
}

/// Extremizer sets of a per-edge value list, within [`tol::MINIMIZER`].
pub fn edge_argmin(values: &[f64], dx: f64) -> MinimizerSet {
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    MinimizerSet::from_edge_values(values, best, tol::MINIMIZER, dx)
}

pub fn edge_argmax(values: &[f64], dx: f64) -> MinimizerSet {
    let flipped: Vec<f64> = values.iter().map(|v| -v).collect();
    let best = flipped.iter().copied().fold(f64::INFINITY, f64::min);
    MinimizerSet::from_edge_values(&flipped, best, tol::MINIMIZER, dx)
}

/// Exact minimum of S[ρ, ·] over the shock position and its minimizer set.
pub fn s_shock_min(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
) -> Result<(f64, MinimizerSet), StaticsError> {
    require_shock(spec)?;
    let w = position_functional(model, spec, profile)?;
    let dx = profile.dx();
    let minimizers = edge_argmin(&w, dx);
    let value = s_shock_at(model, spec, profile, minimizers.leftmost())?;
    Ok((value, minimizers))
}

/// Per-cell slopes and edge values of a hull.
#[derive(Clone, Debug)]
pub struct HullResult {
    pub values: Vec<f64>,
    pub slopes: Vec<f64>,
}

/// Greatest convex minorant of edge samples on a uniform grid, with slopes
/// truncated to [smin, smax]: the largest convex function below the data
/// whose derivative stays in the band. Outside the band the hull follows
/// tangent lines of the unconstrained minorant.
pub fn truncated_convex_hull(values: &[f64], dx: f64, smin: f64, smax: f64) -> HullResult {
    assert!(values.len() >= 2, "hull needs at least two edges");
    assert!(smin <= smax, "empty slope band");
    let n = values.len();
    // lower hull by monotone chain; indices of hull vertices
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        while stack.len() >= 2 {
            let a = stack[stack.len() - 2];
            let b = stack[stack.len() - 1];
            // keep b only if it lies strictly below chord a..i
            let cross = (b - a) as f64 * (values[i] - values[a])
                - (i - a) as f64 * (values[b] - values[a]);
            if cross <= 0.0 {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(i);
    }
    let mut hull = vec![0.0; n];
    for w in stack.windows(2) {
        let (a, b) = (w[0], w[1]);
        for i in a..=b {
            let t = (i - a) as f64 / (b - a) as f64;
            hull[i] = values[a] * (1.0 - t) + values[b] * t;
        }
    }
    if stack.len() == 1 {
        hull[0] = values[0];
    }
    let raw_slopes: Vec<f64> = hull.windows(2).map(|w| (w[1] - w[0]) / dx).collect();
    // anchor edges of the middle section where the slope lies in the band
    let first_in = raw_slopes.iter().position(|&s| s >= smin).unwrap_or(n - 1);
    let last_in = raw_slopes
        .iter()
        .rposition(|&s| s <= smax)
        .map(|j| j + 1)
        .unwrap_or(first_in);
    let (anchor_lo, anchor_hi) = if first_in >= last_in {
        (first_in, first_in)
    } else {
        (first_in, last_in)
    };
    let mut out = hull.clone();
    for i in (0..anchor_lo).rev() {
        out[i] = out[i + 1] - smin * dx;
    }
    for i in anchor_hi + 1..n {
        out[i] = out[i - 1] + smax * dx;
    }
    let slopes = out
        .windows(2)
        .map(|w| ((w[1] - w[0]) / dx).clamp(smin, smax))
        .collect();
    HullResult { values: out, slopes }
}

/// Least concave majorant with slopes truncated to [smin, smax], by negation.
pub fn truncated_concave_hull(values: &[f64], dx: f64, smin: f64, smax: f64) -> HullResult {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    let h = truncated_convex_hull(&neg, dx, -smax, -smin);
    HullResult {
        values: h.values.iter().map(|v| -v).collect(),
        slopes: h.slopes.iter().map(|s| -s).collect(),
    }
}

/// The envelope maximizing S[ρ, ·]: φ∘F is the slope of the convex hull of
/// the density primitive truncated to slopes in [φ(ρ_l), φ(ρ_r)].
pub fn optimal_envelope(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
) -> Result<Profile, StaticsError> {
    require_rarefaction(spec)?;
    let dx = profile.dx();
    let mut primitive = Vec::with_capacity(profile.len() + 1);
    primitive.push(0.0);
    let mut acc = 0.0;
    for &v in profile.values() {
        acc += v * dx;
        primitive.push(acc);
    }
    let alpha = model.flux().phi(spec.rho_l);
    let beta = model.flux().phi(spec.rho_r);
    let hull = truncated_convex_hull(&primitive, dx, alpha, beta);
    let values = hull
        .slopes
        .iter()
        .map(|&s| model.flux().phi(s.clamp(alpha, beta)))
        .collect();
    Ok(Profile::from_values(values).expect("nonempty"))
}

fn check_envelope(spec: &BoundarySpec, envelope: &Profile) -> Result<(), StaticsError> {
    let (lo, hi) = (spec.rho_r, spec.rho_l);
    let bad = envelope
        .values()
        .iter()
        .any(|&v| v < lo - tol::MINIMIZER || v > hi + tol::MINIMIZER)
        || envelope
            .values()
            .windows(2)
            .any(|w| w[1] > w[0] + tol::MINIMIZER);
    if bad {
        return Err(StaticsError::BadEnvelope { lo, hi });
    }
    Ok(())
}

/// S[ρ, F] for a given admissible envelope (nonincreasing, values within
/// the closed interval of the boundary data).
pub fn s_rarefaction_at(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
    envelope: &Profile,
) -> Result<f64, StaticsError> {
    require_rarefaction(spec)?;
    if profile.len() != envelope.len() {
        return Err(StaticsError::GridMismatch(profile.len(), envelope.len()));
    }
    check_envelope(spec, envelope)?;
    let dx = profile.dx();
    let mut acc = 0.0;
    for (&r, &f) in profile.values().iter().zip(envelope.values()) {
        acc += (model.h(r) - r * model.hprime(f) + model.k(f)) * dx;
    }
    Ok(acc)
}

/// sup_F S[ρ, F], attained at the truncated-hull envelope.
pub fn s_rarefaction_sup(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
) -> Result<(f64, Profile), StaticsError> {
    let envelope = optimal_envelope(model, spec, profile)?;
    let value = s_rarefaction_at(model, spec, profile, &envelope)?;
    Ok((value, envelope))
}

/// The quasi-potential of a profile: regime dispatch on the boundary data
/// with the stationary offset subtracted, so stationary profiles score zero.
pub fn quasi_potential_static(
    model: &Model,
    spec: &BoundarySpec,
    profile: &Profile,
) -> Result<StaticValue, StaticsError> {
    if spec.rho_l < spec.rho_r {
        let (raw, minimizers) = s_shock_min(model, spec, profile)?;
        let offset = model.big_k(spec.rho_l).min(model.big_k(spec.rho_r));
        Ok(StaticValue {
            value: raw - offset,
            shock_positions: Some(minimizers),
            envelope: None,
        })
    } else {
        let (raw, envelope) = s_rarefaction_sup(model, spec, profile)?;
        let star = model.rho_star().clamp(spec.rho_r, spec.rho_l);
        Ok(StaticValue {
            value: raw - model.big_k(star),
            shock_positions: None,
            envelope: Some(envelope),
        })
    }
}
