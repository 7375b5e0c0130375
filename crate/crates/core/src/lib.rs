//! Quasi-potential computations for scalar conservation laws ∂_t ρ + ∂_x f(ρ) = 0
//! on the unit interval with relaxed (BLN) boundary conditions.
//!
//! The crate provides:
//!
//! * [`model`]: flux/entropy models, the decreasing involution φ with f∘φ = f,
//!   boundary costs, admissible boundary sets, and the stationary phase diagram;
//! * [`fields`]: discrete density profiles, space-time fields, CSV IO, and exact
//!   piecewise wave diagrams;
//! * [`solver`]: Godunov finite-volume evolution with ghost-cell boundary data,
//!   a Hopf-formula half-line solver, a variational boundary solver, and a
//!   characteristics solver for nonincreasing data;
//! * [`statics`]: the static quasi-potential S in both boundary regimes,
//!   minimizer sets, and truncated hull envelopes;
//! * [`action`]: the dynamic action functional I = I^l + I^0 + I^r evaluated on
//!   discrete fields, the single-entropy variant, and a sampler lower bound;
//! * [`paths`]: construction of optimal fluctuation paths, space-time reversal,
//!   and the catalogue of closed-form wave-diagram solutions;
//! * [`cli`]: the `qpot` command line front end.

pub mod action;
pub mod cli;
pub mod fields;
pub mod model;
pub(crate) mod numerics;
pub mod paths;
pub mod solver;
pub mod statics;

/// Shared numeric tolerances.
///
/// Kept in one place so tests and implementations agree on what "equal"
/// means at each interface.
pub mod tol {
    /// Absolute tolerance for the adaptive quadratures behind boundary costs,
    /// jump productions and the critical density.
    pub const QUAD_ABS: f64 = 1e-10;
    /// Bisection tolerance for the involution φ and other monotone inversions.
    pub const BISECT: f64 = 1e-14;
    /// A boundary trace is admissible when its boundary cost is below this.
    pub const ADMISSIBLE_COST: f64 = 1e-12;
    /// Two fluxes within `COEX_REL * f(ρ*)` are treated as equal when
    /// classifying the phase of a boundary pair.
    pub const COEX_REL: f64 = 1e-12;
    /// Equality tolerance for minimizer sets of the shock-position criterion.
    pub const MINIMIZER: f64 = 1e-9;
    /// CFL number for the finite-volume solver.
    pub const CFL: f64 = 0.9;
}
