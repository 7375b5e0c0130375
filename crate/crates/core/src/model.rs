//! Flux and entropy models for the conservation law ∂_t ρ + ∂_x f(ρ) = 0 on (0,1).
//!
//! The flux f is strictly concave on [0,K] with f(0) = f(K) = 0. Attached to it
//! is the decreasing involution φ with f∘φ = f and φ(ρ*) = ρ*, where ρ* is the
//! flux maximizer. The entropy h is uniformly convex and tied to the flux by the
//! symmetry h″(ρ) = −h″(φ(ρ))·φ′(ρ), normalized so that h(ρ*) = h′(ρ*) = 0.
//!
//! Derived objects: the entropy flux g with g′ = h′f′, the potentials
//! k(ρ) = ∫_{ρ*}^ρ φ h″ and K(ρ) = h(ρ) − ρh′(ρ) + k(ρ), boundary costs for
//! traces against a boundary datum, their zero sets (the admissible boundary
//! sets), the entropy production π of a jump moving at Rankine-Hugoniot speed,
//! and the stationary phase diagram of a boundary pair.

use crate::numerics;
use crate::tol;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of nodes in the sampled cumulative tables backing non-closed-form
/// entropies.
const TABLE_NODES: usize = 16385;
/// Grid used for validation sweeps at construction time.
const VALIDATION_NODES: usize = 257;
/// Two densities closer than this are treated as the same state.
const SAME_STATE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("flux endpoints must vanish: f(0)={f0:.3e}, f(K)={fk:.3e}")]
    FluxEndpoints { f0: f64, fk: f64 },
    #[error("flux is not uniformly concave (largest second difference {0:.3e})")]
    FluxNotConcave(f64),
    #[error("cubic coefficient must satisfy |a| < 1/3, got {0}")]
    CubicCoefficient(f64),
    #[error("table needs at least 4 rows with strictly increasing densities")]
    BadTable,
    #[error("exclusion entropy requires unit capacity, model has K={0}")]
    ExclusionCapacity(f64),
    #[error("entropy curvature must be positive: h''({rho:.4}) = {value:.3e}")]
    EntropyNotConvex { rho: f64, value: f64 },
    #[error("entropy breaks the flux symmetry: defect {defect:.3e} at rho={rho:.4}")]
    AsymmetricEntropy { rho: f64, defect: f64 },
    #[error("density {0:.6} outside [0, {1}]")]
    DensityRange(f64, f64),
    #[error("boundary datum {0:.6} must lie strictly inside (0, {1})")]
    DatumRange(f64, f64),
    #[error("boundary data coincide at {0:.6}; the pair carries no critical density")]
    DegenerateSpec(f64),
    #[error("invalid model descriptor: {0}")]
    Descriptor(String),
}

/// Which endpoint of the interval a boundary quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
enum FluxKind {
    /// f(ρ) = ρ(1−ρ) on [0,1].
    Asep,
    /// f(ρ) = ρ(1−ρ)(1+aρ) on [0,1], |a| < 1/3.
    Cubic(f64),
    /// Piecewise-linear interpolation of sampled (ρ, f) pairs.
    Table { rho: Vec<f64>, f: Vec<f64> },
}

/// Strictly concave flux with vanishing endpoints and its derived geometry.
#[derive(Clone, Debug)]
pub struct FluxModel {
    kind: FluxKind,
    capacity: f64,
    rho_star: f64,
    f_max: f64,
}

impl FluxModel {
    pub fn asep() -> Self {
        FluxModel {
            kind: FluxKind::Asep,
            capacity: 1.0,
            rho_star: 0.5,
            f_max: 0.25,
        }
    }

    pub fn cubic(a: f64) -> Result<Self, ModelError> {
        if !(a.is_finite() && a.abs() < 1.0 / 3.0) {
            return Err(ModelError::CubicCoefficient(a));
        }
        let kind = FluxKind::Cubic(a);
        let rho_star = if a == 0.0 {
            0.5
        } else {
            numerics::bisect(0.0, 1.0, tol::BISECT, |r| 1.0 + 2.0 * (a - 1.0) * r - 3.0 * a * r * r)
        };
        let mut m = FluxModel {
            kind,
            capacity: 1.0,
            rho_star,
            f_max: 0.0,
        };
        m.f_max = m.f(rho_star);
        m.validate()?;
        Ok(m)
    }

    pub fn from_table(rows: &[[f64; 2]]) -> Result<Self, ModelError> {
        if rows.len() < 4 {
            return Err(ModelError::BadTable);
        }
        let rho: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let f: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        if rho.windows(2).any(|w| w[1] <= w[0]) || rho[0] != 0.0 {
            return Err(ModelError::BadTable);
        }
        let capacity = *rho.last().unwrap();
        let (istar, _) = f
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let mut m = FluxModel {
            kind: FluxKind::Table { rho, f },
            capacity,
            rho_star: 0.0,
            f_max: 0.0,
        };
        m.rho_star = match &m.kind {
            FluxKind::Table { rho, .. } => rho[istar],
            _ => unreachable!(),
        };
        m.f_max = m.f(m.rho_star);
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let f0 = self.f(0.0);
        let fk = self.f(self.capacity);
        if f0.abs() > 1e-12 || fk.abs() > 1e-12 {
            return Err(ModelError::FluxEndpoints { f0, fk });
        }
        if let FluxKind::Table { rho, f } = &self.kind {
            let slopes: Vec<f64> = rho
                .windows(2)
                .zip(f.windows(2))
                .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
                .collect();
            let worst = slopes
                .windows(2)
                .map(|s| s[1] - s[0])
                .fold(f64::NEG_INFINITY, f64::max);
            if worst >= 0.0 {
                return Err(ModelError::FluxNotConcave(worst));
            }
            return Ok(());
        }
        let n = VALIDATION_NODES;
        let dx = self.capacity / (n - 1) as f64;
        let mut worst = f64::NEG_INFINITY;
        for i in 1..n - 1 {
            let x = i as f64 * dx;
            let second = (self.f(x + dx) - 2.0 * self.f(x) + self.f(x - dx)) / (dx * dx);
            worst = worst.max(second);
        }
        if worst >= 0.0 {
            return Err(ModelError::FluxNotConcave(worst));
        }
        Ok(())
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// Maximizer ρ* of the flux.
    pub fn rho_star(&self) -> f64 {
        self.rho_star
    }

    /// Maximal flux f(ρ*).
    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    pub fn f(&self, rho: f64) -> f64 {
        match &self.kind {
            FluxKind::Asep => rho * (1.0 - rho),
            FluxKind::Cubic(a) => rho * (1.0 - rho) * (1.0 + a * rho),
            FluxKind::Table { rho: xs, f } => {
                let n = xs.len();
                if rho <= xs[0] {
                    return f[0];
                }
                if rho >= xs[n - 1] {
                    return f[n - 1];
                }
                let i = xs.partition_point(|&x| x <= rho).min(n - 1) - 1;
                let w = (rho - xs[i]) / (xs[i + 1] - xs[i]);
                f[i] * (1.0 - w) + f[i + 1] * w
            }
        }
    }

    pub fn fprime(&self, rho: f64) -> f64 {
        match &self.kind {
            FluxKind::Asep => 1.0 - 2.0 * rho,
            FluxKind::Cubic(a) => 1.0 + 2.0 * (a - 1.0) * rho - 3.0 * a * rho * rho,
            FluxKind::Table { rho: xs, f } => {
                let n = xs.len();
                let i = xs
                    .partition_point(|&x| x <= rho)
                    .clamp(1, n - 1)
                    - 1;
                (f[i + 1] - f[i]) / (xs[i + 1] - xs[i])
            }
        }
    }

    /// Largest characteristic speed, max |f′| over [0,K].
    pub fn max_abs_speed(&self) -> f64 {
        self.fprime(0.0).abs().max(self.fprime(self.capacity).abs())
    }

    /// The decreasing involution: the unique φ(ρ) ≠ ρ (except at ρ*) with
    /// f(φ(ρ)) = f(ρ), φ(0) = K, φ(K) = 0.
    pub fn phi(&self, rho: f64) -> f64 {
        match &self.kind {
            FluxKind::Asep => 1.0 - rho,
            _ => {
                if rho <= 0.0 {
                    return self.capacity;
                }
                if rho >= self.capacity {
                    return 0.0;
                }
                let d = rho - self.rho_star;
                if d.abs() <= tol::BISECT {
                    return self.rho_star;
                }
                let fr = self.f(rho);
                if d < 0.0 {
                    numerics::bisect(self.rho_star, self.capacity, tol::BISECT, |x| self.f(x) - fr)
                } else {
                    numerics::bisect(0.0, self.rho_star, tol::BISECT, |x| self.f(x) - fr)
                }
            }
        }
    }

    /// Derivative of the involution, φ′(ρ) = f′(ρ)/f′(φ(ρ)); φ′(ρ*) = −1.
    pub fn phi_prime(&self, rho: f64) -> f64 {
        if let FluxKind::Asep = self.kind {
            return -1.0;
        }
        if (rho - self.rho_star).abs() < 1e-7 {
            return -1.0;
        }
        self.fprime(rho) / self.fprime(self.phi(rho))
    }

    /// Inverse of f′ over the whole interval (f′ is strictly decreasing).
    /// Clamps the speed to the attainable range [f′(K), f′(0)].
    pub fn fprime_inv(&self, v: f64) -> f64 {
        if v >= self.fprime(0.0) {
            return 0.0;
        }
        if v <= self.fprime(self.capacity) {
            return self.capacity;
        }
        match &self.kind {
            FluxKind::Asep => 0.5 * (1.0 - v),
            FluxKind::Cubic(a) if a.abs() > 1e-12 => {
                // root of 3aρ² − 2(a−1)ρ − (1−v) on [0,1]; f′ decreasing
                // makes it unique, and the discriminant stays positive for
                // speeds in the attainable range
                let disc = (4.0 * (a - 1.0) * (a - 1.0) + 12.0 * a * (1.0 - v)).sqrt();
                let r1 = (2.0 * (a - 1.0) + disc) / (6.0 * a);
                let r2 = (2.0 * (a - 1.0) - disc) / (6.0 * a);
                if (-1e-9..=1.0 + 1e-9).contains(&r1) {
                    r1.clamp(0.0, 1.0)
                } else {
                    r2.clamp(0.0, 1.0)
                }
            }
            FluxKind::Cubic(_) => 0.5 * (1.0 - v),
            FluxKind::Table { .. } => {
                numerics::bisect(0.0, self.capacity, tol::BISECT, |r| self.fprime(r) - v)
            }
        }
    }

    /// Inverse of f′ restricted to [0, ρ*] (speeds in [0, f′(0)]).
    pub fn fprime_inv_left(&self, v: f64) -> f64 {
        if v >= self.fprime(0.0) {
            return 0.0;
        }
        if v <= 0.0 {
            return self.rho_star;
        }
        numerics::bisect(0.0, self.rho_star, tol::BISECT, |r| self.fprime(r) - v)
    }

    /// Inverse of f′ restricted to [ρ*, K] (speeds in [f′(K), 0]).
    pub fn fprime_inv_right(&self, v: f64) -> f64 {
        if v >= 0.0 {
            return self.rho_star;
        }
        if v <= self.fprime(self.capacity) {
            return self.capacity;
        }
        numerics::bisect(self.rho_star, self.capacity, tol::BISECT, |r| self.fprime(r) - v)
    }

    /// Inverse of f on the increasing branch [0, ρ*]; the flux argument is
    /// clamped to [0, f(ρ*)].
    pub fn f_inv_left(&self, y: f64) -> f64 {
        let y = y.clamp(0.0, self.f_max);
        if let FluxKind::Asep = self.kind {
            return 0.5 * (1.0 - (1.0 - 4.0 * y).max(0.0).sqrt());
        }
        if y >= self.f_max {
            return self.rho_star;
        }
        numerics::bisect(0.0, self.rho_star, tol::BISECT, |r| self.f(r) - y)
    }

    /// Inverse of f on the decreasing branch [ρ*, K].
    pub fn f_inv_right(&self, y: f64) -> f64 {
        let y = y.clamp(0.0, self.f_max);
        if let FluxKind::Asep = self.kind {
            return 0.5 * (1.0 + (1.0 - 4.0 * y).max(0.0).sqrt());
        }
        if y >= self.f_max {
            return self.rho_star;
        }
        numerics::bisect(self.rho_star, self.capacity, tol::BISECT, |r| self.f(r) - y)
    }

    /// Legendre transform f*(v) = sup_ρ [f(ρ) − vρ], extended by its affine
    /// tails outside the attainable speed range.
    pub fn conjugate(&self, v: f64) -> f64 {
        if v >= self.fprime(0.0) {
            return 0.0;
        }
        if v <= self.fprime(self.capacity) {
            return -v * self.capacity;
        }
        let r = self.fprime_inv(v);
        self.f(r) - v * r
    }

    /// Rankine-Hugoniot speed of a jump between `a` and `b`; continuity
    /// convention f′(a) for coinciding states.
    pub fn shock_speed(&self, a: f64, b: f64) -> f64 {
        if (a - b).abs() < SAME_STATE {
            self.fprime(a)
        } else {
            (self.f(b) - self.f(a)) / (b - a)
        }
    }
}

#[derive(Clone, Debug)]
enum EntropyKind {
    /// h(ρ) = ρ ln ρ + (1−ρ) ln(1−ρ) + ln 2 on [0,1].
    Exclusion,
    /// h″ = 1 on [0, ρ*], h″ = −φ′ on (ρ*, K]; the canonical curvature
    /// satisfying the flux symmetry for an arbitrary concave flux.
    Symmetrized,
    /// Piecewise-linear h″ from sampled (ρ, h″) pairs.
    Table { rho: Vec<f64>, h2: Vec<f64> },
}

/// Sampled cumulative integrals for entropies without closed forms.
#[derive(Clone, Debug)]
struct EntropyTables {
    dx: f64,
    hp: Vec<f64>,
    h: Vec<f64>,
    k: Vec<f64>,
    g: Vec<f64>,
}

/// A flux model paired with a compatible entropy; the unit every computation
/// in this crate works against.
#[derive(Clone, Debug)]
pub struct Model {
    flux: FluxModel,
    entropy: EntropyKind,
    tables: Option<EntropyTables>,
}

impl Model {
    /// Exclusion-process model: f = ρ(1−ρ) with the Bernoulli entropy.
    pub fn asep() -> Self {
        Model {
            flux: FluxModel::asep(),
            entropy: EntropyKind::Exclusion,
            tables: None,
        }
    }

    /// Cubic flux ρ(1−ρ)(1+aρ) with the canonical symmetrized entropy.
    pub fn cubic(a: f64) -> Result<Self, ModelError> {
        Model::build(FluxModel::cubic(a)?, None)
    }

    /// Pair an arbitrary flux with an entropy; `h2_table` rows are (ρ, h″)
    /// samples, `None` selects the canonical symmetrized entropy.
    pub fn build(flux: FluxModel, h2_table: Option<&[[f64; 2]]>) -> Result<Self, ModelError> {
        let entropy = match h2_table {
            None => EntropyKind::Symmetrized,
            Some(rows) => {
                if rows.len() < 4 {
                    return Err(ModelError::BadTable);
                }
                let rho: Vec<f64> = rows.iter().map(|r| r[0]).collect();
                let h2: Vec<f64> = rows.iter().map(|r| r[1]).collect();
                if rho.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(ModelError::BadTable);
                }
                EntropyKind::Table { rho, h2 }
            }
        };
        let mut model = Model {
            flux,
            entropy,
            tables: None,
        };
        model.validate_entropy()?;
        model.tables = Some(model.build_tables());
        Ok(model)
    }

    fn with_exclusion(flux: FluxModel) -> Result<Self, ModelError> {
        if (flux.capacity() - 1.0).abs() > 1e-12 {
            return Err(ModelError::ExclusionCapacity(flux.capacity()));
        }
        let model = Model {
            flux,
            entropy: EntropyKind::Exclusion,
            tables: None,
        };
        model.validate_entropy()?;
        Ok(model)
    }

    fn validate_entropy(&self) -> Result<(), ModelError> {
        let cap = self.flux.capacity();
        let n = VALIDATION_NODES;
        for i in 1..n {
            let rho = cap * i as f64 / n as f64;
            let h2 = self.hsecond(rho);
            if !(h2 > 0.0) {
                return Err(ModelError::EntropyNotConvex { rho, value: h2 });
            }
            let defect = h2 + self.hsecond(self.flux.phi(rho)) * self.flux.phi_prime(rho);
            if defect.abs() > 1e-8 * (1.0 + h2.abs()) {
                return Err(ModelError::AsymmetricEntropy { rho, defect });
            }
        }
        Ok(())
    }

    fn build_tables(&self) -> EntropyTables {
        let cap = self.flux.capacity();
        let n = TABLE_NODES;
        let dx = cap / (n - 1) as f64;
        let star = self.flux.rho_star();
        let h2: Vec<f64> = (0..n).map(|i| self.hsecond(i as f64 * dx)).collect();
        let phih2: Vec<f64> = (0..n)
            .map(|i| self.flux.phi(i as f64 * dx) * h2[i])
            .collect();
        let mut hp = numerics::cumulative_trapezoid(&h2, dx);
        let hp_star = numerics::lerp_uniform(&hp, 0.0, dx, star);
        for v in hp.iter_mut() {
            *v -= hp_star;
        }
        let mut h = numerics::cumulative_trapezoid(&hp, dx);
        let h_star = numerics::lerp_uniform(&h, 0.0, dx, star);
        for v in h.iter_mut() {
            *v -= h_star;
        }
        let mut k = numerics::cumulative_trapezoid(&phih2, dx);
        let k_star = numerics::lerp_uniform(&k, 0.0, dx, star);
        for v in k.iter_mut() {
            *v -= k_star;
        }
        let gp: Vec<f64> = (0..n)
            .map(|i| hp[i] * self.flux.fprime(i as f64 * dx))
            .collect();
        let mut g = numerics::cumulative_trapezoid(&gp, dx);
        let g_star = numerics::lerp_uniform(&g, 0.0, dx, star);
        for v in g.iter_mut() {
            *v -= g_star;
        }
        EntropyTables { dx, hp, h, k, g }
    }

    pub fn flux(&self) -> &FluxModel {
        &self.flux
    }

    pub fn capacity(&self) -> f64 {
        self.flux.capacity()
    }

    pub fn rho_star(&self) -> f64 {
        self.flux.rho_star()
    }

    /// Entropy, normalized so h(ρ*) = h′(ρ*) = 0.
    pub fn h(&self, rho: f64) -> f64 {
        match &self.entropy {
            EntropyKind::Exclusion => {
                let a = if rho > 0.0 { rho * rho.ln() } else { 0.0 };
                let b = if rho < 1.0 { (1.0 - rho) * (1.0 - rho).ln() } else { 0.0 };
                a + b + std::f64::consts::LN_2
            }
            _ => {
                let t = self.tables.as_ref().expect("tables built");
                numerics::lerp_uniform(&t.h, 0.0, t.dx, rho)
            }
        }
    }

    /// Chemical potential h′.
    pub fn hprime(&self, rho: f64) -> f64 {
        match &self.entropy {
            EntropyKind::Exclusion => (rho / (1.0 - rho)).ln(),
            _ => {
                let t = self.tables.as_ref().expect("tables built");
                numerics::lerp_uniform(&t.hp, 0.0, t.dx, rho)
            }
        }
    }

    /// Entropy curvature h″ ≥ c > 0.
    pub fn hsecond(&self, rho: f64) -> f64 {
        match &self.entropy {
            EntropyKind::Exclusion => 1.0 / (rho * (1.0 - rho)),
            EntropyKind::Symmetrized => {
                if rho <= self.flux.rho_star() {
                    1.0
                } else {
                    -self.flux.phi_prime(rho)
                }
            }
            EntropyKind::Table { rho: xs, h2 } => {
                let n = xs.len();
                if rho <= xs[0] {
                    return h2[0];
                }
                if rho >= xs[n - 1] {
                    return h2[n - 1];
                }
                let i = xs.partition_point(|&x| x <= rho).min(n - 1) - 1;
                let w = (rho - xs[i]) / (xs[i + 1] - xs[i]);
                h2[i] * (1.0 - w) + h2[i + 1] * w
            }
        }
    }

    /// Entropy flux g with g′ = h′f′ and g(ρ*) = 0.
    pub fn g(&self, rho: f64) -> f64 {
        match &self.entropy {
            EntropyKind::Exclusion => {
                // closed form: (h′f)′ = h″f + h′f′ and h″f ≡ 1 for this pair
                let hf = if rho <= 0.0 || rho >= 1.0 {
                    0.0
                } else {
                    self.hprime(rho) * self.flux.f(rho)
                };
                hf - rho + 0.5
            }
            _ => {
                let t = self.tables.as_ref().expect("tables built");
                numerics::lerp_uniform(&t.g, 0.0, t.dx, rho)
            }
        }
    }

    /// k(ρ) = ∫_{ρ*}^ρ φ(r) h″(r) dr.
    pub fn k(&self, rho: f64) -> f64 {
        match &self.entropy {
            EntropyKind::Exclusion => (2.0 * rho).ln(),
            _ => {
                let t = self.tables.as_ref().expect("tables built");
                numerics::lerp_uniform(&t.k, 0.0, t.dx, rho)
            }
        }
    }

    /// K(ρ) = h(ρ) − ρ h′(ρ) + k(ρ); symmetric under φ and maximal at ρ*.
    pub fn big_k(&self, rho: f64) -> f64 {
        self.h(rho) - rho * self.hprime(rho) + self.k(rho)
    }

    /// Inverse chemical potential, h′(ρ) = θ.
    pub fn hprime_inv(&self, theta: f64) -> f64 {
        match &self.entropy {
            EntropyKind::Exclusion => {
                let e = theta.exp();
                e / (1.0 + e)
            }
            _ => {
                let cap = self.capacity();
                let eps = 1e-13;
                if theta <= self.hprime(eps) {
                    return 0.0;
                }
                if theta >= self.hprime(cap - eps) {
                    return cap;
                }
                numerics::bisect(eps, cap - eps, tol::BISECT, |r| self.hprime(r) - theta)
            }
        }
    }

    /// Flux as a function of the chemical potential, j(θ) = f(h′⁻¹(θ)).
    /// The flux symmetry makes j even.
    pub fn chem_flux(&self, theta: f64) -> f64 {
        self.flux.f(self.hprime_inv(theta))
    }

    /// Legendre dual of the entropy, h*(θ) = sup_ρ [θρ − h(ρ)].
    pub fn legendre_dual(&self, theta: f64) -> f64 {
        let r = self.hprime_inv(theta);
        theta * r - self.h(r)
    }

    /// Relative entropy h(ρ | ρ0) = h(ρ) − h(ρ0) − h′(ρ0)(ρ − ρ0).
    pub fn relative_h(&self, rho: f64, rho0: f64) -> f64 {
        self.h(rho) - self.h(rho0) - self.hprime(rho0) * (rho - rho0)
    }

    /// Relative entropy flux g(ρ | ρ0) = g(ρ) − g(ρ0) − h′(ρ0)(f(ρ) − f(ρ0)).
    pub fn relative_g(&self, rho: f64, rho0: f64) -> f64 {
        self.g(rho) - self.g(rho0) - self.hprime(rho0) * (self.flux.f(rho) - self.flux.f(rho0))
    }

    fn check_density(&self, rho: f64) -> Result<(), ModelError> {
        if rho.is_finite() && (-1e-12..=self.capacity() + 1e-12).contains(&rho) {
            Ok(())
        } else {
            Err(ModelError::DensityRange(rho, self.capacity()))
        }
    }

    /// Cost rate of holding the left boundary trace at `rho` against datum
    /// `rho_l`; zero exactly on the admissible set.
    pub fn boundary_cost_left(&self, rho: f64, rho_l: f64) -> Result<f64, ModelError> {
        self.check_density(rho)?;
        let star = self.rho_star();
        let phi = |r| self.flux.phi(r);
        let v = if (rho - rho_l).abs() < SAME_STATE {
            0.0
        } else if rho_l <= star {
            if rho >= phi(rho_l) {
                0.0
            } else if rho <= star {
                self.relative_g(rho, rho_l)
            } else {
                self.relative_g(phi(rho), rho_l)
            }
        } else if rho >= star {
            0.0
        } else if rho <= phi(rho_l) {
            self.relative_g(rho, rho_l)
        } else {
            self.g(rho) - self.g(phi(rho))
        };
        Ok(v.max(0.0))
    }

    /// Cost rate of holding the right boundary trace at `rho` against datum
    /// `rho_r`; zero exactly on the admissible set.
    pub fn boundary_cost_right(&self, rho: f64, rho_r: f64) -> Result<f64, ModelError> {
        self.check_density(rho)?;
        let star = self.rho_star();
        let phi = |r| self.flux.phi(r);
        let v = if (rho - rho_r).abs() < SAME_STATE {
            0.0
        } else if rho_r <= star {
            if rho <= star {
                0.0
            } else if rho >= phi(rho_r) {
                -self.relative_g(rho, rho_r)
            } else {
                self.g(phi(rho)) - self.g(rho)
            }
        } else if rho <= phi(rho_r) {
            0.0
        } else if rho >= star {
            -self.relative_g(rho, rho_r)
        } else {
            -self.relative_g(phi(rho), rho_r)
        };
        Ok(v.max(0.0))
    }

    pub fn boundary_cost(&self, side: Side, rho: f64, datum: f64) -> Result<f64, ModelError> {
        match side {
            Side::Left => self.boundary_cost_left(rho, datum),
            Side::Right => self.boundary_cost_right(rho, datum),
        }
    }

    /// Boundary cost by direct quadrature of the defining integral
    /// ∫ h″(v)·(±q_v(ρ|datum))⁺ dv over the Kruzkov parameter.
    pub fn boundary_cost_quadrature(&self, side: Side, rho: f64, datum: f64) -> f64 {
        if (rho - datum).abs() < SAME_STATE {
            return 0.0;
        }
        let (lo, hi) = if rho < datum { (rho, datum) } else { (datum, rho) };
        // q_v(ρ|datum) = sign(ρ−datum)·(f(ρ)−f(v)) for v strictly between the
        // arguments; the sign of the integrand flips where f(v) crosses f(ρ),
        // i.e. at v = φ(ρ) when that point falls inside (lo, hi).
        let fr = self.flux.f(rho);
        let keep_positive = match side {
            Side::Left => rho > datum,
            Side::Right => rho < datum,
        };
        let integrand = |v: f64| {
            let q = self.flux.f(v) - fr;
            let signed = if keep_positive { -q } else { q };
            self.hsecond(v) * signed.max(0.0)
        };
        let split = self.flux.phi(rho);
        let mut total = 0.0;
        if split > lo + 1e-13 && split < hi - 1e-13 {
            total += numerics::integrate(lo, split, 0.5 * tol::QUAD_ABS, integrand);
            total += numerics::integrate(split, hi, 0.5 * tol::QUAD_ABS, integrand);
        } else {
            total = numerics::integrate(lo, hi, tol::QUAD_ABS, integrand);
        }
        total.max(0.0)
    }

    /// Closed-form membership in the admissible boundary set.
    ///
    /// Left side, datum a ≤ ρ*: {a} ∪ [φ(a), K]; datum a ≥ ρ*: [ρ*, K].
    /// Right side, datum b ≤ ρ*: [0, ρ*]; datum b ≥ ρ*: {b} ∪ [0, φ(b)].
    pub fn in_admissible_set(&self, side: Side, rho: f64, datum: f64, eps: f64) -> bool {
        let star = self.rho_star();
        match side {
            Side::Left => {
                if datum <= star {
                    (rho - datum).abs() <= eps || rho >= self.flux.phi(datum) - eps
                } else {
                    rho >= star - eps
                }
            }
            Side::Right => {
                if datum >= star {
                    (rho - datum).abs() <= eps || rho <= self.flux.phi(datum) + eps
                } else {
                    rho <= star + eps
                }
            }
        }
    }

    /// Whether a boundary trace is admissible for the datum: the boundary
    /// cost vanishes (below [`tol::ADMISSIBLE_COST`]).
    pub fn bln_admissible(&self, side: Side, rho: f64, datum: f64) -> Result<bool, ModelError> {
        Ok(self.boundary_cost(side, rho, datum)? < tol::ADMISSIBLE_COST)
    }

    /// Entropy production rate π of a jump (ρ⁻, ρ⁺) moving at its
    /// Rankine-Hugoniot speed: negative for entropic (increasing) jumps,
    /// positive for anti-entropic ones.
    pub fn pi_production(&self, rho_minus: f64, rho_plus: f64) -> f64 {
        if (rho_plus - rho_minus).abs() < SAME_STATE {
            return 0.0;
        }
        let v = self.flux.shock_speed(rho_minus, rho_plus);
        self.g(rho_plus) - self.g(rho_minus) - v * (self.h(rho_plus) - self.h(rho_minus))
    }

    /// Boundary-layer production σ(ρ, ξ) = ∫_{ρ_l}^{ρ_r} h″(r)·[f(r) − f(ρ) −
    /// ξ(φ(r) − ρ)] dr (signed when ρ_l > ρ_r). Equal at both states of a jump
    /// when ξ is the jump's Rankine-Hugoniot speed.
    pub fn sigma(&self, rho: f64, xi: f64, spec: &BoundarySpec) -> f64 {
        let fr = self.flux.f(rho);
        numerics::integrate(spec.rho_l, spec.rho_r, tol::QUAD_ABS, |r| {
            self.hsecond(r) * (self.flux.f(r) - fr - xi * (self.flux.phi(r) - rho))
        })
    }

    /// Critical shock position density ρ_c = (k(ρ_r) − k(ρ_l)) / (h′(ρ_r) − h′(ρ_l)).
    pub fn rho_critical(&self, spec: &BoundarySpec) -> Result<f64, ModelError> {
        if (spec.rho_l - spec.rho_r).abs() < SAME_STATE {
            return Err(ModelError::DegenerateSpec(spec.rho_l));
        }
        Ok((self.k(spec.rho_r) - self.k(spec.rho_l))
            / (self.hprime(spec.rho_r) - self.hprime(spec.rho_l)))
    }

    /// Classify a boundary pair and build its spec.
    pub fn boundary_spec(&self, rho_l: f64, rho_r: f64) -> Result<BoundarySpec, ModelError> {
        let cap = self.capacity();
        for d in [rho_l, rho_r] {
            if !(d.is_finite() && d > 0.0 && d < cap) {
                return Err(ModelError::DatumRange(d, cap));
            }
        }
        let star = self.rho_star();
        let fl = self.flux.f(rho_l);
        let fr = self.flux.f(rho_r);
        let phase = if rho_l < rho_r {
            if (fl - fr).abs() <= tol::COEX_REL * self.flux.f_max() {
                Phase::Coexistence
            } else if fl < fr {
                Phase::LowDensity
            } else {
                Phase::HighDensity
            }
        } else if rho_l >= star && star >= rho_r {
            Phase::MaximalCurrent
        } else if rho_l < star {
            Phase::LowDensity
        } else {
            Phase::HighDensity
        };
        Ok(BoundarySpec {
            rho_l,
            rho_r,
            phase,
        })
    }

    /// The stationary states selected by a boundary pair.
    pub fn stationary_set(&self, spec: &BoundarySpec) -> StationarySet {
        match spec.phase {
            Phase::LowDensity => StationarySet::Uniform(spec.rho_l),
            Phase::HighDensity => StationarySet::Uniform(spec.rho_r),
            Phase::MaximalCurrent => StationarySet::Uniform(self.rho_star()),
            Phase::Coexistence => StationarySet::ShockFamily {
                rho_l: spec.rho_l,
                rho_r: spec.rho_r,
            },
        }
    }
}

/// Stationary phase of a boundary pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    LowDensity,
    HighDensity,
    MaximalCurrent,
    Coexistence,
}

/// A boundary pair together with its phase.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub rho_l: f64,
    pub rho_r: f64,
    pub phase: Phase,
}

/// Stationary states: a uniform profile, or on the coexistence line the
/// one-parameter family of standing shocks ρ_l·1_{(0,y)} + ρ_r·1_{(y,1)}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StationarySet {
    Uniform(f64),
    ShockFamily { rho_l: f64, rho_r: f64 },
}

/// JSON model descriptor:
/// `{"flux": "asep" | {"cubic": a} | {"table": [[rho, f], ...]},
///   "entropy": "asep" | {"table": [[rho, h2], ...]} (optional),
///   "rho_l": x, "rho_r": y}`.
///
/// An omitted entropy selects the exclusion entropy for the "asep" flux and
/// the canonical symmetrized entropy otherwise. Entropy tables sample the
/// curvature h″.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub flux: FluxDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<EntropyDescriptor>,
    pub rho_l: f64,
    pub rho_r: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FluxDescriptor {
    Named(FluxName),
    Cubic { cubic: f64 },
    Table { table: Vec<[f64; 2]> },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum FluxName {
    #[serde(rename = "asep")]
    Asep,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntropyDescriptor {
    Named(EntropyName),
    Table { table: Vec<[f64; 2]> },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum EntropyName {
    #[serde(rename = "asep")]
    Asep,
}

impl Model {
    pub fn from_descriptor(d: &ModelDescriptor) -> Result<(Model, BoundarySpec), ModelError> {
        let flux = match &d.flux {
            FluxDescriptor::Named(FluxName::Asep) => FluxModel::asep(),
            FluxDescriptor::Cubic { cubic } => FluxModel::cubic(*cubic)?,
            FluxDescriptor::Table { table } => FluxModel::from_table(table)?,
        };
        let model = match &d.entropy {
            None => match &d.flux {
                FluxDescriptor::Named(FluxName::Asep) => Model::asep(),
                _ => Model::build(flux, None)?,
            },
            Some(EntropyDescriptor::Named(EntropyName::Asep)) => Model::with_exclusion(flux)?,
            Some(EntropyDescriptor::Table { table }) => Model::build(flux, Some(table))?,
        };
        let spec = model.boundary_spec(d.rho_l, d.rho_r)?;
        Ok((model, spec))
    }

    pub fn from_json(json: &str) -> Result<(Model, BoundarySpec), ModelError> {
        let d: ModelDescriptor =
            serde_json::from_str(json).map_err(|e| ModelError::Descriptor(e.to_string()))?;
        Model::from_descriptor(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn oracle_bisect(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (mut lo, mut hi) = (lo, hi);
        let flo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn asep_involution_is_reflection() {
        let m = Model::asep();
        assert_abs_diff_eq!(m.flux().phi(0.3), 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(m.flux().phi(0.5), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(m.flux().phi(0.0), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn cubic_involution_matches_root_oracle() {
        let m = Model::cubic(0.2).unwrap();
        // φ(0.2) solves f(x) = f(0.2) = 0.1664 on the decreasing branch
        let expect = oracle_bisect(m.rho_star(), 1.0, |x| {
            x * (1.0 - x) * (1.0 + 0.2 * x) - 0.1664
        });
        assert_abs_diff_eq!(m.flux().phi(0.2), expect, epsilon = 1e-12);
        // involution property
        for &r in &[0.05, 0.3, 0.52, 0.81, 0.97] {
            assert_abs_diff_eq!(m.flux().phi(m.flux().phi(r)), r, epsilon = 1e-10);
            assert_abs_diff_eq!(m.flux().f(m.flux().phi(r)), m.flux().f(r), epsilon = 1e-10);
        }
    }

    #[test]
    fn shock_speed_examples() {
        let m = Model::asep();
        assert_abs_diff_eq!(m.flux().shock_speed(0.2, 0.6), 0.2, epsilon = 1e-14);
        assert_abs_diff_eq!(m.flux().shock_speed(0.3, 0.7), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.flux().shock_speed(0.5, 0.5), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn asep_entropy_closed_forms() {
        let m = Model::asep();
        assert_abs_diff_eq!(m.h(0.5), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.hprime(0.5), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.hsecond(0.5), 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.g(0.5), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.k(0.5), 0.0, epsilon = 1e-15);
        // K(ρ) = ln(4ρ(1−ρ)) for this model
        assert_abs_diff_eq!(m.big_k(0.2), (4.0 * 0.2 * 0.8f64).ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(m.big_k(0.8), m.big_k(0.2), epsilon = 1e-12);
    }

    #[test]
    fn entropy_flux_matches_quadrature() {
        let m = Model::asep();
        for &r in &[0.1, 0.35, 0.62, 0.9] {
            let oracle = crate::numerics::integrate(0.5, r, 1e-12, |s| {
                ((s / (1.0 - s)) as f64).ln() * (1.0 - 2.0 * s)
            });
            assert_abs_diff_eq!(m.g(r), oracle, epsilon = 1e-10);
        }
    }

    #[test]
    fn k_matches_quadrature() {
        let m = Model::asep();
        for &r in &[0.2, 0.45, 0.8] {
            let oracle =
                crate::numerics::integrate(0.5, r, 1e-12, |s| (1.0 - s) / (s * (1.0 - s)));
            assert_abs_diff_eq!(m.k(r), oracle, epsilon = 1e-10);
            assert_abs_diff_eq!(m.k(r), (2.0 * r).ln(), epsilon = 1e-10);
        }
    }

    #[test]
    fn k_identity_with_involution() {
        // k(ρ) = φ(ρ)h′(ρ) + h(φ(ρ)) under the ρ*-anchored normalization
        for m in [Model::asep(), Model::cubic(0.2).unwrap()] {
            for &r in &[0.15, 0.4, 0.55, 0.85] {
                let phi = m.flux().phi(r);
                assert_abs_diff_eq!(
                    m.k(r),
                    phi * m.hprime(r) + m.h(phi),
                    epsilon = 5e-8
                );
            }
        }
    }

    #[test]
    fn boundary_cost_left_closed_vs_quadrature() {
        let m = Model::asep();
        for &(rho, datum) in &[
            (0.4, 0.2),
            (0.55, 0.2),
            (0.9, 0.2),
            (0.1, 0.7),
            (0.45, 0.7),
            (0.3, 0.45),
            (0.62, 0.31),
        ] {
            let closed = m.boundary_cost_left(rho, datum).unwrap();
            let quad = m.boundary_cost_quadrature(Side::Left, rho, datum);
            assert_abs_diff_eq!(closed, quad, epsilon = 1e-8);
        }
    }

    #[test]
    fn boundary_cost_right_closed_vs_quadrature() {
        let m = Model::asep();
        for &(rho, datum) in &[
            (0.4, 0.6),
            (0.75, 0.6),
            (0.2, 0.6),
            (0.45, 0.7),
            (0.9, 0.3),
            (0.6, 0.55),
        ] {
            let closed = m.boundary_cost_right(rho, datum).unwrap();
            let quad = m.boundary_cost_quadrature(Side::Right, rho, datum);
            assert_abs_diff_eq!(closed, quad, epsilon = 1e-8);
        }
    }

    #[test]
    fn boundary_cost_examples() {
        let m = Model::asep();
        assert_eq!(m.boundary_cost_left(0.9, 0.2).unwrap(), 0.0);
        assert_eq!(m.boundary_cost_left(0.2, 0.2).unwrap(), 0.0);
        let i = m.boundary_cost_left(0.4, 0.2).unwrap();
        assert_abs_diff_eq!(i, m.relative_g(0.4, 0.2), epsilon = 1e-14);
        assert!(i > 0.0);
    }

    #[test]
    fn admissible_sets() {
        let m = Model::asep();
        assert!(m.bln_admissible(Side::Left, 0.85, 0.2).unwrap());
        assert!(!m.bln_admissible(Side::Left, 0.5, 0.2).unwrap());
        assert!(m.bln_admissible(Side::Right, 0.3, 0.7).unwrap());
        // the right set for a supercritical datum stops at φ(datum)
        assert!(!m.bln_admissible(Side::Right, 0.45, 0.7).unwrap());
        assert!(m.boundary_cost_right(0.45, 0.7).unwrap() > 1e-3);
        assert!(m.in_admissible_set(Side::Right, 0.7, 0.7, 1e-12));
        assert!(!m.in_admissible_set(Side::Right, 0.45, 0.7, 1e-9));
    }

    #[test]
    fn jump_production_signs_and_value() {
        let m = Model::asep();
        assert_eq!(m.pi_production(0.4, 0.4), 0.0);
        assert!(m.pi_production(0.2, 0.6) < 0.0);
        let p = m.pi_production(0.6, 0.4);
        assert_abs_diff_eq!(p, 0.2 - 0.48 * 1.5f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn sigma_is_equal_at_both_jump_states() {
        let m = Model::asep();
        let spec = m.boundary_spec(0.3, 0.7).unwrap();
        let (a, b) = (0.25, 0.65);
        let v = m.flux().shock_speed(a, b);
        assert_abs_diff_eq!(m.sigma(a, v, &spec), m.sigma(b, v, &spec), epsilon = 1e-9);
    }

    #[test]
    fn critical_density_closed_forms() {
        let m = Model::asep();
        let spec = m.boundary_spec(0.2, 0.8).unwrap();
        assert_abs_diff_eq!(m.rho_critical(&spec).unwrap(), 0.5, epsilon = 1e-12);
        let spec = m.boundary_spec(0.2, 0.6).unwrap();
        assert_abs_diff_eq!(
            m.rho_critical(&spec).unwrap(),
            3f64.ln() / 6f64.ln(),
            epsilon = 1e-12
        );
        let spec = m.boundary_spec(0.4, 0.4001).unwrap();
        assert_abs_diff_eq!(m.rho_critical(&spec).unwrap(), 0.6, epsilon = 1e-3);
    }

    #[test]
    fn degenerate_pair_has_no_critical_density() {
        let m = Model::asep();
        let spec = m.boundary_spec(0.4, 0.4).unwrap();
        assert!(matches!(
            m.rho_critical(&spec),
            Err(ModelError::DegenerateSpec(_))
        ));
    }

    #[test]
    fn phase_classification() {
        let m = Model::asep();
        assert_eq!(m.boundary_spec(0.2, 0.6).unwrap().phase, Phase::LowDensity);
        assert_eq!(m.boundary_spec(0.8, 0.3).unwrap().phase, Phase::MaximalCurrent);
        assert_eq!(m.boundary_spec(0.3, 0.7).unwrap().phase, Phase::Coexistence);
        assert_eq!(m.boundary_spec(0.45, 0.9).unwrap().phase, Phase::HighDensity);
        assert_eq!(m.boundary_spec(0.4, 0.2).unwrap().phase, Phase::LowDensity);
        assert_eq!(m.boundary_spec(0.9, 0.6).unwrap().phase, Phase::HighDensity);
    }

    #[test]
    fn stationary_sets() {
        let m = Model::asep();
        let s = m.stationary_set(&m.boundary_spec(0.2, 0.6).unwrap());
        assert_eq!(s, StationarySet::Uniform(0.2));
        let s = m.stationary_set(&m.boundary_spec(0.8, 0.3).unwrap());
        assert_eq!(s, StationarySet::Uniform(0.5));
        let s = m.stationary_set(&m.boundary_spec(0.3, 0.7).unwrap());
        assert_eq!(
            s,
            StationarySet::ShockFamily {
                rho_l: 0.3,
                rho_r: 0.7
            }
        );
    }

    #[test]
    fn conjugate_values() {
        let f = FluxModel::asep();
        // f*(0) = max f = 1/4; tails: f*(v) = 0 for v ≥ f′(0), −v for v ≤ f′(1)
        assert_abs_diff_eq!(f.conjugate(0.0), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(f.conjugate(2.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.conjugate(-3.0), 3.0, epsilon = 1e-15);
        // interior: maximizer at (f′)⁻¹(v)
        let v = 0.4;
        let r = f.fprime_inv(v);
        assert_abs_diff_eq!(f.conjugate(v), f.f(r) - v * r, epsilon = 1e-12);
        assert_abs_diff_eq!(r, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn fprime_branch_inverses() {
        let f = FluxModel::cubic(0.2).unwrap();
        for &r in &[0.1, 0.3, 0.5] {
            let r = r * f.rho_star() / 0.5;
            assert_abs_diff_eq!(f.fprime_inv_left(f.fprime(r)), r, epsilon = 1e-10);
        }
        let r = 0.8;
        assert_abs_diff_eq!(f.fprime_inv_right(f.fprime(r)), r, epsilon = 1e-10);
    }

    #[test]
    fn fprime_inv_closed_form_matches_bisection() {
        for a in [0.2, -0.25, 0.0] {
            let f = FluxModel::cubic(a).unwrap();
            for i in 0..40 {
                let v = f.fprime(1.0) + (f.fprime(0.0) - f.fprime(1.0)) * (i as f64 + 0.5) / 40.0;
                let oracle = oracle_bisect(0.0, 1.0, |r| f.fprime(r) - v);
                assert_abs_diff_eq!(f.fprime_inv(v), oracle, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn descriptor_roundtrip() {
        let json = r#"{"flux":"asep","entropy":"asep","rho_l":0.2,"rho_r":0.6}"#;
        let (m, spec) = Model::from_json(json).unwrap();
        assert_eq!(spec.phase, Phase::LowDensity);
        assert_abs_diff_eq!(m.capacity(), 1.0);

        let json = r#"{"flux":{"cubic":0.2},"rho_l":0.3,"rho_r":0.4}"#;
        let (m, _) = Model::from_json(json).unwrap();
        assert!((m.rho_star() - 0.5226).abs() < 1e-3);

        let bad = r#"{"flux":"asep","rho_l":0.0,"rho_r":0.6}"#;
        assert!(Model::from_json(bad).is_err());
    }

    #[test]
    fn exclusion_entropy_rejects_non_unit_capacity() {
        let rows: Vec<[f64; 2]> = (0..=32)
            .map(|i| {
                let r = 2.0 * i as f64 / 32.0;
                [r, r * (2.0 - r)]
            })
            .collect();
        let flux = FluxModel::from_table(&rows).unwrap();
        assert!(matches!(
            Model::with_exclusion(flux),
            Err(ModelError::ExclusionCapacity(_))
        ));
    }

    #[test]
    fn non_concave_table_rejected() {
        let rows = [[0.0, 0.0], [0.25, 0.2], [0.5, 0.1], [0.75, 0.2], [1.0, 0.0]];
        assert!(matches!(
            FluxModel::from_table(&rows),
            Err(ModelError::FluxNotConcave(_))
        ));
    }

    #[test]
    fn mismatched_entropy_rejected() {
        // exclusion entropy against the cubic flux violates the symmetry
        let flux = FluxModel::cubic(0.2).unwrap();
        assert!(matches!(
            Model::with_exclusion(flux),
            Err(ModelError::AsymmetricEntropy { .. })
        ));
    }

    #[test]
    fn symmetrized_entropy_passes_validation() {
        let m = Model::cubic(0.25).unwrap();
        for &r in &[0.2, 0.5, 0.8] {
            assert!(m.hsecond(r) > 0.3);
            assert_abs_diff_eq!(m.hprime(m.flux().phi(r)), -m.hprime(r), epsilon = 1e-8);
            assert_abs_diff_eq!(m.big_k(m.flux().phi(r)), m.big_k(r), epsilon = 1e-8);
        }
    }

    #[test]
    fn chem_flux_is_even() {
        for m in [Model::asep(), Model::cubic(0.2).unwrap()] {
            for &theta in &[0.3, 0.9, 1.7] {
                assert_abs_diff_eq!(m.chem_flux(theta), m.chem_flux(-theta), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn legendre_dual_touches_entropy() {
        let m = Model::asep();
        // h(ρ) + h*(θ) ≥ θρ with equality at θ = h′(ρ)
        let rho = 0.3;
        let theta = m.hprime(rho);
        assert_abs_diff_eq!(m.h(rho) + m.legendre_dual(theta), theta * rho, epsilon = 1e-10);
        assert!(m.h(rho) + m.legendre_dual(0.7) >= 0.7 * rho - 1e-12);
    }
}
