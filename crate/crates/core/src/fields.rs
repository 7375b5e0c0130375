//! Discrete density profiles, space-time fields, and exact wave diagrams.
//!
//! Profiles live on a uniform cell-centered grid over (0,1): cell i covers
//! [iΔx, (i+1)Δx] and carries one value. A [`SpaceTimeField`] stacks profiles
//! at increasing times. A [`WaveDiagram`] describes an exact solution as time
//! slabs of ordered separating curves (verticals, straight lines, sampled ODE
//! paths) with constant or rarefaction-fan values between them; rasterizing it
//! gives reference fields for solver comparisons.

use crate::model::FluxModel;
use std::io::{Read, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("profile needs at least one cell")]
    Empty,
    #[error("profile lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("times must be strictly increasing")]
    TimesNotIncreasing,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad field file: {0}")]
    Format(String),
}

/// Piecewise-constant density profile on the uniform cell grid over (0,1).
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    values: Vec<f64>,
}

impl Profile {
    pub fn from_values(values: Vec<f64>) -> Result<Self, FieldError> {
        if values.is_empty() {
            return Err(FieldError::Empty);
        }
        Ok(Profile { values })
    }

    pub fn uniform(value: f64, n: usize) -> Self {
        Profile {
            values: vec![value; n.max(1)],
        }
    }

    /// Sample a function at cell centers.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Self {
        let dx = 1.0 / n as f64;
        Profile {
            values: (0..n).map(|i| f((i as f64 + 0.5) * dx)).collect(),
        }
    }

    /// Cell-averaged step profile: `rho_l` on (0, y), `rho_r` on (y, 1).
    pub fn step(rho_l: f64, rho_r: f64, y: f64, n: usize) -> Self {
        let dx = 1.0 / n as f64;
        let values = (0..n)
            .map(|i| {
                let (a, b) = (i as f64 * dx, (i + 1) as f64 * dx);
                if b <= y {
                    rho_l
                } else if a >= y {
                    rho_r
                } else {
                    let w = (y - a) / dx;
                    w * rho_l + (1.0 - w) * rho_r
                }
            })
            .collect();
        Profile { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.values.len() as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dx()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// L¹ distance on (0,1); profiles must share the grid.
    pub fn l1_distance(&self, other: &Profile) -> Result<f64, FieldError> {
        if self.len() != other.len() {
            return Err(FieldError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * self.dx())
    }

    /// Exact cell averages of this piecewise-constant profile on an `m`-cell grid.
    pub fn resample(&self, m: usize) -> Profile {
        let n = self.len();
        if m == n {
            return self.clone();
        }
        let values = (0..m)
            .map(|j| {
                let (a, b) = (j as f64 / m as f64, (j + 1) as f64 / m as f64);
                let mut acc = 0.0;
                let i0 = (a * n as f64).floor() as usize;
                let i1 = ((b * n as f64).ceil() as usize).min(n);
                for i in i0..i1 {
                    let (ca, cb) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
                    let overlap = (cb.min(b) - ca.max(a)).max(0.0);
                    acc += overlap * self.values[i];
                }
                acc * m as f64
            })
            .collect();
        Profile { values }
    }

    /// Mirror image x ↦ 1 − x.
    pub fn flipped(&self) -> Profile {
        let mut values = self.values.clone();
        values.reverse();
        Profile { values }
    }

    /// Pointwise map.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Profile {
        Profile {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Density snapshots at strictly increasing times on a shared grid.
#[derive(Clone, Debug)]
pub struct SpaceTimeField {
    times: Vec<f64>,
    profiles: Vec<Profile>,
}

impl SpaceTimeField {
    pub fn new(times: Vec<f64>, profiles: Vec<Profile>) -> Result<Self, FieldError> {
        if times.len() != profiles.len() {
            return Err(FieldError::LengthMismatch(times.len(), profiles.len()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FieldError::TimesNotIncreasing);
        }
        let n = profiles.first().ok_or(FieldError::Empty)?.len();
        if profiles.iter().any(|p| p.len() != n) {
            return Err(FieldError::Format("ragged profile grid".into()));
        }
        Ok(SpaceTimeField { times, profiles })
    }

    pub fn n_cells(&self) -> usize {
        self.profiles[0].len()
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn dx(&self) -> f64 {
        self.profiles[0].dx()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn profile(&self, j: usize) -> &Profile {
        &self.profiles[j]
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn first(&self) -> &Profile {
        &self.profiles[0]
    }

    pub fn last(&self) -> &Profile {
        self.profiles.last().unwrap()
    }

    /// Snapshot at the recorded time nearest to `t`.
    pub fn nearest(&self, t: f64) -> (&f64, &Profile) {
        let j = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(j, _)| j)
            .unwrap();
        (&self.times[j], &self.profiles[j])
    }

    /// Reverse the arrow of time: snapshot at t becomes snapshot at T − t.
    /// With `flip_space` the spatial coordinate is mirrored as well.
    pub fn reversed(&self, flip_space: bool) -> SpaceTimeField {
        let horizon = *self.times.last().unwrap();
        let mut times: Vec<f64> = self.times.iter().map(|t| horizon - t).collect();
        times.reverse();
        let mut profiles: Vec<Profile> = if flip_space {
            self.profiles.iter().map(|p| p.flipped()).collect()
        } else {
            self.profiles.clone()
        };
        profiles.reverse();
        SpaceTimeField { times, profiles }
    }

    /// Write as `t,x,rho` rows, one row per cell per snapshot.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), FieldError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "x", "rho"])?;
        for (t, p) in self.times.iter().zip(&self.profiles) {
            for (i, v) in p.values().iter().enumerate() {
                w.write_record(&[t.to_string(), p.center(i).to_string(), v.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Read a `t,x,rho` file produced by [`write_csv`](Self::write_csv);
    /// snapshots are grouped by consecutive equal times.
    pub fn read_csv<R: Read>(input: R) -> Result<Self, FieldError> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        if headers.iter().take(3).collect::<Vec<_>>() != ["t", "x", "rho"] {
            return Err(FieldError::Format(format!(
                "expected header t,x,rho got {:?}",
                headers
            )));
        }
        let mut times: Vec<f64> = Vec::new();
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64, FieldError> {
                rec.get(i)
                    .ok_or_else(|| FieldError::Format("short row".into()))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| FieldError::Format(e.to_string()))
            };
            let (t, v) = (parse(0)?, parse(2)?);
            match times.last() {
                Some(&last) if last == t => rows.last_mut().unwrap().push(v),
                _ => {
                    times.push(t);
                    rows.push(vec![v]);
                }
            }
        }
        let profiles = rows
            .into_iter()
            .map(Profile::from_values)
            .collect::<Result<Vec<_>, _>>()?;
        SpaceTimeField::new(times, profiles)
    }
}

/// A curve x(t) separating regions of a wave diagram.
#[derive(Clone, Debug)]
pub enum Curve {
    /// x(t) = c.
    Vertical(f64),
    /// x(t) = x0 + v·(t − t0).
    Line { x0: f64, t0: f64, v: f64 },
    /// Uniformly sampled path from a shock ODE, interpolated linearly;
    /// clamped to its endpoints outside the sampled window.
    Sampled { t0: f64, dt: f64, xs: Vec<f64> },
}

impl Curve {
    pub fn position(&self, t: f64) -> f64 {
        match self {
            Curve::Vertical(c) => *c,
            Curve::Line { x0, t0, v } => x0 + v * (t - t0),
            Curve::Sampled { t0, dt, xs } => crate::numerics::lerp_uniform(xs, *t0, *dt, t),
        }
    }

    /// Integrate dx/dt = rhs(t, x) with classical fourth-order steps.
    pub fn from_ode(t0: f64, x0: f64, t1: f64, dt: f64, rhs: impl Fn(f64, f64) -> f64) -> Curve {
        let steps = (((t1 - t0) / dt).ceil() as usize).max(1);
        let dt = (t1 - t0) / steps as f64;
        let mut xs = Vec::with_capacity(steps + 1);
        let mut x = x0;
        xs.push(x);
        for s in 0..steps {
            let t = t0 + s as f64 * dt;
            let k1 = rhs(t, x);
            let k2 = rhs(t + 0.5 * dt, x + 0.5 * dt * k1);
            let k3 = rhs(t + 0.5 * dt, x + 0.5 * dt * k2);
            let k4 = rhs(t + dt, x + dt * k3);
            x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            xs.push(x);
        }
        Curve::Sampled { t0, dt, xs }
    }

    /// Last sampled point of an ODE curve, (t, x).
    pub fn end(&self) -> (f64, f64) {
        match self {
            Curve::Vertical(_) | Curve::Line { .. } => {
                panic!("end point only defined for sampled curves")
            }
            Curve::Sampled { t0, dt, xs } => {
                (t0 + dt * (xs.len() - 1) as f64, *xs.last().unwrap())
            }
        }
    }
}

/// Value carried by the sector between two curves.
#[derive(Clone, Copy, Debug)]
pub enum Sector {
    Const(f64),
    /// Centered rarefaction fan: ρ(t,x) = (f′)⁻¹((x − xc)/(t − tc)).
    Fan { xc: f64, tc: f64 },
}

impl Sector {
    fn eval(&self, flux: &FluxModel, t: f64, x: f64) -> f64 {
        match self {
            Sector::Const(v) => *v,
            Sector::Fan { xc, tc } => {
                let dt = t - tc;
                if dt <= 0.0 {
                    return flux.rho_star();
                }
                flux.fprime_inv((x - xc) / dt)
            }
        }
    }
}

/// One time slab of a diagram: curves ordered left to right and the values
/// between them (`sectors.len() == curves.len() + 1`).
#[derive(Clone, Debug)]
pub struct Slab {
    pub t_end: f64,
    pub curves: Vec<Curve>,
    pub sectors: Vec<Sector>,
}

/// Exact solution described by time slabs; slab boundaries are wave
/// interaction times.
#[derive(Clone, Debug)]
pub struct WaveDiagram {
    slabs: Vec<Slab>,
}

impl WaveDiagram {
    pub fn new(slabs: Vec<Slab>) -> Self {
        assert!(!slabs.is_empty(), "diagram needs at least one slab");
        for s in &slabs {
            assert_eq!(s.sectors.len(), s.curves.len() + 1, "sector count");
        }
        WaveDiagram { slabs }
    }

    pub fn eval(&self, flux: &FluxModel, t: f64, x: f64) -> f64 {
        let idx = self
            .slabs
            .iter()
            .position(|s| t < s.t_end)
            .unwrap_or(self.slabs.len() - 1);
        let slab = &self.slabs[idx];
        let mut sector = slab.curves.len();
        let mut edge = f64::NEG_INFINITY;
        for (i, c) in slab.curves.iter().enumerate() {
            // curves may touch at interaction times; keep positions ordered
            let pos = c.position(t).max(edge);
            edge = pos;
            if x < pos {
                sector = i;
                break;
            }
        }
        slab.sectors[sector].eval(flux, t, x)
    }

    /// Sample at cell centers of an `n`-cell grid for each requested time.
    pub fn rasterize(
        &self,
        flux: &FluxModel,
        times: &[f64],
        n: usize,
    ) -> Result<SpaceTimeField, FieldError> {
        let profiles = times
            .iter()
            .map(|&t| Profile::from_fn(n, |x| self.eval(flux, t, x)))
            .collect();
        SpaceTimeField::new(times.to_vec(), profiles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn step_profile_cell_averages() {
        let p = Profile::step(0.2, 0.8, 0.25, 10);
        assert_abs_diff_eq!(p.values()[0], 0.2);
        assert_abs_diff_eq!(p.values()[9], 0.8);
        // cell [0.2, 0.3] is half filled
        assert_abs_diff_eq!(p.values()[2], 0.5 * (0.2 + 0.8), epsilon = 1e-14);
        assert_abs_diff_eq!(
            p.total_mass(),
            0.25 * 0.2 + 0.75 * 0.8,
            epsilon = 1e-14
        );
    }

    #[test]
    fn l1_and_resample() {
        let a = Profile::uniform(0.4, 8);
        let b = Profile::uniform(0.6, 8);
        assert_abs_diff_eq!(a.l1_distance(&b).unwrap(), 0.2, epsilon = 1e-15);
        let fine = Profile::step(0.0, 1.0, 0.5, 64);
        let coarse = fine.resample(4);
        assert_abs_diff_eq!(coarse.values()[0], 0.0);
        assert_abs_diff_eq!(coarse.values()[3], 1.0);
        assert_abs_diff_eq!(coarse.total_mass(), fine.total_mass(), epsilon = 1e-14);
    }

    #[test]
    fn csv_roundtrip() {
        let field = SpaceTimeField::new(
            vec![0.0, 0.5, 1.25],
            vec![
                Profile::uniform(0.3, 16),
                Profile::step(0.2, 0.7, 0.4, 16),
                Profile::from_fn(16, |x| 0.5 + 0.25 * (x - 0.5)),
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        field.write_csv(&mut buf).unwrap();
        let back = SpaceTimeField::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.n_times(), 3);
        assert_eq!(back.n_cells(), 16);
        for j in 0..3 {
            assert_abs_diff_eq!(back.times()[j], field.times()[j]);
            assert_abs_diff_eq!(
                back.profile(j).l1_distance(field.profile(j)).unwrap(),
                0.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn reversal_flips_time_and_space() {
        let field = SpaceTimeField::new(
            vec![0.0, 1.0],
            vec![Profile::step(0.1, 0.9, 0.25, 4), Profile::uniform(0.5, 4)],
        )
        .unwrap();
        let rev = field.reversed(true);
        assert_eq!(rev.times(), &[0.0, 1.0]);
        assert_abs_diff_eq!(rev.first().values()[0], 0.5);
        assert_abs_diff_eq!(rev.last().values()[0], 0.9);
        assert_abs_diff_eq!(rev.last().values()[3], 0.1);
    }

    #[test]
    fn diagram_with_shock_and_fan() {
        // standing shock 0.3 | 0.7 at x = 0.5 up to t = 1, then a fan opening
        // from (1, 0.5) sandwiched by verticals
        let flux = FluxModel::asep();
        let d = WaveDiagram::new(vec![
            Slab {
                t_end: 1.0,
                curves: vec![Curve::Vertical(0.5)],
                sectors: vec![Sector::Const(0.3), Sector::Const(0.7)],
            },
            Slab {
                t_end: f64::INFINITY,
                curves: vec![
                    Curve::Line {
                        x0: 0.5,
                        t0: 1.0,
                        v: -0.4,
                    },
                    Curve::Line {
                        x0: 0.5,
                        t0: 1.0,
                        v: 0.4,
                    },
                ],
                sectors: vec![
                    Sector::Const(0.7),
                    Sector::Fan { xc: 0.5, tc: 1.0 },
                    Sector::Const(0.3),
                ],
            },
        ]);
        assert_abs_diff_eq!(d.eval(&flux, 0.5, 0.2), 0.3);
        assert_abs_diff_eq!(d.eval(&flux, 0.5, 0.8), 0.7);
        // inside the fan the value interpolates through ρ* at the center
        assert_abs_diff_eq!(d.eval(&flux, 1.5, 0.5), 0.5, epsilon = 1e-12);
        let v = d.eval(&flux, 1.5, 0.55);
        assert_abs_diff_eq!(flux.fprime(v), 0.1, epsilon = 1e-10);
    }

    #[test]
    fn ode_curve_tracks_linear_motion() {
        let c = Curve::from_ode(0.0, 0.2, 2.0, 1e-3, |_, _| 0.15);
        assert_abs_diff_eq!(c.position(2.0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(c.position(1.0), 0.35, epsilon = 1e-12);
        let (te, xe) = c.end();
        assert_abs_diff_eq!(te, 2.0);
        assert_abs_diff_eq!(xe, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn rasterize_matches_eval() {
        let flux = FluxModel::asep();
        let d = WaveDiagram::new(vec![Slab {
            t_end: f64::INFINITY,
            curves: vec![Curve::Line {
                x0: 0.3,
                t0: 0.0,
                v: 0.2,
            }],
            sectors: vec![Sector::Const(0.25), Sector::Const(0.6)],
        }]);
        let f = d.rasterize(&flux, &[0.0, 1.0], 100).unwrap();
        assert_eq!(f.n_times(), 2);
        // at t = 1 the jump sits at x = 0.5
        assert_abs_diff_eq!(f.profile(1).values()[49], 0.25);
        assert_abs_diff_eq!(f.profile(1).values()[50], 0.6);
    }
}
