//! Closed-form auxiliary evolutions for uniform targets.
//!
//! When the target profile is uniform, the auxiliary field behind
//! [`build_path`](super::build_path) is an explicit arrangement of plateaus,
//! centered fans, and jump lines whose interactions happen at computable
//! times; the only non-elementary piece is a front chasing a fan, an ODE
//! integrated here to high order. These diagrams are the references the
//! Godunov constructions are validated against.

use crate::fields::{Curve, Sector, Slab, WaveDiagram};
use crate::model::{BoundarySpec, FluxModel, Model, ModelError, Phase};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("no closed-form reference for this configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An exact auxiliary evolution and the arrangement it realises.
#[derive(Clone, Debug)]
pub struct UniformDiagram {
    pub diagram: WaveDiagram,
    pub label: &'static str,
}

/// Exact auxiliary field for the uniform target ρ under the given boundary
/// pair. `anchor` is the jump position y on the coexistence line (defaults
/// to 1/2); elsewhere it is ignored.
pub fn uniform_target_diagram(
    model: &Model,
    spec: &BoundarySpec,
    rho: f64,
    anchor: Option<f64>,
) -> Result<UniformDiagram, DiagramError> {
    let flux = model.flux();
    let rs = flux.rho_star();
    if spec.rho_l < spec.rho_r {
        if spec.phase == Phase::Coexistence {
            let rc = model.rho_critical(spec)?;
            if (rho - rc).abs() <= 1e-9 && (rc - rs).abs() <= 1e-9 {
                let y = anchor.unwrap_or(0.5).clamp(0.0, 1.0);
                return Ok(standing_jump(flux, spec, rc, y));
            }
            return Err(DiagramError::Unsupported(
                "coexistence reference needs the balanced critical target".into(),
            ));
        }
        if flux.f(spec.rho_l) <= flux.f(spec.rho_r) + 1e-12 {
            if rho <= spec.rho_l + 1e-12 {
                return Ok(entering_fan_left(flux, spec.rho_l, rho));
            }
            let rc = model.rho_critical(spec)?;
            if rho <= rs + 1e-12 && rho < rc - 1e-9 {
                return Ok(entering_jump_left(flux, spec.rho_l, rho));
            }
        }
        Err(DiagramError::Unsupported(format!(
            "target {rho} outside the tabulated low-side cases"
        )))
    } else {
        match spec.phase {
            Phase::LowDensity => Ok(relax_low(flux, spec, rho)),
            Phase::MaximalCurrent => Ok(relax_extremal(flux, rho)),
            Phase::HighDensity => Ok(relax_high(flux, spec, rho)),
            Phase::Coexistence => Err(DiagramError::Unsupported(
                "coexistence needs ρ_l < ρ_r".into(),
            )),
        }
    }
}

/// Integrate a front ẋ = v(behind, fan value) through a centered fan until
/// it reaches `target`, returning the curve and the crossing time (or
/// `t_max` if it never crosses).
fn fan_chase(
    flux: &FluxModel,
    behind: f64,
    fan: (f64, f64),
    t0: f64,
    x0: f64,
    target: f64,
    t_max: f64,
) -> (Curve, f64) {
    let steps = 4096usize;
    let dt = (t_max - t0) / steps as f64;
    let rhs = |t: f64, x: f64| {
        let val = flux.fprime_inv((x - fan.0) / (t - fan.1));
        flux.shock_speed(behind, val)
    };
    let dir = if target >= x0 { 1.0 } else { -1.0 };
    let mut xs = Vec::with_capacity(steps + 1);
    let mut x = x0;
    xs.push(x);
    for s in 0..steps {
        let t = t0 + s as f64 * dt;
        let k1 = rhs(t, x);
        let k2 = rhs(t + 0.5 * dt, x + 0.5 * dt * k1);
        let k3 = rhs(t + 0.5 * dt, x + 0.5 * dt * k2);
        let k4 = rhs(t + dt, x + dt * k3);
        let x1 = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        xs.push(x1);
        if (x1 - target) * dir >= 0.0 {
            let frac = if (x1 - x).abs() > f64::MIN_POSITIVE {
                ((target - x) / (x1 - x)).clamp(0.0, 1.0)
            } else {
                1.0
            };
            let t_cross = t0 + (s as f64 + frac) * dt;
            return (Curve::Sampled { t0, dt, xs }, t_cross);
        }
        x = x1;
    }
    (Curve::Sampled { t0, dt, xs }, t_max)
}

/// Time by which a chase started at `t0` has certainly crossed the domain:
/// past 2·t0 the fan has flattened enough that the front speed is at least
/// the jump speed against the mid-fan value.
fn chase_bound(flux: &FluxModel, behind: f64, t0: f64, from_right: bool) -> f64 {
    let slope = if from_right { -0.5 / t0 } else { 0.5 / t0 };
    let s = flux.shock_speed(behind, flux.fprime_inv(slope)).abs();
    2.0 * t0 + 4.0 / s
}

/// Target below the entering datum: the datum plateau, a fan from the left
/// corner, and the surviving target plateau.
fn entering_fan_left(flux: &FluxModel, datum: f64, rho: f64) -> UniformDiagram {
    let diagram = WaveDiagram::new(vec![Slab {
        t_end: f64::INFINITY,
        curves: vec![
            Curve::Line {
                x0: 0.0,
                t0: 0.0,
                v: flux.fprime(datum),
            },
            Curve::Line {
                x0: 0.0,
                t0: 0.0,
                v: flux.fprime(rho),
            },
        ],
        sectors: vec![
            Sector::Const(datum),
            Sector::Fan { xc: 0.0, tc: 0.0 },
            Sector::Const(rho),
        ],
    }]);
    UniformDiagram {
        diagram,
        label: "entering-fan",
    }
}

fn entering_fan_right(flux: &FluxModel, rho: f64, datum: f64) -> UniformDiagram {
    let diagram = WaveDiagram::new(vec![Slab {
        t_end: f64::INFINITY,
        curves: vec![
            Curve::Line {
                x0: 1.0,
                t0: 0.0,
                v: flux.fprime(rho),
            },
            Curve::Line {
                x0: 1.0,
                t0: 0.0,
                v: flux.fprime(datum),
            },
        ],
        sectors: vec![
            Sector::Const(rho),
            Sector::Fan { xc: 1.0, tc: 0.0 },
            Sector::Const(datum),
        ],
    }]);
    UniformDiagram {
        diagram,
        label: "entering-fan",
    }
}

/// Target above the entering datum (up to the sonic point): a single jump at
/// the Rankine-Hugoniot speed.
fn entering_jump_left(flux: &FluxModel, datum: f64, rho: f64) -> UniformDiagram {
    let diagram = WaveDiagram::new(vec![Slab {
        t_end: f64::INFINITY,
        curves: vec![Curve::Line {
            x0: 0.0,
            t0: 0.0,
            v: flux.shock_speed(datum, rho),
        }],
        sectors: vec![Sector::Const(datum), Sector::Const(rho)],
    }]);
    UniformDiagram {
        diagram,
        label: "entering-jump",
    }
}

fn entering_jump_right(flux: &FluxModel, rho: f64, datum: f64) -> UniformDiagram {
    let diagram = WaveDiagram::new(vec![Slab {
        t_end: f64::INFINITY,
        curves: vec![Curve::Line {
            x0: 1.0,
            t0: 0.0,
            v: flux.shock_speed(rho, datum),
        }],
        sectors: vec![Sector::Const(rho), Sector::Const(datum)],
    }]);
    UniformDiagram {
        diagram,
        label: "entering-jump",
    }
}

/// Balanced critical target on the coexistence line: both data invade at
/// their jump speeds around the standing discontinuity at 1 − y.
fn standing_jump(flux: &FluxModel, spec: &BoundarySpec, rc: f64, y: f64) -> UniformDiagram {
    let x0 = 1.0 - y;
    let diagram = WaveDiagram::new(vec![Slab {
        t_end: f64::INFINITY,
        curves: vec![
            Curve::Line {
                x0,
                t0: 0.0,
                v: flux.shock_speed(rc, spec.rho_r),
            },
            Curve::Vertical(x0),
            Curve::Line {
                x0,
                t0: 0.0,
                v: flux.shock_speed(spec.rho_l, rc),
            },
        ],
        sectors: vec![
            Sector::Const(rc),
            Sector::Const(spec.rho_r),
            Sector::Const(spec.rho_l),
            Sector::Const(rc),
        ],
    }]);
    UniformDiagram {
        diagram,
        label: "standing-jump",
    }
}

/// ρ_r ≤ ρ_l below the sonic point: the right-corner fan erodes the plateau;
/// once the left data switch to ρ_l, the entering front chases the fan out.
fn relax_low(flux: &FluxModel, spec: &BoundarySpec, rho: f64) -> UniformDiagram {
    let rs = flux.rho_star();
    let wl = flux.phi(spec.rho_l);
    if rho >= wl {
        let t2 = -1.0 / flux.fprime(wl);
        let slab1 = Slab {
            t_end: t2,
            curves: vec![Curve::Line {
                x0: 1.0,
                t0: 0.0,
                v: flux.fprime(rho),
            }],
            sectors: vec![Sector::Const(rho), Sector::Fan { xc: 1.0, tc: 0.0 }],
        };
        let t_max = chase_bound(flux, spec.rho_l, t2, true);
        let (curve, t_cross) = fan_chase(flux, spec.rho_l, (1.0, 0.0), t2, 0.0, 1.0, t_max);
        let slab2 = Slab {
            t_end: t_cross,
            curves: vec![curve],
            sectors: vec![Sector::Const(spec.rho_l), Sector::Fan { xc: 1.0, tc: 0.0 }],
        };
        let slab3 = Slab {
            t_end: f64::INFINITY,
            curves: vec![],
            sectors: vec![Sector::Const(spec.rho_l)],
        };
        UniformDiagram {
            diagram: WaveDiagram::new(vec![slab1, slab2, slab3]),
            label: "high-plateau-chase",
        }
    } else if rho > rs {
        let vj = flux.shock_speed(spec.rho_l, rho);
        let t3 = 1.0 / (vj - flux.fprime(rho));
        let slab1 = Slab {
            t_end: t3,
            curves: vec![
                Curve::Line {
                    x0: 0.0,
                    t0: 0.0,
                    v: vj,
                },
                Curve::Line {
                    x0: 1.0,
                    t0: 0.0,
                    v: flux.fprime(rho),
                },
            ],
            sectors: vec![
                Sector::Const(spec.rho_l),
                Sector::Const(rho),
                Sector::Fan { xc: 1.0, tc: 0.0 },
            ],
        };
        let t_max = chase_bound(flux, spec.rho_l, t3, true);
        let (curve, t_cross) =
            fan_chase(flux, spec.rho_l, (1.0, 0.0), t3, t3 * vj, 1.0, t_max);
        let slab2 = Slab {
            t_end: t_cross,
            curves: vec![curve],
            sectors: vec![Sector::Const(spec.rho_l), Sector::Fan { xc: 1.0, tc: 0.0 }],
        };
        let slab3 = Slab {
            t_end: f64::INFINITY,
            curves: vec![],
            sectors: vec![Sector::Const(spec.rho_l)],
        };
        UniformDiagram {
            diagram: WaveDiagram::new(vec![slab1, slab2, slab3]),
            label: "jump-meets-fan-chase",
        }
    } else if rho >= spec.rho_l {
        entering_jump_left(flux, spec.rho_l, rho)
    } else {
        entering_fan_left(flux, spec.rho_l, rho)
    }
}

/// Maximal current: a single one-sided fan pulls the plateau to the sonic
/// value.
fn relax_extremal(flux: &FluxModel, rho: f64) -> UniformDiagram {
    let rs = flux.rho_star();
    let diagram = if rho >= rs {
        WaveDiagram::new(vec![Slab {
            t_end: f64::INFINITY,
            curves: vec![Curve::Line {
                x0: 1.0,
                t0: 0.0,
                v: flux.fprime(rho),
            }],
            sectors: vec![Sector::Const(rho), Sector::Fan { xc: 1.0, tc: 0.0 }],
        }])
    } else {
        WaveDiagram::new(vec![Slab {
            t_end: f64::INFINITY,
            curves: vec![Curve::Line {
                x0: 0.0,
                t0: 0.0,
                v: flux.fprime(rho),
            }],
            sectors: vec![Sector::Fan { xc: 0.0, tc: 0.0 }, Sector::Const(rho)],
        }])
    };
    UniformDiagram {
        diagram,
        label: "sonic-fan",
    }
}

/// Mirror of [`relax_low`] for ρ* < ρ_r ≤ ρ_l.
fn relax_high(flux: &FluxModel, spec: &BoundarySpec, rho: f64) -> UniformDiagram {
    let rs = flux.rho_star();
    let wr = flux.phi(spec.rho_r);
    if rho <= wr {
        let t2 = 1.0 / flux.fprime(wr);
        let slab1 = Slab {
            t_end: t2,
            curves: vec![Curve::Line {
                x0: 0.0,
                t0: 0.0,
                v: flux.fprime(rho),
            }],
            sectors: vec![Sector::Fan { xc: 0.0, tc: 0.0 }, Sector::Const(rho)],
        };
        let t_max = chase_bound(flux, spec.rho_r, t2, false);
        let (curve, t_cross) = fan_chase(flux, spec.rho_r, (0.0, 0.0), t2, 1.0, 0.0, t_max);
        let slab2 = Slab {
            t_end: t_cross,
            curves: vec![curve],
            sectors: vec![Sector::Fan { xc: 0.0, tc: 0.0 }, Sector::Const(spec.rho_r)],
        };
        let slab3 = Slab {
            t_end: f64::INFINITY,
            curves: vec![],
            sectors: vec![Sector::Const(spec.rho_r)],
        };
        UniformDiagram {
            diagram: WaveDiagram::new(vec![slab1, slab2, slab3]),
            label: "low-plateau-chase",
        }
    } else if rho < rs {
        let vj = flux.shock_speed(rho, spec.rho_r);
        let t3 = 1.0 / (flux.fprime(rho) - vj);
        let slab1 = Slab {
            t_end: t3,
            curves: vec![
                Curve::Line {
                    x0: 0.0,
                    t0: 0.0,
                    v: flux.fprime(rho),
                },
                Curve::Line {
                    x0: 1.0,
                    t0: 0.0,
                    v: vj,
                },
            ],
            sectors: vec![
                Sector::Fan { xc: 0.0, tc: 0.0 },
                Sector::Const(rho),
                Sector::Const(spec.rho_r),
            ],
        };
        let t_max = chase_bound(flux, spec.rho_r, t3, false);
        let (curve, t_cross) =
            fan_chase(flux, spec.rho_r, (0.0, 0.0), t3, 1.0 + t3 * vj, 0.0, t_max);
        let slab2 = Slab {
            t_end: t_cross,
            curves: vec![curve],
            sectors: vec![Sector::Fan { xc: 0.0, tc: 0.0 }, Sector::Const(spec.rho_r)],
        };
        let slab3 = Slab {
            t_end: f64::INFINITY,
            curves: vec![],
            sectors: vec![Sector::Const(spec.rho_r)],
        };
        UniformDiagram {
            diagram: WaveDiagram::new(vec![slab1, slab2, slab3]),
            label: "jump-meets-fan-chase",
        }
    } else if rho <= spec.rho_r {
        entering_jump_right(flux, rho, spec.rho_r)
    } else {
        entering_fan_right(flux, rho, spec.rho_r)
    }
}
