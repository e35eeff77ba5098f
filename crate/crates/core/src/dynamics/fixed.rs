use serde::{Deserialize, Serialize};

use super::periodic::boundary_periodic_points;
use super::DynamicsError;
use crate::symbols::{Moebius, Symbol};
use crate::Complex;

/// A point of the extended plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendedPoint {
    Finite(Complex),
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(self) -> Option<Complex> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub point: ExtendedPoint,
    pub multiplicity: u8,
}

/// Outcome of a Denjoy–Wolff point search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DwResult {
    pub point: Complex,
    pub iterations_used: usize,
    /// `|φ(point) − point|`.
    pub residual: f64,
    /// Ratio of the last two successive step sizes (closed forms report
    /// `|φ′(point)|`).
    pub convergence_rate_estimate: f64,
}

/// Iteration budget and step tolerance for [`denjoy_wolff`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DwConfig {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for DwConfig {
    fn default() -> Self {
        Self {
            max_iter: 1_000_000,
            tol: 1e-12,
        }
    }
}

/// Multiplier tolerance separating attracting from neutral fixed points.
const NEUTRAL_TOL: f64 = 1e-9;
/// Points this close to the unit circle count as boundary points.
pub(crate) const BOUNDARY_TOL: f64 = 1e-8;

/// Fixed points of a non-identity Möbius map: roots of
/// `cz² + (d − a)z − b = 0`, with ∞ for affine maps. A double root is
/// reported once with multiplicity 2.
pub fn moebius_fixed_points(m: &Moebius) -> Result<Vec<FixedPoint>, DynamicsError> {
    let m = m.normalized();
    if m.is_identity(1e-12) {
        return Err(DynamicsError::Identity);
    }
    let scale = m.a.norm().max(m.d.norm()).max(m.b.norm()).max(1.0);
    let a2 = m.c;
    let b1 = m.d - m.a;
    let c0 = -m.b;
    if a2.norm() <= 1e-14 * scale {
        // affine: (a z + b)/d has ∞ as a fixed point
        if b1.norm() <= 1e-12 * scale {
            return Ok(vec![FixedPoint {
                point: ExtendedPoint::Infinity,
                multiplicity: 2,
            }]);
        }
        return Ok(vec![
            FixedPoint {
                point: ExtendedPoint::Finite(m.b / b1),
                multiplicity: 1,
            },
            FixedPoint {
                point: ExtendedPoint::Infinity,
                multiplicity: 1,
            },
        ]);
    }
    let disc = b1 * b1 - 4.0 * a2 * c0;
    if disc.norm() <= 1e-12 * (b1.norm_sqr() + 4.0 * (a2 * c0).norm()).max(1e-300) {
        return Ok(vec![FixedPoint {
            point: ExtendedPoint::Finite(-b1 / (2.0 * a2)),
            multiplicity: 2,
        }]);
    }
    let sq = disc.sqrt();
    // pick the sign avoiding cancellation in b1 ± sq
    let q = if (b1.conj() * sq).re >= 0.0 {
        -(b1 + sq) / 2.0
    } else {
        -(b1 - sq) / 2.0
    };
    let r1 = q / a2;
    let r2 = c0 / q;
    Ok(vec![
        FixedPoint {
            point: ExtendedPoint::Finite(r1),
            multiplicity: 1,
        },
        FixedPoint {
            point: ExtendedPoint::Finite(r2),
            multiplicity: 1,
        },
    ])
}

fn snap_to_circle(z: Complex) -> Complex {
    if (z.norm() - 1.0).abs() <= BOUNDARY_TOL {
        z / z.norm()
    } else {
        z
    }
}

/// Denjoy–Wolff point of a Möbius self-map from its fixed points.
fn moebius_denjoy_wolff(m: &Moebius) -> Result<DwResult, DynamicsError> {
    let fixed = moebius_fixed_points(m)?;
    let in_disc: Vec<Complex> = fixed
        .iter()
        .filter_map(|f| f.point.finite())
        .filter(|p| p.norm() <= 1.0 + BOUNDARY_TOL)
        .map(snap_to_circle)
        .collect();
    let mut best: Option<(Complex, f64)> = None;
    for &p in &in_disc {
        let mult = m.derivative(p).norm();
        if p.norm() < 1.0 - BOUNDARY_TOL {
            if mult >= 1.0 - NEUTRAL_TOL {
                return Err(DynamicsError::EllipticInput);
            }
            best = Some((p, mult));
            break;
        }
        if mult <= 1.0 + 1e-6 && best.is_none_or(|(_, bm)| mult < bm) {
            best = Some((p, mult));
        }
    }
    let (point, mult) = best.ok_or_else(|| {
        DynamicsError::Unclassifiable("no attracting fixed point of the Moebius map in the closed disc".into())
    })?;
    Ok(DwResult {
        point,
        iterations_used: 0,
        residual: (m.eval(point) - point).norm(),
        convergence_rate_estimate: mult,
    })
}

/// Denjoy–Wolff point. Möbius maps use the closed form; other symbols are
/// iterated from 0 until both the step and its geometric tail estimate
/// drop below `tol`.
pub fn denjoy_wolff(s: &Symbol, cfg: DwConfig) -> Result<DwResult, DynamicsError> {
    if let Some(m) = s.as_moebius() {
        return moebius_denjoy_wolff(&m);
    }
    let mut z = Complex::new(0.0, 0.0);
    let mut prev_step = f64::NAN;
    let mut rate = f64::NAN;
    for n in 1..=cfg.max_iter {
        let next = s.apply(z);
        if !next.is_finite() || next.norm() > 1.0 + 1e-6 {
            return Err(DynamicsError::Symbol(crate::SymbolError::OrbitEscaped {
                step: n,
                modulus: next.norm(),
            }));
        }
        let step = (next - z).norm();
        if prev_step > 0.0 {
            rate = step / prev_step;
        }
        z = next;
        let tail = if rate < 1.0 {
            step * rate / (1.0 - rate)
        } else {
            f64::INFINITY
        };
        if step == 0.0 || (step < cfg.tol && tail < cfg.tol) {
            let point = snap_to_circle(z);
            return Ok(DwResult {
                point,
                iterations_used: n,
                residual: (s.apply(point) - point).norm(),
                convergence_rate_estimate: if rate.is_nan() { 0.0 } else { rate },
            });
        }
        prev_step = step;
    }
    Err(DynamicsError::NonConvergence {
        iterations: cfg.max_iter,
        last_point: z,
        last_rate: rate,
    })
}

/// Boundary Denjoy–Wolff point located among the boundary fixed points: the
/// unique one whose angular derivative is at most 1.
pub(crate) fn boundary_dw_fallback(s: &Symbol, tol_par: f64, samples: usize) -> Result<DwResult, DynamicsError> {
    let fixed = boundary_periodic_points(s, 1, samples)?;
    let mut candidates = Vec::new();
    for p in fixed {
        let ang = angular_derivative(s, p.point)?;
        if ang <= 1.0 + tol_par {
            candidates.push((p, ang));
        }
    }
    match candidates.as_slice() {
        [(p, ang)] => Ok(DwResult {
            point: p.point,
            iterations_used: 0,
            residual: p.residual,
            convergence_rate_estimate: *ang,
        }),
        [] => Err(DynamicsError::Unclassifiable(
            "iteration did not converge and no boundary fixed point has angular derivative <= 1".into(),
        )),
        _ => Err(DynamicsError::Unclassifiable(format!(
            "{} boundary fixed points with angular derivative <= 1",
            candidates.len()
        ))),
    }
}

/// Angular derivative at a boundary fixed point.
///
/// Analytic representations use `|φ′(z0)|`. Taylor series, which need not
/// extend past the circle, use the radial quotient
/// `(1 − |φ(r z0)|)/(1 − r)` at `r = 1 − 2^{−j}`, `j = 4..=20`, with two
/// levels of Richardson extrapolation.
pub fn angular_derivative(s: &Symbol, z0: Complex) -> Result<f64, DynamicsError> {
    let residual = (s.apply(z0) - z0).norm();
    if residual > 1e-8 {
        return Err(DynamicsError::NotFixed { point: z0, residual });
    }
    match s {
        Symbol::Taylor(_) => {
            let dir = z0 / z0.norm();
            let q: Vec<f64> = (4..=20)
                .map(|j| {
                    let h = (-(j as f64)).exp2();
                    (1.0 - s.apply(dir * (1.0 - h)).norm()) / h
                })
                .collect();
            let r1: Vec<f64> = q.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
            let r2: Vec<f64> = r1.windows(2).map(|w| (4.0 * w[1] - w[0]) / 3.0).collect();
            Ok(*r2.last().expect("seventeen radial samples"))
        }
        _ => Ok(s.derivative_at(z0).norm()),
    }
}
