use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::symbols::Symbol;
use crate::Complex;

/// A boundary point with `φ^p(ζ) = ζ` for a minimal `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicPoint {
    pub point: Complex,
    pub period: usize,
    pub residual: f64,
}

pub const MAX_PERIOD: usize = 8;
const ACCEPT_RESIDUAL: f64 = 1e-8;
const MINIMALITY_TOL: f64 = 1e-8;
const DEDUP_TOL: f64 = 1e-7;

fn iterate_p(s: &Symbol, z: Complex, p: usize) -> Complex {
    (0..p).fold(z, |w, _| s.apply(w))
}

/// `φ^p(z)` together with `(φ^p)′(z)` by the chain rule.
fn iterate_with_derivative(s: &Symbol, z: Complex, p: usize) -> (Complex, Complex) {
    let mut w = z;
    let mut d = Complex::new(1.0, 0.0);
    for _ in 0..p {
        d *= s.derivative_at(w);
        w = s.apply(w);
    }
    (w, d)
}

fn circle(t: f64) -> Complex {
    Complex::from_polar(1.0, t)
}

fn wrapped_arg_gap(s: &Symbol, t: f64, p: usize) -> f64 {
    let w = iterate_p(s, circle(t), p);
    let mut g = w.arg() - t;
    g -= TAU * (g / TAU).round();
    g
}

fn bisect(s: &Symbol, mut lo: f64, mut hi: f64, p: usize) -> f64 {
    let mut flo = wrapped_arg_gap(s, lo, p);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = wrapped_arg_gap(s, mid, p);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(s: &Symbol, mut a: f64, mut b: f64, p: usize) -> f64 {
    let h = |t: f64| (iterate_p(s, circle(t), p) - circle(t)).norm();
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (h(x1), h(x2));
    for _ in 0..100 {
        if b - a < 1e-14 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = h(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = h(x2);
        }
    }
    0.5 * (a + b)
}

fn newton_polish(s: &Symbol, mut z: Complex, p: usize) -> Option<Complex> {
    for _ in 0..60 {
        let (w, d) = iterate_with_derivative(s, z, p);
        let g = w - z;
        let dg = d - 1.0;
        if g == Complex::new(0.0, 0.0) {
            return Some(z);
        }
        if dg.norm() == 0.0 || !dg.is_finite() {
            return Some(z);
        }
        let step = g / dg;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if (z.norm() - 1.0).abs() > 1e-2 {
            return None;
        }
        if step.norm() < 1e-16 {
            break;
        }
    }
    Some(z)
}

/// Boundary periodic points of minimal period `1..=max_period`.
///
/// Candidates come from sign changes of `arg φ^p(e^{it}) − t` (for maps that
/// keep the circle) and from local minima of `|φ^p(e^{it}) − e^{it}|` (which
/// also catch tangential solutions and maps that do not keep the circle).
/// Each candidate is polished by Newton's method on `φ^p(z) − z` and kept if
/// it lies on the circle with residual at most `1e-8`.
pub fn boundary_periodic_points(
    s: &Symbol,
    max_period: usize,
    samples: usize,
) -> Result<Vec<PeriodicPoint>, DynamicsError> {
    if !(1..=MAX_PERIOD).contains(&max_period) {
        return Err(DynamicsError::Precondition(format!(
            "max_period must lie in 1..={MAX_PERIOD}"
        )));
    }
    if samples < 16 {
        return Err(DynamicsError::Precondition("at least 16 samples are required".into()));
    }
    let keeps_circle = s.is_boundary_preserving(samples.min(1024));
    let dt = TAU / samples as f64;
    let ts: Vec<f64> = (0..samples).map(|k| k as f64 * dt).collect();
    let mut found: Vec<PeriodicPoint> = Vec::new();

    for p in 1..=max_period {
        let mut seeds = Vec::new();
        let images: Vec<Complex> = ts.iter().map(|&t| iterate_p(s, circle(t), p)).collect();
        if keeps_circle {
            let gaps: Vec<f64> = ts
                .iter()
                .zip(&images)
                .map(|(&t, w)| {
                    let g = w.arg() - t;
                    g - TAU * (g / TAU).round()
                })
                .collect();
            for k in 0..samples {
                let (g0, g1) = (gaps[k], gaps[(k + 1) % samples]);
                if g0 == 0.0 {
                    seeds.push(ts[k]);
                } else if (g0 < 0.0) != (g1 < 0.0) && g0.abs() + g1.abs() < PI {
                    seeds.push(bisect(s, ts[k], ts[k] + dt, p));
                }
            }
        }
        let h: Vec<f64> = ts.iter().zip(&images).map(|(&t, w)| (w - circle(t)).norm()).collect();
        for k in 0..samples {
            let (hl, hc, hr) = (h[(k + samples - 1) % samples], h[k], h[(k + 1) % samples]);
            let slope = (hc - hl).abs().max((hr - hc).abs());
            if hc <= hl && hc <= hr && hc <= 2.0 * slope + 1e-12 {
                seeds.push(golden_min(s, ts[k] - dt, ts[k] + dt, p));
            }
        }

        for t in seeds {
            let Some(z) = newton_polish(s, circle(t), p) else {
                continue;
            };
            if (z.norm() - 1.0).abs() > 1e-8 {
                continue;
            }
            let z = z / z.norm();
            let residual = (iterate_p(s, z, p) - z).norm();
            if residual > ACCEPT_RESIDUAL {
                continue;
            }
            let lower = (1..p).any(|d| p % d == 0 && (iterate_p(s, z, d) - z).norm() <= MINIMALITY_TOL);
            if lower || found.iter().any(|q| (q.point - z).norm() < DEDUP_TOL) {
                continue;
            }
            found.push(PeriodicPoint {
                point: z,
                period: p,
                residual,
            });
        }
    }
    found.sort_by(|a, b| {
        a.period
            .cmp(&b.period)
            .then(a.point.arg().rem_euclid(TAU).total_cmp(&b.point.arg().rem_euclid(TAU)))
    });
    Ok(found)
}
