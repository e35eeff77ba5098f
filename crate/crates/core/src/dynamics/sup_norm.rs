use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::grid::disc_grid;
use crate::symbols::Symbol;
use crate::Complex;

/// Default boundary sample count of the sup-norm grid.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 512;
/// Default number of Chebyshev radii of the sup-norm grid.
pub const DEFAULT_RADIAL_SAMPLES: usize = 64;

/// `max_{z ∈ grid} f(φ^n(z))` for `n = 1..=n_max`, entry `n − 1`.
pub fn sup_profile_by<F>(
    s: &Symbol,
    n_max: usize,
    boundary_samples: usize,
    radial_samples: usize,
    f: F,
) -> Result<Vec<f64>, DynamicsError>
where
    F: Fn(Complex) -> f64 + Sync,
{
    if n_max == 0 {
        return Err(DynamicsError::Precondition("iterate count must be at least 1".into()));
    }
    if boundary_samples < 16 || radial_samples < 2 {
        return Err(DynamicsError::Precondition(
            "grid needs at least 16 boundary samples and 2 radii".into(),
        ));
    }
    let grid = disc_grid(boundary_samples, radial_samples);
    let profile = grid
        .par_iter()
        .fold(
            || vec![f64::NEG_INFINITY; n_max],
            |mut acc, &z| {
                let mut w = z;
                for slot in acc.iter_mut() {
                    w = s.apply(w);
                    *slot = slot.max(f(w));
                }
                acc
            },
        )
        .reduce(
            || vec![f64::NEG_INFINITY; n_max],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = x.max(y);
                }
                a
            },
        );
    Ok(profile)
}

/// `‖φⁿ‖_∞` estimated on the polar grid.
pub fn sup_norm_iterate(
    s: &Symbol,
    n: usize,
    boundary_samples: usize,
    radial_samples: usize,
) -> Result<f64, DynamicsError> {
    let profile = sup_profile_by(s, n, boundary_samples, radial_samples, |w| w.norm())?;
    Ok(profile[n - 1])
}

/// Pseudo-hyperbolic distance `|z − a|/|1 − ā z|`.
pub fn pseudo_hyperbolic(z: Complex, a: Complex) -> f64 {
    let den = (Complex::new(1.0, 0.0) - a.conj() * z).norm();
    if den == 0.0 {
        return 1.0;
    }
    ((z - a).norm() / den).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    /// Largest sampled `|φ(z) − z0|/|z − z0|`.
    pub rho: f64,
    pub witness: Complex,
    pub pass: bool,
}

/// Samples `|φ(z) − z0|/|z − z0|` over `0 < |z − z0| ≤ r` inside the closed
/// disc (sixteen rings of `samples` points, plus the boundary arc within
/// distance `r` of `z0`) and reports whether the ratio stays below 1.
pub fn local_contraction_check(
    s: &Symbol,
    z0: Complex,
    r: f64,
    samples: usize,
) -> Result<ContractionReport, DynamicsError> {
    if !(r > 0.0 && r.is_finite()) || samples < 8 {
        return Err(DynamicsError::Precondition("need r > 0 and at least 8 samples".into()));
    }
    let mut pts = Vec::with_capacity(17 * samples);
    for ring in 1..=16 {
        let rad = r * ring as f64 / 16.0;
        for k in 0..samples {
            let z = z0 + Complex::from_polar(rad, std::f64::consts::TAU * k as f64 / samples as f64);
            if z.norm() <= 1.0 {
                pts.push(z);
            }
        }
    }
    if (z0.norm() - 1.0).abs() < r {
        let half_width = 2.0 * (r.min(2.0) / 2.0).asin();
        let base = z0.arg();
        for k in 1..=samples {
            let off = half_width * k as f64 / samples as f64;
            for sign in [-1.0, 1.0] {
                let z = Complex::from_polar(1.0, base + sign * off);
                let dist = (z - z0).norm();
                if dist > 0.0 && dist <= r {
                    pts.push(z);
                }
            }
        }
    }
    let (rho, witness) = pts
        .iter()
        .map(|&z| ((s.apply(z) - z0).norm() / (z - z0).norm(), z))
        .fold((f64::NEG_INFINITY, z0), |acc, x| if x.0 > acc.0 { x } else { acc });
    Ok(ContractionReport {
        rho,
        witness,
        pass: rho < 1.0,
    })
}
