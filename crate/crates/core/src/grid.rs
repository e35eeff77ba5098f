//! Sampling grids on the closed disc.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::Complex;

/// `count` equispaced points `e^{2πik/count}` on the unit circle, starting at 1.
pub fn boundary_points(count: usize) -> Vec<Complex> {
    (0..count)
        .map(|k| Complex::from_polar(1.0, TAU * k as f64 / count as f64))
        .collect()
}

/// Radii in `[0, 1]` clustered toward 1: `sin(π/2 · i/(count-1))`.
///
/// The first radius is 0 and the last is exactly 1.
pub fn chebyshev_radii(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => (0..count)
            .map(|i| (FRAC_PI_2 * i as f64 / (count - 1) as f64).sin())
            .collect(),
    }
}

/// Polar grid over the closed disc. The centre is included once.
pub fn disc_grid(boundary_samples: usize, radial_samples: usize) -> Vec<Complex> {
    let angles: Vec<f64> = (0..boundary_samples)
        .map(|k| TAU * k as f64 / boundary_samples as f64)
        .collect();
    let mut points = Vec::with_capacity(boundary_samples * radial_samples.max(1));
    for r in chebyshev_radii(radial_samples.max(1)) {
        if r == 0.0 {
            points.push(Complex::new(0.0, 0.0));
            continue;
        }
        points.extend(angles.iter().map(|&t| Complex::from_polar(r, t)));
    }
    points
}
