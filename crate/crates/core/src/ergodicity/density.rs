use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ErgodicityError;
use crate::dynamics::{classify, SymbolClass};
use crate::symbols::cmath::{log1p, CompensatedSum};
use crate::symbols::Symbol;
use crate::Complex;

/// Finite-`N` visit statistics of an orbit to `B(z0, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub z: Complex,
    pub z0: Complex,
    pub neighborhood_radius: f64,
    pub n: usize,
    pub hits: usize,
    /// Smallest `hits(m)/m` over `m ∈ [⌈N/2⌉, N]`.
    pub running_min_ratio: f64,
    /// `hits / N`.
    pub estimate: f64,
}

/// Counts `m ≤ N` with `|φ^m(z) − z0| < radius`.
pub fn orbit_density(
    s: &Symbol,
    z: Complex,
    z0: Complex,
    radius: f64,
    n: usize,
) -> Result<DensityEstimate, ErgodicityError> {
    if !(radius > 0.0 && radius.is_finite()) || n == 0 {
        return Err(ErgodicityError::Precondition("need radius > 0 and N >= 1".into()));
    }
    if !z.is_finite() || z.norm() > 1.0 + 1e-9 {
        return Err(ErgodicityError::Precondition(format!(
            "start point {z} lies outside the closed disc"
        )));
    }
    let half = n.div_ceil(2).max(1);
    let mut w = z;
    let mut hits = 0usize;
    let mut running_min_ratio = f64::INFINITY;
    for m in 1..=n {
        w = s.apply(w);
        if (w - z0).norm() < radius {
            hits += 1;
        }
        if m >= half {
            running_min_ratio = running_min_ratio.min(hits as f64 / m as f64);
        }
    }
    Ok(DensityEstimate {
        z,
        z0,
        neighborhood_radius: radius,
        n,
        hits,
        running_min_ratio,
        estimate: hits as f64 / n as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub max_abs_mean: f64,
    /// `|(1/N) Σ_m (φ^m(ω))^j|` at index `j − 1`.
    pub per_j: Vec<f64>,
}

/// Weyl sums of a boundary orbit for `j = 1..=j_max`.
pub fn weyl_test(points: &[Complex], j_max: usize) -> Result<WeylReport, ErgodicityError> {
    if points.is_empty() || j_max == 0 {
        return Err(ErgodicityError::Precondition(
            "need a non-empty orbit and j_max >= 1".into(),
        ));
    }
    if let Some(p) = points.iter().find(|p| (p.norm() - 1.0).abs() > 1e-6) {
        return Err(ErgodicityError::Precondition(format!(
            "orbit point {p} is not on the unit circle"
        )));
    }
    let per_j: Vec<f64> = (1..=j_max as i32)
        .into_par_iter()
        .map(|j| {
            let mut acc = CompensatedSum::default();
            for p in points {
                acc.add(p.powi(j));
            }
            acc.value().norm() / points.len() as f64
        })
        .collect();
    let max_abs_mean = per_j.iter().copied().fold(0.0, f64::max);
    Ok(WeylReport { max_abs_mean, per_j })
}

/// Witness that the Cesàro means of `C_φ` stay at distance at least 1/2 from
/// evaluation at a boundary Denjoy–Wolff point `z0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapWitness {
    pub n: usize,
    /// Half the smallest distance from `{φ^j(0)}_{j ≤ n}` to `z0`.
    pub r: f64,
    /// `log ρ` with `ρ = sqrt(1 − r²/4)` the largest `|(z + z0)/2|` on the
    /// closed disc outside `B(z0, r)`.
    pub log_rho: f64,
    /// Power `k = ⌈−ln 2 / log ρ⌉`, integer-valued; it exceeds `2^53` once
    /// the orbit comes very close to `z0`.
    pub k: f64,
    /// `|g(z0)^k − (1/n) Σ_{m ≤ n} g(φ^m(0))^k|` for `g(z) = (z + z0)/2`.
    pub gap: f64,
}

/// Builds the witness `((z + z0)/2)^k` for the orbit of 0 up to step `n`.
///
/// The displacement `δ_m = z0 − φ^m(0)` is propagated as
/// `δ_{m+1} = φ[z0, φ^m(0)] δ_m` through the divided difference, so it keeps
/// full relative accuracy even when the orbit is far closer to `z0` than
/// machine precision. With `u = δ/(2 z0)` every term is
/// `z0^k exp(k log(1 − u))` and the common factor `z0^k` drops out of the
/// gap.
pub fn boundary_gap_witness(s: &Symbol, z0: Complex, n: usize) -> Result<GapWitness, ErgodicityError> {
    if n == 0 {
        return Err(ErgodicityError::Precondition("n must be at least 1".into()));
    }
    if (z0.norm() - 1.0).abs() > 1e-10 {
        return Err(ErgodicityError::Precondition(format!("{z0} is not on the unit circle")));
    }
    match classify(s)? {
        SymbolClass::HyperbolicDw { z0: p, .. } | SymbolClass::ParabolicDw { z0: p, .. } if (p - z0).norm() <= 1e-6 => {
        }
        other => {
            return Err(ErgodicityError::Precondition(format!(
                "{z0} is not the boundary Denjoy-Wolff point (class {})",
                other.name()
            )))
        }
    }
    let mut w = Complex::new(0.0, 0.0);
    let mut delta = z0;
    let mut deltas = Vec::with_capacity(n);
    let mut min_dist = delta.norm();
    for m in 1..=n {
        delta *= s.divided_difference(z0, w);
        w = s.apply(w);
        let d = delta.norm();
        if d == 0.0 || !d.is_finite() {
            return Err(ErgodicityError::OrbitTooClose { n: m });
        }
        min_dist = min_dist.min(d);
        deltas.push(delta);
    }
    let r = 0.5 * min_dist;
    let log_rho = 0.5 * (-0.25 * r * r).ln_1p();
    if log_rho == 0.0 {
        return Err(ErgodicityError::OrbitTooClose { n });
    }
    let k = (-std::f64::consts::LN_2 / log_rho).ceil();
    let mut acc = CompensatedSum::default();
    for d in &deltas {
        let u = d / (2.0 * z0);
        acc.add((log1p(-u) * k).exp());
    }
    let mean = acc.value() / n as f64;
    let gap = (Complex::new(1.0, 0.0) - mean).norm();
    Ok(GapWitness { n, r, log_rho, k, gap })
}
