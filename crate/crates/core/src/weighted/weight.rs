use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lacunary::LacunarySequence;
use super::WeightedError;
use crate::grid::chebyshev_radii;
use crate::symbols::TaylorSeries;
use crate::Complex;

/// Radii closer to 1 than this are evaluated at `1 − WEIGHT_CLAMP`.
pub const WEIGHT_CLAMP: f64 = 1e-8;

/// Radial weight on the disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weight {
    /// `(1 − r)^γ`.
    Standard { gamma: f64 },
    /// `1` for `r ≤ r0` and `C (Σ_{k ≤ K} r^{n_k})^{−α}` beyond, with
    /// `C = (Σ_{k ≤ K} r0^{n_k})^α` so the two pieces meet at `r0`.
    VAlpha {
        alpha: f64,
        r0: f64,
        c: f64,
        exponents: Vec<u64>,
    },
}

pub(crate) fn clamp_radius(r: f64) -> f64 {
    r.clamp(0.0, 1.0 - WEIGHT_CLAMP)
}

/// `Σ r^{n_k}` over the given exponents.
pub fn lacunary_sum(exponents: &[u64], r: f64) -> f64 {
    let ln_r = r.ln();
    exponents.iter().map(|&n| (n as f64 * ln_r).exp()).sum()
}

pub fn make_weight_v_alpha(
    alpha: f64,
    r0: f64,
    seq: &LacunarySequence,
    tail_terms: usize,
) -> Result<Weight, WeightedError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(WeightedError::Parameter(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if !(r0 > 0.0 && r0 < 1.0) {
        return Err(WeightedError::Parameter(format!("r0 = {r0} must lie in (0, 1)")));
    }
    if tail_terms == 0 || tail_terms > seq.len() {
        return Err(WeightedError::Parameter(format!(
            "tail_terms = {tail_terms} must lie in 1..={}",
            seq.len()
        )));
    }
    let exponents = seq.exponents[..tail_terms].to_vec();
    let c = lacunary_sum(&exponents, r0).powf(alpha);
    Ok(Weight::VAlpha {
        alpha,
        r0,
        c,
        exponents,
    })
}

impl Weight {
    pub fn eval(&self, r: f64) -> f64 {
        let r = clamp_radius(r);
        match self {
            Self::Standard { gamma } => (1.0 - r).powf(*gamma),
            Self::VAlpha {
                alpha,
                r0,
                c,
                exponents,
            } => {
                if r <= *r0 {
                    1.0
                } else {
                    c * lacunary_sum(exponents, r).powf(-alpha)
                }
            }
        }
    }

    /// Bound `r^{n_K + 1}/(1 − r)` on the omitted tail `Σ_{n > n_K} r^n` of
    /// the lacunary sum; 0 for weights without a truncated sum.
    pub fn tail_bound(&self, r: f64) -> f64 {
        let r = clamp_radius(r);
        match self {
            Self::Standard { .. } => 0.0,
            Self::VAlpha { exponents, .. } => {
                let last = exponents.last().copied().unwrap_or(0) as f64;
                ((last + 1.0) * r.ln()).exp() / (1.0 - r)
            }
        }
    }
}

/// `max v(|z|) |f(z)|` over a polar grid with Chebyshev radii toward 1.
pub fn weighted_sup_norm(f: &TaylorSeries, w: &Weight, radii: usize, angles: usize) -> f64 {
    let rs = chebyshev_radii(radii.max(2));
    rs.par_iter()
        .map(|&r| {
            let r = clamp_radius(r);
            let v = w.eval(r);
            (0..angles.max(1))
                .map(|k| {
                    let z = Complex::from_polar(r, std::f64::consts::TAU * k as f64 / angles.max(1) as f64);
                    v * f.eval(z).norm()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}
