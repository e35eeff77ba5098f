use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::cf::{convergents, Angle};
use super::WeightedError;
use crate::symbols::cmath::expm1;
use crate::Complex;

/// Exponents `n_1 < n_2 < …` with `|1 − λ^{n_k}| ≤ R^{−k}` and `n_k ≥ k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LacunarySequence {
    pub angle: Angle,
    pub lambda: Complex,
    pub ratio: f64,
    pub exponents: Vec<u64>,
    /// Signed `n_k θ − p_k`, the distance of `n_k θ` to the nearest integer.
    pub defects: Vec<f64>,
    /// `|1 − λ^{n_k}|`.
    pub distances: Vec<f64>,
}

/// `1 − e^{2πiδ}` without cancellation.
pub(crate) fn one_minus_phase(delta: f64) -> Complex {
    -expm1(Complex::new(0.0, TAU * delta))
}

impl LacunarySequence {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `1 − λ^{n_k}` for the `k`-th exponent (1-based).
    pub fn one_minus_lambda_pow(&self, k: usize) -> Complex {
        one_minus_phase(self.defects[k - 1])
    }

    /// Re-checks the defining inequalities.
    pub fn verify(&self) -> Result<(), WeightedError> {
        let mut prev = 0u64;
        for (i, (&n, &d)) in self.exponents.iter().zip(&self.distances).enumerate() {
            let k = i + 1;
            if n <= prev && k > 1 || n < k as u64 {
                return Err(WeightedError::Parameter(format!(
                    "exponent n_{k} = {n} breaks monotonicity"
                )));
            }
            if d > self.ratio.powi(-(k as i32)) {
                return Err(WeightedError::Parameter(format!(
                    "|1 - lambda^{n}| = {d} exceeds R^-{k}"
                )));
            }
            prev = n;
        }
        Ok(())
    }
}

/// Greedy selection over convergent denominators of `θ`: `n_k` is the
/// smallest denominator above `n_{k−1}` (and at least `k`) with
/// `|1 − λ^q| ≤ R^{−k}`. Denominators of convergents are the record
/// minimisers of `|1 − λ^q|`, so the greedy choice is the smallest
/// admissible convergent.
pub fn lacunary_exponents(
    angle: &Angle,
    ratio: f64,
    count: usize,
    n_max: u64,
) -> Result<LacunarySequence, WeightedError> {
    if !(ratio > 1.0 && ratio.is_finite()) {
        return Err(WeightedError::Parameter("R must be a finite number > 1".into()));
    }
    if count == 0 {
        return Err(WeightedError::Parameter("K must be at least 1".into()));
    }
    let convs = convergents(angle, n_max)?;
    let mut exponents = Vec::with_capacity(count);
    let mut defects = Vec::with_capacity(count);
    let mut distances = Vec::with_capacity(count);
    let mut it = convs.iter().peekable();
    let mut prev = 0i128;
    for k in 1..=count {
        let threshold = ratio.powi(-(k as i32));
        loop {
            let Some(c) = it.next() else {
                return Err(WeightedError::BudgetExceeded { k, n_max });
            };
            let dist = one_minus_phase(c.defect).norm();
            if c.q > prev && c.q >= k as i128 && dist <= threshold {
                exponents.push(c.q as u64);
                defects.push(c.defect);
                distances.push(dist);
                prev = c.q;
                break;
            }
        }
    }
    let seq = LacunarySequence {
        angle: *angle,
        lambda: Complex::from_polar(1.0, TAU * angle.value()),
        ratio,
        exponents,
        defects,
        distances,
    };
    seq.verify()?;
    Ok(seq)
}
