use serde::{Deserialize, Serialize};

use super::cmath::{expm1, log1p, pow_u64};
use super::{SymbolError, SELF_MAP_TOL};
use crate::grid::boundary_points;
use crate::Complex;

/// Default number of retained Taylor coefficients (exponents `< T`).
pub const DEFAULT_TRUNCATION: u64 = 4096;

const VALIDATION_SAMPLES: usize = 1024;

/// Polynomial with dense coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex>) -> Result<Self, SymbolError> {
        if coeffs.is_empty() {
            return Err(SymbolError::Parameter(
                "polynomial needs at least one coefficient".into(),
            ));
        }
        for (i, a) in coeffs.iter().enumerate() {
            if !a.is_finite() {
                return Err(SymbolError::NonFinite {
                    path: format!("coeffs[{i}]"),
                });
            }
        }
        let p = Self { coeffs };
        let abs_sum: f64 = p.coeffs.iter().map(|a| a.norm()).sum();
        check_self_map(|z| p.eval(z), abs_sum, p.effective_degree() == 0)?;
        Ok(p)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn effective_degree(&self) -> usize {
        self.coeffs.iter().rposition(|a| a.norm() != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn derivative(&self, z: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for (j, &a) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + a * j as f64;
        }
        acc
    }

    /// Synthetic division: `p(z) − p(w) = (z − w) Σ_{j≥1} s_j z^{j−1}` where
    /// `s_j` are the Horner partial values of `p` at `w`.
    pub fn divided_difference(&self, z: Complex, w: Complex) -> Complex {
        let n = self.coeffs.len();
        let mut s = vec![Complex::new(0.0, 0.0); n];
        let mut acc = Complex::new(0.0, 0.0);
        for j in (0..n).rev() {
            acc = acc * w + self.coeffs[j];
            s[j] = acc;
        }
        s.iter()
            .skip(1)
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &sj| acc * z + sj)
    }
}

/// Truncated power series `Σ a_n z^n` stored sparsely, with a certified
/// bound on `Σ |a_n|` (which places it in the disc algebra).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    terms: Vec<(u64, Complex)>,
    truncation: u64,
    abs_sum_bound: f64,
}

impl TaylorSeries {
    /// `terms` must have strictly increasing exponents. Terms with exponent
    /// `>= truncation` are kept for serialization but ignored by evaluation.
    pub fn new(terms: Vec<(u64, Complex)>, truncation: u64, abs_sum_bound: f64) -> Result<Self, SymbolError> {
        if truncation == 0 {
            return Err(SymbolError::Parameter("truncation must be positive".into()));
        }
        for (i, (n, a)) in terms.iter().enumerate() {
            if !a.is_finite() {
                return Err(SymbolError::NonFinite {
                    path: format!("terms[{i}]"),
                });
            }
            if i > 0 && *n <= terms[i - 1].0 {
                return Err(SymbolError::Schema {
                    path: format!("terms[{i}]"),
                    message: "exponents must be strictly increasing".into(),
                });
            }
        }
        if !abs_sum_bound.is_finite() || abs_sum_bound < 0.0 {
            return Err(SymbolError::NonFinite {
                path: "abs_sum_bound".into(),
            });
        }
        let s = Self {
            terms,
            truncation,
            abs_sum_bound,
        };
        let abs_sum = s.abs_sum();
        if abs_sum > abs_sum_bound * (1.0 + 1e-12) {
            return Err(SymbolError::Schema {
                path: "abs_sum_bound".into(),
                message: format!("bound {abs_sum_bound} is below the coefficient sum {abs_sum}"),
            });
        }
        let constant = s.effective_terms().iter().all(|(n, a)| *n == 0 || a.norm() == 0.0);
        check_self_map(|z| s.eval(z), abs_sum, constant)?;
        Ok(s)
    }

    /// Dense coefficients, ascending degree, default truncation.
    pub fn from_dense(coeffs: &[Complex], abs_sum_bound: f64) -> Result<Self, SymbolError> {
        let terms = coeffs.iter().enumerate().map(|(n, &a)| (n as u64, a)).collect();
        Self::new(terms, DEFAULT_TRUNCATION.max(coeffs.len() as u64), abs_sum_bound)
    }

    /// Series that need not be a self-map (test functions, counterexamples).
    pub(crate) fn unchecked(terms: Vec<(u64, Complex)>, truncation: u64, abs_sum_bound: f64) -> Self {
        Self {
            terms,
            truncation,
            abs_sum_bound,
        }
    }

    pub fn terms(&self) -> &[(u64, Complex)] {
        &self.terms
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn abs_sum_bound(&self) -> f64 {
        self.abs_sum_bound
    }

    /// Terms with exponent below the truncation.
    pub fn effective_terms(&self) -> &[(u64, Complex)] {
        let end = self.terms.partition_point(|(n, _)| *n < self.truncation);
        &self.terms[..end]
    }

    pub fn abs_sum(&self) -> f64 {
        self.effective_terms().iter().map(|(_, a)| a.norm()).sum()
    }

    /// Certified bound on the sup-norm of the discarded tail.
    pub fn tail_bound(&self) -> f64 {
        (self.abs_sum_bound - self.abs_sum()).max(0.0)
    }

    /// Largest effective exponent with a non-zero coefficient.
    pub fn effective_degree(&self) -> u64 {
        self.effective_terms()
            .iter()
            .rev()
            .find(|(_, a)| a.norm() != 0.0)
            .map_or(0, |(n, _)| *n)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        sparse_horner(self.effective_terms().iter().copied(), z)
    }

    pub fn derivative(&self, z: Complex) -> Complex {
        let terms = self
            .effective_terms()
            .iter()
            .filter(|(n, _)| *n > 0)
            .map(|&(n, a)| (n - 1, a * n as f64));
        sparse_horner(terms, z)
    }

    pub fn divided_difference(&self, z: Complex, w: Complex) -> Complex {
        self.effective_terms()
            .iter()
            .filter(|(n, _)| *n > 0)
            .map(|&(n, a)| a * complete_homogeneous(z, w, n - 1))
            .sum()
    }
}

/// Horner evaluation across exponent gaps: terms are visited from the top
/// degree down and the accumulator is multiplied by `z^{gap}` between terms.
fn sparse_horner<I>(terms: I, z: Complex) -> Complex
where
    I: DoubleEndedIterator<Item = (u64, Complex)>,
{
    let mut acc = Complex::new(0.0, 0.0);
    let mut prev: Option<u64> = None;
    for (n, a) in terms.rev() {
        if let Some(p) = prev {
            acc *= pow_u64(z, p - n);
        }
        acc += a;
        prev = Some(n);
    }
    match prev {
        Some(p) => acc * pow_u64(z, p),
        None => acc,
    }
}

/// `h_m(z, w) = Σ_{i=0}^{m} z^i w^{m−i}`, evaluated without cancellation when
/// `z ≈ w`.
fn complete_homogeneous(z: Complex, w: Complex, m: u64) -> Complex {
    let (big, small) = if w.norm() >= z.norm() { (w, z) } else { (z, w) };
    if big.norm() == 0.0 {
        return if m == 0 {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        };
    }
    // h_m = big^m · Σ_{i=0}^{m} u^i with u = small/big, |u| ≤ 1
    let delta = (small - big) / big; // u − 1
    let count = (m + 1) as f64;
    let geometric = if delta.norm() == 0.0 {
        Complex::new(count, 0.0)
    } else if delta.norm() < 0.5 {
        expm1(log1p(delta) * count) / delta
    } else {
        let u = delta + 1.0;
        (pow_u64(u, m + 1) - 1.0) / delta
    };
    pow_u64(big, m) * geometric
}

/// Rejects maps leaving the closed disc. `Σ|a_n| ≤ 1` certifies the
/// self-map property outright; otherwise the boundary is sampled (maximum
/// modulus principle).
fn check_self_map<F>(f: F, abs_sum: f64, constant: bool) -> Result<(), SymbolError>
where
    F: Fn(Complex) -> Complex,
{
    if constant {
        let c = f(Complex::new(0.0, 0.0));
        if c.norm() >= 1.0 {
            return Err(SymbolError::NotSelfMap {
                witness: Complex::new(0.0, 0.0),
                modulus: c.norm(),
            });
        }
        return Ok(());
    }
    if abs_sum <= 1.0 {
        return Ok(());
    }
    let (modulus, witness) = boundary_points(VALIDATION_SAMPLES)
        .into_iter()
        .map(|z| (f(z).norm(), z))
        .fold((f64::NEG_INFINITY, Complex::new(1.0, 0.0)), |best, cur| {
            if cur.0 > best.0 {
                cur
            } else {
                best
            }
        });
    if modulus > 1.0 + SELF_MAP_TOL {
        return Err(SymbolError::NotSelfMap { witness, modulus });
    }
    Ok(())
}
