use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ErgodicityError;
use crate::grid::boundary_points;
use crate::symbols::cmath::{dist_to_integer, frac_mul, pow_u64, CompensatedSum};
use crate::symbols::{Symbol, WireComplex};
use crate::Complex;

/// Functions in the disc algebra used to probe Cesàro means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// `z^j`.
    Monomial { j: u64 },
    /// `Σ a_n z^n` with the coefficients listed in ascending degree.
    TaylorFn { coeffs: Vec<Complex> },
    /// `((z + z0)/2)^k` for `z0` on the unit circle.
    HalfPointWitness { z0: Complex, k: u64 },
}

impl TestFunction {
    pub fn half_point_witness(z0: Complex, k: u64) -> Result<Self, ErgodicityError> {
        if !z0.is_finite() || (z0.norm() - 1.0).abs() > 1e-10 {
            return Err(ErgodicityError::Precondition(format!(
                "witness base point {z0} is not on the unit circle"
            )));
        }
        Ok(Self::HalfPointWitness { z0, k })
    }

    pub fn eval(&self, z: Complex) -> Complex {
        match self {
            Self::Monomial { j } => pow_u64(z, *j),
            Self::TaylorFn { coeffs } => coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a),
            Self::HalfPointWitness { z0, k } => pow_u64((z + z0) * 0.5, *k),
        }
    }

    /// Largest `|f|` over `samples` equispaced boundary points, which bounds
    /// `|f|` on the closed disc up to sampling error.
    pub fn boundary_sup(&self, samples: usize) -> f64 {
        boundary_points(samples)
            .into_iter()
            .map(|z| self.eval(z).norm())
            .fold(0.0, f64::max)
    }
}

impl FromStr for TestFunction {
    type Err = ErgodicityError;

    /// Accepts `monomial:J`, `taylor:[c0, c1, ...]` (JSON list of numbers or
    /// `[re, im]` pairs) and `witness:RE,IM,K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ErgodicityError::Precondition(format!("test function `{s}`: {msg}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected KIND:ARGS"))?;
        match kind {
            "monomial" => {
                let j = rest
                    .trim()
                    .parse()
                    .map_err(|_| bad("exponent must be a non-negative integer"))?;
                Ok(Self::Monomial { j })
            }
            "taylor" => {
                let coeffs: Vec<WireComplex> = serde_json::from_str(rest).map_err(|e| bad(&e.to_string()))?;
                Ok(Self::TaylorFn {
                    coeffs: coeffs.into_iter().map(|w| w.0).collect(),
                })
            }
            "witness" => {
                let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
                let [re, im, k] = parts.as_slice() else {
                    return Err(bad("expected witness:RE,IM,K"));
                };
                let re: f64 = re.parse().map_err(|_| bad("bad real part"))?;
                let im: f64 = im.parse().map_err(|_| bad("bad imaginary part"))?;
                let k: u64 = k.parse().map_err(|_| bad("bad power"))?;
                Self::half_point_witness(Complex::new(re, im), k)
            }
            _ => Err(bad("unknown kind")),
        }
    }
}

/// Orbit of `z` with the running Cesàro means of `f` along it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CesaroTrace {
    pub z: Complex,
    pub n: usize,
    /// `φ^m(z)` for `m = 1..=n`.
    pub orbit: Vec<Complex>,
    /// `(1/m) Σ_{i ≤ m} f(φ^i(z))` for `m = 1..=n`.
    pub partial_means: Vec<Complex>,
    #[serde(rename = "final")]
    pub final_mean: Complex,
}

fn check_inputs(z: Complex, n: usize) -> Result<(), ErgodicityError> {
    if !z.is_finite() || z.norm() > 1.0 + 1e-9 {
        return Err(ErgodicityError::Precondition(format!(
            "start point {z} lies outside the closed disc"
        )));
    }
    if n == 0 {
        return Err(ErgodicityError::Precondition("N must be at least 1".into()));
    }
    Ok(())
}

/// Runs the orbit once, calling `visit(m, φ^m(z), mean_m)`, and returns the
/// final mean. Means are updated as `mean += (f − mean)/m`.
fn cesaro_stream(
    s: &Symbol,
    f: &TestFunction,
    z: Complex,
    n: usize,
    mut visit: impl FnMut(usize, Complex, Complex),
) -> Complex {
    let mut w = z;
    let mut mean = Complex::new(0.0, 0.0);
    for m in 1..=n {
        w = s.apply(w);
        mean += (f.eval(w) - mean) / m as f64;
        visit(m, w, mean);
    }
    mean
}

pub fn cesaro_apply(s: &Symbol, f: &TestFunction, z: Complex, n: usize) -> Result<CesaroTrace, ErgodicityError> {
    check_inputs(z, n)?;
    let mut orbit = Vec::with_capacity(n);
    let mut partial_means = Vec::with_capacity(n);
    let final_mean = cesaro_stream(s, f, z, n, |_, w, mean| {
        orbit.push(w);
        partial_means.push(mean);
    });
    Ok(CesaroTrace {
        z,
        n,
        orbit,
        partial_means,
        final_mean,
    })
}

/// Final Cesàro mean of `f` without storing the trace.
pub fn cesaro_final(s: &Symbol, f: &TestFunction, z: Complex, n: usize) -> Result<Complex, ErgodicityError> {
    check_inputs(z, n)?;
    Ok(cesaro_stream(s, f, z, n, |_, _, _| {}))
}

/// `(1/N) Σ_{m ≤ N} φ^m(z)`.
pub fn cesaro_orbit_mean(s: &Symbol, z: Complex, n: usize) -> Result<Complex, ErgodicityError> {
    cesaro_final(s, &TestFunction::Monomial { j: 1 }, z, n)
}

/// Coefficients of the limit of the Cesàro means under a rotation of exact
/// order `k`: `a_j` is kept when `k | j` and zeroed otherwise.
pub fn rotation_cesaro_limit(k: usize, coeffs: &[Complex]) -> Result<Vec<Complex>, ErgodicityError> {
    if k == 0 {
        return Err(ErgodicityError::Precondition(
            "rotation order must be at least 1".into(),
        ));
    }
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(j, &a)| if j % k == 0 { a } else { Complex::new(0.0, 0.0) })
        .collect())
}

/// Mean of `λ^{jm}`, `m = 1..=n`, and the sup-norm of the corresponding
/// Cesàro mean of `z^j` under `z ↦ λz`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonomialMean {
    pub value: Complex,
    /// `|λ^j − λ^{j(n+1)}| / (n |1 − λ^j|)`, or 1 when `λ^j = 1`.
    pub sup_norm_exact: f64,
    /// `2 / (n |1 − λ^j|)`; absent when `λ^j = 1`.
    pub sup_norm_bound: Option<f64>,
    pub periodic: bool,
}

/// Threshold on `|1 − λ^j|` below which `λ^j` counts as 1.
const ROOT_OF_UNITY_TOL: f64 = 1e-12;

/// [`monomial_mean`] with `λ = e^{2πiθ}` given by `θ` in turns. Phases are
/// reduced exactly before exponentiation and the sum is compensated, so the
/// mean keeps full accuracy for large `n`.
pub fn monomial_mean_turns(theta: f64, j: u64, n: u64) -> Result<MonomialMean, ErgodicityError> {
    if !theta.is_finite() || j == 0 || n == 0 {
        return Err(ErgodicityError::Precondition(
            "need finite theta, j >= 1 and n >= 1".into(),
        ));
    }
    let jn = j
        .checked_mul(n)
        .ok_or_else(|| ErgodicityError::Precondition("j * n overflows".into()))?;
    let theta = theta.rem_euclid(1.0);
    let mut sum = CompensatedSum::default();
    for m in 1..=n {
        sum.add(Complex::from_polar(1.0, TAU * frac_mul(j * m, theta)));
    }
    let value = sum.value() / n as f64;
    let gap_j = 2.0 * (PI * dist_to_integer(frac_mul(j, theta))).sin();
    if gap_j <= ROOT_OF_UNITY_TOL {
        return Ok(MonomialMean {
            value,
            sup_norm_exact: 1.0,
            sup_norm_bound: None,
            periodic: true,
        });
    }
    let gap_jn = 2.0 * (PI * dist_to_integer(frac_mul(jn, theta))).sin();
    Ok(MonomialMean {
        value,
        sup_norm_exact: gap_jn / (n as f64 * gap_j),
        sup_norm_bound: Some(2.0 / (n as f64 * gap_j)),
        periodic: false,
    })
}

pub fn monomial_mean(lambda: Complex, j: u64, n: u64) -> Result<MonomialMean, ErgodicityError> {
    if !lambda.is_finite() || (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(ErgodicityError::Precondition(format!(
            "{lambda} is not on the unit circle"
        )));
    }
    monomial_mean_turns(lambda.arg() / TAU, j, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{Moebius, Polynomial};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn linear(a: Complex, b: Complex, d: f64) -> Symbol {
        Moebius::new(a, b, c(0.0, 0.0), c(d, 0.0)).unwrap().into()
    }

    #[test]
    fn minus_z_kills_odd_part() {
        let s = linear(c(-1.0, 0.0), c(0.0, 0.0), 1.0);
        let t = cesaro_apply(&s, &TestFunction::Monomial { j: 1 }, c(1.0, 0.0), 2).unwrap();
        assert_eq!(t.final_mean, c(0.0, 0.0));
        assert_eq!(t.partial_means, vec![c(-1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn tangent_map_mean_matches_closed_form() {
        // orbit of 0 under (z+1)/2 is 1 − 2^{−m}; mean is 1 − (1 − 2^{−N})/N
        let s = linear(c(1.0, 0.0), c(1.0, 0.0), 2.0);
        for n in [1usize, 7, 10_000] {
            let m = cesaro_orbit_mean(&s, c(0.0, 0.0), n).unwrap();
            let exact = 1.0 - (1.0 - 0.5f64.powi(n as i32)) / n as f64;
            assert!((m - c(exact, 0.0)).norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn quarter_turn_mean_vanishes() {
        let s = linear(c(0.0, 1.0), c(0.0, 0.0), 1.0);
        assert!(cesaro_orbit_mean(&s, c(0.5, 0.0), 4).unwrap().norm() < 1e-16);
    }

    #[test]
    fn constants_are_fixed() {
        let s: Symbol = Polynomial::new(vec![c(0.1, 0.0), c(0.3, 0.2), c(0.4, 0.0)])
            .unwrap()
            .into();
        let t = cesaro_apply(&s, &TestFunction::Monomial { j: 0 }, c(0.0, -1.0), 50).unwrap();
        assert!(t.partial_means.iter().all(|&m| m == c(1.0, 0.0)));
    }

    #[test]
    fn rotation_limit_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        assert_eq!(
            rotation_cesaro_limit(2, &[one, one, one]).unwrap(),
            vec![one, zero, one]
        );
        let f = [c(0.3, 1.0), c(2.0, 0.0)];
        assert_eq!(rotation_cesaro_limit(1, &f).unwrap(), f.to_vec());
        assert_eq!(
            rotation_cesaro_limit(4, &[zero, zero, zero, one, one, one]).unwrap(),
            vec![zero, zero, zero, zero, one, zero]
        );
        assert!(rotation_cesaro_limit(0, &f).is_err());
    }

    #[test]
    fn monomial_mean_examples() {
        let m = monomial_mean(c(0.0, 1.0), 1, 2).unwrap();
        assert!((m.value - c(-0.5, 0.5)).norm() < 1e-15);
        assert!((m.sup_norm_exact - 0.5f64.sqrt()).abs() < 1e-15);

        let m = monomial_mean(c(-1.0, 0.0), 2, 7).unwrap();
        assert!(m.periodic);
        assert!((m.value - c(1.0, 0.0)).norm() < 1e-15);

        let m = monomial_mean(Complex::from_polar(1.0, TAU * 0.3), 1, 10_000).unwrap();
        assert!(m.value.norm() <= m.sup_norm_bound.unwrap());
        assert!((m.value.norm() - m.sup_norm_exact).abs() < 1e-12);
    }

    #[test]
    fn monomial_mean_agrees_with_naive_sum() {
        let theta = 0.123_456_789;
        let (j, n) = (3u64, 500u64);
        let lam = Complex::from_polar(1.0, TAU * theta);
        let naive: Complex = (1..=n).map(|m| lam.powu((j * m) as u32)).sum::<Complex>() / n as f64;
        let m = monomial_mean_turns(theta, j, n).unwrap();
        assert!((m.value - naive).norm() < 1e-12);
    }

    #[test]
    fn parse_test_functions() {
        assert_eq!(
            "monomial:3".parse::<TestFunction>().unwrap(),
            TestFunction::Monomial { j: 3 }
        );
        assert_eq!(
            "taylor:[1, [0, 2]]".parse::<TestFunction>().unwrap(),
            TestFunction::TaylorFn {
                coeffs: vec![c(1.0, 0.0), c(0.0, 2.0)]
            }
        );
        assert_eq!(
            "witness:1,0,5".parse::<TestFunction>().unwrap(),
            TestFunction::HalfPointWitness { z0: c(1.0, 0.0), k: 5 }
        );
        assert!("witness:0.5,0,5".parse::<TestFunction>().is_err());
        assert!("cubic:3".parse::<TestFunction>().is_err());
    }

    #[test]
    fn witness_values() {
        let g = TestFunction::half_point_witness(c(0.0, 1.0), 3).unwrap();
        assert!((g.eval(c(0.0, 1.0)) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((g.boundary_sup(1024) - 1.0).abs() < 1e-12);
    }
}
