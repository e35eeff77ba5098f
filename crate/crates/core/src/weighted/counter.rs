use serde::{Deserialize, Serialize};

use super::lacunary::{one_minus_phase, LacunarySequence};
use super::weight::{clamp_radius, lacunary_sum, Weight};
use super::WeightedError;
use crate::symbols::TaylorSeries;
use crate::Complex;

/// `Σ |a_n|²` over the stored coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct H2Norm {
    pub value: f64,
    /// Set when every stored coefficient has modulus one, so the value equals
    /// the number of terms and grows without bound as terms are added.
    pub divergent: bool,
}

pub fn h2_norm_sq(f: &TaylorSeries) -> H2Norm {
    let terms = f.effective_terms();
    let value = terms.iter().map(|(_, a)| a.norm_sqr()).sum();
    let divergent = !terms.is_empty() && terms.iter().all(|(_, a)| (a.norm() - 1.0).abs() <= 1e-15);
    H2Norm { value, divergent }
}

/// Weighted values of the pair at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub radius: f64,
    pub v: f64,
    pub v_abs_f: f64,
    pub v_abs_g: f64,
    /// `v(r) (Σ_{k ≤ K} r^{n_k})`, which equals `v(r)|g(r)|` on the real axis.
    pub v_lacunary_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub k: usize,
    pub ratio: f64,
    /// `Σ |1 − λ^{n_k}|`, certifying `f ∈ A(𝔻)`.
    pub abs_sum: f64,
    /// `Σ_{k ≥ 1} R^{−k} = 1/(R − 1)`.
    pub certified_bound: f64,
    /// `R/(R − 1)`, reported for comparison only.
    pub stated_constant: f64,
    /// `max_j |f_j − (1 − λ^j) g_j|` over stored coefficients.
    pub functional_equation_error: f64,
    pub h2_f: H2Norm,
    pub h2_g: H2Norm,
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexamplePair {
    pub f: TaylorSeries,
    pub g: TaylorSeries,
    pub report: CounterexampleReport,
}

/// Probe radii `1 − 10^{−m}`, `m = 1..=5`.
pub fn default_probe_radii() -> Vec<f64> {
    (1..=5).map(|m| 1.0 - 10f64.powi(-m)).collect()
}

/// `f = Σ_{k ≤ K} (1 − λ^{n_k}) z^{n_k}` and the forced solution
/// `g = Σ_{k ≤ K} z^{n_k}` of `f = g − g∘(λz)`.
pub fn counterexample_pair(
    seq: &LacunarySequence,
    k: usize,
    weight: Option<&Weight>,
    probe_radii: &[f64],
) -> Result<CounterexamplePair, WeightedError> {
    if k == 0 || k > seq.len() {
        return Err(WeightedError::Parameter(format!(
            "K = {k} must lie in 1..={}",
            seq.len()
        )));
    }
    let exponents = &seq.exponents[..k];
    let truncation = exponents[k - 1] + 1;
    let f_terms: Vec<(u64, Complex)> = exponents
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, seq.one_minus_lambda_pow(i + 1)))
        .collect();
    let g_terms: Vec<(u64, Complex)> = exponents.iter().map(|&n| (n, Complex::new(1.0, 0.0))).collect();
    let abs_sum: f64 = f_terms.iter().map(|(_, a)| a.norm()).sum();
    let f = TaylorSeries::unchecked(f_terms, truncation, abs_sum);
    let g = TaylorSeries::unchecked(g_terms, truncation, k as f64);

    let functional_equation_error = f
        .terms()
        .iter()
        .zip(g.terms())
        .zip(&seq.defects)
        .map(|((&(_, fj), &(_, gj)), &d)| (fj - one_minus_phase(d) * gj).norm())
        .fold(0.0, f64::max);

    let probes = match weight {
        None => Vec::new(),
        Some(w) => probe_radii
            .iter()
            .map(|&r| {
                let r = clamp_radius(r);
                let z = Complex::new(r, 0.0);
                let v = w.eval(r);
                Probe {
                    radius: r,
                    v,
                    v_abs_f: v * f.eval(z).norm(),
                    v_abs_g: v * g.eval(z).norm(),
                    v_lacunary_sum: v * lacunary_sum(exponents, r),
                }
            })
            .collect(),
    };

    let ratio = seq.ratio;
    Ok(CounterexamplePair {
        report: CounterexampleReport {
            k,
            ratio,
            abs_sum,
            certified_bound: 1.0 / (ratio - 1.0),
            stated_constant: ratio / (ratio - 1.0),
            functional_equation_error,
            h2_f: h2_norm_sq(&f),
            h2_g: h2_norm_sq(&g),
            probes,
        },
        f,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weighted::{lacunary_exponents, make_weight_v_alpha, Angle};

    #[test]
    fn h2_examples() {
        let one = Complex::new(1.0, 0.0);
        let f = TaylorSeries::unchecked(vec![(1, one), (2, one)], 3, 2.0);
        assert_eq!(
            h2_norm_sq(&f),
            H2Norm {
                value: 2.0,
                divergent: true
            }
        );
        let half = TaylorSeries::unchecked(vec![(1, one * 0.5)], 2, 0.5);
        assert_eq!(
            h2_norm_sq(&half),
            H2Norm {
                value: 0.25,
                divergent: false
            }
        );
    }

    #[test]
    fn pair_properties() {
        let seq = lacunary_exponents(&Angle::golden(), 2.0, 40, u64::MAX).unwrap();
        let w = make_weight_v_alpha(0.5, 0.5, &seq, 30).unwrap();
        let pair = counterexample_pair(&seq, 30, Some(&w), &default_probe_radii()).unwrap();
        let rep = &pair.report;
        assert_eq!(rep.functional_equation_error, 0.0);
        assert!(rep.abs_sum <= rep.certified_bound);
        assert_eq!(
            rep.h2_g,
            H2Norm {
                value: 30.0,
                divergent: true
            }
        );
        // geometric oracle Σ R^{−2k} < 1/(R² − 1)
        assert!(rep.h2_f.value < 1.0 / 3.0);
        for p in &rep.probes {
            assert!((p.v_abs_g - p.v_lacunary_sum).abs() <= 1e-12 * p.v_lacunary_sum);
        }
        for w in rep.probes.windows(2) {
            assert!(w[1].v_abs_g > w[0].v_abs_g);
        }
    }

    #[test]
    fn functional_equation_on_the_circle() {
        // f(z) = g(z) − g(λz) at sample points, with λ^{n} from the angle
        let seq = lacunary_exponents(&Angle::sqrt2_minus_1(), 3.0, 6, 1 << 40).unwrap();
        let pair = counterexample_pair(&seq, 6, None, &[]).unwrap();
        for t in [0.1, 0.37, 0.8] {
            let z = Complex::from_polar(0.9, std::f64::consts::TAU * t);
            let lhs = pair.f.eval(z);
            let rhs = pair.g.eval(z) - pair.g.eval(seq.lambda * z);
            assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn k_out_of_range() {
        let seq = lacunary_exponents(&Angle::golden(), 2.0, 5, 1 << 20).unwrap();
        assert!(counterexample_pair(&seq, 6, None, &[]).is_err());
        assert!(counterexample_pair(&seq, 0, None, &[]).is_err());
    }
}
