use serde::{Deserialize, Serialize};

use super::{Moebius, SymbolError};
use crate::Complex;

/// Finite Blaschke product `e^{iθ} ∏ (z − a_k)/(1 − ā_k z)` with `|a_k| < 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Blaschke {
    rotation: f64,
    zeros: Vec<Complex>,
}

impl Blaschke {
    pub fn new(rotation: f64, zeros: Vec<Complex>) -> Result<Self, SymbolError> {
        if !rotation.is_finite() {
            return Err(SymbolError::NonFinite {
                path: "rotation".into(),
            });
        }
        if zeros.is_empty() {
            return Err(SymbolError::Parameter(
                "a Blaschke product needs at least one zero".into(),
            ));
        }
        for (index, &zero) in zeros.iter().enumerate() {
            if !zero.is_finite() {
                return Err(SymbolError::NonFinite {
                    path: format!("zeros[{index}]"),
                });
            }
            if zero.norm() >= 1.0 {
                return Err(SymbolError::ZeroOutsideDisc { index, zero });
            }
        }
        Ok(Self { rotation, zeros })
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn zeros(&self) -> &[Complex] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    fn unimodular(&self) -> Complex {
        Complex::from_polar(1.0, self.rotation)
    }

    #[inline]
    fn factor(a: Complex, z: Complex) -> Complex {
        (z - a) / (1.0 - a.conj() * z)
    }

    /// `(f(z) − f(w))/(z − w)` for a single factor.
    #[inline]
    fn factor_dd(a: Complex, z: Complex, w: Complex) -> Complex {
        (1.0 - a.norm_sqr()) / ((1.0 - a.conj() * z) * (1.0 - a.conj() * w))
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.zeros
            .iter()
            .fold(self.unimodular(), |acc, &a| acc * Self::factor(a, z))
    }

    pub fn derivative(&self, z: Complex) -> Complex {
        self.divided_difference(z, z)
    }

    /// Telescoped divided difference:
    /// `B[z,w] = e^{iθ} Σ_k ∏_{i<k} f_i(z) · f_k[z,w] · ∏_{i>k} f_i(w)`.
    pub fn divided_difference(&self, z: Complex, w: Complex) -> Complex {
        let n = self.zeros.len();
        let mut suffix = vec![Complex::new(1.0, 0.0); n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] * Self::factor(self.zeros[k], w);
        }
        let mut prefix = Complex::new(1.0, 0.0);
        let mut total = Complex::new(0.0, 0.0);
        for (k, &a) in self.zeros.iter().enumerate() {
            total += prefix * Self::factor_dd(a, z, w) * suffix[k + 1];
            prefix *= Self::factor(a, z);
        }
        self.unimodular() * total
    }

    /// Degree-one products are Möbius automorphisms.
    pub fn as_moebius(&self) -> Option<Moebius> {
        if self.zeros.len() != 1 {
            return None;
        }
        let a = self.zeros[0];
        let u = self.unimodular();
        Some(Moebius::raw(u, -u * a, -a.conj(), Complex::new(1.0, 0.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_zero_at_origin_is_z_squared() {
        let b = Blaschke::new(0.0, vec![Complex::new(0.0, 0.0); 2]).unwrap();
        assert_eq!(b.eval(Complex::new(0.5, 0.0)), Complex::new(0.25, 0.0));
        let z = Complex::new(0.3, -0.6);
        assert!((b.derivative(z) - 2.0 * z).norm() < 1e-15);
    }

    #[test]
    fn single_zero_at_origin_is_identity() {
        let b = Blaschke::new(0.0, vec![Complex::new(0.0, 0.0)]).unwrap();
        for z in [Complex::new(0.1, 0.9), Complex::new(-0.7, 0.0)] {
            assert_eq!(b.derivative(z), Complex::new(1.0, 0.0));
        }
    }

    #[test]
    fn zero_outside_disc_reports_index() {
        let err = Blaschke::new(0.0, vec![Complex::new(0.2, 0.0), Complex::new(1.0, 0.0)]).unwrap_err();
        assert_eq!(err.path().as_deref(), Some("zeros[1]"));
    }

    #[test]
    fn divided_difference_matches_quotient() {
        let b = Blaschke::new(0.4, vec![Complex::new(0.3, 0.2), Complex::new(-0.5, 0.1)]).unwrap();
        let (z, w) = (Complex::new(0.2, 0.1), Complex::new(-0.1, 0.6));
        let q = (b.eval(z) - b.eval(w)) / (z - w);
        assert!((b.divided_difference(z, w) - q).norm() < 1e-14);
    }

    #[test]
    fn degree_one_converts_to_moebius() {
        let b = Blaschke::new(1.1, vec![Complex::new(0.3, -0.2)]).unwrap();
        let m = b.as_moebius().unwrap();
        let z = Complex::new(0.25, 0.5);
        assert!((m.eval(z) - b.eval(z)).norm() < 1e-15);
    }
}
