use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{SymbolError, POLE_TOL, SELF_MAP_TOL};
use crate::Complex;

/// Linear fractional map `z ↦ (az + b)/(cz + d)`.
///
/// A validated `Moebius` has `|ad − bc| > 1e-12`, its pole (if any) lies
/// outside the closed disc, and it maps the closed disc into itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

/// Image of the unit circle under a Möbius map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImageCircle {
    UnitCircle,
    Circle { center: Complex, radius: f64 },
}

impl Moebius {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self, SymbolError> {
        let m = Self::raw(a, b, c, d);
        m.validate()?;
        Ok(m)
    }

    /// Unvalidated constructor, for intermediate matrices (inverses, conjugators).
    pub const fn raw(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        Self::raw(one, zero, zero, one)
    }

    fn validate(&self) -> Result<(), SymbolError> {
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if !v.is_finite() {
                return Err(SymbolError::NonFinite { path: name.into() });
            }
        }
        if self.det().norm() <= 1e-12 {
            return Err(SymbolError::Degenerate { det: self.det().norm() });
        }
        if let Some(pole) = self.pole() {
            if pole.norm() <= 1.0 + POLE_TOL {
                return Err(SymbolError::Pole { pole });
            }
        }
        let (center, radius) = self.boundary_image();
        let max = center.norm() + radius;
        if max > 1.0 + SELF_MAP_TOL {
            let dir = if center.norm() > 0.0 {
                center / center.norm()
            } else {
                Complex::new(1.0, 0.0)
            };
            let witness = self.inverse().eval(center + dir * radius);
            return Err(SymbolError::NotSelfMap { witness, modulus: max });
        }
        Ok(())
    }

    pub fn det(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    /// The finite pole `−d/c`, or `None` for affine maps.
    pub fn pole(&self) -> Option<Complex> {
        if self.c.norm() == 0.0 {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    #[inline]
    pub fn eval(&self, z: Complex) -> Complex {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    #[inline]
    pub fn derivative(&self, z: Complex) -> Complex {
        let den = self.c * z + self.d;
        self.det() / (den * den)
    }

    /// `(φ(z) − φ(w)) / (z − w)`, exact in form (no subtraction of nearby values).
    #[inline]
    pub fn divided_difference(&self, z: Complex, w: Complex) -> Complex {
        self.det() / ((self.c * z + self.d) * (self.c * w + self.d))
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d, -self.b, -self.c, self.a)
    }

    /// Matrix product: `self ∘ other`.
    pub fn compose(&self, other: &Moebius) -> Self {
        Self::raw(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    /// `ψ⁻¹ ∘ self ∘ ψ`.
    pub fn conjugate_by(&self, psi: &Moebius) -> Self {
        psi.inverse().compose(self).compose(psi)
    }

    /// Scale so that `ad − bc = 1`.
    pub fn normalized(&self) -> Self {
        let k = self.det().sqrt().inv();
        Self::raw(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// `z ↦ λz` is the identity up to scaling: `b = c = 0`, `a = d`.
    pub fn is_identity(&self, tol: f64) -> bool {
        let scale = self.a.norm().max(self.d.norm());
        self.b.norm() <= tol * scale && self.c.norm() <= tol * scale && (self.a - self.d).norm() <= tol * scale
    }

    /// Center and radius of the image of the unit circle, in closed form.
    ///
    /// Requires the pole to lie off the unit circle.
    pub fn boundary_image(&self) -> (Complex, f64) {
        let den = self.d.norm_sqr() - self.c.norm_sqr();
        let center = (self.d.conj() * self.b - self.a * self.c.conj()) / den;
        let radius = self.det().norm() / den.abs();
        (center, radius)
    }

    /// Automorphism of the disc: the unit circle is mapped onto itself.
    pub fn is_automorphism(&self, tol: f64) -> bool {
        let (center, radius) = self.boundary_image();
        center.norm() <= tol && (radius - 1.0).abs() <= tol
    }

    /// Disc involution `ψ_p(z) = (p − z)/(1 − p̄z)` swapping `p` and 0.
    pub fn involution(p: Complex) -> Self {
        Self::raw(Complex::new(-1.0, 0.0), p, -p.conj(), Complex::new(1.0, 0.0))
    }

    /// Image of ∂𝔻 through the three points `m(1), m(i), m(−1)`.
    pub fn image_circle(&self) -> Result<ImageCircle, SymbolError> {
        let p1 = self.eval(Complex::new(1.0, 0.0));
        let p2 = self.eval(Complex::new(0.0, 1.0));
        let p3 = self.eval(Complex::new(-1.0, 0.0));
        if [p1, p2, p3].iter().all(|p| (p.norm() - 1.0).abs() <= 1e-10) {
            return Ok(ImageCircle::UnitCircle);
        }
        // circumcenter of p1, p2, p3 relative to p1
        let u = p2 - p1;
        let v = p3 - p1;
        let cross = u.re * v.im - u.im * v.re;
        let scale = u.norm() * v.norm();
        if cross.abs() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err(SymbolError::CollinearImage);
        }
        let uu = u.norm_sqr();
        let vv = v.norm_sqr();
        let ox = (v.im * uu - u.im * vv) / (2.0 * cross);
        let oy = (u.re * vv - v.re * uu) / (2.0 * cross);
        let offset = Complex::new(ox, oy);
        Ok(ImageCircle::Circle {
            center: p1 + offset,
            radius: offset.norm(),
        })
    }
}

/// Which class of disc automorphism [`make_automorphism`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AutomorphismKind {
    /// Conjugate of the rotation `z ↦ e^{iθ}z` fixing the interior point `p`.
    Elliptic { angle: f64, fixed_point: Complex },
    /// Fixed points ±1, attracting at 1 with multiplier `mu ∈ (0,1)`.
    Hyperbolic { mu: f64 },
    /// Conjugate of `w ↦ w + b` on the upper half plane; fixed point 1.
    Parabolic { translation: f64 },
}

/// Builds a Möbius automorphism of the requested class.
pub fn make_automorphism(kind: AutomorphismKind) -> Result<Moebius, SymbolError> {
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    let m = match kind {
        AutomorphismKind::Elliptic { angle, fixed_point } => {
            if !angle.is_finite() || !fixed_point.is_finite() || fixed_point.norm() >= 1.0 {
                return Err(SymbolError::Parameter(format!(
                    "elliptic automorphism needs a finite angle and |p| < 1, got angle {angle}, p {fixed_point}"
                )));
            }
            let rotation = Moebius::raw(Complex::from_polar(1.0, angle.rem_euclid(TAU)), zero, zero, one);
            let psi = Moebius::involution(fixed_point);
            // ψ is an involution: ψ⁻¹ = ψ up to scaling.
            psi.compose(&rotation).compose(&psi)
        }
        AutomorphismKind::Hyperbolic { mu } => {
            if !(mu > 0.0 && mu < 1.0) {
                return Err(SymbolError::Parameter(format!(
                    "hyperbolic multiplier must lie in (0, 1), got {mu}"
                )));
            }
            // conjugate of the dilation w ↦ w/μ through w = (1+z)/(1−z)
            Moebius::raw(
                Complex::new(1.0 + mu, 0.0),
                Complex::new(1.0 - mu, 0.0),
                Complex::new(1.0 - mu, 0.0),
                Complex::new(1.0 + mu, 0.0),
            )
        }
        AutomorphismKind::Parabolic { translation: b } => {
            if !b.is_finite() || b == 0.0 {
                return Err(SymbolError::Parameter(format!(
                    "parabolic translation must be finite and non-zero, got {b}"
                )));
            }
            // σ⁻¹ ∘ (w ↦ w + b) ∘ σ with σ(z) = i(1+z)/(1−z)
            Moebius::raw(2.0 * i - b, Complex::new(b, 0.0), Complex::new(-b, 0.0), 2.0 * i + b)
        }
    };
    m.validate()?;
    Ok(m)
}
