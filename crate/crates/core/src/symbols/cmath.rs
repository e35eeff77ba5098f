//! Small complex-arithmetic helpers that `num_complex` does not provide.

use crate::Complex;

/// `z^n` by binary exponentiation for 64-bit exponents.
pub(crate) fn pow_u64(z: Complex, mut n: u64) -> Complex {
    let mut base = z;
    let mut acc = Complex::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        n >>= 1;
        if n > 0 {
            base = base * base;
        }
    }
    acc
}

/// `log(1 + w)` with full relative accuracy for small `w`.
pub(crate) fn log1p(w: Complex) -> Complex {
    let one_plus = Complex::new(1.0 + w.re, w.im);
    if w.norm() > 0.5 {
        return one_plus.ln();
    }
    // |1+w|^2 - 1 = 2 Re w + |w|^2
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    Complex::new(re, w.im.atan2(1.0 + w.re))
}

/// `exp(x) - 1` with full relative accuracy for small `x`.
pub(crate) fn expm1(x: Complex) -> Complex {
    let em = x.re.exp_m1();
    let (s, c) = x.im.sin_cos();
    let half = (0.5 * x.im).sin();
    Complex::new(em * c - 2.0 * half * half, (em + 1.0) * s)
}

/// Neumaier-compensated complex sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex,
    comp: Complex,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: Complex) {
        self.sum.re = neumaier_step(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier_step(self.sum.im, x.im, &mut self.comp.im);
    }

    pub(crate) fn value(&self) -> Complex {
        self.sum + self.comp
    }
}

fn neumaier_step(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

/// Exact fractional part of `n * theta` up to one rounding, via an FMA
/// error-free product.
pub(crate) fn frac_mul(n: u64, theta: f64) -> f64 {
    let nf = n as f64;
    let p = nf * theta;
    let err = nf.mul_add(theta, -p);
    let f = (p - p.floor()) + err;
    f - f.floor()
}

/// Distance from `x` to the nearest integer.
pub(crate) fn dist_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}
