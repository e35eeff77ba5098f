//! Continued fractions of rotation angles with accurate convergent defects.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::WeightedError;
use crate::symbols::cmath::{dist_to_integer, frac_mul};

/// Rotation angle `θ` in turns, `λ = e^{2πiθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Angle {
    /// `(p + √d)/q` with `d` not a perfect square and `q ≠ 0`.
    Quadratic {
        p: i64,
        d: u64,
        q: i64,
    },
    Rational {
        num: i64,
        den: u64,
    },
    /// A double; its expansion is trusted only for denominators up to
    /// [`FLOAT_HORIZON`].
    Turns {
        value: f64,
    },
}

/// Largest exponent used with a double-precision angle.
pub const FLOAT_HORIZON: u64 = 10_000_000;
/// Orders up to which roots of unity are rejected.
pub const ROOT_OF_UNITY_ORDER: u64 = 10_000;

impl Angle {
    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        Self::Quadratic { p: -1, d: 5, q: 2 }
    }

    /// `√2 − 1`.
    pub fn sqrt2_minus_1() -> Self {
        Self::Quadratic { p: -1, d: 2, q: 1 }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Self::Quadratic { p, d, q } => (p as f64 + (d as f64).sqrt()) / q as f64,
            Self::Rational { num, den } => num as f64 / den as f64,
            Self::Turns { value } => value,
        }
    }

    fn validate(&self) -> Result<(), WeightedError> {
        match *self {
            Self::Quadratic { d, q, .. } => {
                if q == 0 {
                    return Err(WeightedError::Parameter("quadratic angle needs q != 0".into()));
                }
                let s = isqrt(d as u128);
                if s * s == d as u128 {
                    let v = self.value();
                    return Err(WeightedError::Parameter(format!(
                        "d = {d} is a perfect square; use a rational angle for {v}"
                    )));
                }
                Ok(())
            }
            Self::Rational { den, num } => {
                if den == 0 {
                    return Err(WeightedError::Parameter("rational angle needs den > 0".into()));
                }
                let g = gcd(num.unsigned_abs(), den);
                let order = den / g;
                if order <= ROOT_OF_UNITY_ORDER {
                    return Err(WeightedError::RootOfUnity { order });
                }
                Ok(())
            }
            Self::Turns { value } => {
                if !value.is_finite() {
                    return Err(WeightedError::Parameter("angle must be finite".into()));
                }
                let theta = value.rem_euclid(1.0);
                if let Some(order) = (1..=ROOT_OF_UNITY_ORDER).find(|&q| dist_to_integer(frac_mul(q, theta)) <= 1e-13) {
                    return Err(WeightedError::RootOfUnity { order });
                }
                Ok(())
            }
        }
    }
}

/// Convergent `p/q` with defect `qθ − p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergent {
    pub p: i128,
    pub q: i128,
    pub defect: f64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Sign of `t − √d` for `d` not a perfect square.
fn cmp_with_sqrt(t: i128, d: i128) -> Ordering {
    if t < 0 || t * t < d {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// `⌊(p + √d)/q⌋`, exactly.
fn floor_quadratic(p: i128, d: i128, q: i128) -> i128 {
    let mut a = ((p as f64 + (d as f64).sqrt()) / q as f64).floor() as i128;
    // a ≤ x  ⇔  a q − p ≤ √d (q > 0) or ≥ √d (q < 0)
    let le = |a: i128| {
        let c = cmp_with_sqrt(a * q - p, d);
        if q > 0 {
            c == Ordering::Less
        } else {
            c == Ordering::Greater
        }
    };
    while !le(a) {
        a -= 1;
    }
    while le(a + 1) {
        a += 1;
    }
    a
}

/// Partial quotients `a_k` paired with the following complete quotient
/// `α_{k+1}` (absent when the expansion terminates).
fn partial_quotients(angle: &Angle, max_den: u128) -> Vec<(i128, Option<f64>)> {
    let mut out = Vec::new();
    let mut q_prev: u128 = 0;
    let mut q_cur: u128 = 1;
    let mut push = |a: i128, alpha: Option<f64>, out: &mut Vec<(i128, Option<f64>)>| -> bool {
        out.push((a, alpha));
        if out.len() == 1 {
            return true;
        }
        let next = (a as u128).checked_mul(q_cur).and_then(|x| x.checked_add(q_prev));
        match next {
            Some(q) if q <= max_den => {
                q_prev = q_cur;
                q_cur = q;
                true
            }
            _ => false,
        }
    };
    match *angle {
        Angle::Quadratic { p, d, q } => {
            // scale so that q | d − p², keeping the value
            let (mut pp, mut dd, mut qq) = (p as i128, d as i128, q as i128);
            if (dd - pp * pp) % qq != 0 {
                let s = qq.abs();
                pp *= s;
                dd *= s * s;
                qq *= s;
            }
            loop {
                let a = floor_quadratic(pp, dd, qq);
                let p_next = a * qq - pp;
                let q_next = (dd - p_next * p_next) / qq;
                let alpha = (p_next as f64 + (dd as f64).sqrt()) / q_next as f64;
                if !push(a, Some(alpha), &mut out) {
                    break;
                }
                pp = p_next;
                qq = q_next;
            }
        }
        Angle::Rational { num, den } => rational_quotients(num as i128, den as i128, &mut out, push),
        Angle::Turns { value } => {
            let value = value.rem_euclid(1.0);
            // exact binary expansion m / 2^e
            let (m, e) = if value == 0.0 {
                (0i128, 0u32)
            } else {
                let bits = value.to_bits();
                let exp = ((bits >> 52) & 0x7ff) as i32;
                let mant = if exp == 0 {
                    (bits & ((1 << 52) - 1)) << 1
                } else {
                    (bits & ((1 << 52) - 1)) | (1 << 52)
                };
                let sign = if value < 0.0 { -1 } else { 1 };
                let shift = 1075 - exp;
                let mut m = sign * mant as i128;
                let mut e = shift.max(0) as u32;
                if shift < 0 {
                    m <<= -shift;
                }
                while e > 0 && m % 2 == 0 {
                    m /= 2;
                    e -= 1;
                }
                (m, e)
            };
            rational_quotients(m, 1i128 << e.min(120), &mut out, push);
        }
    }
    out
}

fn rational_quotients(
    num: i128,
    den: i128,
    out: &mut Vec<(i128, Option<f64>)>,
    mut push: impl FnMut(i128, Option<f64>, &mut Vec<(i128, Option<f64>)>) -> bool,
) {
    let (mut n, mut d) = (num, den);
    loop {
        let a = n.div_euclid(d);
        let r = n.rem_euclid(d);
        let alpha = if r == 0 { None } else { Some(d as f64 / r as f64) };
        if !push(a, alpha, out) || r == 0 {
            break;
        }
        (n, d) = (d, r);
    }
}

/// Convergents `p_k/q_k` of the angle with `q_k ≤ max_den`, with defects
/// `q_k θ − p_k = (−1)^k / (q_k α_{k+1} + q_{k−1})`.
pub fn convergents(angle: &Angle, max_den: u64) -> Result<Vec<Convergent>, WeightedError> {
    angle.validate()?;
    let mut max_den = max_den as u128;
    if matches!(angle, Angle::Turns { .. }) {
        max_den = max_den.min(FLOAT_HORIZON as u128);
    }
    let quotients = partial_quotients(angle, max_den);
    let mut out = Vec::with_capacity(quotients.len());
    let (mut p2, mut q2) = (0i128, 1i128);
    let (mut p1, mut q1) = (1i128, 0i128);
    for (k, &(a, alpha)) in quotients.iter().enumerate() {
        let (p, q) = (a * p1 + p2, a * q1 + q2);
        if q as u128 > max_den {
            break;
        }
        let defect = match alpha {
            Some(alpha) => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign / (q as f64 * alpha + q1 as f64)
            }
            None => 0.0,
        };
        out.push(Convergent { p, q, defect });
        (p2, q2, p1, q1) = (p1, q1, p, q);
    }
    Ok(out)
}
