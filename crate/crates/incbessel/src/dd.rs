//! Double-double ("compensated") arithmetic: an unevaluated sum of two
//! binary64 values carrying roughly 32 significant decimal digits.
//!
//! This backs the engine's extended-precision mode. Only the operations the
//! recurrence needs are implemented: field arithmetic, `abs`, `exp`, and an
//! exact power-of-two rescale. Error-free transforms follow Dekker/Knuth;
//! products use the hardware FMA.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `hi + lo` with `|lo| ≤ ulp(hi)/2` (normalized form).
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

/// ln 2 split into two binary64 components.
const LN2_HI: f64 = 0.693_147_180_559_945_3;
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;

/// Exact sum of two doubles: `s + e == a + b` with `s = fl(a + b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `two_sum` specialized to `|a| ≥ |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product: `p + e == a * b` with `p = fl(a * b)`.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    /// Builds from pre-normalized components (`|lo| ≤ ulp(hi)/2`).
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Exact sum of two arbitrary doubles.
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    /// Exact product of two arbitrary doubles.
    pub fn from_product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        // Long division: three quotient digits, residual-corrected.
        let q1 = self.hi / rhs.hi;
        let mut r = self - rhs * Self::from(q1);
        let q2 = r.hi / rhs.hi;
        r = r - rhs * Self::from(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Self::from_parts(s, e + q3)
    }
}

impl Scalar for DoubleDouble {
    fn from_f64(v: f64) -> Self {
        Self::from(v)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    fn exp(self) -> Self {
        // e^a = 2^k · e^r with r = a − k·ln2, |r| ≤ ln2/2, then a Taylor
        // sum of e^r. 0.35^27/27! ≈ 5e-41 keeps the truncation well below
        // the double-double roundoff.
        if self.hi < -746.0 {
            return Self::ZERO;
        }
        if self.hi > 710.0 {
            return Self::from(f64::INFINITY);
        }
        let k = (self.hi / LN2_HI).round();
        let ln2 = Self::from_parts(LN2_HI, LN2_LO);
        let r = self - ln2 * Self::from(k);

        let mut sum = Self::ONE + r;
        let mut term = r;
        for i in 2..28 {
            term = term * r / Self::from(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(k as i32)
    }

    fn ldexp(self, e: i32) -> Self {
        let scale = f64::powi(2.0, e);
        Self {
            hi: self.hi * scale,
            lo: self.lo * scale,
        }
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(got: DoubleDouble, want: DoubleDouble) -> f64 {
        let d = got - want;
        (d.to_f64() / want.to_f64()).abs()
    }

    #[test]
    fn addition_keeps_cancelled_bits() {
        let a = DoubleDouble::from(1e16);
        let b = DoubleDouble::from(1.0);
        let sum = a + b;
        let back = sum - a;
        assert_eq!(back.to_f64(), 1.0);
        assert_eq!(back.lo(), 0.0);
    }

    #[test]
    fn product_is_compensated() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the 2^-60 tail is invisible
        // to f64 but must survive in double-double.
        let one_eps = DoubleDouble::from(1.0) + DoubleDouble::from((2.0f64).powi(-30));
        let sq = one_eps * one_eps;
        let tail = sq - DoubleDouble::from(1.0) - DoubleDouble::from((2.0f64).powi(-29));
        assert!((tail.to_f64() - (2.0f64).powi(-60)).abs() < 1e-35);
    }

    #[test]
    fn division_round_trips() {
        let a = DoubleDouble::from_parts(3.713, 1.4e-18);
        let b = DoubleDouble::from_parts(-0.0071, 3.1e-20);
        let q = a / b;
        assert!(rel_err(q * b, a) < 1e-30);
    }

    #[test]
    fn exp_matches_reference_values() {
        // e = 2.718281828459045235360287471... split into two doubles.
        let e_ref = DoubleDouble::from_parts(2.718281828459045, 1.4456468917292502e-16);
        assert!(rel_err(DoubleDouble::ONE.exp(), e_ref) < 1e-30);

        // exp(-6)/6 reference split, used by the engine tests as well.
        let want = DoubleDouble::from_parts(0.0004131253627777264, 6.789086085012202e-21);
        let got = DoubleDouble::from(-6.0).exp() / DoubleDouble::from(6.0);
        assert!(rel_err(got, want) < 1e-30);
    }

    #[test]
    fn exp_handles_powers_of_two_exactly() {
        let ln2 = DoubleDouble::from_parts(LN2_HI, LN2_LO);
        let got = (ln2 * DoubleDouble::from(10.0)).exp();
        assert!(rel_err(got, DoubleDouble::from(1024.0)) < 1e-30);
        assert_eq!(DoubleDouble::ZERO.exp().to_f64(), 1.0);
    }

    #[test]
    fn exp_functional_equation() {
        let a = DoubleDouble::from(0.37);
        let b = DoubleDouble::from(-2.11);
        let lhs = (a + b).exp();
        let rhs = a.exp() * b.exp();
        assert!(rel_err(lhs, rhs) < 1e-29);
    }

    #[test]
    fn exp_underflows_gracefully() {
        assert_eq!(DoubleDouble::from(-1000.0).exp(), DoubleDouble::ZERO);
    }

    #[test]
    fn ordering_uses_both_limbs() {
        let a = DoubleDouble::from_parts(1.0, 1e-20);
        let b = DoubleDouble::from_parts(1.0, -1e-20);
        assert!(b < a);
        assert!(DoubleDouble::from(0.5) < a);
    }

    #[test]
    fn abs_flips_negative_values() {
        let a = DoubleDouble::from_parts(-2.0, 1e-17);
        assert!(a.abs().hi() > 0.0);
        assert_eq!(a.abs(), -a);
    }
}
