//! Abstract real arithmetic for the recurrence engine.
//!
//! The recurrence needs only field operations, `abs`, `exp`, an exact
//! power-of-two rescale and a finiteness probe, so it is written against
//! this small trait instead of `f64` directly. Two implementations ship:
//! native binary64 and the compensated double-double type in [`crate::dd`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real scalar the engine can run on.
pub trait Scalar:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;

    /// Nearest binary64 value.
    fn to_f64(self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(self) -> Self;

    fn exp(self) -> Self;

    /// Multiplies by `2^e` exactly (no rounding while in range).
    fn ldexp(self, e: i32) -> Self;

    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn ldexp(self, e: i32) -> Self {
        self * f64::powi(2.0, e)
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_ldexp_is_exact() {
        let v: f64 = 1.25e200;
        assert_eq!(v.ldexp(-512).ldexp(512), v);
        assert_eq!(3.0f64.ldexp(4), 48.0);
    }
}
