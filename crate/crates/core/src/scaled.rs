//! Mantissa/exponent reals for continuant values that outgrow the native range.
//!
//! A [`ScaledReal`] stores `mantissa * 2^exponent` with `|mantissa|` in `[1, 2)`
//! (or exactly zero) and a 64-bit exponent. Products and sums of continuants
//! stay representable no matter how long the recurrence runs; only the final
//! ratios are brought back to the scalar type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

const CHUNK: i64 = 60;

#[derive(Clone, Copy, PartialEq)]
pub struct ScaledReal<T> {
    mantissa: T,
    exponent: i64,
}

/// `x * 2^e`, exact whenever the result is representable.
fn ldexp<T: Real>(mut x: T, mut e: i64) -> T {
    let two = T::lit(2.0);
    let up = two.powi(CHUNK as i32);
    let down = up.recip();
    while e > CHUNK {
        x *= up;
        e -= CHUNK;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -CHUNK {
        x *= down;
        e += CHUNK;
        if x == T::zero() {
            return x;
        }
    }
    x * two.powi(e as i32)
}

impl<T: Real> ScaledReal<T> {
    pub fn zero() -> Self {
        Self { mantissa: T::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Self { mantissa: T::one(), exponent: 0 }
    }

    /// Exact decomposition of a scalar.
    pub fn from_real(value: T) -> Self {
        Self::normalized(value, 0)
    }

    fn normalized(value: T, exponent: i64) -> Self {
        if value == T::zero() || !value.is_finite() {
            return Self { mantissa: value, exponent: if value == T::zero() { 0 } else { exponent } };
        }
        let (bits, exp, sign) = value.integer_decode();
        let width = 64 - i64::from(bits.leading_zeros());
        let top = width - 1;
        let m = T::from_u64(bits).expect("integer mantissa fits scalar") * T::lit(2.0).powi(-(top as i32));
        let m = if sign < 0 { -m } else { m };
        Self { mantissa: m, exponent: exponent + i64::from(exp) + top }
    }

    pub fn mantissa(&self) -> T {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn to_real(self) -> T {
        if self.mantissa == T::zero() || !self.mantissa.is_finite() {
            return self.mantissa;
        }
        ldexp(self.mantissa, self.exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == T::zero()
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite()
    }

    pub fn signum(&self) -> T {
        if self.is_zero() {
            T::zero()
        } else {
            self.mantissa.signum()
        }
    }

    pub fn abs(self) -> Self {
        Self { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn scale(self, factor: T) -> Self {
        self * Self::from_real(factor)
    }

    /// `self / other` as a plain scalar.
    pub fn ratio(self, other: Self) -> T {
        (self / other).to_real()
    }

    /// `log2 |self|`, useful for magnitude comparisons far outside the scalar range.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().as_f64().log2() + self.exponent as f64
        }
    }
}

impl<T: Real> Default for ScaledReal<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> From<T> for ScaledReal<T> {
    fn from(value: T) -> Self {
        Self::from_real(value)
    }
}

impl<T: Real> Mul for ScaledReal<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::from_real(self.mantissa * rhs.mantissa);
        }
        Self::normalized(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl<T: Real> Div for ScaledReal<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::from_real(self.mantissa / rhs.mantissa);
        }
        Self::normalized(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl<T: Real> Add for ScaledReal<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if rhs.is_zero() || !self.is_finite() {
            return if self.is_zero() { rhs } else { self };
        }
        if self.is_zero() || !rhs.is_finite() {
            return rhs;
        }
        let (big, small) = if self.exponent >= rhs.exponent { (self, rhs) } else { (rhs, self) };
        let gap = big.exponent - small.exponent;
        // beyond this the smaller term is below half an ulp of the larger one
        if gap > 2 * CHUNK {
            return big;
        }
        let aligned = ldexp(small.mantissa, -gap);
        Self::normalized(big.mantissa + aligned, big.exponent)
    }
}

impl<T: Real> Neg for ScaledReal<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl<T: Real> Sub for ScaledReal<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> PartialOrd for ScaledReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (*self - *other).mantissa.partial_cmp(&T::zero())
    }
}

impl<T: Real> fmt::Debug for ScaledReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}*2^{}", self.mantissa, self.exponent)
    }
}

impl<T: Real> fmt::Display for ScaledReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_real();
        if v.is_finite() && (v != T::zero() || self.is_zero()) {
            write!(f, "{v}")
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_into_unit_octave() {
        let x = ScaledReal::from_real(12.0_f64);
        assert_eq!(x.mantissa(), 1.5);
        assert_eq!(x.exponent(), 3);
        let y = ScaledReal::from_real(-0.375_f64);
        assert_eq!(y.mantissa(), -1.5);
        assert_eq!(y.exponent(), -2);
    }

    #[test]
    fn survives_products_past_overflow() {
        let big = ScaledReal::from_real(1e300_f64);
        let p = big * big * big;
        assert!(p.is_finite());
        assert!(p.to_real().is_infinite());
        assert!((p.ratio(big * big) / 1e300 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subnormals_round_trip() {
        let tiny = f64::from_bits(1);
        assert_eq!(ScaledReal::from_real(tiny).to_real(), tiny);
        let t32 = f32::from_bits(3);
        assert_eq!(ScaledReal::from_real(t32).to_real(), t32);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = ScaledReal::from_real(3.0_f64);
        let b = ScaledReal::from_real(0.25_f64);
        assert_eq!((a + b).to_real(), 3.25);
        assert_eq!((b - a).to_real(), -2.75);
        assert!((a - a).is_zero());
        let huge = ScaledReal::from_real(1.0_f64) * ScaledReal::from_real(2f64.powi(1000)).scale(2f64.powi(1000));
        assert_eq!(huge + a, huge);
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            prop_assert_eq!(ScaledReal::from_real(v).to_real().to_bits(), v.to_bits());
        }

        #[test]
        fn round_trip_is_exact_f32(bits in any::<u32>()) {
            let v = f32::from_bits(bits);
            prop_assume!(v.is_finite() && v != 0.0);
            prop_assert_eq!(ScaledReal::from_real(v).to_real(), v);
        }

        #[test]
        fn arithmetic_matches_native(a in -1e100..1e100f64, b in -1e100..1e100f64) {
            let (sa, sb) = (ScaledReal::from_real(a), ScaledReal::from_real(b));
            prop_assert_eq!((sa * sb).to_real(), a * b);
            prop_assert_eq!((sa + sb).to_real(), a + b);
            if b != 0.0 {
                prop_assert_eq!((sa / sb).to_real(), a / b);
            }
        }
    }
}
