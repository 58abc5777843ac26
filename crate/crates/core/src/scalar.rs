//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point types the analytics run on (`f32`, `f64`).
///
/// Tolerances that depend on the precision of the type live here so the
/// same code path can validate inputs in either width.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Allowed deviation of `p + q + r + s` from one.
    const ROW_SUM_TOL: f64;
    /// Pivots smaller than this in magnitude are treated as singular.
    const PIVOT_TOL: f64;

    /// Converts an `f64` literal; panics only for values the type cannot hold at all.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const ROW_SUM_TOL: f64 = 1e-12;
    const PIVOT_TOL: f64 = 1e-13;
}

impl Real for f32 {
    const ROW_SUM_TOL: f64 = 1e-6;
    const PIVOT_TOL: f64 = 1e-6;
}

/// Neumaier-compensated sum.
pub fn compensated_sum<T: Real>(terms: impl IntoIterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut carry = T::zero();
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Relative deviation `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff<T: Real>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancelled_bits() {
        let terms = [1.0e16, 1.0, -1.0e16];
        assert_eq!(terms.iter().copied().sum::<f64>(), 0.0);
        assert_eq!(compensated_sum(terms), 1.0);
    }

    #[test]
    fn rel_diff_handles_zero() {
        assert_eq!(rel_diff(0.0_f64, 0.0), 0.0);
        assert_eq!(rel_diff(1.0_f64, 0.5), 0.5);
    }
}
