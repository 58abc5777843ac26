//! Expected arrival counts along the Fibonacci path.

use super::ArrivalVector;
use crate::error::{Error, Result};
use crate::fibcore::Segment;
use crate::scalar::{compensated_sum, Real};
use crate::walkmodel::{arrival_coeffs_backward, arrival_forward_from, reflect, MethodTag, WalkSpec};

pub(super) fn arrivals_fibonacci<T: Real>(spec: &WalkSpec<T>, start: usize) -> Result<ArrivalVector<T>> {
    let n = spec.last();
    let x = if start == 0 {
        from_left_end(spec)?
    } else if start == n {
        let mut x = from_left_end(&reflect(spec))?;
        x.reverse();
        x
    } else {
        from_interior(spec, start)?
    };
    if let Some(j) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::Degenerate(format!("non-finite arrival count at state {j}")));
    }
    Ok(ArrivalVector { start, x, method: MethodTag::fibonacci() })
}

/// Start at 0: `x_0 = A_N^(1) / (q_1 A_{N+1}^(0))`, then forward propagation.
fn from_left_end<T: Real>(spec: &WalkSpec<T>) -> Result<Vec<T>> {
    let n = spec.last();
    let coeffs = arrival_forward_from(spec, 0, 0)?;
    let q1 = if n == 0 { spec.ghost_right() } else { spec.q()[1] };
    let x0 = Segment::new(&coeffs, 0, n + 1)?.lead_ratio() / q1;
    let mut x = vec![x0];
    if n > 0 {
        x.extend(Segment::new(&coeffs, 1, n)?.solve(Some(x0))?);
    }
    Ok(x)
}

/// Interior start: both sides are two-point problems headed by `x_{i0}`,
/// and the balance equation at `i0` fixes `x_{i0}` from their lead ratios.
fn from_interior<T: Real>(spec: &WalkSpec<T>, i0: usize) -> Result<Vec<T>> {
    let n = spec.last();
    let fwd = arrival_forward_from(spec, i0 as i64 + 1, i0 as i64)?;
    let bwd = arrival_coeffs_backward(spec, i0)?;
    let right = Segment::new(&fwd, i0 as i64 + 1, n - i0)?;
    let left = Segment::new(&bwd, 1 - i0 as i64, i0)?;

    let (p, q, r) = (spec.p(), spec.q(), spec.r());
    let denom = compensated_sum([
        T::one() - r[i0],
        p[i0 - 1] * bwd.mu(-(i0 as i64))? * left.lead_ratio(),
        q[i0 + 1] * fwd.mu(i0 as i64)? * right.lead_ratio(),
    ]);
    if !(denom > T::zero()) {
        return Err(Error::Degenerate(format!("arrival balance at state {i0} has non-positive denominator")));
    }
    let xi = T::one() / denom;

    let mut x = vec![T::zero(); n + 1];
    x[i0] = xi;
    for (k, v) in right.solve(Some(xi))?.into_iter().enumerate() {
        x[i0 + 1 + k] = v;
    }
    for (k, v) in left.solve(Some(xi))?.into_iter().enumerate() {
        x[i0 - 1 - k] = v;
    }
    Ok(x)
}
