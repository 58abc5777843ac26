//! Expected absorption times along the Fibonacci path.

use super::TimeVector;
use crate::error::{Error, Result};
use crate::fibcore::Segment;
use crate::scalar::{compensated_sum, Real};
use crate::walkmodel::{reflect, time_coeffs_backward, time_forward_from, MethodTag, WalkSpec};

pub(super) fn time_fibonacci<T: Real>(spec: &WalkSpec<T>, anchor: usize) -> Result<TimeVector<T>> {
    let n = spec.last();
    let m = if anchor == 0 {
        from_left_end(spec)?
    } else if anchor == n {
        let mut m = from_left_end(&reflect(spec))?;
        m.reverse();
        m
    } else {
        from_interior(spec, anchor)?
    };
    if let Some(j) = m.iter().position(|v| !v.is_finite()) {
        return Err(Error::Degenerate(format!("non-finite expected time at state {j}")));
    }
    Ok(TimeVector { m, method: MethodTag::fibonacci(), anchor: Some(anchor) })
}

/// Anchor 0: the whole vector is one two-point problem with `m_{-1} = m_{N+1} = 0`.
fn from_left_end<T: Real>(spec: &WalkSpec<T>) -> Result<Vec<T>> {
    let n = spec.last();
    let coeffs = time_forward_from(spec, 0, 0)?;
    Segment::new(&coeffs, 0, n + 1)?.solve(None)
}

fn from_interior<T: Real>(spec: &WalkSpec<T>, i0: usize) -> Result<Vec<T>> {
    let n = spec.last();
    let fwd = time_forward_from(spec, i0 as i64 + 1, i0 as i64)?;
    let bwd = time_coeffs_backward(spec, i0)?;
    let right = Segment::new(&fwd, i0 as i64 + 1, n - i0)?;
    let left = Segment::new(&bwd, 1 - i0 as i64, i0)?;

    // m_{i0 +- 1} = -(head coefficient) m_{i0} lead_ratio - source_ratio on each side
    let (p, q, r, s) = (spec.p()[i0], spec.q()[i0], spec.r()[i0], spec.s()[i0]);
    let phi = fwd.mu(i0 as i64)?;
    let zeta = bwd.mu(-(i0 as i64))?;
    let num = compensated_sum([T::one() - s, -p * right.source_ratio()?, -q * left.source_ratio()?]);
    let den = compensated_sum([T::one() - r, p * phi * right.lead_ratio(), q * zeta * left.lead_ratio()]);
    if !(den > T::zero()) {
        return Err(Error::Degenerate(format!("time balance at state {i0} has non-positive denominator")));
    }
    let mi = num / den;

    let mut m = vec![T::zero(); n + 1];
    m[i0] = mi;
    for (k, v) in right.solve(Some(mi))?.into_iter().enumerate() {
        m[i0 + 1 + k] = v;
    }
    for (k, v) in left.solve(Some(mi))?.into_iter().enumerate() {
        m[i0 - 1 - k] = v;
    }
    Ok(m)
}
