//! Structural absorption checks on the nearest-neighbour transition graph.

use crate::scalar::Real;
use crate::walkmodel::WalkSpec;

/// Smallest interval containing every state reachable from `start`.
/// Moves are nearest-neighbour, so the reachable set is itself an interval.
pub fn reachable_interval<T: Real>(spec: &WalkSpec<T>, start: usize) -> (usize, usize) {
    let (p, q) = (spec.p(), spec.q());
    let mut hi = start;
    while hi < spec.last() && p[hi] > T::zero() {
        hi += 1;
    }
    let mut lo = start;
    while lo > 0 && q[lo] > T::zero() {
        lo -= 1;
    }
    (lo, hi)
}

/// For every state, whether some absorption event (in-place absorption or a
/// step off either end) can be reached from it.
pub fn can_absorb<T: Real>(spec: &WalkSpec<T>) -> Vec<bool> {
    let n = spec.len();
    let (p, q, s) = (spec.p(), spec.q(), spec.s());
    let zero = T::zero();
    let mut ok: Vec<bool> = (0..n).map(|i| s[i] > zero || (i == 0 && q[0] > zero) || (i == n - 1 && p[n - 1] > zero)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&i| ok[i]).collect();
    // walk edges backwards: i-1 -> i needs p_{i-1} > 0, i+1 -> i needs q_{i+1} > 0
    while let Some(i) = stack.pop() {
        if i > 0 && !ok[i - 1] && p[i - 1] > zero {
            ok[i - 1] = true;
            stack.push(i - 1);
        }
        if i + 1 < n && !ok[i + 1] && q[i + 1] > zero {
            ok[i + 1] = true;
            stack.push(i + 1);
        }
    }
    ok
}

/// True iff absorption is reachable from every state reachable from `start`,
/// i.e. the walk started there is absorbed (or exits) almost surely.
pub fn is_absorbing<T: Real>(spec: &WalkSpec<T>, start: usize) -> bool {
    let (lo, hi) = reachable_interval(spec, start);
    can_absorb(spec)[lo..=hi].iter().all(|&b| b)
}

/// True iff the walk is absorbed almost surely from every state.
pub fn is_absorbing_everywhere<T: Real>(spec: &WalkSpec<T>) -> bool {
    can_absorb(spec).into_iter().all(|b| b)
}
