//! Closed forms for the homogeneous walk with absorbing-leaning ends:
//! `p_i = p`, `q_i = q`, `r_i = 0`, `s_i = 1 - p - q` inside, `p_0 = p`, `s_0 = 1 - p`,
//! `q_N = q`, `s_N = 1 - q`, started at 0.

use crate::error::Result;
use crate::scalar::{compensated_sum, Real};
use crate::walkmodel::{WalkParams, WalkSpec};

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn alternating<T: Real>(terms: impl Iterator<Item = (usize, f64)>, pq: T) -> T {
    compensated_sum(terms.map(|(k, c)| T::lit(c) * (-pq).powi(k as i32)))
}

/// Builds the walk on `[0, n]`; `n ≥ 1`.
pub fn homogeneous_spec<T: Real>(p: T, q: T, n: usize) -> Result<WalkSpec<T>> {
    assert!(n >= 1, "the boundary convention needs two distinct ends");
    let one = T::one();
    let mut pv = vec![p; n + 1];
    let mut qv = vec![q; n + 1];
    let mut sv = vec![one - p - q; n + 1];
    pv[n] = T::zero();
    qv[0] = T::zero();
    sv[0] = one - p;
    sv[n] = one - q;
    WalkParams::new(pv, qv, vec![T::zero(); n + 1], sv).validate()
}

/// `(p, q)` when `spec` has exactly the shape built by [`homogeneous_spec`],
/// up to `tol` per entry.
pub fn homogeneous_params<T: Real>(spec: &WalkSpec<T>, tol: f64) -> Option<(T, T)> {
    let n = spec.last();
    if n == 0 {
        return None;
    }
    let (p, q) = (spec.p()[0], spec.q()[n]);
    let reference = homogeneous_spec(p, q, n).ok()?;
    let near = |a: &[T], b: &[T]| a.iter().zip(b).all(|(x, y)| (x.as_f64() - y.as_f64()).abs() <= tol);
    let same = near(spec.p(), reference.p())
        && near(spec.q(), reference.q())
        && near(spec.r(), reference.r())
        && near(spec.s(), reference.s());
    same.then_some((p, q))
}

/// `x_0 = sum_k C(N-k, k)(-pq)^k / sum_k C(N+1-k, k)(-pq)^k`.
pub fn homogeneous_x0<T: Real>(p: T, q: T, n: usize) -> T {
    let pq = p * q;
    let num = alternating((0..=n / 2).map(|k| (k, binomial(n - k, k))), pq);
    let den = alternating((0..=n.div_ceil(2)).map(|k| (k, binomial(n + 1 - k, k))), pq);
    num / den
}

/// The variant with full-row binomials `C(N+1, k)` over `C(N+2, k)`.
/// It disagrees with the walk (at `N = 3`, `p = q = 1/2` it gives 1 instead of 8/5)
/// and is kept for comparison only.
pub fn homogeneous_x0_full_binomial<T: Real>(p: T, q: T, n: usize) -> T {
    let pq = p * q;
    let num = alternating((0..=n.div_ceil(2)).map(|k| (k, binomial(n + 1, k))), pq);
    let den = alternating((0..=(n + 2) / 2).map(|k| (k, binomial(n + 2, k))), pq);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(2, 3), 0.0);
        assert_eq!(binomial(30, 15), 155117520.0);
    }

    #[test]
    fn small_cases_by_hand() {
        // N = 1: x_0 = 1 / (1 - pq)
        assert!((homogeneous_x0(0.4f64, 0.3, 1) - 1.0 / (1.0 - 0.12)).abs() < 1e-15);
        assert!((homogeneous_x0(0.5f64, 0.5, 3) - 1.6).abs() < 1e-15);
        assert!((homogeneous_x0_full_binomial(0.5f64, 0.5, 3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shape_detection() {
        let spec = homogeneous_spec(0.4, 0.4, 5).unwrap();
        assert_eq!(homogeneous_params(&spec, 1e-12), Some((0.4, 0.4)));
        let other = WalkParams::new(vec![0.5, 0.0], vec![0.0, 0.5], vec![0.0; 2], vec![0.5, 0.5]).validate().unwrap();
        assert_eq!(homogeneous_params(&other, 1e-12), Some((0.5, 0.5)));
        let off = WalkParams::new(vec![0.5, 0.0], vec![0.0, 0.5], vec![0.1, 0.0], vec![0.4, 0.5]).validate().unwrap();
        assert_eq!(homogeneous_params(&off, 1e-12), None);
    }
}
