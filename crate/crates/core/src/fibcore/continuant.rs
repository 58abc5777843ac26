//! Evaluation of the shifted continuants `A_i^(m)`.
//!
//! `A_i^(m)` is the value at step `i` of `x_{k+1} = lam[m+k] x_k + mu[m+k-1] x_{k-1}`
//! started from `x_0 = 1`, `x_1 = lam[m]`, with `A_0 = 1` and `A_{-1} = 0`.
//! It equals the sum over the `f_i` columns of the order-`i` τ-table of the
//! column products.

use super::coeffs::CoefficientSet;
use super::fib::fibonacci;
use super::tau::{tau_cell, Cell};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::scaled::ScaledReal;

/// Highest order the explicit sum-of-products evaluator accepts.
pub const EXPLICIT_CAP: usize = 20;

/// The factor lists of the `f_i` products making up `A_i`, column by column.
pub fn expansion(order: usize) -> Result<impl Iterator<Item = Vec<Cell>>> {
    if order > EXPLICIT_CAP {
        return Err(Error::ExplicitCapacity { order, cap: EXPLICIT_CAP });
    }
    let columns = fibonacci(order)?;
    Ok((1..=columns).map(move |j| (1..=order).map(|k| tau_cell(k, j)).collect()))
}

/// `A_i^(m)` as an explicit sum of `f_i` τ-products, summed in column order.
pub fn a_explicit<T: Real>(order: usize, shift: i64, coeffs: &CoefficientSet<T>) -> Result<T> {
    let mut sum = T::zero();
    for column in expansion(order)? {
        let mut prod = T::one();
        for cell in column {
            prod *= cell.resolve(shift, coeffs)?;
        }
        sum += prod;
    }
    Ok(sum)
}

/// `A_0^(m), A_1^(m), ..., A_len^(m)` by forward recursion.
pub fn a_prefix<T: Real>(len: usize, shift: i64, coeffs: &CoefficientSet<T>) -> Result<Vec<ScaledReal<T>>> {
    let mut out = Vec::with_capacity(len + 1);
    out.push(ScaledReal::one());
    let mut prev = ScaledReal::zero();
    for k in 0..len as i64 {
        let cur = out[k as usize];
        let mut next = cur.scale(coeffs.lam(shift + k)?);
        if k > 0 {
            next = next + prev.scale(coeffs.mu(shift + k - 1)?);
        }
        prev = cur;
        out.push(next);
    }
    Ok(out)
}

/// `A_i^(m)` by forward recursion in scaled arithmetic; `i >= -1`.
pub fn a_recurrence<T: Real>(order: i64, shift: i64, coeffs: &CoefficientSet<T>) -> Result<ScaledReal<T>> {
    match order {
        i if i < -1 => panic!("continuant order {i} below -1"),
        -1 => Ok(ScaledReal::zero()),
        i => Ok(*a_prefix(i as usize, shift, coeffs)?.last().expect("prefix holds A_0")),
    }
}

/// All continuants sharing the last coefficient `lam[last]`:
/// element `s - first` is `A_{last-s+1}^(s)` for `s` in `first..=last+2`,
/// so the final two entries are `A_0 = 1` and `A_{-1} = 0`.
///
/// Evaluated right to left through `A_{n+1}^(s) = lam[s] A_n^(s+1) + mu[s] A_{n-1}^(s+2)`.
pub fn a_tails<T: Real>(first: i64, last: i64, coeffs: &CoefficientSet<T>) -> Result<Vec<ScaledReal<T>>> {
    assert!(first <= last + 2, "empty tail range");
    let n = (last + 2 - first + 1) as usize;
    let mut out = vec![ScaledReal::zero(); n];
    out[n - 2] = ScaledReal::one();
    for s in (first..=last).rev() {
        let idx = (s - first) as usize;
        let mut v = out[idx + 1].scale(coeffs.lam(s)?);
        if s < last {
            v = v + out[idx + 2].scale(coeffs.mu(s)?);
        }
        out[idx] = v;
    }
    Ok(out)
}

/// Value `i` steps past `head1` of
/// `y_{k+1} = lam[m+k] y_k + mu[m+k-1] y_{k-1} + inhom[m+k]` with `y_{-1} = head0`, `y_0 = head1`:
///
/// `head1 A_i^(m) + head0 mu[m-1] A_{i-1}^(m+1) + sum_{n=1}^{i} A_{i-n}^(m+n) inhom[m+n-1]`.
///
/// This is the literal convolution form; it cancels badly when the
/// continuants grow quickly; prefer [`super::Segment`] for boundary problems.
pub fn a_inhomogeneous<T: Real>(
    order: usize,
    shift: i64,
    coeffs: &CoefficientSet<T>,
    head0: T,
    head1: T,
) -> Result<ScaledReal<T>> {
    let mut acc = a_recurrence(order as i64, shift, coeffs)?.scale(head1);
    if order >= 1 && head0 != T::zero() {
        let tail = a_recurrence(order as i64 - 1, shift + 1, coeffs)?;
        acc = acc + tail.scale(head0 * coeffs.mu(shift - 1)?);
    }
    for n in 1..=order as i64 {
        let src = coeffs.inhom(shift + n - 1)?;
        if src != T::zero() {
            acc = acc + a_recurrence(order as i64 - n, shift + n, coeffs)?.scale(src);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::coeffs::OffsetSeq;
    use super::*;

    fn symbolic_like() -> CoefficientSet<f64> {
        // distinct primes keep accidental cancellations out of the comparisons
        let lam = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0];
        let mu = [-17.0, -19.0, -23.0, -29.0, -31.0];
        CoefficientSet::homogeneous(OffsetSeq::new("lam", 0, lam.to_vec()), OffsetSeq::new("mu", 0, mu.to_vec()))
    }

    #[test]
    fn order_three_matches_table_products() {
        let c = symbolic_like();
        let (l, m) = (|k: usize| c.lam(k as i64).unwrap(), |k: usize| c.mu(k as i64).unwrap());
        let expect0 = l(0) * l(1) * l(2) + m(0) * l(2) + l(0) * m(1);
        assert_eq!(a_explicit(3, 0, &c).unwrap(), expect0);
        let expect1 = l(1) * l(2) * l(3) + m(1) * l(3) + l(1) * m(2);
        assert_eq!(a_explicit(3, 1, &c).unwrap(), expect1);
        assert_eq!(a_recurrence(3, 1, &c).unwrap().to_real(), expect1);
    }

    #[test]
    fn recurrence_low_orders() {
        let c = symbolic_like();
        let (l, m) = (|k: usize| c.lam(k as i64).unwrap(), |k: usize| c.mu(k as i64).unwrap());
        assert!(a_recurrence(-1, 4, &c).unwrap().is_zero());
        assert_eq!(a_recurrence(0, 4, &c).unwrap().to_real(), 1.0);
        assert_eq!(a_recurrence(2, 0, &c).unwrap().to_real(), l(0) * l(1) + m(0));
        let a4 = l(0) * l(1) * l(2) * l(3) + m(0) * l(2) * l(3) + l(0) * m(1) * l(3) + l(0) * l(1) * m(2) + m(0) * m(2);
        assert_eq!(a_recurrence(4, 0, &c).unwrap().to_real(), a4);
        assert_eq!(a_explicit(4, 0, &c).unwrap(), a4);
    }

    #[test]
    fn linear_growth_for_two_minus_one() {
        let c = CoefficientSet::constant(2.0, -1.0, -5, 30);
        assert_eq!(a_explicit(3, 0, &c).unwrap(), 4.0);
        for i in 0..20 {
            assert_eq!(a_recurrence(i, -3, &c).unwrap().to_real(), (i + 1) as f64);
        }
    }

    #[test]
    fn explicit_cap_enforced() {
        let c = CoefficientSet::constant(1.0, 1.0, 0, 40);
        assert_eq!(a_explicit(21, 0, &c), Err(Error::ExplicitCapacity { order: 21, cap: 20 }));
        // with lam = mu = 1 every product is one, so A_i = f_i
        assert_eq!(a_explicit(20, 0, &c).unwrap(), 10946.0);
    }

    #[test]
    fn tails_agree_with_forward_values() {
        let c = symbolic_like();
        let t = a_tails(1, 5, &c).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t[5].to_real(), 1.0);
        assert!(t[6].is_zero());
        for s in 1..=5i64 {
            let fwd = a_recurrence(5 - s + 1, s, &c).unwrap().to_real();
            assert_eq!(t[(s - 1) as usize].to_real(), fwd, "shift {s}");
        }
    }

    #[test]
    fn out_of_range_offsets_reported() {
        let c = symbolic_like();
        assert!(matches!(a_recurrence(7, 0, &c), Err(Error::OffsetOutOfRange { seq: "lam", offset: 6, .. })));
        assert!(matches!(a_explicit(3, -1, &c), Err(Error::OffsetOutOfRange { .. })));
    }

    #[test]
    fn inhomogeneous_trivial_cases() {
        let mut c = symbolic_like();
        c.inhom = Some(OffsetSeq::new("inhom", 0, vec![0.0; 6]));
        assert_eq!(a_inhomogeneous(0, 1, &c, 7.0, 3.0).unwrap().to_real(), 3.0);
        for i in 1..4 {
            let got = a_inhomogeneous(i, 1, &c, 7.0, 3.0).unwrap().to_real();
            let homog = 3.0 * a_recurrence(i as i64, 1, &c).unwrap().to_real()
                + 7.0 * c.mu(0).unwrap() * a_recurrence(i as i64 - 1, 2, &c).unwrap().to_real();
            assert_eq!(got, homog);
        }
    }

    #[test]
    fn inhomogeneous_follows_its_recurrence() {
        let mut c = symbolic_like();
        c.inhom = Some(OffsetSeq::new("inhom", 0, vec![0.5, -1.5, 2.5, 4.0, -3.0, 1.0]));
        let (head0, head1) = (0.25, -2.0);
        let shift = 1;
        let mut y = vec![head0, head1];
        for k in 0..4i64 {
            let next = c.lam(shift + k).unwrap() * y[(k + 1) as usize]
                + c.mu(shift + k - 1).unwrap() * y[k as usize]
                + c.inhom(shift + k).unwrap();
            y.push(next);
        }
        for i in 0..=4usize {
            let got = a_inhomogeneous(i, shift, &c, head0, head1).unwrap().to_real();
            assert!((got - y[i + 1]).abs() <= 1e-12 * y[i + 1].abs().max(1.0), "i={i}: {got} vs {}", y[i + 1]);
        }
    }
}
