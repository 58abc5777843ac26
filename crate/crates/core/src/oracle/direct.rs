//! Direct solution of the tridiagonal balance systems.

use crate::analytics::{ArrivalVector, TimeVector};
use crate::error::{Error, Result};
use crate::oracle::reach::reachable_interval;
use crate::scalar::Real;
use crate::walkmodel::{MethodTag, WalkSpec};

/// Solves `sub[k] y_{k-1} + diag[k] y_k + sup[k] y_{k+1} = rhs[k]` by one
/// left-to-right elimination pass without pivoting. `row0` is the index of
/// the first row, only used for error reporting.
pub fn solve_tridiagonal<T: Real>(sub: &[T], diag: &[T], sup: &[T], rhs: &[T], row0: usize) -> Result<Vec<T>> {
    let n = diag.len();
    assert!(sub.len() == n && sup.len() == n && rhs.len() == n);
    let tol = T::lit(T::PIVOT_TOL);
    let mut c = vec![T::zero(); n];
    let mut d = vec![T::zero(); n];
    let mut prev_c = T::zero();
    let mut prev_d = T::zero();
    for k in 0..n {
        let pivot = diag[k] - sub[k] * prev_c;
        if !(pivot.abs() >= tol) {
            return Err(Error::Singular { row: row0 + k, pivot: pivot.as_f64() });
        }
        c[k] = sup[k] / pivot;
        d[k] = (rhs[k] - sub[k] * prev_d) / pivot;
        prev_c = c[k];
        prev_d = d[k];
    }
    let mut y = vec![T::zero(); n];
    let mut next = T::zero();
    for k in (0..n).rev() {
        y[k] = d[k] - c[k] * next;
        next = y[k];
    }
    Ok(y)
}

/// Expected occupancy counts from `start`, solving
/// `(1 - r_n) x_n - p_{n-1} x_{n-1} - q_{n+1} x_{n+1} = [n = start]` with
/// `x_{-1} = x_{N+1} = 0`. States the walk cannot reach get zero and are
/// left out of the system.
pub fn solve_arrivals_direct<T: Real>(spec: &WalkSpec<T>, start: usize) -> Result<ArrivalVector<T>> {
    spec.check_state(start)?;
    let (lo, hi) = reachable_interval(spec, start);
    let (p, q, r) = (spec.p(), spec.q(), spec.r());
    let rows = lo..=hi;
    let sub: Vec<T> = rows.clone().map(|n| if n > lo { -p[n - 1] } else { T::zero() }).collect();
    let diag: Vec<T> = rows.clone().map(|n| T::one() - r[n]).collect();
    let sup: Vec<T> = rows.clone().map(|n| if n < hi { -q[n + 1] } else { T::zero() }).collect();
    let rhs: Vec<T> = rows.map(|n| if n == start { T::one() } else { T::zero() }).collect();
    let y = solve_tridiagonal(&sub, &diag, &sup, &rhs, lo)?;
    let mut x = vec![T::zero(); spec.len()];
    x[lo..=hi].copy_from_slice(&y);
    Ok(ArrivalVector { start, x, method: MethodTag::direct() })
}

/// Expected steps before absorption from every state, solving
/// `(1 - r_i) m_i - p_i m_{i+1} - q_i m_{i-1} = 1 - s_i` with `m_{-1} = m_{N+1} = 0`.
pub fn solve_time_direct<T: Real>(spec: &WalkSpec<T>) -> Result<TimeVector<T>> {
    let n = spec.len();
    let (p, q, r, s) = (spec.p(), spec.q(), spec.r(), spec.s());
    let sub: Vec<T> = (0..n).map(|i| if i > 0 { -q[i] } else { T::zero() }).collect();
    let diag: Vec<T> = (0..n).map(|i| T::one() - r[i]).collect();
    let sup: Vec<T> = (0..n).map(|i| if i + 1 < n { -p[i] } else { T::zero() }).collect();
    let rhs: Vec<T> = (0..n).map(|i| T::one() - s[i]).collect();
    let m = solve_tridiagonal(&sub, &diag, &sup, &rhs, 0)?;
    Ok(TimeVector { m, method: MethodTag::direct(), anchor: None })
}
