//! Two-point boundary problems for the three-term recurrence.
//!
//! Unknowns `y_0 .. y_{K-1}` satisfy, for `k = 0 .. K-1`,
//!
//! ```text
//! y_{k+1} = lam[m+k] y_k + mu[m+k-1] y_{k-1} + inhom[m+k]
//! ```
//!
//! with a prescribed head `y_{-1}` and `y_K = 0`. Writing `u_k = A_k^(m)` and
//! `B_k = A_{K-k}^(m+k)` (obtained in one right-to-left pass of the
//! `A_{n+1}^(s) = lam[s] A_n^(s+1) + mu[s] A_{n-1}^(s+2)` identity), the
//! differences of continuant products in the convolution form collapse
//! through the Casoratian `u_k R_{k-1} - u_{k-1} R_k = B_0 prod g` into
//!
//! ```text
//! y_j = [ h P_j B_{j+1} - u_j sum_{n>=j} S_n B_{n+1}
//!         - B_{j+1} sum_{n<j} S_n u_n prod_{t=n+1}^{j} g_t ] / B_0
//! ```
//!
//! where `g_t = -mu[m+t-1]`, `P_j = g_0 ... g_j` and `S_n = inhom[m+n]`.
//! For walk coefficients every term has the same sign, so nothing cancels.

use super::coeffs::CoefficientSet;
use super::continuant::{a_prefix, a_tails};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::scaled::ScaledReal;

#[derive(Clone)]
pub struct Segment<'a, T> {
    coeffs: &'a CoefficientSet<T>,
    shift: i64,
    len: usize,
    /// `u_k = A_k^(m)`, `k = 0 .. K-1`.
    forward: Vec<ScaledReal<T>>,
    /// `B_k = A_{K-k}^(m+k)`, `k = 0 .. K+1`.
    tails: Vec<ScaledReal<T>>,
}

impl<'a, T: Real> Segment<'a, T> {
    pub fn new(coeffs: &'a CoefficientSet<T>, shift: i64, len: usize) -> Result<Self> {
        assert!(len >= 1, "segment needs at least one unknown");
        let forward = a_prefix(len - 1, shift, coeffs)?;
        let tails = a_tails(shift, shift + len as i64 - 1, coeffs)?;
        if tails[0].is_zero() || !tails[0].is_finite() {
            return Err(Error::Degenerate(format!(
                "continuant A_{len}^({shift}) vanishes; the segment problem has no unique solution"
            )));
        }
        Ok(Self { coeffs, shift, len, forward, tails })
    }

    /// `A_K^(m)`.
    pub fn determinant(&self) -> ScaledReal<T> {
        self.tails[0]
    }

    /// `A_{K-1}^(m+1) / A_K^(m)`.
    pub fn lead_ratio(&self) -> T {
        self.tails[1].ratio(self.tails[0])
    }

    /// `sum_{n=1}^{K} A_{K-n}^(m+n) inhom[m+n-1]`, in scaled form.
    pub fn source_sum(&self) -> Result<ScaledReal<T>> {
        let mut acc = ScaledReal::zero();
        for n in 0..self.len {
            acc = acc + self.tails[n + 1].scale(self.coeffs.inhom(self.shift + n as i64)?);
        }
        Ok(acc)
    }

    /// `source_sum / A_K^(m)`.
    pub fn source_ratio(&self) -> Result<T> {
        Ok(self.source_sum()?.ratio(self.tails[0]))
    }

    fn gap(&self, t: usize) -> Result<ScaledReal<T>> {
        Ok(ScaledReal::from_real(-self.coeffs.mu(self.shift + t as i64 - 1)?))
    }

    /// Solves for `y_0 .. y_{K-1}` given the head `y_{-1}` (`None` for zero,
    /// which also avoids reading `mu[m-1]`). Sources are read only when the
    /// coefficient set carries an inhomogeneous term.
    pub fn solve(&self, head: Option<T>) -> Result<Vec<T>> {
        let k_len = self.len;
        let det = self.tails[0];
        let with_source = self.coeffs.inhom.is_some();

        let sources: Vec<ScaledReal<T>> = if with_source {
            (0..k_len).map(|n| self.coeffs.inhom(self.shift + n as i64).map(ScaledReal::from_real)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };

        // suffix[j] = sum_{n >= j} S_n B_{n+1}
        let mut suffix = vec![ScaledReal::zero(); k_len + 1];
        if with_source {
            for n in (0..k_len).rev() {
                suffix[n] = suffix[n + 1] + sources[n] * self.tails[n + 1];
            }
        }

        let mut out = Vec::with_capacity(k_len);
        let mut carried = ScaledReal::zero(); // V_j
        let mut path = match head {
            Some(h) if h != T::zero() => Some(ScaledReal::from_real(h) * self.gap(0)?),
            _ => None,
        };
        for j in 0..k_len {
            if j > 0 {
                let g = self.gap(j)?;
                if with_source {
                    carried = g * (carried + sources[j - 1] * self.forward[j - 1]);
                }
                path = path.map(|p| p * g);
            }
            let mut num = ScaledReal::zero();
            if let Some(p) = path {
                num = num + p * self.tails[j + 1];
            }
            if with_source {
                num = num - self.forward[j] * suffix[j] - self.tails[j + 1] * carried;
            }
            out.push((num / det).to_real());
        }
        Ok(out)
    }
}
