use crate::error::{Error, Result};
use crate::scalar::Real;

/// A finite sequence indexed by a contiguous range of (possibly negative) integers.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetSeq<T> {
    name: &'static str,
    first: i64,
    values: Vec<T>,
}

impl<T: Real> OffsetSeq<T> {
    pub fn new(name: &'static str, first: i64, values: Vec<T>) -> Self {
        Self { name, first, values }
    }

    pub fn empty(name: &'static str) -> Self {
        Self::new(name, 0, Vec::new())
    }

    /// Builds `f(k)` for every `k` in `lo..=hi` (empty when `lo > hi`).
    pub fn from_fn(name: &'static str, lo: i64, hi: i64, f: impl FnMut(i64) -> T) -> Self {
        let values = if lo > hi { Vec::new() } else { (lo..=hi).map(f).collect() };
        Self::new(name, lo, values)
    }

    pub fn try_from_fn(name: &'static str, lo: i64, hi: i64, f: impl FnMut(i64) -> Result<T>) -> Result<Self> {
        let values = if lo > hi { Vec::new() } else { (lo..=hi).map(f).collect::<Result<_>>()? };
        Ok(Self::new(name, lo, values))
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Inclusive offset range; `None` when empty.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.values.is_empty() {
            None
        } else {
            Some((self.first, self.first + self.values.len() as i64 - 1))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, offset: i64) -> Result<T> {
        let idx = offset - self.first;
        if idx >= 0 {
            if let Some(v) = self.values.get(idx as usize) {
                return Ok(*v);
            }
        }
        let (lo, hi) = self.range().unwrap_or((0, -1));
        Err(Error::OffsetOutOfRange { seq: self.name, offset, lo, hi })
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.values.iter().enumerate().map(move |(k, &v)| (self.first + k as i64, v))
    }
}

/// Coefficients of `x_{k+1} = lam[m+k] x_k + mu[m+k-1] x_{k-1} (+ inhom[m+k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet<T> {
    pub lam: OffsetSeq<T>,
    pub mu: OffsetSeq<T>,
    pub inhom: Option<OffsetSeq<T>>,
}

impl<T: Real> CoefficientSet<T> {
    pub fn homogeneous(lam: OffsetSeq<T>, mu: OffsetSeq<T>) -> Self {
        Self { lam, mu, inhom: None }
    }

    pub fn with_inhom(lam: OffsetSeq<T>, mu: OffsetSeq<T>, inhom: OffsetSeq<T>) -> Self {
        Self { lam, mu, inhom: Some(inhom) }
    }

    /// Constant coefficients on `lo..=hi` (inhomogeneous term zero when present).
    pub fn constant(lam: T, mu: T, lo: i64, hi: i64) -> Self {
        Self::homogeneous(OffsetSeq::from_fn("lam", lo, hi, |_| lam), OffsetSeq::from_fn("mu", lo, hi, |_| mu))
    }

    pub fn lam(&self, k: i64) -> Result<T> {
        self.lam.get(k)
    }

    pub fn mu(&self, k: i64) -> Result<T> {
        self.mu.get(k)
    }

    pub fn inhom(&self, k: i64) -> Result<T> {
        match &self.inhom {
            Some(s) => s.get(k),
            None => Err(Error::OffsetOutOfRange { seq: "inhom", offset: k, lo: 0, hi: -1 }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lam.is_empty() && self.mu.is_empty()
    }

    pub fn all_finite(&self) -> bool {
        let seqs = [Some(&self.lam), Some(&self.mu), self.inhom.as_ref()];
        seqs.into_iter().flatten().all(|s| s.iter().all(|(_, v)| v.is_finite()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_offsets_and_range_errors() {
        let s = OffsetSeq::from_fn("rho", -3, 0, |k| k as f64);
        assert_eq!(s.range(), Some((-3, 0)));
        assert_eq!(s.get(-2).unwrap(), -2.0);
        assert_eq!(s.get(1), Err(Error::OffsetOutOfRange { seq: "rho", offset: 1, lo: -3, hi: 0 }));
        let e = OffsetSeq::<f64>::from_fn("theta", 1, 0, |_| 0.0);
        assert!(e.is_empty());
        assert!(e.get(0).is_err());
    }

    #[test]
    fn missing_inhom_is_a_range_error() {
        let c = CoefficientSet::constant(2.0, -1.0, 0, 3);
        assert!(matches!(c.inhom(0), Err(Error::OffsetOutOfRange { seq: "inhom", .. })));
        assert!(c.all_finite());
    }
}
