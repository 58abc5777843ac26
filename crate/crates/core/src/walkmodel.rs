//! Walk specifications `[p_i, q_i, r_i, s_i]` on `[0, N]` and the recurrence
//! coefficients derived from their balance equations.
//!
//! Two fictitious neighbours close the recurrences: a left ghost with forward
//! probability `p_{-1}` and a right ghost with backward probability `q_{N+1}`.
//! Any positive value works; results do not depend on it.

use std::fmt;

use crate::error::{Error, Result, Violation};
use crate::fibcore::{CoefficientSet, OffsetSeq};
use crate::scalar::Real;

/// Unvalidated walk parameters, as read from a file or built in code.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkParams<T> {
    pub p: Vec<T>,
    pub q: Vec<T>,
    pub r: Vec<T>,
    pub s: Vec<T>,
    pub ghost_left: T,
    pub ghost_right: T,
    pub start: usize,
}

impl<T: Real> WalkParams<T> {
    pub fn new(p: Vec<T>, q: Vec<T>, r: Vec<T>, s: Vec<T>) -> Self {
        Self { p, q, r, s, ghost_left: T::one(), ghost_right: T::one(), start: 0 }
    }

    pub fn with_start(mut self, start: usize) -> Self {
        self.start = start;
        self
    }

    pub fn with_ghosts(mut self, left: T, right: T) -> Self {
        self.ghost_left = left;
        self.ghost_right = right;
        self
    }

    pub fn validate(self) -> Result<WalkSpec<T>> {
        validate(self)
    }
}

/// A validated walk. Probabilities are non-negative and sum to one per state.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSpec<T> {
    p: Vec<T>,
    q: Vec<T>,
    r: Vec<T>,
    s: Vec<T>,
    ghost_left: T,
    ghost_right: T,
    start: usize,
}

/// Checks every invariant; the input is never renormalized.
pub fn validate<T: Real>(params: WalkParams<T>) -> Result<WalkSpec<T>> {
    let mut bad = Vec::new();
    let n = params.p.len();
    for (name, v) in [("q", &params.q), ("r", &params.r), ("s", &params.s)] {
        if v.len() != n {
            bad.push(Violation { state: None, constraint: length_constraint(name), residual: v.len() as f64 - n as f64 });
        }
    }
    if n == 0 {
        bad.push(Violation { state: None, constraint: "at least one state", residual: 1.0 });
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }

    let tol = T::ROW_SUM_TOL;
    for i in 0..n {
        let row = [("p", params.p[i]), ("q", params.q[i]), ("r", params.r[i]), ("s", params.s[i])];
        let mut finite = true;
        for (name, v) in row {
            if !v.is_finite() {
                finite = false;
                bad.push(Violation { state: Some(i), constraint: finite_constraint(name), residual: f64::NAN });
            } else if v < T::zero() {
                bad.push(Violation { state: Some(i), constraint: nonneg_constraint(name), residual: v.as_f64() });
            }
        }
        if finite {
            let sum = row.iter().map(|(_, v)| v.as_f64()).sum::<f64>();
            if (sum - 1.0).abs() > tol {
                bad.push(Violation { state: Some(i), constraint: "p + q + r + s = 1", residual: sum - 1.0 });
            }
        }
    }
    for (constraint, g) in [("ghost_left > 0", params.ghost_left), ("ghost_right > 0", params.ghost_right)] {
        if !(g > T::zero() && g.is_finite()) {
            bad.push(Violation { state: None, constraint, residual: g.as_f64() });
        }
    }
    if params.start >= n {
        bad.push(Violation {
            state: Some(params.start),
            constraint: "start within [0, N]",
            residual: (params.start + 1 - n) as f64,
        });
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }
    let WalkParams { p, q, r, s, ghost_left, ghost_right, start } = params;
    Ok(WalkSpec { p, q, r, s, ghost_left, ghost_right, start })
}

fn length_constraint(name: &str) -> &'static str {
    match name {
        "q" => "length of q equals length of p",
        "r" => "length of r equals length of p",
        _ => "length of s equals length of p",
    }
}

fn finite_constraint(name: &str) -> &'static str {
    match name {
        "p" => "p finite",
        "q" => "q finite",
        "r" => "r finite",
        _ => "s finite",
    }
}

fn nonneg_constraint(name: &str) -> &'static str {
    match name {
        "p" => "p ≥ 0",
        "q" => "q ≥ 0",
        "r" => "r ≥ 0",
        _ => "s ≥ 0",
    }
}

impl<T: Real> WalkSpec<T> {
    /// Index of the last state, `N`.
    pub fn last(&self) -> usize {
        self.p.len() - 1
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }
    pub fn q(&self) -> &[T] {
        &self.q
    }
    pub fn r(&self) -> &[T] {
        &self.r
    }
    pub fn s(&self) -> &[T] {
        &self.s
    }
    pub fn ghost_left(&self) -> T {
        self.ghost_left
    }
    pub fn ghost_right(&self) -> T {
        self.ghost_right
    }
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn with_start(&self, start: usize) -> Result<Self> {
        self.check_state(start)?;
        Ok(Self { start, ..self.clone() })
    }

    pub fn with_ghosts(&self, left: T, right: T) -> Result<Self> {
        WalkParams { ghost_left: left, ghost_right: right, ..self.params() }.validate()
    }

    pub fn params(&self) -> WalkParams<T> {
        WalkParams {
            p: self.p.clone(),
            q: self.q.clone(),
            r: self.r.clone(),
            s: self.s.clone(),
            ghost_left: self.ghost_left,
            ghost_right: self.ghost_right,
            start: self.start,
        }
    }

    pub fn check_state(&self, i: usize) -> Result<()> {
        if i > self.last() {
            Err(Error::StateOutOfRange { state: i, last: self.last() })
        } else {
            Ok(())
        }
    }

    /// `q_i` for `i` in `0..=N+1`, with the right ghost at `N+1`.
    fn q_ext(&self, i: i64) -> T {
        if i == self.p.len() as i64 {
            self.ghost_right
        } else {
            self.q[i as usize]
        }
    }

    /// `p_i` for `i` in `-1..=N`, with the left ghost at `-1`.
    fn p_ext(&self, i: i64) -> T {
        if i == -1 {
            self.ghost_left
        } else {
            self.p[i as usize]
        }
    }

    /// Divisor for row `i` of the forward time recurrence. Row `N` multiplies
    /// `m_{N+1} = 0`, so when `p_N = 0` the right ghost stands in.
    fn time_forward_divisor(&self, i: usize) -> Result<T> {
        let p = self.p[i];
        if p > T::zero() {
            Ok(p)
        } else if i == self.last() {
            Ok(self.ghost_right)
        } else {
            Err(zero_divisor("p", i as i64, "forward time"))
        }
    }

    fn time_backward_divisor(&self, i: usize) -> Result<T> {
        let q = self.q[i];
        if q > T::zero() {
            Ok(q)
        } else if i == 0 {
            Ok(self.ghost_left)
        } else {
            Err(zero_divisor("q", i as i64, "backward time"))
        }
    }
}

fn zero_divisor(name: &str, i: i64, which: &str) -> Error {
    Error::Degenerate(format!("{name}_{i} = 0 is a required divisor of the {which} recurrence"))
}

fn nonzero<T: Real>(v: T, name: &str, i: i64, which: &str) -> Result<T> {
    if v == T::zero() {
        Err(zero_divisor(name, i, which))
    } else {
        Ok(v)
    }
}

/// Forward arrival coefficients `lam[j] = (1 - r_j) / q_{j+1}` on `[lam_lo, N]`
/// and `mu[j] = -p_j / q_{j+2}` on `[mu_lo, N-1]`.
pub(crate) fn arrival_forward_from<T: Real>(spec: &WalkSpec<T>, lam_lo: i64, mu_lo: i64) -> Result<CoefficientSet<T>> {
    let n = spec.last() as i64;
    let lam = OffsetSeq::try_from_fn("lam", lam_lo, n, |j| {
        Ok((T::one() - spec.r[j as usize]) / nonzero(spec.q_ext(j + 1), "q", j + 1, "forward arrival")?)
    })?;
    let mu = OffsetSeq::try_from_fn("mu", mu_lo, n - 1, |j| {
        Ok(-spec.p[j as usize] / nonzero(spec.q_ext(j + 2), "q", j + 2, "forward arrival")?)
    })?;
    Ok(CoefficientSet::homogeneous(lam, mu))
}

/// Coefficients of `x_{i+1} = lam_i x_i + mu_{i-1} x_{i-1}` to the right of `start`.
pub fn arrival_coeffs_forward<T: Real>(spec: &WalkSpec<T>, start: usize) -> Result<CoefficientSet<T>> {
    spec.check_state(start)?;
    arrival_forward_from(spec, start as i64, start as i64)
}

/// Coefficients of `x_{i-1} = rho_{-i} x_i + theta_{-(i+1)} x_{i+1}` to the left of
/// `start`: `rho[j] = (1 - r_{-j}) / p_{-j-1}` on `[1-start, 0]` and
/// `theta[j] = -q_{-j} / p_{-j-2}` on `[-start, -1]`.
pub fn arrival_coeffs_backward<T: Real>(spec: &WalkSpec<T>, start: usize) -> Result<CoefficientSet<T>> {
    spec.check_state(start)?;
    let s = start as i64;
    let rho = OffsetSeq::try_from_fn("rho", 1 - s, 0, |j| {
        let i = -j;
        Ok((T::one() - spec.r[i as usize]) / nonzero(spec.p_ext(i - 1), "p", i - 1, "backward arrival")?)
    })?;
    let theta = OffsetSeq::try_from_fn("theta", -s, -1, |j| {
        let i = -j;
        Ok(-spec.q[i as usize] / nonzero(spec.p_ext(i - 2), "p", i - 2, "backward arrival")?)
    })?;
    Ok(CoefficientSet::homogeneous(rho, theta))
}

/// `omega[j] = (1 - r_j) / p_j` and `alpha[j] = -(1 - s_j) / p_j` on `[lo, N]`,
/// `phi[j] = -q_{j+1} / p_{j+1}` on `[phi_lo, N-1]`.
pub(crate) fn time_forward_from<T: Real>(spec: &WalkSpec<T>, lo: i64, phi_lo: i64) -> Result<CoefficientSet<T>> {
    let n = spec.last() as i64;
    let omega =
        OffsetSeq::try_from_fn("omega", lo, n, |j| Ok((T::one() - spec.r[j as usize]) / spec.time_forward_divisor(j as usize)?))?;
    let phi = OffsetSeq::try_from_fn("phi", phi_lo, n - 1, |j| {
        Ok(-spec.q[j as usize + 1] / spec.time_forward_divisor(j as usize + 1)?)
    })?;
    let alpha =
        OffsetSeq::try_from_fn(
            "alpha",
            lo,
            n,
            |j| Ok(-(T::one() - spec.s[j as usize]) / spec.time_forward_divisor(j as usize)?),
        )?;
    Ok(CoefficientSet::with_inhom(omega, phi, alpha))
}

/// Coefficients of `m_{i+1} = omega_i m_i + phi_{i-1} m_{i-1} + alpha_i` from `start` rightwards.
pub fn time_coeffs_forward<T: Real>(spec: &WalkSpec<T>, start: usize) -> Result<CoefficientSet<T>> {
    spec.check_state(start)?;
    time_forward_from(spec, start as i64, start as i64)
}

/// Coefficients of `m_{i-1} = eta_{-i} m_i + zeta_{-(i+1)} m_{i+1} + beta_{-i}` left of
/// `start`: `eta[j] = (1 - r_{-j}) / q_{-j}`, `beta[j] = -(1 - s_{-j}) / q_{-j}` on
/// `[1-start, 0]` and `zeta[j] = -p_{-j-1} / q_{-j-1}` on `[-start, -1]`.
pub fn time_coeffs_backward<T: Real>(spec: &WalkSpec<T>, start: usize) -> Result<CoefficientSet<T>> {
    spec.check_state(start)?;
    let s = start as i64;
    let eta = OffsetSeq::try_from_fn("eta", 1 - s, 0, |j| {
        let i = (-j) as usize;
        Ok((T::one() - spec.r[i]) / spec.time_backward_divisor(i)?)
    })?;
    let zeta = OffsetSeq::try_from_fn("zeta", -s, -1, |j| {
        let i = (-j - 1) as usize;
        Ok(-spec.p[i] / spec.time_backward_divisor(i)?)
    })?;
    let beta = OffsetSeq::try_from_fn("beta", 1 - s, 0, |j| {
        let i = (-j) as usize;
        Ok(-(T::one() - spec.s[i]) / spec.time_backward_divisor(i)?)
    })?;
    Ok(CoefficientSet::with_inhom(eta, zeta, beta))
}

/// Mirror image `i -> N - i`: p and q trade places, ghosts swap sides.
pub fn reflect<T: Real>(spec: &WalkSpec<T>) -> WalkSpec<T> {
    let rev = |v: &[T]| v.iter().rev().copied().collect::<Vec<_>>();
    WalkSpec {
        p: rev(&spec.q),
        q: rev(&spec.p),
        r: rev(&spec.r),
        s: rev(&spec.s),
        ghost_left: spec.ghost_right,
        ghost_right: spec.ghost_left,
        start: spec.last() - spec.start,
    }
}

/// Requested evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Fibonacci,
    Direct,
    /// Fibonacci when its divisibility preconditions hold, direct otherwise.
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fibonacci => "fibonacci",
            Method::Direct => "direct",
            Method::Auto => "auto",
        })
    }
}

/// The route actually taken, with the reason when `Auto` fell back to direct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodTag {
    pub method: Method,
    pub fallback: Option<String>,
}

impl MethodTag {
    pub fn fibonacci() -> Self {
        Self { method: Method::Fibonacci, fallback: None }
    }
    pub fn direct() -> Self {
        Self { method: Method::Direct, fallback: None }
    }
    pub fn fallback(reason: impl Into<String>) -> Self {
        Self { method: Method::Direct, fallback: Some(reason.into()) }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.fallback {
            Some(why) => write!(f, "{} (fallback: {why})", self.method),
            None => write!(f, "{}", self.method),
        }
    }
}
