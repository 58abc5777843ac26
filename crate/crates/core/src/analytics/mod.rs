//! Occupancy counts, visit probabilities, absorption distribution and
//! expected absorption times.
//!
//! Every quantity is available along two routes: the Fibonacci path, which
//! threads the balance equations through continuant ratios anchored at one
//! state, and the direct tridiagonal solver in [`crate::oracle`].
//! [`Method::Auto`] takes the first and falls back to the second when a
//! required divisor vanishes.

mod arrivals;
pub mod closed_form;
mod time;

use crate::error::{Error, Result};
use crate::oracle::direct::{solve_arrivals_direct, solve_time_direct};
use crate::oracle::reach::{is_absorbing, is_absorbing_everywhere, reachable_interval};
use crate::scalar::{compensated_sum, Real};
use crate::walkmodel::{Method, MethodTag, WalkSpec};

/// Expected occupancy of every state (time zero included) for one start.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalVector<T> {
    pub start: usize,
    pub x: Vec<T>,
    pub method: MethodTag,
}

/// Where the walk started at `start` ends up.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionReport<T> {
    pub start: usize,
    /// In-place absorption probability per state.
    pub g: Vec<T>,
    /// Probability of stepping off at `-1`.
    pub leak_left: T,
    /// Probability of stepping off at `N + 1`.
    pub leak_right: T,
    /// Total in-interval absorption probability.
    pub u: T,
}

/// Expected number of steps before absorption from every state.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeVector<T> {
    pub m: Vec<T>,
    pub method: MethodTag,
    /// Anchor state of the Fibonacci path; `None` for the direct solver.
    pub anchor: Option<usize>,
}

/// Everything the per-state report shows for one start.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis<T> {
    pub arrivals: ArrivalVector<T>,
    /// `f_{start, j}` for every `j`.
    pub visits: Vec<T>,
    pub absorption: AbsorptionReport<T>,
    pub time: TimeVector<T>,
}

fn with_fallback<R>(
    method: Method,
    fib: impl FnOnce() -> Result<R>,
    direct: impl FnOnce() -> Result<R>,
    retag: impl FnOnce(&mut R, MethodTag),
) -> Result<R> {
    match method {
        Method::Direct => direct(),
        Method::Fibonacci => fib(),
        Method::Auto => match fib() {
            Ok(v) => Ok(v),
            Err(Error::Degenerate(why)) => {
                let mut v = direct()?;
                retag(&mut v, MethodTag::fallback(why));
                Ok(v)
            }
            Err(e) => Err(e),
        },
    }
}

/// Expected arrival counts `x_{i0, j}`, `j = 0..=N`.
pub fn expected_arrivals<T: Real>(spec: &WalkSpec<T>, i0: usize, method: Method) -> Result<ArrivalVector<T>> {
    spec.check_state(i0)?;
    if !is_absorbing(spec, i0) {
        return Err(Error::Divergent);
    }
    with_fallback(method, || arrivals::arrivals_fibonacci(spec, i0), || solve_arrivals_direct(spec, i0), |v, tag| v.method = tag)
}

/// Expected absorption times, threaded through `anchor` on the Fibonacci path.
pub fn expected_time<T: Real>(spec: &WalkSpec<T>, anchor: usize, method: Method) -> Result<TimeVector<T>> {
    spec.check_state(anchor)?;
    if !is_absorbing_everywhere(spec) {
        return Err(Error::Divergent);
    }
    with_fallback(method, || time::time_fibonacci(spec, anchor), || solve_time_direct(spec), |v, tag| v.method = tag)
}

fn visit_from<T: Real>(x_i: &ArrivalVector<T>, x_jj: Option<T>, j: usize) -> T {
    if j == x_i.start {
        T::one() - T::one() / x_i.x[j]
    } else {
        match x_jj {
            Some(d) => x_i.x[j] / d,
            None => T::zero(),
        }
    }
}

/// Probability of ever occupying `j` from `i` (for `i = j`: of returning).
pub fn visit_probability<T: Real>(spec: &WalkSpec<T>, i: usize, j: usize) -> Result<T> {
    spec.check_state(j)?;
    let x_i = expected_arrivals(spec, i, Method::Auto)?;
    let x_jj = if i == j || x_i.x[j] == T::zero() { None } else { Some(expected_arrivals(spec, j, Method::Auto)?.x[j]) };
    Ok(visit_from(&x_i, x_jj, j))
}

/// `f_{i0, j}` for every `j`, reusing `x_{i0}`.
pub fn visit_probabilities<T: Real>(spec: &WalkSpec<T>, arrivals: &ArrivalVector<T>, method: Method) -> Result<Vec<T>> {
    let (lo, hi) = reachable_interval(spec, arrivals.start);
    (0..spec.len())
        .map(|j| {
            let x_jj =
                if j == arrivals.start || j < lo || j > hi { None } else { Some(expected_arrivals(spec, j, method)?.x[j]) };
            Ok(visit_from(arrivals, x_jj, j))
        })
        .collect()
}

/// Absorption distribution derived from an arrival vector.
pub fn report_from_arrivals<T: Real>(spec: &WalkSpec<T>, arrivals: &ArrivalVector<T>) -> AbsorptionReport<T> {
    let x = &arrivals.x;
    let g: Vec<T> = spec.s().iter().zip(x).map(|(&s, &x)| s * x).collect();
    AbsorptionReport {
        start: arrivals.start,
        u: compensated_sum(g.iter().copied()),
        leak_left: spec.q()[0] * x[0],
        leak_right: spec.p()[spec.last()] * x[spec.last()],
        g,
    }
}

pub fn absorption_report<T: Real>(spec: &WalkSpec<T>, i0: usize) -> Result<AbsorptionReport<T>> {
    Ok(report_from_arrivals(spec, &expected_arrivals(spec, i0, Method::Auto)?))
}

/// Arrivals, visit probabilities, absorption and times for one start.
/// The time vector is anchored at the start.
pub fn analyze<T: Real>(spec: &WalkSpec<T>, i0: usize, method: Method) -> Result<Analysis<T>> {
    let arrivals = expected_arrivals(spec, i0, method)?;
    let visits = visit_probabilities(spec, &arrivals, method)?;
    let absorption = report_from_arrivals(spec, &arrivals);
    let time = expected_time(spec, i0, method)?;
    Ok(Analysis { arrivals, visits, absorption, time })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkmodel::WalkParams;

    fn fixture() -> WalkSpec<f64> {
        WalkParams::new(vec![0.5, 0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5, 0.5], vec![0.0; 4], vec![0.5, 0.0, 0.0, 0.5])
            .validate()
            .unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * y.abs().max(1e-300))
    }

    #[test]
    fn fixture_on_both_paths() {
        for method in [Method::Fibonacci, Method::Direct] {
            let x = expected_arrivals(&fixture(), 0, method).unwrap();
            assert_eq!(x.method.method, method);
            assert!(close(&x.x, &[1.6, 1.2, 0.8, 0.4], 1e-12), "{method}: {:?}", x.x);
            let m = expected_time(&fixture(), 0, method).unwrap();
            assert!(close(&m.m, &[3.0, 5.0, 5.0, 3.0], 1e-12), "{method}: {:?}", m.m);
        }
    }

    #[test]
    fn every_start_and_anchor_agrees_with_direct() {
        let spec = fixture();
        for i in 0..4 {
            let fib = expected_arrivals(&spec, i, Method::Fibonacci).unwrap();
            let dir = expected_arrivals(&spec, i, Method::Direct).unwrap();
            assert!(close(&fib.x, &dir.x, 1e-12), "start {i}: {:?} vs {:?}", fib.x, dir.x);
            let m = expected_time(&spec, i, Method::Fibonacci).unwrap();
            assert_eq!(m.anchor, Some(i));
            assert!(close(&m.m, &[3.0, 5.0, 5.0, 3.0], 1e-12), "anchor {i}: {:?}", m.m);
        }
    }

    #[test]
    fn visit_probabilities_on_fixture() {
        let spec = fixture();
        assert!((visit_probability(&spec, 0, 0).unwrap() - 0.375).abs() < 1e-12);
        assert!((visit_probability(&spec, 0, 1).unwrap() - 0.5).abs() < 1e-12);
        let x = expected_arrivals(&spec, 0, Method::Auto).unwrap();
        let f = visit_probabilities(&spec, &x, Method::Auto).unwrap();
        assert!((f[0] - 0.375).abs() < 1e-12 && (f[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn report_on_fixture_and_single_state() {
        let r = absorption_report(&fixture(), 0).unwrap();
        assert!(close(&r.g, &[0.8, 0.0, 0.0, 0.2], 1e-12));
        assert_eq!((r.leak_left, r.leak_right), (0.0, 0.0));
        assert!((r.u - 1.0).abs() < 1e-12);

        let one = WalkParams::new(vec![0.5], vec![0.0], vec![0.0], vec![0.5]).validate().unwrap();
        let r = absorption_report(&one, 0).unwrap();
        assert_eq!((r.g[0], r.leak_right, r.u), (0.5, 0.5, 0.5));

        let hold: WalkSpec<f64> = WalkParams::new(vec![0.0], vec![0.0], vec![0.5], vec![0.5]).validate().unwrap();
        assert!((expected_arrivals(&hold, 0, Method::Fibonacci).unwrap().x[0] - 2.0).abs() < 1e-15);
        assert!((expected_time(&hold, 0, Method::Fibonacci).unwrap().m[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn immediate_absorption_falls_back() {
        let spec =
            WalkParams::new(vec![0.5, 0.0, 0.5], vec![0.0, 0.0, 0.5], vec![0.0; 3], vec![0.5, 1.0, 0.0]).validate().unwrap();
        let x = expected_arrivals(&spec, 1, Method::Auto).unwrap();
        assert_eq!(x.x, vec![0.0, 1.0, 0.0]);
        assert!(matches!(visit_probability(&spec, 1, 0), Ok(f) if f == 0.0));
        let dead = WalkParams::new(vec![0.0; 4], vec![0.0; 4], vec![0.0; 4], vec![1.0; 4]).validate().unwrap();
        let m = expected_time(&dead, 1, Method::Auto).unwrap();
        assert_eq!(m.m, vec![0.0; 4]);
        assert!(m.method.fallback.is_some());
        assert!(matches!(expected_time(&dead, 1, Method::Fibonacci), Err(Error::Degenerate(_))));
    }

    #[test]
    fn non_absorbing_is_refused() {
        let spec =
            WalkParams::new(vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5], vec![0.0; 3]).validate().unwrap();
        for method in [Method::Fibonacci, Method::Direct, Method::Auto] {
            assert_eq!(expected_arrivals(&spec, 1, method), Err(Error::Divergent));
            assert_eq!(expected_time(&spec, 1, method), Err(Error::Divergent));
        }
    }

    #[test]
    fn forced_fibonacci_reports_degeneracy() {
        // q_2 = 0 blocks the forward arrival recurrence from 0
        let spec = WalkParams::new(
            vec![0.5, 0.5, 0.5, 0.0],
            vec![0.0, 0.5, 0.0, 0.5],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.5, 0.0, 0.5, 0.5],
        )
        .validate()
        .unwrap();
        assert!(matches!(expected_arrivals(&spec, 0, Method::Fibonacci), Err(Error::Degenerate(_))));
        let auto = expected_arrivals(&spec, 0, Method::Auto).unwrap();
        assert!(auto.method.fallback.is_some());
        assert_eq!(auto.x, expected_arrivals(&spec, 0, Method::Direct).unwrap().x);
    }
}
