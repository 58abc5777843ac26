#![allow(dead_code)]

use fibwalk::{WalkParams, WalkSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture() -> WalkSpec<f64> {
    WalkParams::new(vec![0.5, 0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5, 0.5], vec![0.0; 4], vec![0.5, 0.0, 0.0, 0.5])
        .validate()
        .unwrap()
}

/// Symmetric walk with absorbing ends: `p = q = 1/2` inside, `s_0 = s_N = 1`.
pub fn gamblers_ruin(n: usize) -> WalkSpec<f64> {
    let mut p = vec![0.5; n + 1];
    let mut q = vec![0.5; n + 1];
    let mut s = vec![0.0; n + 1];
    p[0] = 0.0;
    q[0] = 0.0;
    p[n] = 0.0;
    q[n] = 0.0;
    s[0] = 1.0;
    s[n] = 1.0;
    WalkParams::new(p, q, vec![0.0; n + 1], s).validate().unwrap()
}

fn dirichlet4(rng: &mut ChaCha8Rng) -> [f64; 4] {
    let mut w = [0.0; 4];
    for v in &mut w {
        *v = -(1.0 - rng.gen::<f64>()).ln();
    }
    let sum: f64 = w.iter().sum();
    w.map(|v| v / sum)
}

/// Row with `p, q ≥ 0.05`.
fn row(rng: &mut ChaCha8Rng) -> [f64; 4] {
    let w = dirichlet4(rng);
    [0.05 + 0.9 * w[0], 0.05 + 0.9 * w[1], 0.9 * w[2], 0.9 * w[3]]
}

/// How the ends of a random spec are closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ends {
    /// Both leak edges open.
    Leaky,
    /// `q_0 = p_N = 0`, their mass moved into `s`.
    Absorbing,
    /// `q_0 = p_N = 0`, their mass moved into `r`.
    Reflecting,
}

pub fn random_spec(rng: &mut ChaCha8Rng, n: usize, ends: Ends) -> WalkSpec<f64> {
    let rows: Vec<[f64; 4]> = (0..=n).map(|_| row(rng)).collect();
    let mut p: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let mut q: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let mut r: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let mut s: Vec<f64> = rows.iter().map(|r| r[3]).collect();
    match ends {
        Ends::Leaky => {}
        Ends::Absorbing => {
            s[0] += q[0];
            s[n] += p[n];
            q[0] = 0.0;
            p[n] = 0.0;
        }
        Ends::Reflecting => {
            r[0] += q[0];
            r[n] += p[n];
            q[0] = 0.0;
            p[n] = 0.0;
        }
    }
    if n == 0 {
        // a lone state needs some way out
        s[0] += r[0] * 0.5;
        r[0] *= 0.5;
    }
    let start = rng.gen_range(0..=n);
    WalkParams::new(p, q, r, s).with_start(start).validate().unwrap()
}

/// The corpus of random absorbing specs, `N ≤ max_n`, cycling through the end conventions.
pub fn corpus(seed: u64, count: usize, max_n: usize) -> Vec<WalkSpec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let ends = [Ends::Leaky, Ends::Absorbing, Ends::Reflecting][k % 3];
            let n = rng.gen_range(1..=max_n);
            random_spec(&mut rng, n, ends)
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| rel(x, y)).fold(0.0, f64::max)
}

/// Occupancy from 0 on `[0, 3]`, written out term by term in `1 - r_i`, `p_i`, `q_i`.
pub fn four_state_x0(spec: &WalkSpec<f64>) -> f64 {
    let (p, q, r) = (spec.p(), spec.q(), spec.r());
    let a = |i: usize| 1.0 - r[i];
    let num = a(1) * a(2) * a(3) - p[1] * q[2] * a(3) - a(1) * p[2] * q[3];
    let den = a(0) * a(1) * a(2) * a(3) - p[0] * q[1] * a(2) * a(3) - a(0) * p[1] * q[2] * a(3) - a(0) * a(1) * p[2] * q[3]
        + p[0] * q[1] * p[2] * q[3];
    num / den
}

/// Expected time from 0 on `[0, 3]`, over the same denominator.
pub fn four_state_m0(spec: &WalkSpec<f64>) -> f64 {
    let (p, q, r, s) = (spec.p(), spec.q(), spec.r(), spec.s());
    let a = |i: usize| 1.0 - r[i];
    let b = |i: usize| 1.0 - s[i];
    let num = b(0) * (a(1) * a(2) * a(3) - p[1] * q[2] * a(3) - a(1) * p[2] * q[3])
        + b(1) * (p[0] * a(2) * a(3) - p[0] * p[2] * q[3])
        + p[0] * p[1] * b(2) * a(3)
        + p[0] * p[1] * p[2] * b(3);
    let den = a(0) * a(1) * a(2) * a(3) - p[0] * q[1] * a(2) * a(3) - a(0) * p[1] * q[2] * a(3) - a(0) * a(1) * p[2] * q[3]
        + p[0] * q[1] * p[2] * q[3];
    num / den
}

/// Binomial sums for the homogeneous family, computed with exact integer coefficients.
pub fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

pub fn homogeneous_continuant_x0(p: f64, q: f64, n: u32) -> f64 {
    let pq = p * q;
    let sum = |top: u32, kmax: u32, shift: bool| -> f64 {
        (0..=kmax)
            .map(|k| {
                let c = if shift { binomial_u128(top - k, k) } else { binomial_u128(top, k) };
                c as f64 * (-pq).powi(k as i32)
            })
            .sum()
    };
    sum(n, n / 2, true) / sum(n + 1, n.div_ceil(2), true)
}

pub fn homogeneous_printed_x0(p: f64, q: f64, n: u32) -> f64 {
    let pq = p * q;
    let sum = |top: u32, kmax: u32| -> f64 { (0..=kmax).map(|k| binomial_u128(top, k) as f64 * (-pq).powi(k as i32)).sum() };
    sum(n + 1, n.div_ceil(2)) / sum(n + 2, (n + 2) / 2)
}

pub mod strategies {
    use fibwalk::{WalkParams, WalkSpec};
    use proptest::prelude::*;

    /// One row `[p, q, r, s]`; each entry is zero with probability about 1/4.
    fn sparse_row() -> impl Strategy<Value = [f64; 4]> {
        prop::array::uniform4(prop_oneof![1 => Just(0.0), 3 => 0.01f64..1.0]).prop_map(|w| {
            let sum: f64 = w.iter().sum();
            if sum == 0.0 {
                [0.0, 0.0, 0.0, 1.0]
            } else {
                w.map(|v| v / sum)
            }
        })
    }

    /// Row with `p, q ≥ 0.05`.
    fn dense_row() -> impl Strategy<Value = [f64; 4]> {
        prop::array::uniform4(0.001f64..1.0).prop_map(|w| {
            let sum: f64 = w.iter().sum();
            [0.05 + 0.9 * w[0] / sum, 0.05 + 0.9 * w[1] / sum, 0.9 * w[2] / sum, 0.9 * w[3] / sum]
        })
    }

    fn assemble(rows: Vec<[f64; 4]>) -> WalkParams<f64> {
        let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<_>>();
        WalkParams::new(col(0), col(1), col(2), col(3))
    }

    /// Arbitrary valid specs on `[0, N]`, `N ≤ max_n`, zeros included.
    pub fn sparse_spec(max_n: usize) -> impl Strategy<Value = WalkSpec<f64>> {
        prop::collection::vec(sparse_row(), 1..=max_n + 1).prop_map(|rows| assemble(rows).validate().unwrap())
    }

    /// Specs with interior `p, q ≥ 0.05`; ends either leak or are closed.
    pub fn dense_spec(max_n: usize) -> impl Strategy<Value = WalkSpec<f64>> {
        (prop::collection::vec(dense_row(), 2..=max_n + 1), any::<bool>(), any::<bool>()).prop_map(
            |(rows, close_left, close_right)| {
                let mut params = assemble(rows);
                let n = params.p.len() - 1;
                if close_left {
                    params.s[0] += params.q[0];
                    params.q[0] = 0.0;
                }
                if close_right {
                    params.r[n] += params.p[n];
                    params.p[n] = 0.0;
                }
                params.validate().unwrap()
            },
        )
    }

    pub fn with_state(spec: impl Strategy<Value = WalkSpec<f64>>) -> impl Strategy<Value = (WalkSpec<f64>, usize)> {
        spec.prop_flat_map(|s| {
            let n = s.last();
            (Just(s), 0..=n)
        })
    }
}
