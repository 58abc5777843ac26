//! Seeded Monte Carlo simulation of the walk.
//!
//! Each trial draws from its own [`SplitMix64`] stream derived from
//! `(seed, trial index)` and all tallies are integers, so the result does not
//! depend on how trials are split across workers.

use rayon::prelude::*;

use super::rng::SplitMix64;
use crate::scalar::Real;
use crate::walkmodel::WalkSpec;

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_steps: u64,
    /// Number of trial partitions; `0` picks the rayon pool size.
    pub workers: usize,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self { trials, seed, max_steps: DEFAULT_MAX_STEPS, workers: 0 }
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub trials: u64,
    pub seed: u64,
    pub start: usize,
    /// In-place absorptions per state.
    pub absorb_counts: Vec<u64>,
    pub exit_left: u64,
    pub exit_right: u64,
    /// Trials still running after `max_steps` steps.
    pub truncated: u64,
    /// Mean steps over non-truncated trials.
    pub mean_steps: f64,
    pub stderr_steps: f64,
    /// Mean occupancy per state, time zero included.
    pub visit_means: Vec<f64>,
    pub visit_stderr: Vec<f64>,
}

impl SimulationResult {
    pub fn absorb_fraction(&self, j: usize) -> f64 {
        self.absorb_counts[j] as f64 / self.trials as f64
    }

    pub fn absorbed_total(&self) -> u64 {
        self.absorb_counts.iter().sum()
    }

    pub fn absorb_total_fraction(&self) -> f64 {
        self.absorbed_total() as f64 / self.trials as f64
    }

    pub fn exit_left_fraction(&self) -> f64 {
        self.exit_left as f64 / self.trials as f64
    }

    pub fn exit_right_fraction(&self) -> f64 {
        self.exit_right as f64 / self.trials as f64
    }
}

/// Binomial standard error of a proportion `p` estimated from `n` trials.
pub fn proportion_stderr(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).max(0.0).sqrt()
}

#[derive(Debug, Clone, Default)]
struct Tally {
    absorb: Vec<u64>,
    exit_left: u64,
    exit_right: u64,
    truncated: u64,
    steps: u64,
    steps_sq: u128,
    finished: u64,
    visits: Vec<u64>,
    visits_sq: Vec<u128>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Self { absorb: vec![0; n], visits: vec![0; n], visits_sq: vec![0; n], ..Default::default() }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.absorb.iter_mut().zip(&other.absorb) {
            *a += b;
        }
        for (a, b) in self.visits.iter_mut().zip(&other.visits) {
            *a += b;
        }
        for (a, b) in self.visits_sq.iter_mut().zip(&other.visits_sq) {
            *a += b;
        }
        self.exit_left += other.exit_left;
        self.exit_right += other.exit_right;
        self.truncated += other.truncated;
        self.steps += other.steps;
        self.steps_sq += other.steps_sq;
        self.finished += other.finished;
        self
    }
}

enum Move {
    Forward,
    Backward,
    Stay,
    Absorb,
}

/// Cumulative thresholds for one uniform draw against `(p, q, r, s)` in that order.
#[derive(Clone, Copy)]
struct Row {
    c1: f64,
    c2: f64,
    c3: f64,
    last: u8,
}

impl Row {
    fn new(p: f64, q: f64, r: f64, s: f64) -> Self {
        // rounding must never pick a zero-probability move
        let last = if s > 0.0 {
            3
        } else if r > 0.0 {
            2
        } else if q > 0.0 {
            1
        } else {
            0
        };
        Self { c1: p, c2: p + q, c3: p + q + r, last }
    }

    fn pick(&self, u: f64) -> Move {
        let k = if u < self.c1 {
            0
        } else if u < self.c2 {
            1
        } else if u < self.c3 {
            2
        } else {
            3
        };
        match k.min(self.last) {
            0 => Move::Forward,
            1 => Move::Backward,
            2 => Move::Stay,
            _ => Move::Absorb,
        }
    }
}

fn run_trials(rows: &[Row], start: usize, seed: u64, range: std::ops::Range<u64>, max_steps: u64) -> Tally {
    let n = rows.len();
    let mut tally = Tally::new(n);
    let mut visits = vec![0u64; n];
    let mut touched: Vec<usize> = Vec::new();
    for t in range {
        let mut rng = SplitMix64::for_trial(seed, t);
        let mut i = start;
        let mut steps = 0u64;
        let bump = |i: usize, visits: &mut [u64], touched: &mut Vec<usize>| {
            if visits[i] == 0 {
                touched.push(i);
            }
            visits[i] += 1;
        };
        bump(i, &mut visits, &mut touched);
        let finished = loop {
            if steps >= max_steps {
                tally.truncated += 1;
                break false;
            }
            match rows[i].pick(rng.next_f64()) {
                Move::Absorb => {
                    tally.absorb[i] += 1;
                    break true;
                }
                Move::Forward => {
                    steps += 1;
                    if i + 1 == n {
                        tally.exit_right += 1;
                        break true;
                    }
                    i += 1;
                }
                Move::Backward => {
                    steps += 1;
                    if i == 0 {
                        tally.exit_left += 1;
                        break true;
                    }
                    i -= 1;
                }
                Move::Stay => steps += 1,
            }
            bump(i, &mut visits, &mut touched);
        };
        if finished {
            tally.finished += 1;
            tally.steps += steps;
            tally.steps_sq += u128::from(steps) * u128::from(steps);
        }
        for &j in &touched {
            let v = visits[j];
            tally.visits[j] += v;
            tally.visits_sq[j] += u128::from(v) * u128::from(v);
            visits[j] = 0;
        }
        touched.clear();
    }
    tally
}

fn mean_and_stderr(sum: u64, sum_sq: u128, n: u64) -> (f64, f64) {
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let nf = n as f64;
    let mean = sum as f64 / nf;
    if n < 2 {
        return (mean, f64::NAN);
    }
    // exact integer centring: n * sum_sq - sum^2 = n^2 * var_population
    let centred = (n as u128) * sum_sq - u128::from(sum) * u128::from(sum);
    let var = centred as f64 / (nf * (nf - 1.0));
    (mean, (var / nf).sqrt())
}

/// Runs `config.trials` independent walks from `start`.
pub fn simulate<T: Real>(spec: &WalkSpec<T>, start: usize, config: SimConfig) -> SimulationResult {
    assert!(start <= spec.last(), "start state outside the walk");
    assert!(config.trials >= 1 && config.max_steps >= 1, "trials and max_steps must be positive");
    let rows: Vec<Row> = (0..spec.len())
        .map(|i| Row::new(spec.p()[i].as_f64(), spec.q()[i].as_f64(), spec.r()[i].as_f64(), spec.s()[i].as_f64()))
        .collect();
    let workers = if config.workers == 0 { rayon::current_num_threads() } else { config.workers } as u64;
    let workers = workers.clamp(1, config.trials);
    let chunk = config.trials.div_ceil(workers);
    let tally = (0..workers)
        .into_par_iter()
        .map(|w| {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(config.trials);
            run_trials(&rows, start, config.seed, lo..hi.max(lo), config.max_steps)
        })
        .reduce(|| Tally::new(rows.len()), Tally::merge);

    let (mean_steps, stderr_steps) = mean_and_stderr(tally.steps, tally.steps_sq, tally.finished);
    let mut visit_means = Vec::with_capacity(rows.len());
    let mut visit_stderr = Vec::with_capacity(rows.len());
    for j in 0..rows.len() {
        let (m, e) = mean_and_stderr(tally.visits[j], tally.visits_sq[j], config.trials);
        visit_means.push(m);
        visit_stderr.push(e);
    }
    SimulationResult {
        trials: config.trials,
        seed: config.seed,
        start,
        absorb_counts: tally.absorb,
        exit_left: tally.exit_left,
        exit_right: tally.exit_right,
        truncated: tally.truncated,
        mean_steps,
        stderr_steps,
        visit_means,
        visit_stderr,
    }
}
