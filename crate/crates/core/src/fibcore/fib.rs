//! Fibonacci numbers with `f_0 = f_1 = 1` and the column reduction of the τ-table.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest index whose Fibonacci number fits in a `u64`.
pub const MAX_INDEX: usize = 92;

static TABLE: OnceLock<Vec<u64>> = OnceLock::new();

/// The (shared, computed-once) sequence `f_0, f_1, ...` up to [`MAX_INDEX`].
#[derive(Debug, Clone, Copy)]
pub struct FibSeq {
    cache: &'static [u64],
}

impl FibSeq {
    pub fn get() -> Self {
        let cache = TABLE.get_or_init(|| {
            let mut f = vec![1u64, 1];
            while let Some(next) = f[f.len() - 1].checked_add(f[f.len() - 2]) {
                f.push(next);
            }
            f
        });
        Self { cache }
    }

    pub fn at(&self, n: usize) -> Result<u64> {
        self.cache.get(n).copied().ok_or(Error::FibonacciOverflow(n))
    }

    pub fn as_slice(&self) -> &'static [u64] {
        self.cache
    }

    /// The unique `n >= 1` with `f_n < j <= f_{n+1}`, for `j >= 2`.
    fn bracket(&self, j: u64) -> usize {
        debug_assert!(j >= 2);
        // f is strictly increasing from index 1, so partition_point on f[1..] finds f_n < j
        self.cache[1..].partition_point(|&f| f < j)
    }
}

/// `f_n` under the `f_0 = f_1 = 1` convention.
pub fn fibonacci(n: usize) -> Result<u64> {
    FibSeq::get().at(n)
}

/// Reduces column `j` of row `i` to an equivalent column `<= f_{i+1}`.
///
/// Repeatedly subtracts the largest Fibonacci number strictly below `j`.
pub fn reduce_column(j: u64, i: usize) -> u64 {
    reduce_column_counted(j, i).0
}

/// [`reduce_column`] together with the number of subtractions performed.
pub fn reduce_column_counted(mut j: u64, i: usize) -> (u64, usize) {
    assert!(j >= 1 && i >= 1, "column and row indices start at 1");
    let fib = FibSeq::get();
    let limit = fib.as_slice().get(i + 1).copied().unwrap_or(u64::MAX);
    let mut steps = 0;
    while j > limit {
        let n = fib.bracket(j);
        j -= fib.as_slice()[n];
        steps += 1;
    }
    (j, steps)
}
