use std::fmt;

use thiserror::Error;

/// One failed constraint on a walk specification.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Offending state, or `None` for spec-wide constraints.
    pub state: Option<usize>,
    pub constraint: &'static str,
    /// How far the value misses the constraint.
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.state {
            Some(i) => write!(f, "state {i}: {} (residual {:e})", self.constraint, self.residual),
            None => write!(f, "{} (residual {:e})", self.constraint, self.residual),
        }
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid walk specification: {}", join(.0))]
    Validation(Vec<Violation>),

    #[error("state {state} outside [0, {last}]")]
    StateOutOfRange { state: usize, last: usize },

    #[error("coefficient {seq}[{offset}] requested outside its range [{lo}, {hi}]")]
    OffsetOutOfRange { seq: &'static str, offset: i64, lo: i64, hi: i64 },

    #[error("explicit expansion of order {order} exceeds the cap of {cap}; use the recurrence")]
    ExplicitCapacity { order: usize, cap: usize },

    #[error("fibonacci number f_{0} does not fit in 64 bits")]
    FibonacciOverflow(usize),

    #[error("degenerate specification for the fibonacci path: {0}")]
    Degenerate(String),

    #[error("walk is not absorbed almost surely")]
    Divergent,

    #[error("singular balance system at row {row} (pivot {pivot:e})")]
    Singular { row: usize, pivot: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
