//! Fibonacci-indexed expansion of three-term recurrences.
//!
//! The solution of `x_{i+1} = lam_i x_i + mu_{i-1} x_{i-1}` with `x_0 = 1`,
//! `x_1 = lam_0` is a sum of `f_i` products whose factors are read off the
//! τ-table. This module provides the table, the explicit expansion (used as
//! an oracle up to order [`EXPLICIT_CAP`]), the overflow-safe recurrence and
//! the boundary-segment solver built on them.

mod coeffs;
mod continuant;
mod fib;
mod segment;
mod tau;

pub use coeffs::{CoefficientSet, OffsetSeq};
pub use continuant::{a_explicit, a_inhomogeneous, a_prefix, a_recurrence, a_tails, expansion, EXPLICIT_CAP};
pub use fib::{fibonacci, reduce_column, reduce_column_counted, FibSeq, MAX_INDEX};
pub use segment::Segment;
pub use tau::{tau, tau_cell, Cell, TauTable};
