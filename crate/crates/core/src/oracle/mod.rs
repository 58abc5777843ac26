//! Independent checks for the analytics: a direct tridiagonal solver, a
//! seeded simulator, and structural absorption detection.

pub mod direct;
pub mod reach;
pub mod rng;
pub mod simulate;

pub use direct::{solve_arrivals_direct, solve_time_direct, solve_tridiagonal};
pub use reach::{can_absorb, is_absorbing, is_absorbing_everywhere, reachable_interval};
pub use rng::{mix64, SplitMix64};
pub use simulate::{proportion_stderr, simulate, SimConfig, SimulationResult, DEFAULT_MAX_STEPS};
