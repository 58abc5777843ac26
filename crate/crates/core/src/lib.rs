//! Absorption analytics for one-dimensional random walks on `[0, N]` with
//! per-state forward, backward, hold and absorption probabilities.
//!
//! The analytic route solves the balance equations through Fibonacci-indexed
//! continuant expansions ([`fibcore`]); [`oracle`] supplies a direct
//! tridiagonal solver and a Monte Carlo simulator to check it against.
//!
//! ```
//! use fibwalk::{expected_arrivals, Method, WalkParams};
//!
//! let spec = WalkParams::new(
//!     vec![0.5_f64, 0.5, 0.5, 0.0],
//!     vec![0.0, 0.5, 0.5, 0.5],
//!     vec![0.0; 4],
//!     vec![0.5, 0.0, 0.0, 0.5],
//! )
//! .validate()
//! .unwrap();
//! let x = expected_arrivals(&spec, 0, Method::Fibonacci).unwrap();
//! assert!((x.x[0] - 1.6).abs() < 1e-12);
//! ```

// NaN must fail the positivity and pivot checks, so those read `!(x > 0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod error;
pub mod fibcore;
pub mod oracle;
pub mod scalar;
pub mod scaled;
pub mod walkmodel;

pub use analytics::{
    absorption_report, analyze, expected_arrivals, expected_time, report_from_arrivals, visit_probabilities, visit_probability,
    AbsorptionReport, Analysis, ArrivalVector, TimeVector,
};
pub use error::{Error, Result, Violation};
pub use scalar::Real;
pub use scaled::ScaledReal;
pub use walkmodel::{reflect, Method, MethodTag, WalkParams, WalkSpec};

pub type WalkSpec64 = WalkSpec<f64>;
pub type WalkSpec32 = WalkSpec<f32>;
pub type WalkParams64 = WalkParams<f64>;
pub type ScaledF64 = ScaledReal<f64>;
pub type ScaledF32 = ScaledReal<f32>;
pub type ArrivalVector64 = ArrivalVector<f64>;
pub type TimeVector64 = TimeVector<f64>;
pub type AbsorptionReport64 = AbsorptionReport<f64>;
pub type CoefficientSet64 = fibcore::CoefficientSet<f64>;
