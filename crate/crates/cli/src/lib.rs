//! Command-line front end for `fibwalk`: analyze, simulate and verify walk
//! specifications, and print τ-tables.

pub mod commands;
pub mod report;
pub mod spec_doc;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibwalk::oracle::DEFAULT_MAX_STEPS;
use fibwalk::Method;
use thiserror::Error;

pub use report::{Format, Report, Value};
pub use spec_doc::{parse_spec, read_spec, SpecDocument, SpecError};

pub mod exit {
    pub const OK: i32 = 0;
    pub const BREACH: i32 = 1;
    pub const DIVERGENT: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const DEGENERATE: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),

    #[error(transparent)]
    Walk(#[from] fibwalk::Error),

    #[error("{0}")]
    Usage(String),

    /// The comparison table is still the command's output.
    #[error("verification failed: {}", offenders.join("; "))]
    Breach { report: String, offenders: Vec<String> },

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use fibwalk::Error as E;
        match self {
            CliError::Breach { .. } => exit::BREACH,
            CliError::Walk(E::Divergent | E::Singular { .. })
            | CliError::Spec(SpecError::Invalid(E::Divergent | E::Singular { .. })) => exit::DIVERGENT,
            CliError::Walk(E::Degenerate(_) | E::OffsetOutOfRange { .. }) => exit::DEGENERATE,
            CliError::Walk(
                E::Validation(_) | E::StateOutOfRange { .. } | E::ExplicitCapacity { .. } | E::FibonacciOverflow(_),
            ) => exit::VALIDATION,
            CliError::Spec(_) | CliError::Usage(_) | CliError::Output(_) => exit::VALIDATION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fib,
    Direct,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Fib => Method::Fibonacci,
            MethodArg::Direct => Method::Direct,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fibwalk", version, about = "Absorption analytics for one-dimensional random walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Occupancy, visit probabilities, absorption and expected time per state.
    Analyze(AnalyzeArgs),
    /// Monte Carlo estimates of absorption, occupancy and duration.
    Simulate(SimulateArgs),
    /// Cross-check the fibonacci path, the direct solver and simulation.
    Verify(VerifyArgs),
    /// Print the symbolic τ-table of a given order.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Spec file (JSON object with p, q, r, s).
    pub spec: PathBuf,
    /// Start state; defaults to the file's `start`, else 0.
    #[arg(long)]
    pub start: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub spec: PathBuf,
    #[arg(long)]
    pub start: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: u64,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Trial partitions; 0 uses one per thread. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub spec: PathBuf,
    #[arg(long)]
    pub start: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: u64,
    /// Largest allowed relative deviation between fibonacci and direct.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_analytic: f64,
    /// Largest allowed |z| between simulation and direct.
    #[arg(long, default_value_t = 4.0)]
    pub tol_sigma: f64,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Perturb one analytic quantity, e.g. `x[2]`.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=12))]
    pub order: u8,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Label cells `lam_k`, `mu_k` instead of `λ_k`, `μ_k`.
    #[arg(long)]
    pub ascii: bool,
}

/// Parses `args`, runs the command, writes the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::VALIDATION } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a, err),
        Command::Simulate(a) => commands::simulate(a, err),
        Command::Verify(a) => commands::verify(a, err),
        Command::Tables(a) => Ok(commands::tables(a)),
    };
    match result {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => exit::OK,
            Err(e) => {
                let _ = writeln!(err, "fibwalk: error: cannot write output: {e}");
                exit::VALIDATION
            }
        },
        Err(e) => {
            if let CliError::Breach { report, .. } = &e {
                let _ = out.write_all(report.as_bytes());
            }
            let _ = writeln!(err, "fibwalk: error: {e}");
            e.exit_code()
        }
    }
}
