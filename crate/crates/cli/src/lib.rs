//! IO, file formats, and experiment plumbing for the `liftsign` binary.
//!
//! The computational pipeline lives in `liftsign-core`; this crate adds the
//! pieces that need `std`: the experiment configuration, the CSV/JSON
//! writers and the coefficient cache, a thread-parallel statistics driver,
//! and the subcommand implementations behind the CLI.

pub mod config;
pub mod formats;
pub mod parallel;
pub mod pipeline;

pub use config::{ExperimentConfig, OutputFormat, ProbeOptions, ProbeSet};
pub use pipeline::{run_coeffs, run_equidist, run_primes, run_probe};

use thiserror::Error;

/// Top-level failure modes, mapped onto the process exit codes:
/// configuration problems exit 2, verification failures exit 3, IO noise
/// exits 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<liftsign_core::Error> for CliError {
    fn from(e: liftsign_core::Error) -> Self {
        match e {
            liftsign_core::Error::DeligneViolation { .. } => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}
