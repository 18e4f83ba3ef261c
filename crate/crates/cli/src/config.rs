//! Experiment configuration shared by every subcommand.

use std::path::PathBuf;

use liftsign_core::arith::DEFAULT_SIEVE_BUDGET_BYTES;
use liftsign_core::qseries::SUPPORTED_WEIGHTS;
use liftsign_core::shimura::LiftParams;

use crate::CliError;

/// Environment variable overriding the sieve memory budget, in bytes.
pub const SIEVE_BUDGET_ENV: &str = "LIFTSIGN_SIEVE_BUDGET_BYTES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Parameters of one experiment run. `validate` is called by every
/// subcommand before any heavy computation starts.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    /// Integral weight `2k`; one of 12, 16, 18, 20, 22, 26.
    pub weight: u32,
    /// Squarefree positive lift index.
    pub t: u64,
    /// Coefficient precision: the stream carries `a(t n^2)` for `n <= nmax`.
    pub nmax: u64,
    /// Statistics cutoffs, strictly ascending, all `<= nmax`.
    pub checkpoints: Vec<u64>,
    /// The constant `C` of the Halász-type envelope.
    pub halasz_c: f64,
    /// Histogram bins on `[-2, 2]`.
    pub bins: usize,
    /// Optional coefficient cache: read when present, written otherwise.
    pub cache: Option<PathBuf>,
    /// Sieve memory budget in bytes.
    pub sieve_budget: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let nmax = 100_000;
        ExperimentConfig {
            weight: 12,
            t: 1,
            nmax,
            checkpoints: default_checkpoints(nmax),
            halasz_c: 10.0,
            bins: 20,
            cache: None,
            sieve_budget: DEFAULT_SIEVE_BUDGET_BYTES,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !SUPPORTED_WEIGHTS.contains(&self.weight) {
            return Err(CliError::Config(format!(
                "weight must be one of {SUPPORTED_WEIGHTS:?}, got {}",
                self.weight
            )));
        }
        // surfaces "t must be squarefree" and weight parity problems
        LiftParams::new(self.t, self.weight).map_err(|e| CliError::Config(e.to_string()))?;
        if self.nmax < 1 {
            return Err(CliError::Config("nmax must be at least 1".into()));
        }
        if self.checkpoints.is_empty() {
            return Err(CliError::Config("at least one checkpoint is required".into()));
        }
        for (i, &x) in self.checkpoints.iter().enumerate() {
            if x < 1 || (i > 0 && self.checkpoints[i - 1] >= x) {
                return Err(CliError::Config(
                    "checkpoints must be strictly ascending and positive".into(),
                ));
            }
            if x > self.nmax {
                return Err(CliError::Config(format!(
                    "checkpoint {x} exceeds nmax {}",
                    self.nmax
                )));
            }
        }
        if !self.halasz_c.is_finite() || self.halasz_c <= 0.0 {
            return Err(CliError::Config("C must be positive".into()));
        }
        if self.bins < 2 {
            return Err(CliError::Config("need at least 2 histogram bins".into()));
        }
        Ok(())
    }

    pub fn lift_params(&self) -> LiftParams {
        LiftParams::new(self.t, self.weight).expect("validated")
    }
}

/// Powers of ten up to `nmax`, with `nmax` itself appended when it is not
/// one: the default checkpoint grid.
pub fn default_checkpoints(nmax: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 10u64;
    while x <= nmax {
        out.push(x);
        match x.checked_mul(10) {
            Some(next) => x = next,
            None => break,
        }
    }
    if out.last() != Some(&nmax) && nmax >= 1 {
        out.push(nmax);
    }
    out
}

/// Which prime class a Dirichlet probe runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeSet {
    Pos,
    Neg,
    Zero,
    All,
}

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub set: ProbeSet,
    /// Strictly decreasing, values in (1, 2].
    pub zgrid: Vec<f64>,
    pub cutoff: u64,
}

impl ProbeOptions {
    pub fn default_for(nmax: u64) -> Self {
        ProbeOptions {
            set: ProbeSet::All,
            zgrid: vec![1.5, 1.4, 1.3, 1.2, 1.1, 1.05, 1.02, 1.01],
            cutoff: nmax,
        }
    }
}
