use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use liftsign_cli::config::{
    default_checkpoints, ExperimentConfig, OutputFormat, ProbeOptions, ProbeSet,
    SIEVE_BUDGET_ENV,
};
use liftsign_cli::{run_coeffs, run_equidist, run_primes, run_probe, CliError};
use liftsign_core::arith::DEFAULT_SIEVE_BUDGET_BYTES;

/// Exact coefficient streams of Shimura-lifted eigenforms and the sign
/// statistics built on them.
#[derive(Parser)]
#[command(name = "liftsign", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the coefficient stream a(t n^2) for n = 1..nmax as CSV
    Coeffs(CoeffsArgs),
    /// Sign statistics per checkpoint: counts, mean, ratio, Halász envelope
    Equidist(EquidistArgs),
    /// Prime report: sign partition, A(p) = ±p^(k-1) scan, reciprocal sums,
    /// semicircle histogram
    Primes(PrimesArgs),
    /// Truncated Dirichlet-series probe of a prime class
    Probe(ProbeArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Eigenform weight 2k (one of 12, 16, 18, 20, 22, 26)
    #[arg(long, default_value_t = 12)]
    weight: u32,

    /// Squarefree lift index t
    #[arg(long, default_value_t = 1)]
    t: u64,

    /// Stream precision: a(t n^2) is computed for n <= nmax
    #[arg(long, default_value_t = 100_000)]
    nmax: u64,

    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format; coeffs and equidist are CSV-only
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Coefficient cache: read when the file exists, written otherwise
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EquidistArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated statistics cutoffs (default: powers of ten up to nmax)
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,

    /// Constant of the Halász-type envelope C x exp(-1/4 sum (1-g(p))/p)
    #[arg(long = "C", default_value_t = 10.0)]
    halasz_c: f64,
}

#[derive(Args)]
struct PrimesArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Histogram bins on [-2, 2]
    #[arg(long, default_value_t = 20)]
    bins: usize,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Prime class to probe: a sign class of a(t p^2), or all primes
    #[arg(long, value_enum, default_value_t = SetArg::All)]
    set: SetArg,

    /// Comma-separated z grid, strictly decreasing, values in (1, 2]
    #[arg(long, value_delimiter = ',')]
    zgrid: Option<Vec<f64>>,

    /// Summation cutoff (default: nmax)
    #[arg(long)]
    cutoff: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetArg {
    Pos,
    Neg,
    Zero,
    All,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Coeffs(args) => {
            let cfg = experiment_config(&args.common, None, 10.0, 20)?;
            require_csv(&args.common, "coeffs")?;
            let text = run_coeffs(&cfg)?;
            write_output(&args.common.out, &text)
        }
        Command::Equidist(args) => {
            let cfg = experiment_config(&args.common, args.checkpoints, args.halasz_c, 20)?;
            require_csv(&args.common, "equidist")?;
            let text = run_equidist(&cfg)?;
            write_output(&args.common.out, &text)
        }
        Command::Primes(args) => {
            let cfg = experiment_config(&args.common, None, 10.0, args.bins)?;
            let format = output_format(&args.common, OutputFormat::Json);
            let text = run_primes(&cfg, format)?;
            write_output(&args.common.out, &text)
        }
        Command::Probe(args) => {
            let cfg = experiment_config(&args.common, None, 10.0, 20)?;
            let mut opts = ProbeOptions::default_for(cfg.nmax);
            opts.set = match args.set {
                SetArg::Pos => ProbeSet::Pos,
                SetArg::Neg => ProbeSet::Neg,
                SetArg::Zero => ProbeSet::Zero,
                SetArg::All => ProbeSet::All,
            };
            if let Some(zgrid) = args.zgrid {
                opts.zgrid = zgrid;
            }
            if let Some(cutoff) = args.cutoff {
                opts.cutoff = cutoff;
            }
            let format = output_format(&args.common, OutputFormat::Json);
            let text = run_probe(&cfg, &opts, format)?;
            write_output(&args.common.out, &text)
        }
    }
}

fn experiment_config(
    common: &CommonArgs,
    checkpoints: Option<Vec<u64>>,
    halasz_c: f64,
    bins: usize,
) -> Result<ExperimentConfig, CliError> {
    let cfg = ExperimentConfig {
        weight: common.weight,
        t: common.t,
        nmax: common.nmax,
        checkpoints: checkpoints.unwrap_or_else(|| default_checkpoints(common.nmax)),
        halasz_c,
        bins,
        cache: common.cache.clone(),
        sieve_budget: sieve_budget_from_env()?,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn sieve_budget_from_env() -> Result<u64, CliError> {
    match std::env::var(SIEVE_BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Config(format!(
                "{SIEVE_BUDGET_ENV} must be an integer byte count, got {s:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SIEVE_BUDGET_BYTES),
        Err(e) => Err(CliError::Config(format!("{SIEVE_BUDGET_ENV}: {e}"))),
    }
}

fn require_csv(common: &CommonArgs, command: &str) -> Result<(), CliError> {
    match common.format {
        None | Some(FormatArg::Csv) => Ok(()),
        Some(FormatArg::Json) => Err(CliError::Config(format!(
            "{command} emits CSV only; drop --format json"
        ))),
    }
}

fn output_format(common: &CommonArgs, default: OutputFormat) -> OutputFormat {
    match common.format {
        Some(FormatArg::Csv) => OutputFormat::Csv,
        Some(FormatArg::Json) => OutputFormat::Json,
        None => default,
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
