//! Subcommand implementations: wire configuration -> eigenform -> lifted
//! stream -> statistics, and render the output documents.

use std::fs;

use liftsign_core::arith::PrimeTable;
use liftsign_core::densities::{
    dirichlet_probe, exceptional_primes, prime_partition, sato_tate_histogram,
};
use liftsign_core::qseries::{level1_eigenform, Eigenform};
use liftsign_core::shimura::{lift_invert, verify_relations, LiftedStream, VerifyFailure};
use liftsign_core::signstats::SignSeries;

use crate::config::{default_checkpoints, ExperimentConfig, OutputFormat, ProbeOptions, ProbeSet};
use crate::formats;
use crate::parallel::running_stats_parallel;
use crate::CliError;

/// Random coprime pairs drawn by the automatic verification run.
pub const VERIFY_TRIALS: u64 = 10_000;

/// Load the eigenform from the cache when the file exists, otherwise
/// compute it (and populate the cache if a path was given).
pub fn obtain_form(cfg: &ExperimentConfig) -> Result<Eigenform, CliError> {
    if let Some(path) = &cfg.cache {
        if path.exists() {
            let text = fs::read_to_string(path)?;
            return formats::parse_coefficient_cache(&text, cfg.weight, cfg.nmax);
        }
        let form = level1_eigenform(cfg.weight, cfg.nmax as usize)?;
        fs::write(path, formats::write_coefficient_cache(&form))?;
        return Ok(form);
    }
    Ok(level1_eigenform(cfg.weight, cfg.nmax as usize)?)
}

fn build_table(cfg: &ExperimentConfig, limit: u64) -> Result<PrimeTable, CliError> {
    Ok(PrimeTable::build_with_budget(limit, cfg.sieve_budget)?)
}

/// Everything the statistics commands need, verified.
pub struct BuiltPipeline {
    pub form: Eigenform,
    pub table: PrimeTable,
    pub stream: LiftedStream,
}

/// Validate the config, build (or load) the eigenform, invert the lift, and
/// run the automatic relation verification. Verification failure maps to
/// exit code 3.
pub fn build_pipeline(cfg: &ExperimentConfig) -> Result<BuiltPipeline, CliError> {
    cfg.validate()?;
    let table = build_table(cfg, cfg.nmax)?;
    let form = obtain_form(cfg)?;
    let stream = lift_invert(&form, cfg.lift_params(), cfg.nmax, &table)?;
    let report = verify_relations(&form, &stream, &table, VERIFY_TRIALS);
    if let Some(failure) = report.failure {
        let what = match failure {
            VerifyFailure::PrimeRelation { p } => {
                format!("prime relation A(p) = a(t p^2) + eps(p) p^(k-1) fails at p = {p}")
            }
            VerifyFailure::Multiplicativity { n, m } => {
                format!("coprime multiplicativity fails at (n, m) = ({n}, {m})")
            }
        };
        return Err(CliError::Verification(what));
    }
    Ok(BuiltPipeline { form, table, stream })
}

/// `coeffs`: the lifted stream as CSV.
pub fn run_coeffs(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let built = build_pipeline(cfg)?;
    Ok(formats::write_stream_csv(&built.stream))
}

/// `equidist`: one statistics row per checkpoint as CSV.
pub fn run_equidist(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let built = build_pipeline(cfg)?;
    let g = SignSeries::from_stream(&built.stream);
    let stats = running_stats_parallel(&g, &built.table, &cfg.checkpoints)?;
    Ok(formats::write_stats_csv(&stats, cfg.halasz_c, cfg.t, cfg.weight))
}

/// `primes`: the density report (JSON, or histogram CSV).
pub fn run_primes(cfg: &ExperimentConfig, format: OutputFormat) -> Result<String, CliError> {
    let built = build_pipeline(cfg)?;
    let x = cfg.nmax;
    let partition = prime_partition(&built.stream, &built.table, x)?;
    let exceptional = exceptional_primes(&built.form, cfg.t, &built.table, x)?;
    let recip_checkpoints = default_checkpoints(x);
    let zero_sums = liftsign_core::densities::reciprocal_prime_sum(
        |p| built.stream.sign(p) == 0,
        &built.table,
        &recip_checkpoints,
    )?;
    let sato = sato_tate_histogram(&built.form, &built.table, x, cfg.bins)?;
    match format {
        OutputFormat::Json => {
            let report = formats::primes_report_json(
                cfg,
                &partition,
                &exceptional,
                &recip_checkpoints,
                &zero_sums,
                &sato,
            );
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            Ok(text)
        }
        OutputFormat::Csv => Ok(formats::write_histogram_csv(&sato, cfg)),
    }
}

/// `probe`: truncated Dirichlet series of a prime class.
pub fn run_probe(
    cfg: &ExperimentConfig,
    opts: &ProbeOptions,
    format: OutputFormat,
) -> Result<String, CliError> {
    let probe = match opts.set {
        ProbeSet::All => {
            cfg.validate()?;
            let table = build_table(cfg, opts.cutoff.max(cfg.nmax))?;
            dirichlet_probe(|_| true, &table, &opts.zgrid, opts.cutoff)?
        }
        set => {
            if opts.cutoff > cfg.nmax {
                return Err(CliError::Config(format!(
                    "probe cutoff {} exceeds nmax {} (sign classes need stream values)",
                    opts.cutoff, cfg.nmax
                )));
            }
            let built = build_pipeline(cfg)?;
            let want: i8 = match set {
                ProbeSet::Pos => 1,
                ProbeSet::Neg => -1,
                _ => 0,
            };
            let stream = &built.stream;
            dirichlet_probe(|p| stream.sign(p) == want, &built.table, &opts.zgrid, opts.cutoff)?
        }
    };
    match format {
        OutputFormat::Json => {
            let report = formats::probe_report_json(cfg, opts, &probe);
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            Ok(text)
        }
        OutputFormat::Csv => Ok(formats::write_probe_csv(opts, &probe)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(nmax: u64) -> ExperimentConfig {
        ExperimentConfig {
            nmax,
            checkpoints: default_checkpoints(nmax),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn coeffs_first_rows() {
        let csv = run_coeffs(&small_config(10)).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# t=1 k=6 weight2k=12 N=10");
        assert_eq!(lines[1], "n,a_tn2,sign");
        assert_eq!(lines[2], "1,1,1");
        assert_eq!(lines[3], "2,-56,-1");
        assert_eq!(lines[4], "3,9,1");
    }

    #[test]
    fn equidist_includes_all_checkpoints_in_order() {
        let mut cfg = small_config(500);
        cfg.checkpoints = vec![1, 10, 250, 500];
        let csv = run_equidist(&cfg).unwrap();
        let xs: Vec<u64> = csv
            .lines()
            .skip(2)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(xs, vec![1, 10, 250, 500]);
    }

    #[test]
    fn equidist_checkpoint_one_ratio_guard() {
        let mut cfg = small_config(10);
        cfg.checkpoints = vec![1];
        let csv = run_equidist(&cfg).unwrap();
        let row = csv.lines().nth(2).unwrap();
        // n_pos = 1, n_neg = 0 -> ratio 1; halasz undefined at x = 1
        assert_eq!(row, "1,1,1,0,0,1,1,NaN");
    }

    #[test]
    fn primes_report_is_consistent() {
        let cfg = small_config(1000);
        let text = run_primes(&cfg, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let part = &v["prime_partition"];
        let pi = part["pi_x"].as_u64().unwrap();
        assert_eq!(pi, 168);
        assert_eq!(
            part["pos_count"].as_u64().unwrap()
                + part["neg_count"].as_u64().unwrap()
                + part["zero_count"].as_u64().unwrap(),
            pi
        );
        assert_eq!(part["zero_count"].as_u64().unwrap(), 0);
        assert_eq!(part["recip_zero"].as_f64().unwrap(), 0.0);
        assert_eq!(v["exceptional_primes"]["count"].as_u64().unwrap(), 0);
        assert_eq!(v["exceptional_primes"]["ratio"].as_f64().unwrap(), 0.0);
        let sums = v["reciprocal_zero_prime_sum"]["sums"].as_array().unwrap();
        assert!(sums.iter().all(|s| s.as_f64().unwrap() == 0.0));
    }

    #[test]
    fn probe_all_runs_without_stream() {
        let cfg = small_config(1000);
        let opts = ProbeOptions::default_for(1000);
        let text = run_probe(&cfg, &opts, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["params"]["set"].as_str().unwrap(), "all");
        assert_eq!(v["zgrid"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn probe_sign_classes_partition_the_mass() {
        let cfg = small_config(2000);
        let mut opts = ProbeOptions::default_for(2000);
        let run = |set| {
            let mut o = opts.clone();
            o.set = set;
            let text = run_probe(&cfg, &o, OutputFormat::Json).unwrap();
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            v["partial_sums"].as_array().unwrap()[0].as_f64().unwrap()
        };
        let pos = run(ProbeSet::Pos);
        let neg = run(ProbeSet::Neg);
        let zero = run(ProbeSet::Zero);
        opts.set = ProbeSet::All;
        let text = run_probe(&cfg, &opts, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let all = v["partial_sums"].as_array().unwrap()[0].as_f64().unwrap();
        assert!((pos + neg + zero - all).abs() < 1e-12);
        assert_eq!(zero, 0.0);
    }
}
