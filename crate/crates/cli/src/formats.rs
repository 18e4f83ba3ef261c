//! File formats: the lifted-stream CSV, the statistics CSV, the coefficient
//! cache, histogram CSV, and the JSON reports.
//!
//! All writers are deterministic: identical inputs produce identical bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::json;

use liftsign_core::densities::{DensityProbe, ExceptionalReport, PrimePartition, SatoTateReport};
use liftsign_core::qseries::{Eigenform, QSeries};
use liftsign_core::shimura::LiftedStream;
use liftsign_core::signstats::RunningStats;

use crate::config::{ExperimentConfig, ProbeOptions, ProbeSet};
use crate::CliError;

/// `# t=<t> k=<k> weight2k=<2k> N=<N>` header plus `n,a_tn2,sign` rows.
pub fn write_stream_csv(stream: &LiftedStream) -> String {
    let p = stream.params();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# t={} k={} weight2k={} N={}",
        p.t(),
        p.k(),
        p.weight(),
        stream.precision()
    );
    out.push_str("n,a_tn2,sign\n");
    for n in 1..=stream.precision() {
        let _ = writeln!(out, "{},{},{}", n, stream.value(n), stream.sign(n));
    }
    out
}

/// `# C=<C> t=<t> weight=<2k>` header plus one row per checkpoint with the
/// schema `x,S,n_pos,n_neg,n_zero,ratio_pos,mean,halasz_bound`. Undefined
/// entries (all-zero prefix, x < 2) are written as NaN.
pub fn write_stats_csv(stats: &[RunningStats], c: f64, t: u64, weight: u32) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# C={c} t={t} weight={weight}");
    out.push_str("x,S,n_pos,n_neg,n_zero,ratio_pos,mean,halasz_bound\n");
    for s in stats {
        let ratio_pos = s.equidistribution_ratio().map(|(p, _)| p).unwrap_or(f64::NAN);
        let bound = s.halasz_bound(c).unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            s.x,
            s.s,
            s.n_pos,
            s.n_neg,
            s.n_zero,
            ratio_pos,
            s.mean_value(),
            bound
        );
    }
    out
}

/// `# eigenform weight=<2k> precision=<N>` header plus `n <tab> A(n)` rows.
pub fn write_coefficient_cache(form: &Eigenform) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# eigenform weight={} precision={}", form.weight(), form.precision());
    for n in 1..=form.precision() {
        let _ = writeln!(out, "{}\t{}", n, form.a(n));
    }
    out
}

/// Parse a coefficient cache, validating the header against the requested
/// weight and precision. A cache with more precision than requested is
/// truncated to `precision`.
pub fn parse_coefficient_cache(
    text: &str,
    weight: u32,
    precision: u64,
) -> Result<Eigenform, CliError> {
    let bad = |msg: String| CliError::Config(format!("coefficient cache: {msg}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let rest = header
        .strip_prefix("# eigenform weight=")
        .ok_or_else(|| bad("missing `# eigenform` header".into()))?;
    let (w_str, p_str) = rest
        .split_once(" precision=")
        .ok_or_else(|| bad("malformed header".into()))?;
    let cached_weight: u32 = w_str.parse().map_err(|_| bad("malformed weight".into()))?;
    let cached_precision: u64 = p_str.parse().map_err(|_| bad("malformed precision".into()))?;
    if cached_weight != weight {
        return Err(bad(format!("has weight {cached_weight}, requested {weight}")));
    }
    if cached_precision < precision {
        return Err(bad(format!(
            "has precision {cached_precision}, requested {precision}"
        )));
    }

    let mut coeffs = Vec::with_capacity(precision as usize + 1);
    coeffs.push(BigInt::from(0));
    for (expect_n, line) in (1..=precision).zip(lines) {
        let (n_str, a_str) = line
            .split_once('\t')
            .ok_or_else(|| bad(format!("row {expect_n}: expected `n<TAB>A(n)`")))?;
        let n: u64 = n_str.parse().map_err(|_| bad(format!("row {expect_n}: bad index")))?;
        if n != expect_n {
            return Err(bad(format!("row {expect_n}: found index {n}")));
        }
        let a: BigInt = a_str
            .parse()
            .map_err(|_| bad(format!("row {expect_n}: bad coefficient")))?;
        coeffs.push(a);
    }
    if coeffs.len() as u64 != precision + 1 {
        return Err(bad(format!(
            "truncated file: {} rows, need {precision}",
            coeffs.len() - 1
        )));
    }
    if coeffs[1] != BigInt::from(1) {
        return Err(bad("not normalized: A(1) != 1".into()));
    }
    Eigenform::new(weight, QSeries::from_coeffs(coeffs)).map_err(|e| bad(e.to_string()))
}

/// Histogram CSV: a parameter comment then `bin_lo,bin_hi,count,expected`.
pub fn write_histogram_csv(report: &SatoTateReport, cfg: &ExperimentConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# weight={} t={} x={} bins={} n_primes={} sup_cdf_deviation={}",
        cfg.weight,
        cfg.t,
        report.x,
        report.bins.len(),
        report.n_primes,
        report.sup_cdf_deviation
    );
    out.push_str("bin_lo,bin_hi,count,expected\n");
    for b in &report.bins {
        let _ = writeln!(out, "{},{},{},{}", b.lo, b.hi, b.count, b.expected);
    }
    out
}

fn sample(primes: &[u64], n: usize) -> Vec<u64> {
    primes.iter().copied().take(n).collect()
}

/// The `primes` subcommand report: partition, exceptional scan, reciprocal
/// sum over the zero class, and the semicircle histogram, bundled as JSON.
pub fn primes_report_json(
    cfg: &ExperimentConfig,
    partition: &PrimePartition,
    exceptional: &ExceptionalReport,
    recip_checkpoints: &[u64],
    recip_zero_sums: &[f64],
    sato_tate: &SatoTateReport,
) -> serde_json::Value {
    let (fp, fneg, fz) = partition.fractions();
    json!({
        "params": {
            "weight": cfg.weight,
            "t": cfg.t,
            "nmax": cfg.nmax,
            "x": partition.x,
            "bins": cfg.bins,
        },
        "prime_partition": {
            "x": partition.x,
            "pi_x": partition.prime_count(),
            "pos_count": partition.pos.len(),
            "neg_count": partition.neg.len(),
            "zero_count": partition.zero.len(),
            "pos_fraction": fp,
            "neg_fraction": fneg,
            "zero_fraction": fz,
            "recip_zero": partition.recip_zero,
            "pos_sample": sample(&partition.pos, 10),
            "neg_sample": sample(&partition.neg, 10),
            "zero_primes": partition.zero,
        },
        "exceptional_primes": {
            "x": exceptional.x,
            "matches": exceptional.matches,
            "count": exceptional.matches.len(),
            "excluded": exceptional
                .excluded
                .iter()
                .map(|e| json!({"p": e.p, "matches": e.matches}))
                .collect::<Vec<_>>(),
            "all_matches": exceptional.all_matches(),
            "ratio": exceptional.ratio,
        },
        "reciprocal_zero_prime_sum": {
            "checkpoints": recip_checkpoints,
            "sums": recip_zero_sums,
        },
        "sato_tate": {
            "x": sato_tate.x,
            "n_primes": sato_tate.n_primes,
            "sup_cdf_deviation": sato_tate.sup_cdf_deviation,
            "bins": sato_tate
                .bins
                .iter()
                .map(|b| json!({
                    "lo": b.lo,
                    "hi": b.hi,
                    "count": b.count,
                    "expected": b.expected,
                }))
                .collect::<Vec<_>>(),
        },
    })
}

fn probe_set_name(set: ProbeSet) -> &'static str {
    match set {
        ProbeSet::Pos => "pos",
        ProbeSet::Neg => "neg",
        ProbeSet::Zero => "zero",
        ProbeSet::All => "all",
    }
}

pub fn probe_report_json(
    cfg: &ExperimentConfig,
    opts: &ProbeOptions,
    probe: &DensityProbe,
) -> serde_json::Value {
    json!({
        "params": {
            "weight": cfg.weight,
            "t": cfg.t,
            "nmax": cfg.nmax,
            "set": probe_set_name(opts.set),
            "cutoff": probe.cutoff,
        },
        "zgrid": probe.zgrid,
        "partial_sums": probe.partial_sums,
        "fitted_a": probe.fitted_a,
    })
}

pub fn write_probe_csv(opts: &ProbeOptions, probe: &DensityProbe) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# set={} cutoff={} fitted_a={}",
        probe_set_name(opts.set),
        probe.cutoff,
        probe.fitted_a
    );
    out.push_str("z,partial_sum\n");
    for (z, s) in probe.zgrid.iter().zip(&probe.partial_sums) {
        let _ = writeln!(out, "{z},{s}");
    }
    out
}
