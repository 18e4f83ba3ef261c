//! Prime-indexed density experiments: the sign partition of primes, the scan
//! for primes with `A(p) = ±p^{k-1}`, truncated Dirichlet-density probes,
//! reciprocal prime sums, and the semicircle-law histogram for the
//! normalized eigenvalues `A(p) / p^{(2k-1)/2}`.
//!
//! Everything here is a finite-`x` measurement. In particular the Dirichlet
//! probe is a diagnostic: truncated sums cannot certify weak regularity, so
//! no operation returns a verdict, only numbers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Float, ToPrimitive};

use crate::arith::PrimeTable;
use crate::error::Error;
use crate::qseries::Eigenform;
use crate::shimura::LiftedStream;
use crate::signstats::KahanSum;

/// Primes `p <= x` split by the sign of `a(t p^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimePartition {
    pub x: u64,
    pub pos: Vec<u64>,
    pub neg: Vec<u64>,
    pub zero: Vec<u64>,
    /// `sum_{p in zero} 1/p`.
    pub recip_zero: f64,
}

impl PrimePartition {
    /// `pi(x)`; the three parts always add up to it.
    pub fn prime_count(&self) -> u64 {
        (self.pos.len() + self.neg.len() + self.zero.len()) as u64
    }

    /// `(|pos|, |neg|, |zero|) / pi(x)`; zeros when there are no primes.
    pub fn fractions(&self) -> (f64, f64, f64) {
        let total = self.prime_count();
        if total == 0 {
            return (0.0, 0.0, 0.0);
        }
        let t = total as f64;
        (
            self.pos.len() as f64 / t,
            self.neg.len() as f64 / t,
            self.zero.len() as f64 / t,
        )
    }
}

/// Exact sign partition of the primes up to `x`.
pub fn prime_partition(
    stream: &LiftedStream,
    table: &PrimeTable,
    x: u64,
) -> Result<PrimePartition, Error> {
    if x > stream.precision() {
        return Err(Error::CheckpointOutOfRange { checkpoint: x, max: stream.precision() });
    }
    if x > table.limit() {
        return Err(Error::TableTooSmall { required: x, limit: table.limit() });
    }
    let mut part = PrimePartition {
        x,
        pos: Vec::new(),
        neg: Vec::new(),
        zero: Vec::new(),
        recip_zero: 0.0,
    };
    let mut recip = KahanSum::default();
    for &p in table.primes() {
        let p = p as u64;
        if p > x {
            break;
        }
        match stream.sign(p) {
            1 => part.pos.push(p),
            -1 => part.neg.push(p),
            _ => {
                part.zero.push(p);
                recip.add(1.0 / p as f64);
            }
        }
    }
    part.recip_zero = recip.value();
    Ok(part)
}

/// A prime excluded from the exceptional scan because it divides `2t`,
/// together with whether it nevertheless satisfies `A(p) = ±p^{k-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExcludedPrime {
    pub p: u64,
    pub matches: bool,
}

/// Result of the scan for primes with `A(p) = ±p^{k-1}` (the only primes at
/// which `a(t p^2)` can vanish).
///
/// The scan proper runs over odd primes not dividing `2t`; primes dividing
/// `2t` are listed separately but still checked, so nothing is silently
/// dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalReport {
    pub x: u64,
    /// Scanned primes with `A(p) = p^{k-1}` or `A(p) = -p^{k-1}`.
    pub matches: Vec<u64>,
    /// Primes dividing `2t`, exempt from the scan, with their own verdict.
    pub excluded: Vec<ExcludedPrime>,
    /// `|matches| / (x / log(x)^{9/8})`; exactly 0.0 for an empty list.
    pub ratio: f64,
}

impl ExceptionalReport {
    /// Matches across scanned and excluded primes combined. Any nonempty
    /// result on a level-1 eigenform deserves loud attention.
    pub fn all_matches(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.matches.clone();
        all.extend(self.excluded.iter().filter(|e| e.matches).map(|e| e.p));
        all.sort_unstable();
        all
    }
}

/// Scan all primes `p <= x` for exact equality `A(p) = ±p^{k-1}`.
pub fn exceptional_primes(
    form: &Eigenform,
    t: u64,
    table: &PrimeTable,
    x: u64,
) -> Result<ExceptionalReport, Error> {
    if x > form.precision() as u64 {
        return Err(Error::CheckpointOutOfRange { checkpoint: x, max: form.precision() as u64 });
    }
    if x > table.limit() {
        return Err(Error::TableTooSmall { required: x, limit: table.limit() });
    }
    let k = form.k();
    let mut matches = Vec::new();
    let mut excluded = Vec::new();
    for &p in table.primes() {
        let p = p as u64;
        if p > x {
            break;
        }
        let pk = BigInt::from(p).pow(k - 1);
        let a = form.a(p as usize);
        let hit = a == &pk || a == &(-&pk);
        if (2 * t).is_multiple_of(p) {
            excluded.push(ExcludedPrime { p, matches: hit });
        } else if hit {
            matches.push(p);
        }
    }
    let ratio = if matches.is_empty() {
        0.0
    } else {
        let xf = x as f64;
        matches.len() as f64 / (xf / Float::powf(Float::ln(xf), 9.0 / 8.0))
    };
    Ok(ExceptionalReport { x, matches, excluded, ratio })
}

/// Truncated Dirichlet-series measurements of a prime set: partial sums
/// `sum_{p in S, p <= cutoff} p^{-z}` over a z-grid, plus a least-squares
/// slope against `log(1/(z-1))`.
///
/// A diagnostic only: a truncated sum can suggest a density but cannot
/// certify weak regularity.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityProbe {
    pub zgrid: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Least-squares slope of the partial sums against `log(1/(z-1))`.
    pub fitted_a: f64,
    pub cutoff: u64,
}

/// Evaluate the truncated prime Dirichlet series of `{p : set(p)}` on a
/// strictly decreasing z-grid in (1, 2].
pub fn dirichlet_probe<F: Fn(u64) -> bool>(
    set: F,
    table: &PrimeTable,
    zgrid: &[f64],
    cutoff: u64,
) -> Result<DensityProbe, Error> {
    if zgrid.is_empty() || zgrid.iter().any(|&z| !(z > 1.0 && z <= 2.0) || !z.is_finite()) {
        return Err(Error::InvalidZGrid);
    }
    if zgrid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidZGrid);
    }
    if cutoff > table.limit() {
        return Err(Error::TableTooSmall { required: cutoff, limit: table.limit() });
    }

    let mut sums = vec![KahanSum::default(); zgrid.len()];
    for &p in table.primes() {
        let p = p as u64;
        if p > cutoff {
            break;
        }
        if !set(p) {
            continue;
        }
        let pf = p as f64;
        for (s, &z) in sums.iter_mut().zip(zgrid) {
            s.add(Float::powf(pf, -z));
        }
    }
    let partial_sums: Vec<f64> = sums.iter().map(KahanSum::value).collect();

    // least squares of y against L = log(1/(z-1)), intercept absorbing the
    // bounded remainder
    let fitted_a = {
        let n = zgrid.len() as f64;
        let ls: Vec<f64> = zgrid.iter().map(|&z| Float::ln(1.0 / (z - 1.0))).collect();
        let lbar = ls.iter().sum::<f64>() / n;
        let ybar = partial_sums.iter().sum::<f64>() / n;
        let mut num = 0.0;
        let mut den = 0.0;
        for (l, y) in ls.iter().zip(&partial_sums) {
            num += (l - lbar) * (y - ybar);
            den += (l - lbar) * (l - lbar);
        }
        if den > 0.0 {
            num / den
        } else {
            0.0
        }
    };

    Ok(DensityProbe { zgrid: zgrid.to_vec(), partial_sums, fitted_a, cutoff })
}

/// `sum_{p in S, p <= x} 1/p` at each checkpoint (ascending). The growth
/// profile is the convergence/divergence evidence for the set.
pub fn reciprocal_prime_sum<F: Fn(u64) -> bool>(
    set: F,
    table: &PrimeTable,
    checkpoints: &[u64],
) -> Result<Vec<f64>, Error> {
    crate::signstats::validate_checkpoints(checkpoints, table.limit(), table.limit())?;
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut sum = KahanSum::default();
    let mut idx = 0usize;
    for &x in checkpoints {
        while idx < table.primes().len() && table.primes()[idx] as u64 <= x {
            let p = table.primes()[idx] as u64;
            if set(p) {
                sum.add(1.0 / p as f64);
            }
            idx += 1;
        }
        out.push(sum.value());
    }
    Ok(out)
}

/// CDF of the semicircle law with density `(1/2pi) sqrt(4 - u^2)` on
/// `[-2, 2]`.
pub fn semicircle_cdf(u: f64) -> f64 {
    use core::f64::consts::PI;
    if u <= -2.0 {
        0.0
    } else if u >= 2.0 {
        1.0
    } else {
        0.5 + u * Float::sqrt(4.0 - u * u) / (4.0 * PI) + Float::asin(u / 2.0) / PI
    }
}

/// One equal-width histogram bin on `[-2, 2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    /// Semicircle-law mass of the bin scaled by the number of primes.
    pub expected: f64,
}

/// Empirical distribution of `u_p = A(p) / p^{(2k-1)/2}` against the
/// semicircle law.
#[derive(Clone, Debug, PartialEq)]
pub struct SatoTateReport {
    pub x: u64,
    pub n_primes: u64,
    pub bins: Vec<HistogramBin>,
    /// `max_j |ECDF(u_j) - CDF(u_j)|` over the bin edges `u_j`.
    pub sup_cdf_deviation: f64,
}

/// Bin the normalized eigenvalues of all primes `p <= x` into `bins`
/// equal-width cells on `[-2, 2]` and measure the sup-norm CDF deviation
/// from the semicircle law at the bin edges.
///
/// Every `u_p` is first checked exactly (`A(p)^2 <= 4 p^{2k-1}` in
/// integers); a violation means corrupt coefficients and is a hard error.
pub fn sato_tate_histogram(
    form: &Eigenform,
    table: &PrimeTable,
    x: u64,
    bins: usize,
) -> Result<SatoTateReport, Error> {
    if bins < 2 {
        return Err(Error::InvalidBins { bins });
    }
    if x > form.precision() as u64 {
        return Err(Error::CheckpointOutOfRange { checkpoint: x, max: form.precision() as u64 });
    }
    if x > table.limit() {
        return Err(Error::TableTooSmall { required: x, limit: table.limit() });
    }

    let half_exponent = (form.weight() - 1) as f64 / 2.0;
    let width = 4.0 / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut n_primes = 0u64;
    for &p in table.primes() {
        let p = p as u64;
        if p > x {
            break;
        }
        if !form.satisfies_deligne_at(p) {
            return Err(Error::DeligneViolation { p });
        }
        let a = form.a(p as usize).to_f64().expect("BigInt always converts to f64");
        let u = (a / Float::powf(p as f64, half_exponent)).clamp(-2.0, 2.0);
        let idx = (((u + 2.0) / width) as usize).min(bins - 1);
        counts[idx] += 1;
        n_primes += 1;
    }

    let mut out_bins = Vec::with_capacity(bins);
    let mut cumulative = 0u64;
    let mut sup_dev: f64 = 0.0;
    for (j, &count) in counts.iter().enumerate() {
        let lo = -2.0 + j as f64 * width;
        let hi = -2.0 + (j + 1) as f64 * width;
        let expected = n_primes as f64 * (semicircle_cdf(hi) - semicircle_cdf(lo));
        out_bins.push(HistogramBin { lo, hi, count, expected });
        cumulative += count;
        if n_primes > 0 {
            let ecdf = cumulative as f64 / n_primes as f64;
            sup_dev = sup_dev.max((ecdf - semicircle_cdf(hi)).abs());
        }
    }

    Ok(SatoTateReport { x, n_primes, bins: out_bins, sup_cdf_deviation: sup_dev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{delta, QSeries};
    use crate::shimura::{lift_invert, LiftParams};
    use alloc::vec;
    use num_traits::One;

    fn delta_stream(n: u64) -> (Eigenform, LiftedStream, PrimeTable) {
        let table = PrimeTable::build(n).unwrap();
        let form = delta(n as usize);
        let params = LiftParams::new(1, 12).unwrap();
        let stream = lift_invert(&form, params, n, &table).unwrap();
        (form, stream, table)
    }

    #[test]
    fn partition_at_two_and_three() {
        let (_, stream, table) = delta_stream(10);
        // a(4) = -56 < 0
        let part = prime_partition(&stream, &table, 2).unwrap();
        assert_eq!((part.pos.len(), part.neg.len(), part.zero.len()), (0, 1, 0));
        // a(9) = 9 > 0 joins
        let part = prime_partition(&stream, &table, 3).unwrap();
        assert_eq!((part.pos.len(), part.neg.len(), part.zero.len()), (1, 1, 0));
        assert_eq!(part.pos, &[3]);
        assert_eq!(part.neg, &[2]);
    }

    #[test]
    fn partition_counts_sum_to_pi() {
        let (_, stream, table) = delta_stream(2000);
        let part = prime_partition(&stream, &table, 2000).unwrap();
        assert_eq!(part.prime_count(), table.prime_count(2000) as u64);
        let (fp, fn_, fz) = part.fractions();
        assert!((fp + fn_ + fz - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_synthetic_zero_at_two() {
        let params = LiftParams::new(1, 12).unwrap();
        let mut values = vec![BigInt::one(); 11];
        values[2] = BigInt::from(0); // a(t * 2^2) = 0
        let stream = LiftedStream::from_parts_unchecked(params, values);
        let part = prime_partition(&stream, &PrimeTable::build(10).unwrap(), 10).unwrap();
        assert_eq!(part.zero, &[2]);
        assert_eq!(part.recip_zero, 0.5);
    }

    #[test]
    fn exceptional_scan_empty_for_delta_to_1e4() {
        let table = PrimeTable::build(10_000).unwrap();
        let form = delta(10_000);
        let report = exceptional_primes(&form, 1, &table, 10_000).unwrap();
        assert!(report.matches.is_empty());
        assert!(report.all_matches().is_empty());
        assert_eq!(report.ratio, 0.0);
        // p = 2 divides 2t = 2: listed separately, not silently dropped
        assert_eq!(report.excluded.len(), 1);
        assert_eq!(report.excluded[0].p, 2);
        assert!(!report.excluded[0].matches);
    }

    #[test]
    fn exceptional_scan_flags_injected_prime() {
        // force A(2) = 2^5 and A(3) = -3^5 on a synthetic weight-12 form
        let mut coeffs = delta(50).qexp().coeffs().to_vec();
        coeffs[2] = BigInt::from(32);
        coeffs[3] = BigInt::from(-243);
        let form = Eigenform::from_parts_unchecked(12, QSeries::from_coeffs(coeffs));
        let table = PrimeTable::build(50).unwrap();
        let report = exceptional_primes(&form, 1, &table, 50).unwrap();
        // 2 | 2t, so it lands in the excluded list, flagged as matching
        assert_eq!(report.excluded, vec![ExcludedPrime { p: 2, matches: true }]);
        // 3 is scanned and matches
        assert_eq!(report.matches, vec![3]);
        assert_eq!(report.all_matches(), vec![2, 3]);
        assert!(report.ratio > 0.0);
    }

    #[test]
    fn probe_all_primes_below_prime_zeta_at_two() {
        let table = PrimeTable::build(10_000).unwrap();
        let mut last = 0.0;
        for cutoff in [100u64, 1_000, 10_000] {
            let probe = dirichlet_probe(|_| true, &table, &[2.0], cutoff).unwrap();
            // prime zeta at 2 is 0.45224742...
            assert!(probe.partial_sums[0] <= 0.4523);
            assert!(probe.partial_sums[0] > last, "not monotone in cutoff");
            last = probe.partial_sums[0];
        }
    }

    #[test]
    fn probe_empty_set_is_zero() {
        let table = PrimeTable::build(1_000).unwrap();
        let probe =
            dirichlet_probe(|_| false, &table, &[1.5, 1.2, 1.1], 1_000).unwrap();
        assert!(probe.partial_sums.iter().all(|&s| s == 0.0));
        assert_eq!(probe.fitted_a, 0.0);
    }

    #[test]
    fn probe_rejects_bad_grids() {
        let table = PrimeTable::build(100).unwrap();
        assert!(matches!(
            dirichlet_probe(|_| true, &table, &[], 100),
            Err(Error::InvalidZGrid)
        ));
        assert!(matches!(
            dirichlet_probe(|_| true, &table, &[1.0, 0.9], 100),
            Err(Error::InvalidZGrid)
        ));
        assert!(matches!(
            dirichlet_probe(|_| true, &table, &[1.2, 1.5], 100),
            Err(Error::InvalidZGrid)
        ));
        assert!(matches!(
            dirichlet_probe(|_| true, &table, &[2.5, 1.5], 100),
            Err(Error::InvalidZGrid)
        ));
    }

    #[test]
    fn reciprocal_sums_examples() {
        let table = PrimeTable::build(1_000).unwrap();
        let zeros = reciprocal_prime_sum(|_| false, &table, &[10, 100, 1000]).unwrap();
        assert_eq!(zeros, vec![0.0, 0.0, 0.0]);

        let small = reciprocal_prime_sum(|p| p == 2 || p == 3, &table, &[2, 3, 100, 1000])
            .unwrap();
        assert!((small[0] - 0.5).abs() < 1e-15);
        for &s in &small[1..] {
            assert!((s - (0.5 + 1.0 / 3.0)).abs() < 1e-15, "should stabilize at 5/6");
        }
    }

    #[test]
    fn reciprocal_sum_of_all_primes_tracks_loglog() {
        let table = PrimeTable::build(1_000_000).unwrap();
        let sums =
            reciprocal_prime_sum(|_| true, &table, &[1_000, 10_000, 100_000, 1_000_000])
                .unwrap();
        for w in sums.windows(2) {
            assert!(w[1] > w[0], "no plateau: the sum must keep growing");
        }
        // Mertens: sum_{p<=x} 1/p = ln ln x + M + O(1/ln x), so the
        // difference between 1e6 and 1e3 is ln ln 1e6 - ln ln 1e3 = ln 2
        // up to a small error
        let expected = core::f64::consts::LN_2;
        assert!(
            ((sums[3] - sums[0]) - expected).abs() < 0.02,
            "got {}, expected about {expected}",
            sums[3] - sums[0]
        );
    }

    #[test]
    fn semicircle_cdf_values() {
        assert_eq!(semicircle_cdf(0.0), 0.5);
        assert_eq!(semicircle_cdf(2.0), 1.0);
        assert_eq!(semicircle_cdf(-2.0), 0.0);
        assert_eq!(semicircle_cdf(-5.0), 0.0);
        assert_eq!(semicircle_cdf(5.0), 1.0);
        // symmetry
        for u in [0.3, 0.9, 1.5, 1.99] {
            assert!((semicircle_cdf(u) + semicircle_cdf(-u) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn histogram_counts_and_mass() {
        let table = PrimeTable::build(1_000).unwrap();
        let form = delta(1_000);
        let report = sato_tate_histogram(&form, &table, 1_000, 10).unwrap();
        assert_eq!(report.n_primes, 168);
        let total: u64 = report.bins.iter().map(|b| b.count).sum();
        assert_eq!(total, 168);
        let mass: f64 = report.bins.iter().map(|b| b.expected).sum();
        assert!((mass - 168.0).abs() < 1e-9);
        assert!(report.sup_cdf_deviation < 0.2);
    }

    #[test]
    fn histogram_rejects_one_bin() {
        let table = PrimeTable::build(100).unwrap();
        let form = delta(100);
        assert!(matches!(
            sato_tate_histogram(&form, &table, 100, 1),
            Err(Error::InvalidBins { bins: 1 })
        ));
    }

    #[test]
    fn deligne_violation_is_a_hard_error() {
        let mut coeffs = delta(50).qexp().coeffs().to_vec();
        coeffs[2] = BigInt::from(1000); // way beyond 2 * 2^{11/2} ~ 90.5
        let form = Eigenform::from_parts_unchecked(12, QSeries::from_coeffs(coeffs));
        let table = PrimeTable::build(50).unwrap();
        assert!(matches!(
            sato_tate_histogram(&form, &table, 50, 10),
            Err(Error::DeligneViolation { p: 2 })
        ));
    }

    use num_bigint::BigInt;
}
