//! The multiplicative sign function `g(n) = sgn a(t n^2)` and its statistics:
//! partial sums, sign counts, the prime exponent sum feeding the Halász-type
//! envelope, and the positive/negative equidistribution ratio.
//!
//! Counts and partial sums are exact integers; only the two reciprocal prime
//! sums are floating point (compensated summation), since they feed an
//! analytic envelope rather than a sign decision.

use alloc::vec::Vec;

use num_traits::Float;

use crate::arith::PrimeTable;
use crate::error::Error;
use crate::shimura::LiftedStream;

/// Where a sign series came from. Multiplicativity is only promised for
/// series derived from a lifted stream; synthetic series are free-form test
/// and diagnostic inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignSource {
    Lifted { t: u64, weight: u32 },
    Synthetic,
}

/// `g(n)` for `n = 1..=N`, each value in {-1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSeries {
    /// `values[n] = g(n)`; index 0 unused.
    values: Vec<i8>,
    source: SignSource,
}

impl SignSeries {
    /// Pointwise sign of the stream.
    pub fn from_stream(stream: &LiftedStream) -> Self {
        let n_max = stream.precision();
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(0);
        for n in 1..=n_max {
            values.push(stream.sign(n));
        }
        SignSeries {
            values,
            source: SignSource::Lifted {
                t: stream.params().t(),
                weight: stream.params().weight(),
            },
        }
    }

    /// Free-form series for unit tests and diagnostics: `signs[i]` is
    /// `g(i + 1)`. Panics on values outside {-1, 0, 1}.
    pub fn synthetic(signs: &[i8]) -> Self {
        assert!(!signs.is_empty(), "synthetic series needs at least g(1)");
        let mut values = Vec::with_capacity(signs.len() + 1);
        values.push(0);
        for &s in signs {
            assert!((-1..=1).contains(&s), "sign values must be -1, 0, or 1");
            values.push(s);
        }
        SignSeries { values, source: SignSource::Synthetic }
    }

    pub fn source(&self) -> SignSource {
        self.source
    }

    pub fn precision(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `g(n)`. Panics for `n = 0` or beyond the precision.
    pub fn g(&self, n: u64) -> i8 {
        assert!(n >= 1 && n <= self.precision(), "sign index {n} out of range");
        self.values[n as usize]
    }
}

/// Snapshot of the accumulated statistics at a cutoff `x`.
///
/// Invariants: `n_pos + n_neg + n_zero = x` and `s = n_pos - n_neg`, both
/// exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunningStats {
    pub x: u64,
    /// `sum_{n <= x} g(n)`.
    pub s: i64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub n_zero: u64,
    /// `sum_{p <= x} (1 - g(p)) / p`; every summand is nonnegative.
    pub prime_exponent_sum: f64,
    /// `sum_{p <= x, g(p) = 0} 1 / p`.
    pub zero_prime_sum: f64,
}

impl RunningStats {
    /// `S(x) / x`.
    pub fn mean_value(&self) -> f64 {
        self.s as f64 / self.x as f64
    }

    /// `|{n <= x : g(n) != 0}| / x`.
    pub fn nonzero_density(&self) -> f64 {
        (self.n_pos + self.n_neg) as f64 / self.x as f64
    }

    /// Fractions of positive and negative terms among the nonzero ones;
    /// the two components sum to 1. Undefined on an all-zero prefix.
    pub fn equidistribution_ratio(&self) -> Result<(f64, f64), Error> {
        let nonzero = self.n_pos + self.n_neg;
        if nonzero == 0 {
            return Err(Error::UndefinedRatio);
        }
        Ok((
            self.n_pos as f64 / nonzero as f64,
            self.n_neg as f64 / nonzero as f64,
        ))
    }

    /// The Halász-type envelope `C x exp(-1/4 sum_{p<=x} (1-g(p))/p)`.
    /// Only defined for `x >= 2`; monotone in `C`.
    pub fn halasz_bound(&self, c: f64) -> Result<f64, Error> {
        assert!(c > 0.0, "the Halász constant must be positive");
        if self.x < 2 {
            return Err(Error::HalaszDomain { x: self.x });
        }
        Ok(c * self.x as f64 * Float::exp(-0.25 * self.prime_exponent_sum))
    }
}

/// Compensated (Kahan) summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }

    fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.add(-other.c);
    }
}

/// Mergeable accumulator behind [`running_stats`]. Blocks of consecutive
/// `n` may be accumulated independently and merged in index order; the
/// integer fields of the result are identical to a sequential pass (the
/// float fields may differ by rounding).
#[derive(Clone, Copy, Debug, Default)]
pub struct SignAccumulator {
    s: i64,
    n_pos: u64,
    n_neg: u64,
    n_zero: u64,
    prime_exponent: KahanSum,
    zero_prime: KahanSum,
}

impl SignAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fold in `g(n)`; `n_is_prime` selects the prime-sum updates.
    pub fn absorb(&mut self, n: u64, g: i8, n_is_prime: bool) {
        self.s += g as i64;
        match g {
            1 => self.n_pos += 1,
            -1 => self.n_neg += 1,
            _ => self.n_zero += 1,
        }
        if n_is_prime {
            let recip = 1.0 / n as f64;
            match g {
                1 => {}
                0 => {
                    self.prime_exponent.add(recip);
                    self.zero_prime.add(recip);
                }
                _ => self.prime_exponent.add(2.0 * recip),
            }
        }
    }

    /// Fold a later block into this one. Integer fields merge exactly.
    pub fn merge(&mut self, other: &SignAccumulator) {
        self.s += other.s;
        self.n_pos += other.n_pos;
        self.n_neg += other.n_neg;
        self.n_zero += other.n_zero;
        self.prime_exponent.merge(&other.prime_exponent);
        self.zero_prime.merge(&other.zero_prime);
    }

    pub fn snapshot(&self, x: u64) -> RunningStats {
        RunningStats {
            x,
            s: self.s,
            n_pos: self.n_pos,
            n_neg: self.n_neg,
            n_zero: self.n_zero,
            prime_exponent_sum: self.prime_exponent.value(),
            zero_prime_sum: self.zero_prime.value(),
        }
    }
}

/// Accumulate `g(n)` over the inclusive range `lo..=hi`. Building block for
/// block-parallel drivers; merging range accumulators in index order equals
/// the sequential pass on all integer fields.
pub fn accumulate_range(
    g: &SignSeries,
    table: &PrimeTable,
    lo: u64,
    hi: u64,
) -> SignAccumulator {
    assert!(lo >= 1 && hi <= g.precision() && hi <= table.limit());
    let mut acc = SignAccumulator::new();
    for n in lo..=hi {
        acc.absorb(n, g.g(n), table.is_prime(n));
    }
    acc
}

/// Single-pass accumulation with a snapshot at each checkpoint.
///
/// Checkpoints must be strictly ascending, at least 1, and at most the
/// series precision; the table must cover the last checkpoint.
pub fn running_stats(
    g: &SignSeries,
    table: &PrimeTable,
    checkpoints: &[u64],
) -> Result<Vec<RunningStats>, Error> {
    validate_checkpoints(checkpoints, g.precision(), table.limit())?;
    let mut out = Vec::with_capacity(checkpoints.len());
    if checkpoints.is_empty() {
        return Ok(out);
    }
    let mut acc = SignAccumulator::new();
    let mut next = 0usize;
    for n in 1..=checkpoints[checkpoints.len() - 1] {
        acc.absorb(n, g.g(n), table.is_prime(n));
        while next < checkpoints.len() && checkpoints[next] == n {
            out.push(acc.snapshot(n));
            next += 1;
        }
    }
    Ok(out)
}

pub(crate) fn validate_checkpoints(
    checkpoints: &[u64],
    precision: u64,
    table_limit: u64,
) -> Result<(), Error> {
    for (i, &x) in checkpoints.iter().enumerate() {
        if x < 1 || (i > 0 && checkpoints[i - 1] >= x) {
            return Err(Error::CheckpointsNotAscending);
        }
        if x > precision {
            return Err(Error::CheckpointOutOfRange { checkpoint: x, max: precision });
        }
        if x > table_limit {
            return Err(Error::CheckpointOutOfRange { checkpoint: x, max: table_limit });
        }
    }
    Ok(())
}
