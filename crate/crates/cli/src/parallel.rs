//! Thread-parallel statistics accumulation.
//!
//! The range `1..=x` is cut at the checkpoints; each block is accumulated on
//! its own thread and the blocks are prefix-merged in index order. Integer
//! fields are bit-identical to the sequential pass; the float sums may
//! differ by rounding (they are merged, not streamed).

use liftsign_core::arith::PrimeTable;
use liftsign_core::signstats::{accumulate_range, RunningStats, SignAccumulator, SignSeries};
use liftsign_core::Error;

/// Parallel equivalent of `liftsign_core::signstats::running_stats`.
pub fn running_stats_parallel(
    g: &SignSeries,
    table: &PrimeTable,
    checkpoints: &[u64],
) -> Result<Vec<RunningStats>, Error> {
    // same validation as the sequential pass
    for (i, &x) in checkpoints.iter().enumerate() {
        if x < 1 || (i > 0 && checkpoints[i - 1] >= x) {
            return Err(Error::CheckpointsNotAscending);
        }
        if x > g.precision() {
            return Err(Error::CheckpointOutOfRange { checkpoint: x, max: g.precision() });
        }
        if x > table.limit() {
            return Err(Error::CheckpointOutOfRange { checkpoint: x, max: table.limit() });
        }
    }
    if checkpoints.is_empty() {
        return Ok(Vec::new());
    }

    let blocks: Vec<(u64, u64)> = checkpoints
        .iter()
        .scan(1u64, |lo, &cp| {
            let block = (*lo, cp);
            *lo = cp + 1;
            Some(block)
        })
        .collect();

    let accumulators: Vec<SignAccumulator> = std::thread::scope(|scope| {
        let handles: Vec<_> = blocks
            .iter()
            .map(|&(lo, hi)| scope.spawn(move || accumulate_range(g, table, lo, hi)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("block accumulation panicked")).collect()
    });

    let mut merged = SignAccumulator::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    for (acc, &cp) in accumulators.iter().zip(checkpoints) {
        merged.merge(acc);
        out.push(merged.snapshot(cp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use liftsign_core::signstats::running_stats;

    #[test]
    fn parallel_matches_sequential_on_integer_fields() {
        // deterministic pseudo-random sign pattern
        let signs: Vec<i8> = (1..=10_000u64)
            .map(|n| {
                let h = n.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(17);
                match h % 5 {
                    0 => 0,
                    1 | 2 => 1,
                    _ => -1,
                }
            })
            .collect();
        let g = SignSeries::synthetic(&signs);
        let table = PrimeTable::build(10_000).unwrap();
        let checkpoints = [1u64, 7, 100, 999, 5000, 10_000];
        let seq = running_stats(&g, &table, &checkpoints).unwrap();
        let par = running_stats_parallel(&g, &table, &checkpoints).unwrap();
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!((a.x, a.s, a.n_pos, a.n_neg, a.n_zero), (b.x, b.s, b.n_pos, b.n_neg, b.n_zero));
            assert!((a.prime_exponent_sum - b.prime_exponent_sum).abs() < 1e-12);
            assert!((a.zero_prime_sum - b.zero_prime_sum).abs() < 1e-12);
        }
    }

    #[test]
    fn parallel_validates_checkpoints() {
        let g = SignSeries::synthetic(&[1; 10]);
        let table = PrimeTable::build(10).unwrap();
        assert!(running_stats_parallel(&g, &table, &[3, 2]).is_err());
        assert!(running_stats_parallel(&g, &table, &[11]).is_err());
    }
}
