//! Elementary number-theoretic kernels shared by every module: linear prime
//! sieve with smallest-prime-factor table, Möbius function, Kronecker symbol,
//! and divisor enumeration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Default memory budget for sieve tables: 1 GiB.
pub const DEFAULT_SIEVE_BUDGET_BYTES: u64 = 1 << 30;

/// Primes up to a limit plus a smallest-prime-factor table, so every
/// `n <= limit` can be factored in `O(log n)`.
///
/// Immutable after construction; all queries are pure.
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    spf: Vec<u32>,
}

impl PrimeTable {
    /// Sieve all primes up to `limit` under the default memory budget.
    pub fn build(limit: u64) -> Result<Self, Error> {
        Self::build_with_budget(limit, DEFAULT_SIEVE_BUDGET_BYTES)
    }

    /// Sieve all primes up to `limit`, rejecting limits whose tables would
    /// exceed `budget_bytes`. The budget estimate is `8 * (limit + 1)` bytes
    /// (4 for the spf entry, 4 reserved for the prime list worst case).
    pub fn build_with_budget(limit: u64, budget_bytes: u64) -> Result<Self, Error> {
        assert!(limit >= 1, "sieve limit must be at least 1");
        if limit >= u32::MAX as u64 {
            return Err(Error::SieveLimitTooLarge { limit });
        }
        if 8 * (limit + 1) > budget_bytes {
            return Err(Error::SieveBudgetExceeded { limit, budget_bytes });
        }

        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            // linear sieve: each composite is struck exactly once, by its
            // smallest prime factor
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
            }
        }
        Ok(PrimeTable { limit, primes, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes `<= limit`, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// `pi(x)`: the number of primes `<= x`. Panics if `x > limit`.
    pub fn prime_count(&self, x: u64) -> usize {
        assert!(x <= self.limit, "pi({x}) beyond sieve limit {}", self.limit);
        self.primes.partition_point(|&p| p as u64 <= x)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "primality of {n} beyond sieve limit {}", self.limit);
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Smallest prime factor of `n`. Panics for `n < 2` or `n > limit`.
    pub fn smallest_prime_factor(&self, n: u64) -> u32 {
        assert!(n >= 2 && n <= self.limit, "spf({n}) out of range");
        self.spf[n as usize]
    }

    /// Möbius function via the spf table. Panics for `n = 0` or `n > limit`.
    pub fn mobius(&self, n: u64) -> i8 {
        assert!(n >= 1 && n <= self.limit, "mobius({n}) out of range");
        let mut m = n as usize;
        let mut mu = 1i8;
        while m > 1 {
            let p = self.spf[m] as usize;
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        mu
    }

    /// Prime factorization of `n` as `(p, exponent)` pairs, p ascending.
    pub fn factorize(&self, n: u64) -> Vec<(u32, u32)> {
        assert!(n >= 1 && n <= self.limit, "factorize({n}) out of range");
        let mut m = n as usize;
        let mut factors = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p as u32, e));
        }
        factors
    }

    /// All divisors of `n` in increasing order.
    pub fn divisors(&self, n: u64) -> Vec<u64> {
        let factors = self.factorize(n);
        let mut divs = vec![1u64];
        for (p, e) in factors {
            let prev_len = divs.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p as u64;
                for i in 0..prev_len {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Kronecker symbol `(a|n)`, the extension of the Jacobi symbol to all
/// integer pairs. `(a|0)` is 1 for `a = ±1` and 0 otherwise; for fixed `a`
/// the map `n -> (a|n)` restricted to positive `n` is completely
/// multiplicative.
pub fn kronecker(a: i64, n: i64) -> i32 {
    assert!(a > i64::MIN && n > i64::MIN);
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut k = 1i32;

    // factor 2s out of n: (a|2) depends on a mod 8
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        k = symbol_mod_two(a);
        if k == 0 {
            return 0;
        }
    }
    // (a|-1) = sign of a
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n is now odd and positive: Jacobi loop with reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        let mut v = 0u32;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        let t = n % a;
        n = a;
        a = t;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// `(a|2)`: 0 for even a, +1 for a = ±1 mod 8, -1 for a = ±3 mod 8.
fn symbol_mod_two(a: i64) -> i32 {
    match a.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}
