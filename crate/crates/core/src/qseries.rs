//! Truncated power series over arbitrary-precision integers, and the
//! level-1 normalized eigenforms built from them.
//!
//! Coefficients are always exact `BigInt`s: every sign decision downstream
//! rests on these values, so no floating point enters this module. Precision
//! (the inclusive truncation order) is explicit in every value and arithmetic
//! results carry the minimum of the operand precisions.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use crate::error::Error;

/// A power series truncated at an explicit order `N`: exactly `N + 1`
/// coefficients, `coeffs[n]` multiplying `q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Wrap an explicit coefficient vector; the precision is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 coefficient");
        QSeries { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(precision: usize) -> Self {
        QSeries { coeffs: vec![BigInt::zero(); precision + 1] }
    }

    pub fn one(precision: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); precision + 1];
        coeffs[0] = BigInt::one();
        QSeries { coeffs }
    }

    /// Inclusive truncation order.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`. Panics beyond the precision.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Copy of the series truncated to a (not larger) precision.
    pub fn truncated(&self, precision: usize) -> Self {
        assert!(precision <= self.precision(), "cannot extend a truncated series");
        QSeries { coeffs: self.coeffs[..=precision].to_vec() }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let prec = self.precision().min(other.precision());
        let coeffs = (0..=prec)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        QSeries { coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let prec = self.precision().min(other.precision());
        let coeffs = (0..=prec)
            .map(|n| &self.coeffs[n] - &other.coeffs[n])
            .collect();
        QSeries { coeffs }
    }

    pub fn neg(&self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Exact Cauchy product truncated at the minimum operand precision.
    ///
    /// The operand with fewer nonzero coefficients in the window drives the
    /// outer loop, so multiplying a dense series by a sparse one (the
    /// pentagonal series, a lone monomial) costs only
    /// `nonzero(sparse) * precision` coefficient operations.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let prec = self.precision().min(other.precision());
        let self_nz = count_nonzero(&self.coeffs, prec);
        let other_nz = count_nonzero(&other.coeffs, prec);
        let (sparse, dense) = if self_nz <= other_nz {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };

        let mut out = vec![BigInt::zero(); prec + 1];
        for (i, si) in sparse.iter().enumerate().take(prec + 1) {
            if si.is_zero() {
                continue;
            }
            let window = &dense[..=prec - i];
            let target = &mut out[i..];
            if si.is_one() {
                for (o, d) in target.iter_mut().zip(window) {
                    if !d.is_zero() {
                        *o += d;
                    }
                }
            } else if is_minus_one(si) {
                for (o, d) in target.iter_mut().zip(window) {
                    if !d.is_zero() {
                        *o -= d;
                    }
                }
            } else {
                for (o, d) in target.iter_mut().zip(window) {
                    if !d.is_zero() {
                        *o += si * d;
                    }
                }
            }
        }
        QSeries { coeffs: out }
    }

    /// `self` raised to `e` by binary exponentiation; `e = 0` is the
    /// constant series 1 at the same precision.
    pub fn pow(&self, e: u64) -> QSeries {
        let mut result = QSeries::one(self.precision());
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = base.mul(&base);
        }
    }

    pub fn scale(&self, c: &BigInt) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divide every coefficient by `d`, failing if any division is inexact.
    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<QSeries, Error> {
        assert!(!d.is_zero(), "division by zero");
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = num_integer::Integer::div_rem(c, d);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            coeffs.push(q);
        }
        Ok(QSeries { coeffs })
    }
}

fn count_nonzero(coeffs: &[BigInt], prec: usize) -> usize {
    coeffs[..=prec].iter().filter(|c| !c.is_zero()).count()
}

fn is_minus_one(x: &BigInt) -> bool {
    x.sign() == Sign::Minus && x.magnitude().is_one()
}

/// Exponent/sign pairs of the expansion `prod_{n>=1}(1 - q^n) =
/// sum_j (-1)^j q^{j(3j-1)/2}`, ascending, up to `precision`. Includes the
/// constant term `(0, +1)`.
fn pentagonal_terms(precision: usize) -> Vec<(usize, i8)> {
    let mut terms = vec![(0usize, 1i8)];
    let mut j = 1u64;
    loop {
        let e1 = (j * (3 * j - 1) / 2) as usize;
        if e1 > precision {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        terms.push((e1, sign));
        let e2 = (j * (3 * j + 1) / 2) as usize;
        if e2 <= precision {
            terms.push((e2, sign));
        }
        j += 1;
    }
    terms
}

/// `prod_{n>=1}(1 - q^n)` truncated at `precision`, assembled directly from
/// the pentagonal-number expansion, so it has only `O(sqrt(precision))`
/// nonzero terms.
pub fn euler_product(precision: usize) -> QSeries {
    let mut coeffs = vec![BigInt::zero(); precision + 1];
    for (e, s) in pentagonal_terms(precision) {
        coeffs[e] = BigInt::from(s);
    }
    QSeries { coeffs }
}

/// Normalized Eisenstein series with integer coefficients:
/// `E_4 = 1 + 240 sum sigma_3(n) q^n`, `E_6 = 1 - 504 sum sigma_5(n) q^n`.
/// Only weights 4 and 6 are supported.
pub fn eisenstein(weight: u32, precision: usize) -> Result<QSeries, Error> {
    let (power, factor) = match weight {
        4 => (3u32, BigInt::from(240)),
        6 => (5u32, BigInt::from(-504)),
        w => return Err(Error::UnsupportedEisensteinWeight { weight: w }),
    };
    // divisor-power sums by the harmonic-series sweep; u128 holds
    // sigma_5(n) comfortably for any precision this crate can allocate
    let mut sigma = vec![0u128; precision + 1];
    for d in 1..=precision {
        let dp = (d as u128).pow(power);
        for m in (d..=precision).step_by(d) {
            sigma[m] = sigma[m].checked_add(dp).expect("divisor power sum overflow");
        }
    }
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(BigInt::one());
    for s in sigma.into_iter().skip(1) {
        coeffs.push(&factor * BigInt::from(s));
    }
    Ok(QSeries { coeffs })
}

/// The level-1 weights whose cusp space is one-dimensional, so "the
/// normalized eigenform of weight w" is well defined.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// A normalized cuspidal eigenform of even weight `2k`: `q`-expansion with
/// `A(0) = 0`, `A(1) = 1`, and Hecke-multiplicative coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenform {
    weight: u32,
    qexp: QSeries,
}

impl Eigenform {
    /// Validates the weight and the `0, 1, ...` normalization; deeper
    /// invariants (multiplicativity, the Deligne bound) are checkable with
    /// [`Eigenform::satisfies_deligne_at`] and the test suites.
    pub fn new(weight: u32, qexp: QSeries) -> Result<Self, Error> {
        if !SUPPORTED_WEIGHTS.contains(&weight) {
            return Err(Error::UnsupportedEigenformWeight { weight });
        }
        if qexp.precision() < 1 || !qexp.coeff(0).is_zero() || !qexp.coeff(1).is_one() {
            return Err(Error::NotNormalized);
        }
        Ok(Eigenform { weight, qexp })
    }

    /// Bypass all validation. For synthetic data in tests and diagnostics.
    pub fn from_parts_unchecked(weight: u32, qexp: QSeries) -> Self {
        Eigenform { weight, qexp }
    }

    /// The integral weight `2k`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Half of the weight; the half-integral side has weight `k + 1/2`.
    pub fn k(&self) -> u32 {
        self.weight / 2
    }

    pub fn precision(&self) -> usize {
        self.qexp.precision()
    }

    /// Hecke eigenvalue `A(n)`. Panics beyond the precision.
    pub fn a(&self, n: usize) -> &BigInt {
        self.qexp.coeff(n)
    }

    pub fn qexp(&self) -> &QSeries {
        &self.qexp
    }

    /// Exact check of `|A(p)| <= 2 p^((2k-1)/2)`, i.e. `A(p)^2 <= 4 p^(2k-1)`.
    pub fn satisfies_deligne_at(&self, p: u64) -> bool {
        let a = self.a(p as usize);
        let lhs = a * a;
        let rhs = BigInt::from(4) * BigInt::from(p).pow(self.weight - 1);
        lhs <= rhs
    }
}

/// The discriminant form: weight 12, `q prod_{n>=1}(1-q^n)^24`.
///
/// The 24th power is taken as 24 successive multiplications by the sparse
/// pentagonal series, keeping the build at `O(N^{3/2})` coefficient
/// operations instead of the `O(N^2)` of dense squaring.
pub fn delta(precision: usize) -> Eigenform {
    assert!(precision >= 1, "delta needs precision >= 1");
    let euler = euler_product(precision - 1);
    let mut power = euler.clone();
    for _ in 1..24 {
        power = power.mul(&euler);
    }
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(BigInt::zero());
    coeffs.extend(power.coeffs);
    Eigenform::new(12, QSeries::from_coeffs(coeffs)).expect("eta product is normalized")
}

/// The discriminant form by the independent route `(E_4^3 - E_6^2) / 1728`.
///
/// Dense cubing makes this O(N^2); it exists as the oracle against
/// [`delta`], not as the production constructor.
pub fn delta_eisenstein_route(precision: usize) -> Result<Eigenform, Error> {
    assert!(precision >= 1, "delta needs precision >= 1");
    let e4 = eisenstein(4, precision)?;
    let e6 = eisenstein(6, precision)?;
    let numerator = e4.pow(3).sub(&e6.pow(2));
    let qexp = numerator.div_exact_scalar(&BigInt::from(1728))?;
    Eigenform::new(12, qexp)
}

/// The unique normalized cusp form of the given weight, constructed as
/// `delta` times the one-dimensional Eisenstein monomial of weight
/// `2k - 12`. Rejects weights whose cusp space is not one-dimensional.
pub fn level1_eigenform(weight: u32, precision: usize) -> Result<Eigenform, Error> {
    assert!(precision >= 1, "eigenform needs precision >= 1");
    let tail: &[u32] = match weight {
        12 => &[],
        16 => &[4],
        18 => &[6],
        20 => &[4, 4],
        22 => &[4, 6],
        26 => &[4, 4, 6],
        w => return Err(Error::UnsupportedEigenformWeight { weight: w }),
    };
    let mut qexp = delta(precision).qexp.clone();
    for &w in tail {
        qexp = qexp.mul(&eisenstein(w, precision)?);
    }
    Eigenform::new(weight, qexp)
}
