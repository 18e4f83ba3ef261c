//! Crate-wide error type.

use core::fmt;

/// Errors reported by construction and validation paths.
///
/// Query functions whose domain is fixed by an already-validated value
/// (coefficient accessors, `mobius`, `divisors`, ...) panic on out-of-range
/// arguments instead; those are caller bugs, not runtime conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Eisenstein series only implemented for weights 4 and 6.
    UnsupportedEisensteinWeight { weight: u32 },
    /// Requested eigenform weight is not one of the one-dimensional cusp
    /// spaces 12, 16, 18, 20, 22, 26.
    UnsupportedEigenformWeight { weight: u32 },
    /// An eigenform q-expansion must start `0 + q + ...`.
    NotNormalized,
    /// Coefficient-wise scalar division left a nonzero remainder.
    InexactDivision,
    /// Lift parameter `t` must be a squarefree positive integer.
    NotSquarefree { t: u64 },
    /// Lift weight must be an even integer `2k` with `k >= 2`.
    InvalidLiftWeight { weight: u32 },
    /// Eigenform weight does not match the lift parameters.
    WeightMismatch { expected: u32, found: u32 },
    /// An operation needs more q-expansion coefficients than are available.
    InsufficientPrecision { required: u64, available: u64 },
    /// Sieve tables for this limit would exceed the memory budget.
    SieveBudgetExceeded { limit: u64, budget_bytes: u64 },
    /// Sieve limit does not fit the table representation.
    SieveLimitTooLarge { limit: u64 },
    /// A prime-indexed scan needs a sieve extending at least to `required`.
    TableTooSmall { required: u64, limit: u64 },
    /// Checkpoint exceeds the available data.
    CheckpointOutOfRange { checkpoint: u64, max: u64 },
    /// Checkpoints must be strictly ascending and start at 1 or later.
    CheckpointsNotAscending,
    /// The Halász-type bound is only defined for `x >= 2`.
    HalaszDomain { x: u64 },
    /// Positive/negative ratio is undefined when every term so far is zero.
    UndefinedRatio,
    /// Histograms need at least two bins.
    InvalidBins { bins: usize },
    /// z-grid values must lie in (1, 2] and be strictly decreasing.
    InvalidZGrid,
    /// A normalized eigenvalue left [-2, 2]; the coefficient data is corrupt.
    DeligneViolation { p: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedEisensteinWeight { weight } => {
                write!(f, "Eisenstein weight {weight} not supported (use 4 or 6)")
            }
            Error::UnsupportedEigenformWeight { weight } => write!(
                f,
                "weight {weight} is not a one-dimensional level-1 cusp space \
                 (supported: 12, 16, 18, 20, 22, 26)"
            ),
            Error::NotNormalized => {
                write!(f, "eigenform q-expansion must be normalized: a(0)=0, a(1)=1")
            }
            Error::InexactDivision => write!(f, "scalar division of series is not exact"),
            Error::NotSquarefree { t } => write!(f, "t must be squarefree, got {t}"),
            Error::InvalidLiftWeight { weight } => {
                write!(f, "lift weight must be even and at least 4, got {weight}")
            }
            Error::WeightMismatch { expected, found } => {
                write!(f, "eigenform weight {found} does not match lift weight {expected}")
            }
            Error::InsufficientPrecision { required, available } => {
                write!(f, "needs precision {required}, only {available} available")
            }
            Error::SieveBudgetExceeded { limit, budget_bytes } => {
                write!(f, "sieve to {limit} exceeds memory budget of {budget_bytes} bytes")
            }
            Error::SieveLimitTooLarge { limit } => {
                write!(f, "sieve limit {limit} exceeds table representation")
            }
            Error::TableTooSmall { required, limit } => {
                write!(f, "prime table to {limit} too small, need {required}")
            }
            Error::CheckpointOutOfRange { checkpoint, max } => {
                write!(f, "checkpoint {checkpoint} out of range (max {max})")
            }
            Error::CheckpointsNotAscending => {
                write!(f, "checkpoints must be strictly ascending and positive")
            }
            Error::HalaszDomain { x } => write!(f, "Halász bound requires x >= 2, got {x}"),
            Error::UndefinedRatio => {
                write!(f, "sign ratio undefined: no nonzero terms in range")
            }
            Error::InvalidBins { bins } => write!(f, "need at least 2 bins, got {bins}"),
            Error::InvalidZGrid => {
                write!(f, "z-grid must be strictly decreasing with values in (1, 2]")
            }
            Error::DeligneViolation { p } => write!(
                f,
                "|A({p})| exceeds 2 p^((2k-1)/2): eigenform coefficients are corrupt"
            ),
        }
    }
}

impl core::error::Error for Error {}
