//! Exact-arithmetic toolkit for coefficient statistics of Hecke eigenforms and
//! their associated half-integral coefficient streams.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`qseries`] builds truncated q-expansions with arbitrary-precision
//!    integer coefficients and the level-1 normalized eigenforms (weights
//!    12, 16, 18, 20, 22, 26).
//! 2. [`shimura`] reconstructs the coefficient stream `a(t n^2)` of the
//!    half-integral-weight preimage from an eigenform, for a fixed squarefree
//!    `t`, normalized so `a(t) = 1`.
//! 3. [`signstats`] turns a stream into the multiplicative sign function
//!    `g(n) = sgn a(t n^2)` and measures partial sums, the mean value, the
//!    Halász-type envelope, and the positive/negative equidistribution ratio.
//! 4. [`densities`] partitions primes by the sign of `a(t p^2)`, scans for
//!    primes with `A(p) = ±p^{k-1}`, probes Dirichlet densities, and compares
//!    the normalized eigenvalues `A(p)/p^{(2k-1)/2}` against the semicircle
//!    law.
//!
//! [`arith`] supplies the shared kernels (sieve, Möbius, Kronecker symbol,
//! divisors).
//!
//! All coefficient arithmetic is exact; floating point appears only in the
//! analytic envelopes and density diagnostics, never in a sign decision.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the command
//! line front end live in the companion `liftsign-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod densities;
pub mod error;
pub mod qseries;
pub mod shimura;
pub mod signstats;

pub use error::Error;
