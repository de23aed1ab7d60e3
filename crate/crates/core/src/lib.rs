//! Finite objects around sum-free subsets of F_p: multiplicative characters,
//! Gauss sums, L(1, χ) values, interval character sums, coset discrepancies of
//! multiplicative subgroups, additive Fourier analysis, and exact maximal
//! sum-free subset search, plus a verification harness that checks the
//! identities connecting them over sweeps of primes.

pub mod characters;
pub mod discrepancy;
pub mod error;
pub mod fourier;
pub mod harness;
pub mod lfunctions;
pub mod modp;
pub mod sumfree;

pub use error::{Error, Result};
pub use modp::{Interval, IntervalKind, PrimeContext, SubgroupContext};
