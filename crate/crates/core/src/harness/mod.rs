//! Parameter sweeps that check the identities and bounds over ranges of primes.

pub mod config;
pub mod report;
pub mod rng;
pub mod suites;
pub mod sweep;

pub use config::{OutputFormat, ResidueFilter, SweepConfig, SUITES};
pub use report::{CaseRecord, Relation, VerificationReport};
pub use suites::run_suite;
pub use sweep::sweep;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "SUMFREE_THREADS";

/// Sizes the global rayon pool from `SUMFREE_THREADS` if it is set.
/// Results do not depend on the thread count.
pub fn configure_threads() -> crate::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| crate::Error::InvalidConfig(format!("{THREADS_ENV}=`{raw}` is not a count")))?;
    // a second call keeps the existing pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}
