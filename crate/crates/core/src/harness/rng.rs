//! Seeded random sets for the verification suites.
//!
//! Each (seed, suite, p) triple gets its own ChaCha8 stream seeded with
//! `seed ^ fnv1a64(suite) ^ p·0x9E3779B97F4A7C15`. Integers below `n` are
//! drawn as `(next_u64 · n) >> 64`, reals in [0, 1) as `(next_u64 >> 11)·2^−53`,
//! and subsets of size s by a partial Fisher–Yates shuffle of the ascending
//! universe, returned sorted.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fnv1a64(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub struct SeededSets {
    rng: ChaCha8Rng,
}

impl SeededSets {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn for_case(seed: u64, suite: &str, p: u32) -> Self {
        Self::new(seed ^ fnv1a64(suite) ^ (p as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn below(&mut self, n: u64) -> u64 {
        ((self.rng.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform integer in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn subset(&mut self, universe: &[u32], size: usize) -> Vec<u32> {
        let mut pool = universe.to_vec();
        let size = size.min(pool.len());
        for i in 0..size {
            let j = i + self.below((pool.len() - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(size);
        pool.sort_unstable();
        pool
    }

    /// Nonempty random subset of F_p^* with size uniform in `1..=max_size`.
    pub fn nonzero_subset(&mut self, p: u32, max_size: usize) -> Vec<u32> {
        let universe: Vec<u32> = (1..p).collect();
        let hi = max_size.clamp(1, universe.len()) as u64;
        let size = self.between(1, hi) as usize;
        self.subset(&universe, size)
    }
}
