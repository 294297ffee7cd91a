//! Coefficient generator for the experiments.
//!
//! SplitMix64 is small, fast and fully specified, so a seed reproduces the
//! same coefficients on every platform. Draws map to `[-1, 1)` by taking the
//! top 53 bits as a uniform double `u` in `[0, 1)` and returning `2u - 1`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct CoefficientRng {
    inner: SplitMix64,
}

impl CoefficientRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    /// Independent stream for one experiment row.
    pub fn for_row(seed: u64, param: u32) -> Self {
        let mut mix = SplitMix64::seed_from_u64(seed ^ u64::from(param).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        Self::new(mix.next_u64())
    }

    pub fn next_unit(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[-1, 1)`.
    pub fn next_coefficient(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }

    pub fn coefficients(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_coefficient()).collect()
    }
}
