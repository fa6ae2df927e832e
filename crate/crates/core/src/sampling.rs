//! Seeded uniform sampling of integers.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic stream of uniform integers on `[1, n]`.
///
/// Each draw takes 64-bit generator outputs and rejects the incomplete top
/// block, so every value in range is exactly equally likely.
#[derive(Clone, Debug)]
pub struct UniformSampler {
    rng: ChaCha8Rng,
    n: u64,
    threshold: u64,
}

impl UniformSampler {
    /// # Panics
    /// If `n == 0`.
    pub fn new(n: u64, seed: u64) -> Self {
        assert!(n >= 1, "sampling range must be non-empty");
        UniformSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
            // 2^64 mod n: outputs below this would over-represent small residues.
            threshold: n.wrapping_neg() % n,
        }
    }

    pub fn sample(&mut self) -> u64 {
        loop {
            let x = self.rng.next_u64();
            if x >= self.threshold {
                return x % self.n + 1;
            }
        }
    }
}

impl Iterator for UniformSampler {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.sample())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stays_in_range() {
        for n in [1u64, 2, 3, 7, 1000, u64::MAX] {
            for z in UniformSampler::new(n, 9).take(1000) {
                assert!((1..=n).contains(&z));
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<u64> = UniformSampler::new(1_000_000, 42).take(100).collect();
        let b: Vec<u64> = UniformSampler::new(1_000_000, 42).take(100).collect();
        let c: Vec<u64> = UniformSampler::new(1_000_000, 43).take(100).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn roughly_uniform() {
        let mut hist = [0u32; 6];
        for z in UniformSampler::new(6, 1).take(60_000) {
            hist[(z - 1) as usize] += 1;
        }
        for h in hist {
            // sd = sqrt(60000 * 1/6 * 5/6) ≈ 91
            assert!((h as i64 - 10_000).abs() < 500, "{hist:?}");
        }
    }
}
