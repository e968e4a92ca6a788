//! Seeded random sources.
//!
//! The generator is fixed so that any implementation can reproduce the same
//! matrices from the same seed:
//!
//! * state: xoshiro256** seeded from a `u64` by four successive SplitMix64
//!   outputs (the reference `seed_from_u64` procedure);
//! * uniform: `u = ((next_u64() >> 11) + 1) * 2^-53`, so `u` lies in `(0, 1]`;
//! * normal: Box–Muller on two uniforms `u1, u2`,
//!   `z0 = sqrt(-2 ln u1) cos(2 pi u2)`, `z1 = sqrt(-2 ln u1) sin(2 pi u2)`,
//!   emitted in the order `z0, z1`;
//! * bounded integer `below(n)`: draw `x = next_u64()`, reject while
//!   `x >= 2^64 - (2^64 mod n)`, return `x mod n`.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// SplitMix64 finalizer step, used to derive independent seeds.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic source of uniform, normal and bounded-integer draws.
#[derive(Debug, Clone)]
pub struct GaussianSource {
    rng: Xoshiro256StarStar,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn from_seed(seed: u64) -> Self {
        Self { rng: Xoshiro256StarStar::seed_from_u64(seed), spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `(0, 1]`.
    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let angle = 2.0 * core::f64::consts::PI * u2;
        self.spare = Some(r * libm::sin(angle));
        r * libm::cos(angle)
    }

    /// Uniform integer in `0..n`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is empty");
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.rng.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    /// `k` distinct indices from `0..n`, sorted ascending (partial Fisher–Yates).
    ///
    /// # Panics
    /// If `k > n`.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot draw {k} distinct indices from {n}");
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut out = pool[..k].to_vec();
        out.sort_unstable();
        out
    }
}
