//! Seeded randomness.
//!
//! Every random draw in the crate comes from a ChaCha8 stream (a counter-based
//! generator) keyed by a 64-bit seed. Independent streams for trials, probes or
//! restarts are derived with [`derive_seed`], which mixes the master seed and a
//! stream index through SplitMix64. Normal variates use the Marsaglia polar
//! method. Within a build, identical seeds give bit-identical draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Real;

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th sub-stream of `master`.
#[inline]
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Seeded generator with a cached spare normal variate.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Generator for sub-stream `index` of `master`.
    pub fn stream(master: u64, index: u64) -> Self {
        Self::new(derive_seed(master, index))
    }

    /// Uniform in [0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform integer in 0..n.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Standard normal via the polar method; the second variate of each
    /// accepted pair is cached for the next call.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }

    #[inline]
    pub fn normal_as<T: Real>(&mut self) -> T {
        T::lit(self.normal())
    }

    pub fn normals<T: Real>(&mut self, len: usize) -> Vec<T> {
        (0..len).map(|_| self.normal_as()).collect()
    }
}
