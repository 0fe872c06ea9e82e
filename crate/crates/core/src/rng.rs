//! Seeded random streams.
//!
//! Every stochastic component draws from its own ChaCha8 stream whose key is
//! derived from `(seed, label path)` through SHA-256, so streams are
//! independent of each other and of execution order, and identical on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// The random decisions a resampler needs.
///
/// Abstracted so tests can script exact draws.
pub trait Draws {
    /// Uniform integer in `0..n`. `n` must be positive.
    fn index(&mut self, n: usize) -> usize;
    /// Uniform real in `[0, 1)`.
    fn unit(&mut self) -> f64;
}

#[derive(Debug, Clone)]
pub struct StreamRng(ChaCha8Rng);

impl StreamRng {
    /// Stream keyed by `seed` and a label path such as `["smote"]` or
    /// `["fold", "3", "1"]`.
    pub fn derive(seed: u64, path: &[&str]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(b"csmoute-stream-v1");
        hasher.update(seed.to_le_bytes());
        for part in path {
            // length prefix keeps ["ab","c"] distinct from ["a","bc"]
            hasher.update((part.len() as u64).to_le_bytes());
            hasher.update(part.as_bytes());
        }
        let digest = hasher.finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest);
        StreamRng(ChaCha8Rng::from_seed(key))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.gen()
    }
}

impl Draws for StreamRng {
    fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index draw from an empty range");
        self.0.gen_range(0..n)
    }

    fn unit(&mut self) -> f64 {
        self.0.gen::<f64>()
    }
}

/// Replays fixed draws; panics when exhausted. For tests and worked examples.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    pub indices: std::collections::VecDeque<usize>,
    pub units: std::collections::VecDeque<f64>,
}

impl ScriptedDraws {
    pub fn new(indices: &[usize], units: &[f64]) -> Self {
        Self {
            indices: indices.iter().copied().collect(),
            units: units.iter().copied().collect(),
        }
    }
}

impl Draws for ScriptedDraws {
    fn index(&mut self, n: usize) -> usize {
        let i = self.indices.pop_front().expect("scripted index draws exhausted");
        assert!(i < n, "scripted index {i} out of range 0..{n}");
        i
    }

    fn unit(&mut self) -> f64 {
        self.units.pop_front().expect("scripted unit draws exhausted")
    }
}
