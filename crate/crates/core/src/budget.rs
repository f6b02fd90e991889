//! Sampling and enumeration limits shared by the checkers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest carrier on which quantifications are carried out exhaustively.
    pub max_exhaustive_size: usize,
    /// Number of seeded samples drawn where exhaustive checking is too costly.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_exhaustive_size: 3, samples: 200, seed: 0 }
    }
}

impl Budget {
    pub fn new(max_exhaustive_size: usize, samples: usize, seed: u64) -> Self {
        Budget { max_exhaustive_size, samples: samples.max(1), seed }
    }

    /// A generator for one named stream; distinct streams are independent
    /// and each is reproducible from the seed alone.
    pub fn rng(&self, stream: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(fnv1a(stream.as_bytes()));
        rng
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}
