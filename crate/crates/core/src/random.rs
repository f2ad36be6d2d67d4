//! Seeded, position-addressable randomness.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// A ChaCha stream identified by `(seed, counter)`.
///
/// The counter is the stream position in 32-bit words, so a source rebuilt
/// with [`RandomSource::at`] from the same pair replays the same draws.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn at(seed: u64, counter: u64) -> Self {
        let mut src = Self::new(seed);
        src.rng.set_word_pos(counter as u128);
        src
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counter(&self) -> u64 {
        self.rng.get_word_pos() as u64
    }

    /// Independent child source for a labelled sub-task (a trial, a grid cell).
    pub fn derive(&self, label: u64) -> RandomSource {
        RandomSource::new(mix_seed(self.seed, label))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub(crate) fn rng(&mut self) -> &mut ChaCha12Rng {
        &mut self.rng
    }
}

/// `seed ^ hash(label)` with a SplitMix64 finalizer as the hash.
pub fn mix_seed(seed: u64, label: u64) -> u64 {
    let mut z = label.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    seed ^ (z ^ (z >> 31))
}

/// Hashes a grid cell's coordinates into a single label.
pub fn cell_label(coords: &[u64]) -> u64 {
    coords.iter().fold(0xcbf2_9ce4_8422_2325u64, |acc, &c| {
        mix_seed(acc, c).rotate_left(17)
    })
}
