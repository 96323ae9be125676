//! Reproducible randomness: one seed, one independent ChaCha stream per
//! task index, so parallel evaluation gives the same numbers as serial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for task `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
