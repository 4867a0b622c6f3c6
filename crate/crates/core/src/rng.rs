//! Deterministic seed derivation.
//!
//! Every random decision in the pipeline flows from a single base seed
//! through [`derive_seed`], so runs are reproducible regardless of worker
//! count: parallel units (trajectories, episodes, epochs) each get a seed
//! that depends only on the base seed, a stream tag, and their index.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags keep independent consumers of the same base seed decorrelated.
pub mod stream {
    pub const TRAJECTORY: u64 = 0x1;
    pub const SHUFFLE: u64 = 0x2;
    pub const INIT: u64 = 0x3;
    pub const EPISODE: u64 = 0x4;
    pub const GOALS: u64 = 0x5;
}

/// SplitMix64 finalizer; full-period mixing of a 64-bit word.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed from `(base, stream, index)`.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base ^ stream.rotate_left(32)) ^ index)
}

/// The crate-wide RNG: seeded ChaCha8.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
