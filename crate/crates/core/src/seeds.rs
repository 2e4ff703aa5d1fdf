//! Deterministic seed derivation for independent random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Generator used for every random draw in the crate.
pub type Rng = ChaCha20Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the stream `(stage, index)` under `root`. Distinct coordinates give
/// statistically independent streams, and a stream does not depend on how
/// many other streams exist.
pub fn derive_seed(root: u64, stage: u64, index: u64) -> u64 {
    splitmix(splitmix(splitmix(root) ^ stage.rotate_left(17)) ^ index.rotate_left(41))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}
