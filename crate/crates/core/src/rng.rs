//! Seedable, splittable randomness.
//!
//! Every randomized round draws from its own ChaCha stream keyed by the
//! master seed and a purpose tag, with the round index as the stream id.
//! Rounds are therefore pure functions of `(seed, tag, round)` and can run
//! in any order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags. Hendrickson edge deletions use `REDUNDANT + edge_index`.
pub mod tag {
    pub const LOCAL: u64 = 1;
    pub const GLOBAL: u64 = 2;
    pub const K_MIN: u64 = 3;
    pub const K_SH: u64 = 4;
    pub const ORACLE_LOCAL: u64 = 5;
    pub const ORACLE_GLOBAL: u64 = 6;
    pub const REDUNDANT: u64 = 1 << 32;
}

pub fn round_rng(seed: u64, tag: u64, round: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&tag.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(round);
    rng
}
