//! Seeded random streams.
//!
//! Every generator draws from ChaCha20 (a counter-based 64-bit-seeded
//! generator) keyed by the user seed, with a separate stream id per purpose.
//! Outputs are therefore identical across platforms and independent of the
//! order in which purposes are consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// FNV-1a hash of the purpose label, used as the ChaCha stream id.
fn stream_id(purpose: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in purpose.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Independent stream for `(seed, purpose)`.
pub fn stream(seed: u64, purpose: &str) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(purpose));
    rng
}
