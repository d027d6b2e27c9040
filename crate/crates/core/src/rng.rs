//! Random substreams.
//!
//! Every drop owns a seed derived from `(master_seed, drop_index)`. Inside a
//! drop, each purpose (deployment, shadowing, scheduling, fading) gets its own
//! stream so that two association policies evaluated on the same drop see the
//! same draws wherever their sample spaces coincide. Per-link fading is
//! counter based: the gain of link `(ue, bs)` in slot `s` is a pure function of
//! `(drop_seed, s, ue, bs)`, independent of which UEs happen to be scheduled.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Deployment = 1,
    Shadowing = 2,
    Scheduling = 3,
    Fading = 4,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hash an ordered list of words into one seed.
pub fn hash_words(words: &[u64]) -> u64 {
    words
        .iter()
        .fold(GOLDEN, |acc, &w| mix64(acc.wrapping_add(GOLDEN) ^ mix64(w.wrapping_add(GOLDEN))))
}

pub fn drop_seed(master_seed: u64, drop_index: u64) -> u64 {
    hash_words(&[master_seed, drop_index])
}

/// A ChaCha8 stream for one purpose within a drop.
pub fn stream(drop_seed: u64, tag: Stream, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(hash_words(&[drop_seed, tag as u64, index]))
}

/// Small counter-seeded generator used for keyed draws.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn keyed(words: &[u64]) -> Self {
        SplitMix64::new(hash_words(words))
    }
}

impl RngCore for SplitMix64 {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
