//! Seed derivation.
//!
//! Every sampling call is driven by a [`Seed`] `(master, stream)`. The pair is
//! folded into one 64-bit key by
//!
//! ```text
//! mix(master, stream) = splitmix64(master ^ splitmix64(stream ^ 0x9E3779B97F4A7C15))
//! ```
//!
//! and the ChaCha8 key is the four successive SplitMix64 outputs seeded at
//! that value, little-endian. Experiments use `stream = point << 32 | trial`
//! (independent mode) or `stream = trial` (coupled mode), so any single trial
//! can be replayed outside this crate. Vertex `v` of a sampled graph draws
//! from ChaCha stream `v` under that key, so its item set does not depend on
//! how much randomness the other vertices consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finalizer applied to `x + GOLDEN_GAMMA`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn mix(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream ^ GOLDEN_GAMMA))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Seed {
    pub master: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    /// Seed for trial `trial` of grid point `point`.
    pub fn for_trial(master: u64, point: u32, trial: u32) -> Self {
        Self::new(master, (u64::from(point) << 32) | u64::from(trial))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut state = mix(self.master, self.stream);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&state.to_le_bytes());
            state = splitmix64(state);
        }
        ChaCha8Rng::from_seed(key)
    }

    /// The generator for vertex `v`: ChaCha stream `v` under this seed's key.
    pub fn vertex_rng(&self, v: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(v);
        rng
    }
}
