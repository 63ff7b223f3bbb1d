//! Counter-based random streams.
//!
//! Every sample is addressed by `(seed, stream, counter)`. The backing
//! generator is ChaCha8 keyed by the seed, with the stream id selecting the
//! ChaCha nonce and the counter selecting the word position, so any range of
//! counters can be drawn independently and in any order.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// A generator positioned at 64-bit word `counter`.
    pub fn cursor(&self, counter: u64) -> Cursor {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        // word_pos counts 32-bit words
        rng.set_word_pos(u128::from(counter) * 2);
        Cursor { rng }
    }

    /// The 64-bit word at `counter`.
    pub fn word(&self, counter: u64) -> u64 {
        self.cursor(counter).next_u64()
    }

    /// Uniform in `[0, 1)` from the word at `counter`.
    pub fn uniform(&self, counter: u64) -> f64 {
        to_unit(self.word(counter))
    }

    pub fn substream(&self, offset: u64) -> RngStream {
        RngStream::new(self.seed, self.stream_id.wrapping_add(offset))
    }
}

/// Sequential reader over consecutive counters of one stream.
pub struct Cursor {
    rng: ChaCha8Rng,
}

impl Cursor {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        to_unit(self.next_u64())
    }
}

fn to_unit(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
