//! Fair-coin sources for measurement disturbance and initial conjugate phases.

use std::collections::VecDeque;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait CoinSource {
    /// One fair coin toss; `true` means a `-1` sign.
    fn toss(&mut self) -> bool;
}

impl<R: RngCore> CoinSource for R {
    fn toss(&mut self) -> bool {
        self.gen()
    }
}

/// Seedable stream used for every simulation run.
pub type SeededCoins = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededCoins {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for shot `shot` of a run seeded with `seed`.
pub fn shot_stream(seed: u64, shot: u64) -> SeededCoins {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Like [`shot_stream`], but disjoint from it; used for the oracle side of
/// paired runs.
pub fn oracle_stream(seed: u64, shot: u64) -> SeededCoins {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot | (1 << 63));
    rng
}

/// A fixed sequence of coins, optionally followed by a seeded stream.
///
/// Without a fallback, tossing past the end of the sequence panics.
#[derive(Debug, Clone)]
pub struct PinnedCoins {
    queue: VecDeque<bool>,
    fallback: Option<SeededCoins>,
    drawn: usize,
}

impl PinnedCoins {
    pub fn new(coins: impl IntoIterator<Item = bool>) -> Self {
        PinnedCoins {
            queue: coins.into_iter().collect(),
            fallback: None,
            drawn: 0,
        }
    }

    /// Accepts `0`/`1` style bits.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::new(bits.iter().map(|&b| b != 0))
    }

    pub fn then_seeded(mut self, seed: u64) -> Self {
        self.fallback = Some(seeded(seed));
        self
    }

    pub fn remaining(&self) -> usize {
        self.queue.len()
    }

    pub fn drawn(&self) -> usize {
        self.drawn
    }
}

impl CoinSource for PinnedCoins {
    fn toss(&mut self) -> bool {
        self.drawn += 1;
        match self.queue.pop_front() {
            Some(c) => c,
            None => match self.fallback.as_mut() {
                Some(rng) => rng.gen(),
                None => panic!(
                    "pinned coin sequence exhausted after {} tosses",
                    self.drawn - 1
                ),
            },
        }
    }
}

/// Wraps a source and remembers every toss.
#[derive(Debug, Clone)]
pub struct RecordingCoins<C> {
    inner: C,
    log: Vec<bool>,
}

impl<C: CoinSource> RecordingCoins<C> {
    pub fn new(inner: C) -> Self {
        RecordingCoins {
            inner,
            log: Vec::new(),
        }
    }

    pub fn log(&self) -> &[bool] {
        &self.log
    }
}

impl<C: CoinSource> CoinSource for RecordingCoins<C> {
    fn toss(&mut self) -> bool {
        let c = self.inner.toss();
        self.log.push(c);
        c
    }
}
