//! Sources of unbiased random bits with exact consumption accounting.
//!
//! Every sampler in this crate draws its randomness one bit at a time through
//! [`RandomBitSource`]. The production source, [`BufferedWordSource`], buffers
//! one 32-bit word from an injected word generator and serves its bits
//! most-significant first, so 32 served bits always cost exactly one word.
//! [`ScriptedBitSource`] replays a fixed bit sequence for test vectors.

use rand_chacha::ChaCha8Rng;
use rand_core::{impls, RngCore, SeedableRng};

use crate::error::{Error, Result};

/// A stateful supplier of unbiased bits.
///
/// `bits_consumed` grows by exactly one per successful `next_bit` call and is
/// only ever lowered by `reset_counter`.
pub trait RandomBitSource {
    /// Returns the next bit, `0` or `1`.
    fn next_bit(&mut self) -> Result<u8>;

    /// Total bits served since construction or the last reset.
    fn bits_consumed(&self) -> u64;

    /// Zeroes the consumption counter without touching the bit stream.
    fn reset_counter(&mut self);
}

impl<S: RandomBitSource + ?Sized> RandomBitSource for &mut S {
    fn next_bit(&mut self) -> Result<u8> {
        (**self).next_bit()
    }

    fn bits_consumed(&self) -> u64 {
        (**self).bits_consumed()
    }

    fn reset_counter(&mut self) {
        (**self).reset_counter()
    }
}

impl<S: RandomBitSource + ?Sized> RandomBitSource for Box<S> {
    fn next_bit(&mut self) -> Result<u8> {
        (**self).next_bit()
    }

    fn bits_consumed(&self) -> u64 {
        (**self).bits_consumed()
    }

    fn reset_counter(&mut self) {
        (**self).reset_counter()
    }
}

/// Bit source that buffers 32-bit words drawn from a word generator.
///
/// Any [`RngCore`] works as the word generator; only `next_u32` is called.
#[derive(Clone, Debug)]
pub struct BufferedWordSource<R> {
    words: R,
    word: u32,
    // Bits still unread in `word`; they sit at positions pos-1 down to 0.
    pos: u32,
    counter: u64,
    words_fetched: u64,
}

/// The default seeded source: ChaCha8 words, buffered bit by bit.
pub type SeededBitSource = BufferedWordSource<ChaCha8Rng>;

impl SeededBitSource {
    /// Deterministic source; equal seeds give identical bit streams.
    pub fn seeded(seed: u64) -> Self {
        Self::new(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl<R: RngCore> BufferedWordSource<R> {
    pub fn new(words: R) -> Self {
        Self {
            words,
            word: 0,
            pos: 0,
            counter: 0,
            words_fetched: 0,
        }
    }

    /// Number of 32-bit words requested from the generator so far.
    pub fn words_fetched(&self) -> u64 {
        self.words_fetched
    }

    #[inline]
    fn bit(&mut self) -> u8 {
        if self.pos == 0 {
            self.word = self.words.next_u32();
            self.words_fetched += 1;
            self.pos = 32;
        }
        self.counter += 1;
        self.pos -= 1;
        ((self.word >> self.pos) & 1) as u8
    }
}

impl<R: RngCore> RandomBitSource for BufferedWordSource<R> {
    #[inline]
    fn next_bit(&mut self) -> Result<u8> {
        Ok(self.bit())
    }

    fn bits_consumed(&self) -> u64 {
        self.counter
    }

    fn reset_counter(&mut self) {
        self.counter = 0;
    }
}

/// Replays an explicit bit sequence; running past its end is an error.
#[derive(Clone, Debug, Default)]
pub struct ScriptedBitSource {
    bits: Vec<u8>,
    cursor: usize,
    counter: u64,
}

impl ScriptedBitSource {
    /// Builds a script from bits; any nonzero entry counts as a `1`.
    pub fn new<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Self {
            bits: bits.into_iter().map(|b| u8::from(b != 0)).collect(),
            cursor: 0,
            counter: 0,
        }
    }

    /// Parses a string of `0`/`1` characters, ignoring everything else.
    pub fn from_str_bits(s: &str) -> Self {
        Self::new(s.bytes().filter_map(|c| match c {
            b'0' => Some(0),
            b'1' => Some(1),
            _ => None,
        }))
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.cursor
    }
}

impl RandomBitSource for ScriptedBitSource {
    fn next_bit(&mut self) -> Result<u8> {
        match self.bits.get(self.cursor) {
            Some(&b) => {
                self.cursor += 1;
                self.counter += 1;
                Ok(b)
            }
            None => Err(Error::ScriptExhausted {
                served: self.cursor as u64,
            }),
        }
    }

    fn bits_consumed(&self) -> u64 {
        self.counter
    }

    fn reset_counter(&mut self) {
        self.counter = 0;
    }
}

/// Word generator that cycles through a fixed list of 32-bit words.
#[derive(Clone, Debug)]
pub struct ScriptedWords {
    words: Vec<u32>,
    cursor: usize,
}

impl ScriptedWords {
    /// Panics if `words` is empty.
    pub fn new(words: Vec<u32>) -> Self {
        assert!(!words.is_empty(), "scripted word list must not be empty");
        Self { words, cursor: 0 }
    }
}

impl RngCore for ScriptedWords {
    fn next_u32(&mut self) -> u32 {
        let w = self.words[self.cursor];
        self.cursor = (self.cursor + 1) % self.words.len();
        w
    }

    fn next_u64(&mut self) -> u64 {
        impls::next_u64_via_u32(self)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        impls::fill_bytes_via_next(self, dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand_core::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}
