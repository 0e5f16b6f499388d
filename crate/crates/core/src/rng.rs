//! Portable, bit-exact pseudo-random source.
//!
//! The generator is a 64-bit linear congruential generator with Knuth's MMIX
//! constants. Every value it produces is a pure function of the 64-bit state,
//! so any language with wrapping 64-bit arithmetic reproduces the same stream.
//! Independent sub-streams are derived per `(seed, year, purpose)` with the
//! splitmix64 finalizer, which keeps each simulation step independent of how
//! many draws earlier steps consumed.

use crate::error::ParamError;

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

/// Default seed used when none is supplied on the command line.
pub const DEFAULT_SEED: u64 = 0x5150B;

/// State of the LCG. Copy it to replay a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState {
    state: u64,
}

/// Purpose tags for sub-stream derivation.
///
/// Tags occupy bits 40 and up, years fit below bit 16, so `seed ^ year ^ tag`
/// is injective in `(year, tag)` for a fixed seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Plan = 1 << 40,
    Authors = 2 << 40,
    Coauthors = 3 << 40,
    Editors = 4 << 40,
    Citations = 5 << 40,
    Attributes = 6 << 40,
    Text = 7 << 40,
    Erdoes = 8 << 40,
    Retirement = 9 << 40,
}

/// splitmix64 output finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derives the sub-stream for `(seed, year, purpose)`.
    pub fn substream(seed: u64, year: i32, purpose: Purpose) -> Self {
        let year_bits = u64::from(year as u16);
        Self::new(mix64(seed ^ year_bits ^ purpose as u64))
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// Top 53 bits of the next value scaled into `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn bernoulli(&mut self, p: f64) -> Result<bool, ParamError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ParamError::new(format!("probability {p} outside [0, 1]")));
        }
        Ok(self.next_unit() < p)
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn uniform_int(&mut self, lo: i64, hi: i64) -> Result<i64, ParamError> {
        if lo > hi {
            return Err(ParamError::new(format!("empty range [{lo}, {hi}]")));
        }
        let span = (hi - lo) as f64 + 1.0;
        let offset = (self.next_unit() * span) as i64;
        Ok(lo + offset.min(hi - lo))
    }

    /// Uniform index in `[0, len)`. `len` must be non-zero.
    pub fn index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        ((self.next_unit() * len as f64) as usize).min(len - 1)
    }

    /// Standard normal deviate (Box-Muller, one value per call).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.next_unit();
        let u2 = self.next_unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
