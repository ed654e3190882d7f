//! Bernoulli trials with rational parameter `k/n`.
//!
//! A geometric(1/2) number of flips selects a position in the binary
//! expansion of `k/n`; the expansion bit at that position is the outcome.
//! The expansion is generated on the fly by long division, so the sampler
//! needs no precision bound and spends two flips on average.

use crate::bitsource::RandomBitSource;
use crate::error::{Error, Result};
use crate::fdr::MAX_RANGE;

/// An exact fraction `num/den` with `num <= den` and `1 <= den <= 2^62`.
///
/// Not reduced on construction; all operations give the same results for
/// equivalent fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den || den > MAX_RANGE {
            return Err(Error::InvalidRational { num, den });
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `1 - p`.
    pub fn complement(&self) -> Self {
        Self {
            num: self.den - self.num,
            den: self.den,
        }
    }

    pub fn reduced(&self) -> Self {
        let g = gcd(self.num, self.den);
        Self {
            num: self.num / g,
            den: self.den / g,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Streams the binary digits of a proper fraction after the point.
#[derive(Clone, Debug)]
pub struct BinaryExpansion {
    remainder: u64,
    den: u64,
}

impl BinaryExpansion {
    pub fn new(p: Rational) -> Result<Self> {
        if p.num >= p.den {
            return Err(Error::ImproperFraction { num: p.num, den: p.den });
        }
        Ok(Self {
            remainder: p.num,
            den: p.den,
        })
    }

    #[inline]
    fn step(&mut self) -> u8 {
        self.remainder <<= 1;
        if self.remainder >= self.den {
            self.remainder -= self.den;
            1
        } else {
            0
        }
    }
}

impl Iterator for BinaryExpansion {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.step())
    }
}

/// The first `count` digits of the binary expansion of `p`.
pub fn binary_expansion(p: Rational, count: usize) -> Result<Vec<u8>> {
    Ok(BinaryExpansion::new(p)?.take(count).collect())
}

/// Outcome of one Bernoulli trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BernoulliOutcome {
    pub value: bool,
    /// Flips consumed; also the index (1-based) of the expansion digit used.
    pub bits_used: u64,
}

/// Returns `true` with probability exactly `p`.
///
/// `p = 0` and `p = 1` are answered without consuming any flip.
pub fn bernoulli_rational<S: RandomBitSource + ?Sized>(source: &mut S, p: Rational) -> Result<BernoulliOutcome> {
    if p.num == 0 || p.num == p.den {
        return Ok(BernoulliOutcome {
            value: p.num != 0,
            bits_used: 0,
        });
    }
    let mut digits = BinaryExpansion::new(p)?;
    let mut flips = 0u64;
    loop {
        let digit = digits.step();
        flips += 1;
        if source.next_bit()? == 1 {
            return Ok(BernoulliOutcome {
                value: digit == 1,
                bits_used: flips,
            });
        }
    }
}
