//! Exact expected costs as periodic binary fractions.
//!
//! `u_n = sum_k (2^k mod n) / 2^k` always has an odd denominator, so its
//! fractional part is a purely periodic binary fraction `N / (2^T - 1)`.
//! [`PeriodicRational`] stores the integer part with the shortest repetend,
//! which makes structural equality coincide with equality of values. The
//! repetend of `u_n` can be as long as `ord_m(2)` bits (`m` the odd part of
//! `n`), which is why periods beyond [`MAX_EXACT_PERIOD`] are refused.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::numtheory::{factorize, order_of_two};
use crate::error::{Error, Result};

/// Longest repetend, in bits, the exact path will materialise.
pub const MAX_EXACT_PERIOD: u64 = 1 << 27;

/// `integer + repetend / (2^period - 1)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicRational {
    integer: u64,
    period: u64,
    repetend: BigUint,
}

fn all_ones(bits: u64) -> BigUint {
    (BigUint::one() << bits) - 1u32
}

impl PeriodicRational {
    pub fn from_integer(integer: u64) -> Self {
        Self {
            integer,
            period: 1,
            repetend: BigUint::zero(),
        }
    }

    /// `num / den`; the reduced denominator must be odd.
    pub fn from_fraction(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let g = crate::bernoulli::gcd(num, den);
        let (num, den) = (num / g, den / g);
        if den % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "{num}/{den} has an even denominator and no purely periodic expansion"
            )));
        }
        let integer = num / den;
        let rem = num % den;
        if rem == 0 {
            return Ok(Self::from_integer(integer));
        }
        let period = order_of_two(den);
        if period > MAX_EXACT_PERIOD {
            return Err(Error::PeriodTooLong { modulus: den, period });
        }
        let repetend = all_ones(period) / den * rem;
        Ok(Self::normalized(integer, period, repetend))
    }

    /// Builds `integer + value / (2^period - 1)` for any `value`.
    fn normalized(mut integer: u64, period: u64, mut value: BigUint) -> Self {
        let ones = all_ones(period);
        while value > ones {
            let high = &value >> period;
            let low = &value & &ones;
            integer += high.to_u64().expect("integer part exceeds 64 bits");
            value = high + low;
        }
        if value == ones {
            integer += 1;
            value = BigUint::zero();
        }
        let mut out = Self {
            integer,
            period,
            repetend: value,
        };
        out.shorten_period();
        out
    }

    fn shorten_period(&mut self) {
        if self.repetend.is_zero() {
            self.period = 1;
            return;
        }
        for (q, _) in factorize(self.period) {
            while self.period.is_multiple_of(q) {
                let t = self.period / q;
                let head = &self.repetend >> t;
                let rest = &self.repetend & all_ones(self.period - t);
                if head != rest {
                    break;
                }
                self.repetend &= all_ones(t);
                self.period = t;
            }
        }
    }

    pub fn integer_part(&self) -> u64 {
        self.integer
    }

    /// Length in bits of the shortest repetend (1 for integers).
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn repetend(&self) -> &BigUint {
        &self.repetend
    }

    pub fn is_integer(&self) -> bool {
        self.repetend.is_zero()
    }

    /// Unreduced `(numerator, denominator)` with denominator `2^period - 1`.
    pub fn to_fraction(&self) -> (BigUint, BigUint) {
        let den = all_ones(self.period);
        (&den * self.integer + &self.repetend, den)
    }

    pub fn checked_add_integer(&self, k: u64) -> Option<Self> {
        Some(Self {
            integer: self.integer.checked_add(k)?,
            period: self.period,
            repetend: self.repetend.clone(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        let frac = if self.repetend.is_zero() {
            0.0
        } else if self.period <= 64 {
            self.repetend.to_f64().unwrap_or(0.0) / (2f64.powi(self.period as i32) - 1.0)
        } else {
            let top = (&self.repetend >> (self.period - 64)).to_u64().unwrap_or(u64::MAX);
            top as f64 / 2f64.powi(64)
        };
        self.integer as f64 + frac
    }
}

impl fmt::Debug for PeriodicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PeriodicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.integer)
        } else if self.period <= 128 {
            write!(f, "{} + {}/(2^{} - 1)", self.integer, self.repetend, self.period)
        } else {
            write!(
                f,
                "{} + <{}-bit repetend>/(2^{} - 1)",
                self.integer, self.period, self.period
            )
        }
    }
}

// Sum over i of i * bit_i(w) * 2^i, using the binary digits of i as masks.
#[inline]
fn weighted_bit_sum(w: u64) -> u128 {
    const MASKS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    MASKS
        .iter()
        .enumerate()
        .map(|(t, &mask)| u128::from(w & mask) << t)
        .sum()
}

/// `sum_e e * bit_e(p) * 2^e` over all bits of `p`.
fn position_weighted(p: &BigUint) -> BigUint {
    let limbs: Vec<u64> = p.iter_u64_digits().collect();
    let mut out: Vec<u32> = Vec::with_capacity(2 * limbs.len() + 4);
    let mut carry: u128 = 0;
    for (index, &w) in limbs.iter().enumerate() {
        let offset = 64 * index as u128;
        let acc = carry + offset * u128::from(w) + weighted_bit_sum(w);
        out.push(acc as u32);
        out.push((acc >> 32) as u32);
        carry = acc >> 64;
    }
    while carry > 0 {
        out.push(carry as u32);
        carry >>= 32;
    }
    BigUint::new(out)
}

/// Exact `u_n`, the expected number of flips the FDR sampler spends on
/// range `n`.
///
/// With `n = 2^a m`, `m` odd, `T = ord_m(2)` and `P = (2^T - 1)/m` the
/// repetend of `1/m`, the odd part contributes
/// `u_m = (T 2^T - m sum_e e bit_e(P) 2^e) / (2^T - 1)` and `u_n = a + u_m`.
pub fn exact_cost_rational(n: u64) -> Result<PeriodicRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("range must be at least 1".into()));
    }
    let dyadic = u64::from(n.trailing_zeros());
    let odd = n >> dyadic;
    if odd == 1 {
        return Ok(PeriodicRational::from_integer(dyadic));
    }
    let period = order_of_two(odd);
    if period > MAX_EXACT_PERIOD {
        return Err(Error::PeriodTooLong { modulus: odd, period });
    }
    let repetend_of_inverse = all_ones(period) / odd;
    let weighted = position_weighted(&repetend_of_inverse) * odd;
    let scaled = BigUint::from(period) << period;
    Ok(PeriodicRational::normalized(dyadic, period, scaled - weighted))
}
