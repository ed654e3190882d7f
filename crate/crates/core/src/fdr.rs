//! The Fast Dice Roller: exact uniform integers from unbiased coin flips.
//!
//! The sampler keeps a pair `(v, c)` with `c` uniform on `0..v`. Each
//! iteration doubles the range and appends one fresh bit to `c`. Once the
//! range reaches `n`, either `c < n` and it is returned, or `c` is uniform on
//! `n..v` and both are shifted down by `n`, recycling the leftover entropy.
//! The resulting branching process is a Knuth-Yao DDG tree for the uniform
//! law on `n` outcomes, so the expected number of flips is optimal.

use crate::bitsource::RandomBitSource;
use crate::error::{Error, Result};

/// Largest supported range; keeps `2v` below `2^63`.
pub const MAX_RANGE: u64 = 1 << 62;

/// A sampled value with the number of bits spent producing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FdrOutcome {
    pub value: u64,
    pub bits_used: u64,
}

/// Draws a uniform integer in `0..n`.
///
/// `n == 1` returns immediately without consuming any bit.
pub fn fdr_uniform<S: RandomBitSource + ?Sized>(source: &mut S, n: u64) -> Result<FdrOutcome> {
    if n == 0 {
        return Err(Error::InvalidArgument("range must be at least 1".into()));
    }
    if n > MAX_RANGE {
        return Err(Error::RangeTooLarge(n.into()));
    }
    if n == 1 {
        return Ok(FdrOutcome { value: 0, bits_used: 0 });
    }

    let mut v: u64 = 1;
    let mut c: u64 = 0;
    let mut bits: u64 = 0;
    loop {
        v <<= 1;
        c = (c << 1) | u64::from(source.next_bit()?);
        bits += 1;
        if v >= n {
            if c < n {
                return Ok(FdrOutcome {
                    value: c,
                    bits_used: bits,
                });
            }
            v -= n;
            c -= n;
        }
        debug_assert!(c < v && v < 2 * n);
    }
}

/// Draws a uniform integer in the inclusive range `lo..=hi`.
pub fn fdr_uniform_range<S: RandomBitSource + ?Sized>(source: &mut S, lo: i64, hi: i64) -> Result<i64> {
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    let width = (i128::from(hi) - i128::from(lo) + 1) as u128;
    if width > u128::from(MAX_RANGE) {
        return Err(Error::RangeTooLarge(width));
    }
    let draw = fdr_uniform(source, width as u64)?;
    Ok((i128::from(lo) + i128::from(draw.value)) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitsource::{ScriptedBitSource, SeededBitSource};

    fn run(n: u64, bits: &[u8]) -> FdrOutcome {
        fdr_uniform(&mut ScriptedBitSource::new(bits.iter().copied()), n).unwrap()
    }

    #[test]
    fn ddg_leaf_for_five() {
        assert_eq!(run(5, &[1, 0, 0]), FdrOutcome { value: 4, bits_used: 3 });
    }

    #[test]
    fn rejection_branch_recycles() {
        assert_eq!(run(5, &[1, 0, 1, 0]), FdrOutcome { value: 0, bits_used: 4 });
    }

    #[test]
    fn power_of_two_reads_binary() {
        assert_eq!(run(4, &[1, 0]), FdrOutcome { value: 2, bits_used: 2 });
    }

    #[test]
    fn singleton_costs_nothing() {
        assert_eq!(run(1, &[]), FdrOutcome { value: 0, bits_used: 0 });
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut s = SeededBitSource::seeded(0);
        assert!(matches!(fdr_uniform(&mut s, 0), Err(Error::InvalidArgument(_))));
        assert_eq!(
            fdr_uniform(&mut s, MAX_RANGE + 1),
            Err(Error::RangeTooLarge(u128::from(MAX_RANGE) + 1))
        );
        assert!(fdr_uniform(&mut s, MAX_RANGE).unwrap().value < MAX_RANGE);
    }

    #[test]
    fn exhausted_script_propagates() {
        let mut s = ScriptedBitSource::new([1, 0]);
        assert_eq!(fdr_uniform(&mut s, 5), Err(Error::ScriptExhausted { served: 2 }));
    }

    #[test]
    fn range_wrapper() {
        let mut s = ScriptedBitSource::new([]);
        assert_eq!(fdr_uniform_range(&mut s, 3, 3).unwrap(), 3);
        assert_eq!(s.bits_consumed(), 0);
        let mut s = ScriptedBitSource::new([1, 0, 0]);
        assert_eq!(fdr_uniform_range(&mut s, 0, 4).unwrap(), 4);
        let mut s = ScriptedBitSource::new([0, 1]);
        assert_eq!(fdr_uniform_range(&mut s, 10, 13).unwrap(), 11);
        assert_eq!(fdr_uniform_range(&mut s, 2, 1), Err(Error::EmptyRange { lo: 2, hi: 1 }));
        let mut s = SeededBitSource::seeded(1);
        assert!(matches!(
            fdr_uniform_range(&mut s, i64::MIN, i64::MAX),
            Err(Error::RangeTooLarge(_))
        ));
        let x = fdr_uniform_range(&mut s, -5, -1).unwrap();
        assert!((-5..=-1).contains(&x));
    }

    #[test]
    fn dyadic_cost_is_exact() {
        let mut s = SeededBitSource::seeded(9);
        for m in 1..=20u32 {
            for _ in 0..50 {
                let o = fdr_uniform(&mut s, 1 << m).unwrap();
                assert_eq!(o.bits_used, u64::from(m));
            }
        }
    }

    #[test]
    fn minimum_depth() {
        let mut s = SeededBitSource::seeded(17);
        for n in 2..200u64 {
            let floor_log = 63 - u64::from(n.leading_zeros());
            for _ in 0..20 {
                let o = fdr_uniform(&mut s, n).unwrap();
                assert!(o.value < n);
                assert!(o.bits_used >= floor_log);
            }
        }
    }
}
