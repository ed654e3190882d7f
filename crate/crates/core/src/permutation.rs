//! Uniform random permutations and the factorial number system.
//!
//! Permutations hold one-indexed values; ranks and Lehmer digits are
//! zero-based. A rank `U < n!` decomposes as `U = X_n (n-1)! + ... + X_1 0!`
//! with `0 <= X_i < i`. Two bijections turn those digits into a permutation:
//! the linear-time Fisher-Yates replay (used for sampling) and the quadratic
//! selection construction, whose inversion count equals the digit sum.

use std::fmt;

use crate::bitsource::RandomBitSource;
use crate::error::{Error, Result};
use crate::fdr::{fdr_uniform, MAX_RANGE};

/// Largest size whose factorial fits the sampler's `2^62` range limit.
pub const MAX_UNRANK_SIZE: usize = 20;

/// A bijection on `{1, ..., n}` stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Validates that `values` is a permutation of `1..=len`.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Factorial-base digits `(X_n, ..., X_1)`, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LehmerCode(Vec<u64>);

impl LehmerCode {
    /// Checks `X_i < i` for every digit. Note `X_1` is forced to zero.
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        let n = digits.len();
        for (pos, &digit) in digits.iter().enumerate() {
            let index = n - pos;
            if digit >= index as u64 {
                return Err(Error::DigitOutOfRange { index, digit });
            }
        }
        Ok(Self(digits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    /// `X_i` for `1 <= i <= n`.
    pub fn digit(&self, i: usize) -> u64 {
        self.0[self.0.len() - i]
    }

    pub fn digit_sum(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// An index `U < n!` into the permutations of size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rank {
    value: u64,
    n: usize,
}

impl Rank {
    pub fn new(value: u64, n: usize) -> Result<Self> {
        let limit = factorial(n).ok_or(Error::FactorialOverflow { n })?;
        if value >= limit {
            return Err(Error::RankOutOfRange { rank: value, n });
        }
        Ok(Self { value, n })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `n!` when it does not exceed `2^62`.
pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64)
        .try_fold(1u64, |acc, i| acc.checked_mul(i))
        .filter(|&f| f <= MAX_RANGE)
}

/// Durstenfeld's shuffle of `1..=n`, each offset drawn with the FDR sampler.
pub fn fisher_yates<S: RandomBitSource + ?Sized>(source: &mut S, n: usize) -> Result<Permutation> {
    let mut t: Vec<usize> = (1..=n).collect();
    for i in 0..n {
        let offset = fdr_uniform(source, (n - i) as u64)?.value as usize;
        t.swap(i, i + offset);
    }
    Ok(Permutation(t))
}

pub fn factorial_decompose(rank: Rank) -> LehmerCode {
    let mut u = rank.value;
    let mut digits = vec![0u64; rank.n];
    // digits[n - i] holds X_i; radix of X_i is i.
    for i in 1..=rank.n {
        digits[rank.n - i] = u % i as u64;
        u /= i as u64;
    }
    debug_assert_eq!(u, 0);
    LehmerCode(digits)
}

pub fn factorial_compose(code: &LehmerCode) -> Result<Rank> {
    let n = code.len();
    factorial(n).ok_or(Error::FactorialOverflow { n })?;
    // Horner from X_n down: U = ((X_n * (n-1) + X_{n-1}) * (n-2) + ...).
    let value = (1..=n).rev().fold(0u64, |acc, i| acc * i as u64 + code.digit(i));
    Rank::new(value, n)
}

/// Laisant's construction: the `X_n`-th smallest remaining value goes first,
/// then the `X_{n-1}`-th of what is left, and so on.
pub fn lehmer_to_permutation_selection(code: &LehmerCode) -> Permutation {
    let n = code.len();
    let mut pool: Vec<usize> = (1..=n).collect();
    let values = code.digits().iter().map(|&x| pool.remove(x as usize)).collect();
    Permutation(values)
}

/// Replays the Fisher-Yates shuffle with step `i` using offset `X_{n-i+1}`.
pub fn lehmer_to_permutation_fy(code: &LehmerCode) -> Permutation {
    let n = code.len();
    let mut t: Vec<usize> = (1..=n).collect();
    for (i, &offset) in code.digits().iter().enumerate() {
        t.swap(i, i + offset as usize);
    }
    debug_assert_eq!(t.len(), n);
    Permutation(t)
}

/// One FDR draw of range `n!`, unranked through the Fisher-Yates bijection.
pub fn random_permutation_unranked<S: RandomBitSource + ?Sized>(source: &mut S, n: usize) -> Result<Permutation> {
    let range = factorial(n).ok_or(Error::FactorialOverflow { n })?;
    let u = fdr_uniform(source, range)?.value;
    let code = factorial_decompose(Rank { value: u, n });
    Ok(lehmer_to_permutation_fy(&code))
}

/// Laisant's selection with each `X_i` drawn independently by FDR; the
/// digit sum is the inversion count of the result.
pub fn random_permutation_selection<S: RandomBitSource + ?Sized>(
    source: &mut S,
    n: usize,
) -> Result<(Permutation, LehmerCode)> {
    let digits = (1..=n)
        .rev()
        .map(|i| fdr_uniform(source, i as u64).map(|o| o.value))
        .collect::<Result<Vec<_>>>()?;
    let code = LehmerCode(digits);
    Ok((lehmer_to_permutation_selection(&code), code))
}

/// Pairs `i < j` with `perm[i] > perm[j]`, counted directly.
pub fn inversion_count(perm: &Permutation) -> u64 {
    let s = perm.as_slice();
    let mut count = 0u64;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitsource::ScriptedBitSource;

    fn code(d: &[u64]) -> LehmerCode {
        LehmerCode::new(d.to_vec()).unwrap()
    }

    #[test]
    fn shuffle_traces() {
        let mut s = ScriptedBitSource::new([]);
        assert_eq!(fisher_yates(&mut s, 1).unwrap().as_slice(), &[1]);
        assert_eq!(fisher_yates(&mut s, 0).unwrap().len(), 0);
        assert_eq!(s.bits_consumed(), 0);

        let mut s = ScriptedBitSource::new([1]);
        assert_eq!(fisher_yates(&mut s, 2).unwrap().as_slice(), &[2, 1]);
        let mut s = ScriptedBitSource::new([0]);
        assert_eq!(fisher_yates(&mut s, 2).unwrap().as_slice(), &[1, 2]);

        // fdr_uniform(3) reads "10" -> 2, fdr_uniform(2) reads "1" -> 1.
        let mut s = ScriptedBitSource::new([1, 0, 1]);
        assert_eq!(fisher_yates(&mut s, 3).unwrap().as_slice(), &[3, 1, 2]);
        assert_eq!(s.remaining(), 0);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(factorial_decompose(Rank::new(0, 3).unwrap()).digits(), &[0, 0, 0]);
        assert_eq!(factorial_decompose(Rank::new(5, 3).unwrap()).digits(), &[2, 1, 0]);
        assert_eq!(factorial_decompose(Rank::new(23, 4).unwrap()).digits(), &[3, 2, 1, 0]);
        assert_eq!(Rank::new(6, 3), Err(Error::RankOutOfRange { rank: 6, n: 3 }));
        assert_eq!(Rank::new(0, 21), Err(Error::FactorialOverflow { n: 21 }));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(factorial_compose(&code(&[0, 0, 0])).unwrap().value(), 0);
        assert_eq!(factorial_compose(&code(&[2, 1, 0])).unwrap().value(), 5);
        assert_eq!(
            LehmerCode::new(vec![3, 0, 0]),
            Err(Error::DigitOutOfRange { index: 3, digit: 3 })
        );
        assert_eq!(
            LehmerCode::new(vec![0, 0, 1]),
            Err(Error::DigitOutOfRange { index: 1, digit: 1 })
        );
        for u in 0..120 {
            let r = Rank::new(u, 5).unwrap();
            assert_eq!(factorial_compose(&factorial_decompose(r)).unwrap(), r);
        }
    }

    #[test]
    fn bijection_examples() {
        let c = code(&[2, 1, 0]);
        let sel = lehmer_to_permutation_selection(&c);
        assert_eq!(sel.as_slice(), &[3, 2, 1]);
        assert_eq!(inversion_count(&sel), 3);
        assert_eq!(lehmer_to_permutation_fy(&c).as_slice(), &[3, 1, 2]);
        let zero = code(&[0, 0, 0, 0]);
        assert_eq!(lehmer_to_permutation_selection(&zero), Permutation::identity(4));
        assert_eq!(lehmer_to_permutation_fy(&zero), Permutation::identity(4));
    }

    #[test]
    fn inversions() {
        assert_eq!(inversion_count(&Permutation::identity(7)), 0);
        let p = Permutation::from_values(vec![3, 2, 1]).unwrap();
        assert_eq!(inversion_count(&p), 3);
        for n in 0..12usize {
            let rev = Permutation::from_values((1..=n).rev().collect()).unwrap();
            assert_eq!(inversion_count(&rev), (n * n.saturating_sub(1) / 2) as u64);
        }
        assert!(Permutation::from_values(vec![1, 1]).is_err());
        assert!(Permutation::from_values(vec![0, 1]).is_err());
    }

    #[test]
    fn factorial_cap() {
        assert_eq!(factorial(0), Some(1));
        assert_eq!(factorial(20), Some(2_432_902_008_176_640_000));
        assert_eq!(factorial(21), None);
        let mut s = ScriptedBitSource::new([]);
        assert_eq!(
            random_permutation_unranked(&mut s, 21),
            Err(Error::FactorialOverflow { n: 21 })
        );
        assert_eq!(random_permutation_unranked(&mut s, 1).unwrap().as_slice(), &[1]);
        assert_eq!(s.bits_consumed(), 0);
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(Permutation::from_values(vec![2, 3, 1]).unwrap().to_string(), "2 3 1");
    }
}
