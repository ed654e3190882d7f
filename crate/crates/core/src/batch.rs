//! Batch generation: `j` uniform draws of range `n` from a single draw of
//! range `n^j`, split into base-`n` digits.
//!
//! The toll paid over `log2 n` per variate shrinks roughly like `1/j`, so
//! small ranges become nearly entropy-optimal with moderate batch sizes.

use crate::bitsource::RandomBitSource;
use crate::error::{Error, Result};
use crate::fdr::{fdr_uniform, MAX_RANGE};

/// A validated batch size for a given range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatchPlan {
    n: u64,
    j: u32,
    n_pow_j: u64,
}

impl BatchPlan {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// Range of the single underlying draw, `n^j`.
    pub fn n_pow_j(&self) -> u64 {
        self.n_pow_j
    }
}

/// `base^exp` if it stays within `2^62`.
pub(crate) fn checked_pow_within_limit(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp).filter(|&p| p <= MAX_RANGE)
}

pub fn plan_batch(n: u64, j: u32) -> Result<BatchPlan> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "batch range must be at least 2, got {n}"
        )));
    }
    if j == 0 {
        return Err(Error::InvalidArgument("batch size must be at least 1".into()));
    }
    let n_pow_j = checked_pow_within_limit(n, j).ok_or(Error::Overflow { base: n, exp: j })?;
    Ok(BatchPlan { n, j, n_pow_j })
}

/// Largest `j` with `n^j <= 2^62`, capped at 64. Zero when `n` itself is
/// above the limit (or below 2).
pub fn auto_batch_size(n: u64) -> u32 {
    if n < 2 {
        return 0;
    }
    let mut j = 0u32;
    let mut acc: u64 = 1;
    while j < 64 {
        match acc.checked_mul(n) {
            Some(next) if next <= MAX_RANGE => {
                acc = next;
                j += 1;
            }
            _ => break,
        }
    }
    j
}

/// One batch of variates and the bits its underlying draw consumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchOutcome {
    /// Digits `X_j, ..., X_1`, most significant first.
    pub values: Vec<u64>,
    pub bits_used: u64,
}

/// Splits `y < n^j` into its `j` base-`n` digits, most significant first.
pub fn decompose(plan: &BatchPlan, mut y: u64) -> Vec<u64> {
    debug_assert!(y < plan.n_pow_j);
    let mut digits = vec![0; plan.j as usize];
    for slot in digits.iter_mut().rev() {
        *slot = y % plan.n;
        y /= plan.n;
    }
    digits
}

/// Inverse of [`decompose`].
pub fn recompose(plan: &BatchPlan, digits: &[u64]) -> u64 {
    digits.iter().fold(0, |acc, &d| acc * plan.n + d)
}

pub fn batch_uniform<S: RandomBitSource + ?Sized>(source: &mut S, plan: &BatchPlan) -> Result<BatchOutcome> {
    let draw = fdr_uniform(source, plan.n_pow_j)?;
    Ok(BatchOutcome {
        values: decompose(plan, draw.value),
        bits_used: draw.bits_used,
    })
}
