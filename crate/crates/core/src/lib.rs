//! Random-bit-optimal sampling.
//!
//! Everything here consumes randomness one unbiased bit at a time from a
//! [`RandomBitSource`], and reports how many bits each draw used:
//!
//! * [`fdr_uniform`]: the Fast Dice Roller, exact uniform integers in `0..n`
//!   with the optimal expected number of flips;
//! * [`batch_uniform`]: `j` variates from one draw of range `n^j`;
//! * [`bernoulli_rational`]: exact Bernoulli trials of rational parameter;
//! * [`permutation`]: Fisher-Yates and factorial-base (Lehmer) permutations;
//! * [`cost`]: exact and asymptotic expected bit costs, to check measured
//!   consumption against theory.
//!
//! ```
//! use fastdice::{fdr_uniform, RandomBitSource, SeededBitSource};
//!
//! let mut bits = SeededBitSource::seeded(42);
//! let roll = fdr_uniform(&mut bits, 6).unwrap();
//! assert!(roll.value < 6);
//! assert_eq!(bits.bits_consumed(), roll.bits_used);
//! ```

pub mod batch;
pub mod bernoulli;
pub mod bitsource;
pub mod cli;
pub mod cost;
pub mod error;
pub mod fdr;
pub mod permutation;
pub mod stats;

pub use batch::{auto_batch_size, batch_uniform, plan_batch, BatchOutcome, BatchPlan};
pub use bernoulli::{bernoulli_rational, binary_expansion, BernoulliOutcome, BinaryExpansion, Rational};
pub use bitsource::{BufferedWordSource, RandomBitSource, ScriptedBitSource, ScriptedWords, SeededBitSource};
pub use cost::{
    asymptotic_cost, batch_cost, exact_cost, exact_cost_rational, nu, toll, zeta_complex, AsymptoticModel,
    AsymptoticParams, CostBreakdown, PeriodicRational,
};
pub use error::{Error, Result};
pub use fdr::{fdr_uniform, fdr_uniform_range, FdrOutcome, MAX_RANGE};
pub use permutation::{
    factorial_compose, factorial_decompose, fisher_yates, inversion_count, lehmer_to_permutation_fy,
    lehmer_to_permutation_selection, random_permutation_unranked, LehmerCode, Permutation, Rank,
};
