use thiserror::Error;

/// Errors raised by samplers, combinatorial helpers and the cost engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scripted bit source exhausted after {served} bits")]
    ScriptExhausted { served: u64 },

    #[error("range {0} exceeds the 2^62 limit")]
    RangeTooLarge(u128),

    #[error("empty range: lo {lo} > hi {hi}")]
    EmptyRange { lo: i64, hi: i64 },

    #[error("{base}^{exp} exceeds the 2^62 limit")]
    Overflow { base: u64, exp: u32 },

    #[error("fraction {num}/{den} is not proper (numerator must be below denominator)")]
    ImproperFraction { num: u64, den: u64 },

    #[error("invalid rational {num}/{den}")]
    InvalidRational { num: u64, den: u64 },

    #[error("rank {rank} out of range for permutations of size {n}")]
    RankOutOfRange { rank: u64, n: usize },

    #[error("Lehmer digit X_{index} = {digit} must be below {index}")]
    DigitOutOfRange { index: usize, digit: u64 },

    #[error("{n}! does not fit the 2^62 working range")]
    FactorialOverflow { n: usize },

    #[error("zeta has a pole at s = 1")]
    PoleAtOne,

    #[error("zeta evaluation requires Re(s) > 0")]
    OutsideHalfPlane,

    #[error("binary period {period} of 1/{modulus} exceeds the exact-arithmetic limit")]
    PeriodTooLong { modulus: u64, period: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
