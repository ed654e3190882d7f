//! Expected random-bit cost of the samplers.
//!
//! * [`nu`]: Knuth-Yao's per-probability cost `nu(x) = sum_k {2^k x} / 2^k`.
//! * [`exact_cost`] / [`exact_cost_rational`]: `u_n = n nu(1/n)`, the mean
//!   number of flips the FDR sampler spends on range `n`.
//! * [`toll`]: `u_n - log2 n`, always within `[0, 2]`.
//! * [`batch_cost`]: per-variate cost `u_{n^j} / j` of batch generation.
//! * [`AsymptoticModel`]: `log2 n + 1/2 + (1 - gamma)/ln 2 + P(log2 n)`,
//!   `P` a trigonometric polynomial whose coefficients are zeta values on
//!   the line `Re(s) = 1`.

mod exact;
mod numtheory;
mod zeta;

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

pub use exact::{exact_cost_rational, PeriodicRational, MAX_EXACT_PERIOD};
pub use zeta::{zeta_complex, zeta_euler_maclaurin, ZetaEstimate, MAX_CORRECTIONS};

use crate::batch::checked_pow_within_limit;
use crate::bernoulli::Rational;
use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Fourier pairs kept in `P` by default.
pub const DEFAULT_K_TERMS: usize = 12;

const ZETA_TARGET_ERROR: f64 = 1e-13;

/// Terms summed before a non-repeating tail is truncated.
pub const DEFAULT_NU_TERMS: u32 = 128;

/// `sum_{j>=0} r_j / 2^j` with `r_0 = start`, `r_{j+1} = 2 r_j mod m`, `m` odd.
///
/// Doubling is a bijection modulo odd `m`, so the residues cycle back to
/// `start`; the geometric closure over one period is used when the period
/// is at most `max_terms`, otherwise the sum is truncated after `max_terms`
/// terms (tail below `m 2^(1 - max_terms)`).
fn cyclic_binary_sum(start: u64, m: u64, max_terms: u32) -> f64 {
    debug_assert!(m % 2 == 1 && start < m);
    if start == 0 {
        return 0.0;
    }
    let mut r = start;
    let mut sum = 0.0f64;
    let mut scale = 1.0f64;
    for j in 1..=max_terms {
        sum += r as f64 * scale;
        scale *= 0.5;
        r = ((u128::from(r) << 1) % u128::from(m)) as u64;
        if r == start {
            return sum / (1.0 - 2f64.powi(-(j as i32)));
        }
    }
    sum
}

fn terms_for(m: u64, precision_bits: u32) -> u32 {
    precision_bits.max(64 - m.leading_zeros() + 60)
}

/// Knuth-Yao's `nu(p)`, computed through the eventual periodicity of
/// `2^k p mod 1`.
///
/// Periods up to `precision_bits` bits are summed in closed form; longer
/// ones are truncated after `max(precision_bits, log2(den) + 60)` terms.
pub fn nu(p: Rational, precision_bits: u32) -> f64 {
    let p = p.reduced();
    let (k, n) = (p.num(), p.den());
    if k == 0 || k == n {
        return 0.0;
    }
    let dyadic = n.trailing_zeros();
    let odd = n >> dyadic;
    // Pre-period: the residues 2^j k mod n for j < dyadic.
    let mut head = 0.0;
    let mut r = k;
    let mut scale = 1.0;
    for _ in 0..dyadic {
        head += r as f64 * scale;
        scale *= 0.5;
        r = ((u128::from(r) << 1) % u128::from(n)) as u64;
    }
    // From there on r = 2^dyadic t with t cycling modulo the odd part.
    let tail = if odd == 1 {
        0.0
    } else {
        cyclic_binary_sum(k % odd, odd, terms_for(odd, precision_bits))
    };
    (head + tail) / n as f64
}

/// `u_n` as a double, from the split `n = 2^a m`: `u_n = a + u_m`.
pub fn exact_cost(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("range must be at least 1".into()));
    }
    let dyadic = n.trailing_zeros();
    let odd = n >> dyadic;
    let odd_part = if odd == 1 {
        0.0
    } else {
        cyclic_binary_sum(1, odd, terms_for(odd, DEFAULT_NU_TERMS))
    };
    Ok(f64::from(dyadic) + odd_part)
}

/// `u_n - log2 n`; zero exactly when `n` is a power of two.
pub fn toll(n: u64) -> Result<f64> {
    let cost = exact_cost(n)?;
    if n.is_power_of_two() {
        return Ok(0.0);
    }
    Ok(cost - (n as f64).log2())
}

/// Per-variate cost `u_{n^j} / j` when drawing `j` variates of range `n` at once.
pub fn batch_cost(n: u64, j: u32) -> Result<f64> {
    if n == 0 || j == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and j >= 1".into()));
    }
    let range = checked_pow_within_limit(n, j).ok_or(Error::Overflow { base: n, exp: j })?;
    Ok(exact_cost(range)? / f64::from(j))
}

/// Parameters of the asymptotic cost formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticParams {
    /// Conjugate pairs `k = +-1, ..., +-k_terms` kept in `P`.
    pub k_terms: usize,
    pub gamma: f64,
}

impl Default for AsymptoticParams {
    fn default() -> Self {
        Self {
            k_terms: DEFAULT_K_TERMS,
            gamma: EULER_GAMMA,
        }
    }
}

impl AsymptoticParams {
    pub fn with_terms(k_terms: usize) -> Self {
        Self {
            k_terms,
            ..Self::default()
        }
    }

    /// `1/2 + 1/ln 2 - gamma/ln 2`.
    pub fn constant(&self) -> f64 {
        0.5 + (1.0 - self.gamma) / LN_2
    }
}

/// The asymptotic cost formula with its zeta coefficients precomputed.
///
/// `P(x) = -(1/ln 2) sum_{k != 0} c_k e^(-2 i k pi x)` with
/// `c_k = zeta(1 + i chi_k) / (1 + i chi_k)`, `chi_k = 2 k pi / ln 2`.
/// Coefficients for `k` and `-k` are evaluated independently; for real `x`
/// their terms are complex conjugates and the sum is real.
#[derive(Clone, Debug)]
pub struct AsymptoticModel {
    params: AsymptoticParams,
    // (c_k, c_{-k}) for k = 1..=k_terms
    coefficients: Vec<(Complex64, Complex64)>,
}

fn fluctuation_coefficient(k: i64) -> Result<Complex64> {
    let s = Complex64::new(1.0, 2.0 * k as f64 * PI / LN_2);
    Ok(zeta_complex(s, ZETA_TARGET_ERROR)? / s)
}

impl AsymptoticModel {
    pub fn new(params: AsymptoticParams) -> Result<Self> {
        let coefficients = (1..=params.k_terms as i64)
            .map(|k| Ok((fluctuation_coefficient(k)?, fluctuation_coefficient(-k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { params, coefficients })
    }

    pub fn params(&self) -> &AsymptoticParams {
        &self.params
    }

    /// `P(x)` before discarding the (vanishing) imaginary part.
    pub fn fluctuation_complex(&self, x: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, (plus, minus)) in (1..).zip(&self.coefficients) {
            let phase = Complex64::from_polar(1.0, -2.0 * PI * f64::from(k) * x);
            sum += plus * phase + minus * phase.conj();
        }
        -sum / LN_2
    }

    /// The periodic fluctuation `P(x)` (period 1 in `x = log2 n`).
    pub fn fluctuation(&self, x: f64) -> f64 {
        self.fluctuation_complex(x).re
    }

    /// Predicted toll `t_n`.
    pub fn toll(&self, n: u64) -> f64 {
        self.params.constant() + self.fluctuation((n as f64).log2())
    }

    /// `log2 n + constant + P(log2 n)`.
    pub fn cost(&self, n: u64) -> f64 {
        (n as f64).log2() + self.toll(n)
    }

    /// Per-variate cost for batches of `j`:
    /// `log2 n + constant / j + P(j log2 n) / j`.
    pub fn batch_cost(&self, n: u64, j: u32) -> f64 {
        let j = f64::from(j);
        let x = (n as f64).log2();
        x + (self.params.constant() + self.fluctuation(j * x)) / j
    }
}

/// Convenience wrapper building a model for a single evaluation.
pub fn asymptotic_cost(n: u64, params: &AsymptoticParams) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("asymptotic cost needs n >= 2".into()));
    }
    Ok(AsymptoticModel::new(*params)?.cost(n))
}

/// One row of the cost table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostBreakdown {
    pub n: u64,
    pub exact_cost: f64,
    pub log2n: f64,
    pub toll: f64,
    pub asymptotic: Option<f64>,
}

impl CostBreakdown {
    pub fn new(n: u64, model: Option<&AsymptoticModel>) -> Result<Self> {
        let exact_cost = exact_cost(n)?;
        let log2n = (n as f64).log2();
        let toll = toll(n)?;
        Ok(Self {
            n,
            exact_cost,
            log2n,
            toll,
            asymptotic: model.filter(|_| n >= 2).map(|m| m.cost(n)),
        })
    }

    /// Batch variant: costs are per variate for batches of `j`.
    pub fn batched(n: u64, j: u32, model: Option<&AsymptoticModel>) -> Result<Self> {
        let exact_cost = batch_cost(n, j)?;
        let log2n = (n as f64).log2();
        let toll = if n.is_power_of_two() { 0.0 } else { exact_cost - log2n };
        Ok(Self {
            n,
            exact_cost,
            log2n,
            toll,
            asymptotic: model.filter(|_| n >= 2).map(|m| m.batch_cost(n, j)),
        })
    }
}
