//! Riemann zeta on `Re(s) > 0` by Euler-Maclaurin summation.
//!
//! `zeta(s) = sum_{j<N} j^-s + N^(1-s)/(s-1) + N^-s/2
//!            + sum_{k=1..M} B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1) + R`
//!
//! with `|R| <= |s+2M+1| / (Re(s)+2M+1) * |next correction term|`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_2k / (2k)!` for `k = 1..=7`.
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
];

/// Most correction terms supported (through `B_12`).
pub const MAX_CORRECTIONS: usize = 6;

const DEFAULT_DIRECT_TERMS: u64 = 50;
const MAX_DIRECT_TERMS: u64 = 1 << 22;

/// A zeta value with a rigorous bound on the truncation remainder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaEstimate {
    pub value: Complex64,
    pub error_bound: f64,
}

fn check_domain(s: Complex64) -> Result<()> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::PoleAtOne);
    }
    if s.re.is_nan() || s.re <= 0.0 || !s.im.is_finite() {
        return Err(Error::OutsideHalfPlane);
    }
    Ok(())
}

/// Euler-Maclaurin with `direct_terms` explicit terms and `corrections`
/// Bernoulli corrections (at most [`MAX_CORRECTIONS`]).
pub fn zeta_euler_maclaurin(s: Complex64, direct_terms: u64, corrections: usize) -> Result<ZetaEstimate> {
    check_domain(s)?;
    if direct_terms < 1 || corrections > MAX_CORRECTIONS {
        return Err(Error::InvalidArgument(format!(
            "need direct_terms >= 1 and corrections <= {MAX_CORRECTIONS}"
        )));
    }
    let n = direct_terms as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    // Smallest terms first.
    for j in (1..direct_terms).rev() {
        sum += (-s * (j as f64).ln()).exp();
    }
    let n_pow_neg_s = (-s * n.ln()).exp();
    sum += n_pow_neg_s * n / (s - 1.0);
    sum += n_pow_neg_s * 0.5;

    // rising = s(s+1)...(s+2k-2), power = N^(-s-2k+1)
    let mut rising = s;
    let mut power = n_pow_neg_s / n;
    let mut k = 1usize;
    loop {
        let term = rising * power * BERNOULLI_OVER_FACTORIAL[k - 1];
        if k > corrections {
            let tail = (s + (2 * corrections + 1) as f64).norm() / (s.re + (2 * corrections + 1) as f64);
            return Ok(ZetaEstimate {
                value: sum,
                error_bound: tail * term.norm(),
            });
        }
        sum += term;
        let a = (2 * k - 1) as f64;
        rising = rising * (s + a) * (s + a + 1.0);
        power /= n * n;
        k += 1;
    }
}

/// Zeta with the remainder bound driven below `target_error` by doubling
/// the number of direct terms.
pub fn zeta_complex(s: Complex64, target_error: f64) -> Result<Complex64> {
    check_domain(s)?;
    let mut terms = DEFAULT_DIRECT_TERMS.max(s.im.abs().ceil() as u64 / 4);
    loop {
        let est = zeta_euler_maclaurin(s, terms, MAX_CORRECTIONS)?;
        if est.error_bound <= target_error {
            return Ok(est.value);
        }
        if terms >= MAX_DIRECT_TERMS {
            return Err(Error::InvalidArgument(format!(
                "cannot reach zeta accuracy {target_error:e} at s = {s}"
            )));
        }
        terms *= 2;
    }
}
