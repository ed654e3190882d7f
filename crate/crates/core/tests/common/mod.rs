//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use fastdice::{fdr_uniform, Error, Rational, ScriptedBitSource};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `n * sum_{k < terms} frac(2^k / n) / 2^k` in floating point. The tail
/// is below `n 2^(1 - terms)`.
pub fn truncated_cost(n: u64, terms: u32) -> f64 {
    let mut r: u128 = 1 % u128::from(n);
    let mut sum = 0.0;
    let mut scale = 1.0;
    for _ in 0..terms {
        sum += r as f64 * scale;
        scale *= 0.5;
        r = (r << 1) % u128::from(n);
    }
    sum
}

/// `sum_k r_k / 2^k` with `r_{k+1} = 2 r_k mod n`, closed exactly once the
/// residue sequence revisits a state.
pub fn doubling_sum_exact(start: u64, n: u64) -> BigRational {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut residues = Vec::new();
    let mut r = start % n;
    while !seen.contains_key(&r) {
        seen.insert(r, residues.len());
        residues.push(r);
        r = ((u128::from(r) << 1) % u128::from(n)) as u64;
    }
    let cycle_start = seen[&r];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut weight = BigRational::one();
    let mut pre = BigRational::zero();
    let mut cycle = BigRational::zero();
    for (k, &res) in residues.iter().enumerate() {
        let term = &weight * BigInt::from(res);
        if k < cycle_start {
            pre += term;
        } else {
            cycle += term;
        }
        weight *= &half;
    }
    let period = residues.len() - cycle_start;
    let closure = BigRational::one() - pow_half(period);
    pre + cycle / closure
}

fn pow_half(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Exact `u_n` by summing the residues of `2^k mod n` over pre-period and period.
pub fn exact_cost_oracle(n: u64) -> BigRational {
    doubling_sum_exact(1, n)
}

/// Exact `nu(num/den) = (1/den) sum_k (2^k num mod den) / 2^k`.
pub fn nu_oracle(num: u64, den: u64) -> BigRational {
    doubling_sum_exact(num, den) / BigInt::from(den)
}

pub fn to_big_rational((num, den): (BigUint, BigUint)) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ratio_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}

/// The first `count` binary digits of `num/den` by long division.
pub fn binary_digits(num: u64, den: u64, count: usize) -> Vec<u8> {
    let mut r = u128::from(num);
    (0..count)
        .map(|_| {
            r <<= 1;
            if r >= u128::from(den) {
                r -= u128::from(den);
                1
            } else {
                0
            }
        })
        .collect()
}

/// All bit strings of length `len`, most significant first.
pub fn bit_strings(len: u32) -> impl Iterator<Item = Vec<u8>> {
    (0u64..1 << len).map(move |s| (0..len).rev().map(|i| (s >> i & 1) as u8).collect())
}

/// Per-outcome terminating mass of the FDR tree explored to `depth` bits,
/// along with the mass of paths still running at that depth.
pub struct Enumeration {
    pub outcome_mass: Vec<f64>,
    pub unterminated: f64,
    /// `leaves[d][i]`: number of leaves with outcome `i` at depth `d`.
    pub leaves: Vec<Vec<u64>>,
}

pub fn enumerate_fdr(n: u64, depth: u32) -> Enumeration {
    let mut outcome_mass = vec![0.0; n as usize];
    let mut leaves = vec![vec![0u64; n as usize]; depth as usize + 1];
    let mut unterminated = 0.0;
    let cell = 0.5f64.powi(depth as i32);
    for bits in bit_strings(depth) {
        let mut src = ScriptedBitSource::new(bits);
        match fdr_uniform(&mut src, n) {
            Ok(o) => {
                outcome_mass[o.value as usize] += cell;
                leaves[o.bits_used as usize][o.value as usize] += 1;
            }
            Err(Error::ScriptExhausted { .. }) => unterminated += cell,
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    // A leaf at depth d is reached by 2^(depth - d) full-length strings.
    for (d, row) in leaves.iter_mut().enumerate() {
        let stride = 1u64 << (depth as usize - d);
        for c in row.iter_mut() {
            assert_eq!(*c % stride, 0);
            *c /= stride;
        }
    }
    Enumeration {
        outcome_mass,
        unterminated,
        leaves,
    }
}

/// Outcome of the geometric-trial Bernoulli sampler on a scripted stream:
/// the binary digit of `p` at the position of the first 1 flip, or `None`
/// if the script holds no 1.
pub fn bernoulli_oracle(p: Rational, bits: &[u8]) -> Option<bool> {
    let digits = binary_digits(p.num(), p.den(), bits.len());
    bits.iter().position(|&b| b == 1).map(|k| digits[k] == 1)
}

pub fn inversions_brute(values: &[usize]) -> u64 {
    let mut count = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                count += 1;
            }
        }
    }
    count
}
