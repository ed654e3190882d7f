//! Goodness-of-fit helpers for checking sampler output.

/// Pearson's statistic of `counts` against the uniform law on
/// `counts.len()` cells, with its degrees of freedom.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, usize) {
    let total: u64 = counts.iter().sum();
    if counts.len() < 2 || total == 0 {
        return (0.0, 0);
    }
    let expected = total as f64 / counts.len() as f64;
    let stat = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    (stat, counts.len() - 1)
}
