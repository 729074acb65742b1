use num_rational::Ratio;

use super::{min_summands_table, Flavor};

/// Prefix estimate of the Schnirelmann density of
/// `S = {n : n is a sum of at most max_summands members}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityEstimate {
    pub limit: u64,
    /// `min over 1 <= n <= limit of A_S(n) / n`; an upper bound on the density.
    pub min_ratio: Ratio<u64>,
    /// Smallest `n` attaining the minimum.
    pub argmin: u64,
}

impl DensityEstimate {
    pub fn as_f64(&self) -> f64 {
        *self.min_ratio.numer() as f64 / *self.min_ratio.denom() as f64
    }

    /// Exact comparison `min_ratio <= num / den`.
    pub fn at_most(&self, num: u64, den: u64) -> bool {
        self.min_ratio <= Ratio::new(num, den)
    }
}

pub fn density_prefix(
    flavor: Flavor,
    base: u32,
    max_summands: usize,
    limit: u64,
) -> DensityEstimate {
    assert!(limit >= 1, "limit must be at least 1");
    let table = min_summands_table(flavor, base, limit, max_summands);
    let mut count = 0u64;
    let (mut best_a, mut best_n) = (u64::MAX, 1u64);
    for n in 1..=limit {
        if table[n as usize] as usize <= max_summands {
            count += 1;
        }
        // count / n < best_a / best_n
        if best_a == u64::MAX || (count as u128) * (best_n as u128) < (best_a as u128) * (n as u128)
        {
            best_a = count;
            best_n = n;
        }
    }
    DensityEstimate {
        limit,
        min_ratio: Ratio::new(best_a, best_n),
        argmin: best_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_palindromes_up_to_ten() {
        // Palindromes in 1..=10: 1, 3, 5, 7, 9.
        let d = density_prefix(Flavor::Palindrome, 2, 1, 10);
        let mut best = Ratio::new(1u64, 1);
        let mut count = 0;
        for n in 1..=10u64 {
            if [1, 3, 5, 7, 9].contains(&n) {
                count += 1;
            }
            best = best.min(Ratio::new(count, n));
        }
        assert_eq!(d.min_ratio, best);
        assert_eq!(d.min_ratio, Ratio::new(1, 2));
        assert_eq!(d.argmin, 2);
    }
}
