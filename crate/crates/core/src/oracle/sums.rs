use std::fmt;

use rustc_hash::FxHashSet;

use super::{enumerate, is_member, is_member_of_length, members_of_length, Flavor};
use crate::encoding::to_base_k;

/// "Is `target` a sum of palindromic numbers of this kind?"
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumQuery {
    pub target: u64,
    pub base: u32,
    pub max_summands: usize,
    pub flavor: Flavor,
    /// Exact summand lengths, one summand per entry. Without it the question
    /// is "at most `max_summands` summands of any length".
    pub lengths: Option<Vec<usize>>,
}

impl SumQuery {
    pub fn new(target: u64, base: u32, max_summands: usize, flavor: Flavor) -> Self {
        SumQuery {
            target,
            base,
            max_summands,
            flavor,
            lengths: None,
        }
    }

    pub fn with_lengths(target: u64, base: u32, flavor: Flavor, lengths: Vec<usize>) -> Self {
        SumQuery {
            target,
            base,
            max_summands: lengths.len(),
            flavor,
            lengths: Some(lengths),
        }
    }
}

/// Summands certifying a positive answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub summands: Vec<u64>,
}

impl Witness {
    /// Re-checks the witness against `q` with direct digit tests.
    pub fn verify(&self, q: &SumQuery) -> bool {
        if self.summands.iter().sum::<u64>() != q.target {
            return false;
        }
        match &q.lengths {
            Some(lengths) => {
                lengths.len() == self.summands.len()
                    && self
                        .summands
                        .iter()
                        .zip(lengths)
                        .all(|(&s, &l)| is_member_of_length(q.flavor, q.base, s, l))
            }
            None => {
                self.summands.len() <= q.max_summands
                    && self
                        .summands
                        .iter()
                        .all(|&s| is_member(q.flavor, q.base, s))
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

/// Fixed-size bitset over `0..=limit`.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
    limit: u64,
}

impl Bits {
    fn new(limit: u64) -> Self {
        Bits {
            words: vec![0; (limit / 64 + 1) as usize],
            limit,
        }
    }

    fn set(&mut self, i: u64) {
        if i <= self.limit {
            self.words[(i / 64) as usize] |= 1 << (i % 64);
        }
    }

    fn get(&self, i: u64) -> bool {
        i <= self.limit && self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// `self |= src << shift`, truncated at `limit`.
    fn or_shifted(&mut self, src: &Bits, shift: u64) {
        let (ws, bs) = ((shift / 64) as usize, (shift % 64) as u32);
        let n = self.words.len();
        for i in (ws..n).rev() {
            let j = i - ws;
            let mut w = src.words[j] << bs;
            if bs > 0 && j > 0 {
                w |= src.words[j - 1] >> (64 - bs);
            }
            self.words[i] |= w;
        }
        self.trim();
    }

    fn trim(&mut self) {
        let extra = 63 - (self.limit % 64);
        if let Some(last) = self.words.last_mut() {
            *last &= u64::MAX >> extra;
        }
    }

    /// `{a + b : a in self, b in summands}`.
    fn sumset(&self, summands: &[u64]) -> Bits {
        let mut out = Bits::new(self.limit);
        for &s in summands {
            if s <= self.limit {
                out.or_shifted(self, s);
            }
        }
        out
    }
}

/// Result of a bounded search for the fewest summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinSummands {
    Exactly(usize),
    /// More than the cap (or not representable at all).
    OverCap(usize),
}

/// `table[n]` = least number of summands for `0 <= n <= limit`, or `cap + 1`
/// when more than `cap` are needed.
pub fn min_summands_table(flavor: Flavor, base: u32, limit: u64, cap: usize) -> Vec<u8> {
    let members = enumerate(flavor, base, limit);
    let mut table = vec![(cap + 1) as u8; limit as usize + 1];
    // exact[k] = sums of exactly k members.
    let mut exact = Bits::new(limit);
    exact.set(0);
    table[0] = 0;
    for k in 1..=cap {
        exact = exact.sumset(&members);
        for (i, t) in table.iter_mut().enumerate() {
            if *t as usize > k && exact.get(i as u64) {
                *t = k as u8;
            }
        }
    }
    table
}

pub fn min_summands(n: u64, base: u32, flavor: Flavor, cap: usize) -> MinSummands {
    let t = min_summands_table(flavor, base, n, cap)[n as usize] as usize;
    if t <= cap {
        MinSummands::Exactly(t)
    } else {
        MinSummands::OverCap(cap)
    }
}

/// All `1 <= n <= limit` that need more than `max_summands` summands.
pub fn exceptions(flavor: Flavor, base: u32, max_summands: usize, limit: u64) -> Vec<u64> {
    min_summands_table(flavor, base, limit, max_summands)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &t)| t as usize > max_summands)
        .map(|(n, _)| n as u64)
        .collect()
}

/// Decides `q`, returning a verified witness when the answer is yes.
pub fn decide(q: &SumQuery) -> Option<Witness> {
    let n = q.target;
    // layers[i] = candidate set for summand i.
    let layers: Vec<Vec<u64>> = match &q.lengths {
        Some(lengths) => lengths
            .iter()
            .map(|&l| {
                if l > to_base_k(n, q.base).len() {
                    Vec::new()
                } else {
                    members_of_length(q.flavor, q.base, l)
                        .into_iter()
                        .filter(|&m| m <= n)
                        .collect()
                }
            })
            .collect(),
        None => vec![enumerate(q.flavor, q.base, n); q.max_summands],
    };

    // reach[i] = sums of the first i layers; "at most" queries also accept any prefix.
    let mut reach = vec![Bits::new(n)];
    reach[0].set(0);
    for layer in &layers {
        let next = reach.last().unwrap().sumset(layer);
        reach.push(next);
    }
    let at_most = q.lengths.is_none();
    let k = if at_most {
        (0..reach.len()).find(|&i| reach[i].get(n))?
    } else if reach[layers.len()].get(n) {
        layers.len()
    } else {
        return None;
    };

    let mut summands = Vec::with_capacity(k);
    let mut rest = n;
    for i in (0..k).rev() {
        let s = *layers[i]
            .iter()
            .find(|&&s| s <= rest && reach[i].get(rest - s))
            .expect("reachability implies a summand");
        summands.push(s);
        rest -= s;
    }
    summands.reverse();
    let w = Witness { summands };
    debug_assert!(w.verify(q));
    Some(w)
}

/// Number of distinct sums of two generalized binary palindromes of length `n`.
pub fn count_sum_two_gen_pal_same_length(n: usize) -> u64 {
    let members = members_of_length(Flavor::GeneralizedPalindrome, 2, n);
    let mut sums = FxHashSet::default();
    for &p in &members {
        for &q in &members {
            sums.insert(p + q);
        }
    }
    sums.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remark_176() {
        let q3 = SumQuery::new(176, 2, 3, Flavor::Palindrome);
        assert!(decide(&q3).is_none());
        let q4 = SumQuery::new(176, 2, 4, Flavor::Palindrome);
        let w = decide(&q4).unwrap();
        assert!(w.verify(&q4));
        assert_eq!(
            min_summands(176, 2, Flavor::Palindrome, 6),
            MinSummands::Exactly(4)
        );
    }

    #[test]
    fn trivial_queries() {
        let q = SumQuery::new(5, 2, 1, Flavor::Palindrome);
        assert_eq!(decide(&q).unwrap().summands, vec![5]);
        assert_eq!(
            min_summands(0, 2, Flavor::Palindrome, 4),
            MinSummands::Exactly(0)
        );
    }

    #[test]
    fn bitset_shift_matches_naive() {
        let members = [
            0u64, 1, 3, 5, 7, 9, 15, 17, 21, 27, 31, 33, 45, 51, 63, 65, 73, 85, 93, 99,
        ];
        let mut a = Bits::new(200);
        a.set(0);
        let s2 = a.sumset(&members).sumset(&members);
        for x in 0..=200u64 {
            let naive = members.iter().any(|&p| members.iter().any(|&q| p + q == x));
            assert_eq!(s2.get(x), naive, "{x}");
        }
    }

    #[test]
    fn lengths_profile_witness() {
        // 2+... with palindromes of lengths 4, 2, 1 in base 2: 9 + 3 + 1 = 13.
        let q = SumQuery::with_lengths(13, 2, Flavor::Palindrome, vec![4, 2, 1]);
        let w = decide(&q).unwrap();
        assert!(w.verify(&q));
        let q = SumQuery::with_lengths(14, 2, Flavor::Palindrome, vec![4, 2, 1]);
        assert!(decide(&q).is_none());
    }

    #[test]
    fn two_gen_pal_counts() {
        assert_eq!(count_sum_two_gen_pal_same_length(1), 3);
        assert_eq!(count_sum_two_gen_pal_same_length(2), 3);
    }
}
