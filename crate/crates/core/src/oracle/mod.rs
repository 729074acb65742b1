//! Brute-force ground truth for sums of palindromic numbers.

mod density;
mod simulate;
mod sums;

pub use density::{density_prefix, DensityEstimate};
pub use simulate::{
    decide_cases, simulate_folded, simulate_nwa, simulate_range, Disagreement, SimulationReport,
};
pub use sums::{
    count_sum_two_gen_pal_same_length, decide, exceptions, min_summands, min_summands_table,
    MinSummands, SumQuery, Witness,
};

use std::fmt;
use std::str::FromStr;

use crate::encoding::to_base_k;
use crate::error::Error;

/// Kind of palindromic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Palindrome,
    /// Palindrome after padding with some number of leading zeroes.
    GeneralizedPalindrome,
    /// Binary word equal to the complement of its reversal.
    Antipalindrome,
    GeneralizedAntipalindrome,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [
        Flavor::Palindrome,
        Flavor::GeneralizedPalindrome,
        Flavor::Antipalindrome,
        Flavor::GeneralizedAntipalindrome,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Palindrome => "palindrome",
            Flavor::GeneralizedPalindrome => "genpal",
            Flavor::Antipalindrome => "antipal",
            Flavor::GeneralizedAntipalindrome => "genantipal",
        }
    }

    fn is_anti(self) -> bool {
        matches!(
            self,
            Flavor::Antipalindrome | Flavor::GeneralizedAntipalindrome
        )
    }

    fn check_base(self, base: u32) {
        assert!(base >= 2, "base must be at least 2");
        assert!(!self.is_anti() || base == 2, "antipalindromes are binary");
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "palindrome" | "pal" => Flavor::Palindrome,
            "genpal" | "generalized-palindrome" | "generalizedPalindrome" => {
                Flavor::GeneralizedPalindrome
            }
            "antipal" | "antipalindrome" => Flavor::Antipalindrome,
            "genantipal" | "generalized-antipalindrome" | "generalizedAntipalindrome" => {
                Flavor::GeneralizedAntipalindrome
            }
            other => return Err(Error::contract(format!("unknown flavor `{other}`"))),
        })
    }
}

fn is_pal_digits(d: &[u8]) -> bool {
    d.iter().eq(d.iter().rev())
}

fn is_antipal_digits(d: &[u8]) -> bool {
    d.len().is_multiple_of(2) && d.iter().zip(d.iter().rev()).all(|(a, b)| a + b == 1)
}

/// Membership without a length constraint.
///
/// 0 is a palindrome and a generalized palindrome. It is a generalized
/// antipalindrome (the empty word) but not an antipalindrome, since its
/// canonical form `0` has odd length.
pub fn is_member(flavor: Flavor, base: u32, n: u64) -> bool {
    flavor.check_base(base);
    let d = to_base_k(n, base);
    match flavor {
        Flavor::Palindrome => is_pal_digits(&d),
        Flavor::GeneralizedPalindrome => {
            if n == 0 {
                return true;
            }
            let mut m = n;
            while m.is_multiple_of(base as u64) {
                m /= base as u64;
            }
            is_pal_digits(&to_base_k(m, base))
        }
        Flavor::Antipalindrome => n != 0 && is_antipal_digits(&d),
        Flavor::GeneralizedAntipalindrome => {
            n == 0 || (0..=d.len()).any(|z| is_member_of_length(flavor, base, n, d.len() + z))
        }
    }
}

/// Membership with representation length exactly `len`: canonical length for
/// the ordinary flavors, padded length for the generalized ones.
pub fn is_member_of_length(flavor: Flavor, base: u32, n: u64, len: usize) -> bool {
    flavor.check_base(base);
    let d = to_base_k(n, base);
    let canonical_len = if n == 0 { 0 } else { d.len() };
    match flavor {
        Flavor::Palindrome | Flavor::Antipalindrome => {
            if n == 0 {
                return false;
            }
            d.len() == len
                && (if flavor.is_anti() {
                    is_antipal_digits(&d)
                } else {
                    is_pal_digits(&d)
                })
        }
        Flavor::GeneralizedPalindrome | Flavor::GeneralizedAntipalindrome => {
            if canonical_len > len {
                return false;
            }
            let mut padded = vec![0u8; len - canonical_len];
            if n != 0 {
                padded.extend(d);
            }
            if flavor.is_anti() {
                is_antipal_digits(&padded)
            } else {
                is_pal_digits(&padded)
            }
        }
    }
}

/// All members whose representation has length exactly `len`, ascending.
pub fn members_of_length(flavor: Flavor, base: u32, len: usize) -> Vec<u64> {
    flavor.check_base(base);
    let k = base as u64;
    if len == 0 {
        return if matches!(
            flavor,
            Flavor::GeneralizedPalindrome | Flavor::GeneralizedAntipalindrome
        ) {
            vec![0]
        } else {
            Vec::new()
        };
    }
    assert!(len <= 63, "length too large");
    let half = len.div_ceil(2);
    let mut out = Vec::new();
    // Choose the top `half` digits freely and mirror them.
    let count = k.pow(half as u32);
    for top in 0..count {
        let mut hi = to_base_k(top, base);
        if hi.len() > half {
            continue;
        }
        let mut digits = vec![0u8; half - hi.len()];
        digits.append(&mut hi);
        let lead_zero = digits[0] == 0;
        if lead_zero && matches!(flavor, Flavor::Palindrome | Flavor::Antipalindrome) {
            continue;
        }
        let mut full = digits.clone();
        match flavor {
            Flavor::Palindrome | Flavor::GeneralizedPalindrome => {
                full.extend(digits.iter().rev().skip(len % 2));
            }
            Flavor::Antipalindrome | Flavor::GeneralizedAntipalindrome => {
                if len % 2 == 1 {
                    return Vec::new();
                }
                full.extend(digits.iter().rev().map(|&b| 1 - b));
            }
        }
        out.push(full.iter().fold(0u64, |acc, &d| acc * k + d as u64));
    }
    out.sort_unstable();
    out
}

/// All members `<= limit`, ascending.
pub fn enumerate(flavor: Flavor, base: u32, limit: u64) -> Vec<u64> {
    flavor.check_base(base);
    let max_len = to_base_k(limit, base).len();
    let mut out: Vec<u64> = match flavor {
        Flavor::Palindrome | Flavor::Antipalindrome => (1..=max_len)
            .flat_map(|len| members_of_length(flavor, base, len))
            .collect(),
        Flavor::GeneralizedPalindrome => {
            // m * base^v with m an ordinary palindrome.
            let mut v = Vec::new();
            for p in enumerate(Flavor::Palindrome, base, limit) {
                let mut m = p;
                v.push(m);
                while p != 0 && m <= limit / base as u64 {
                    m *= base as u64;
                    v.push(m);
                }
            }
            v
        }
        // Padding never exceeds the canonical length.
        Flavor::GeneralizedAntipalindrome => (0..=2 * max_len)
            .flat_map(|len| members_of_length(flavor, base, len))
            .collect(),
    };
    if flavor == Flavor::Palindrome {
        out.push(0);
    }
    out.retain(|&m| m <= limit);
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_conventions() {
        assert!(is_member(Flavor::Palindrome, 2, 0));
        assert!(is_member(Flavor::GeneralizedPalindrome, 2, 0));
        assert!(is_member(Flavor::GeneralizedAntipalindrome, 2, 0));
        assert!(!is_member(Flavor::Antipalindrome, 2, 0));
    }

    #[test]
    fn enumeration_matches_direct_membership() {
        for flavor in Flavor::ALL {
            let listed = enumerate(flavor, 2, 5000);
            let direct: Vec<u64> = (0..=5000).filter(|&n| is_member(flavor, 2, n)).collect();
            assert_eq!(listed, direct, "{flavor}");
        }
        for base in [3, 4, 10] {
            let listed = enumerate(Flavor::Palindrome, base, 5000);
            let direct: Vec<u64> = (0..=5000)
                .filter(|&n| is_member(Flavor::Palindrome, base, n))
                .collect();
            assert_eq!(listed, direct);
        }
    }

    #[test]
    fn members_of_length_agree_with_predicate() {
        for flavor in Flavor::ALL {
            for len in 0..=10 {
                let listed = members_of_length(flavor, 2, len);
                let direct: Vec<u64> = (0..1u64 << len)
                    .filter(|&n| is_member_of_length(flavor, 2, n, len))
                    .collect();
                assert_eq!(listed, direct, "{flavor} len {len}");
            }
        }
        for len in 1..=6 {
            let listed = members_of_length(Flavor::Palindrome, 3, len);
            let direct: Vec<u64> = (0..3u64.pow(len as u32))
                .filter(|&n| is_member_of_length(Flavor::Palindrome, 3, n, len))
                .collect();
            assert_eq!(listed, direct);
        }
    }
}
