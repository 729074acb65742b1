//! Builders for every machine used by the proofs.

mod folded;
mod sum_checker;
mod syntax;

pub use folded::{
    base3_machine, base4_machine, folded_case_machine, folded_syntax, folded_union, Summands,
    BASE3_CASES, BASE4_CASES,
};
pub use sum_checker::{sum_checker, sum_checker_with_budget, Shape, SummandGroup};
pub use syntax::{
    fig1_machine, syntax_checker, syntax_checker_with, LengthParity, SyntaxConfig, ValueParity,
};

use crate::nwa::Nwa;

/// Binary palindromes (one summand of the input's length).
pub fn pal_checker() -> Nwa {
    sum_checker(&[SummandGroup::palindromes(1, 0)])
}

/// Sums of palindromes of lengths `n`, `n-2`, `n-3`.
pub fn pal_checker2() -> Nwa {
    sum_checker(&[
        SummandGroup::palindromes(1, 0),
        SummandGroup::palindromes(1, 2),
        SummandGroup::palindromes(1, 3),
    ])
}

/// Sums of palindromes of lengths `n-1`, `n-2`, `n-3`.
pub fn pal_checker3() -> Nwa {
    sum_checker(&[
        SummandGroup::palindromes(1, 1),
        SummandGroup::palindromes(1, 2),
        SummandGroup::palindromes(1, 3),
    ])
}

/// At most two generalized palindromes of length `n` plus at most one of
/// length `n-1` (a zero summand is a generalized palindrome).
pub fn gpal_checker() -> Nwa {
    sum_checker(&[
        SummandGroup::palindromes(2, 0).generalized(),
        SummandGroup::palindromes(1, 1).generalized(),
    ])
}

/// Sums of exactly `count` antipalindromes, one for each offset in
/// `offsets` (summand lengths `n - offset`); repeated offsets share a group.
pub fn antipal_checker(offsets: &[u8]) -> Nwa {
    let mut groups: Vec<SummandGroup> = Vec::new();
    for &d in offsets {
        match groups.iter_mut().find(|g| g.delay == d) {
            Some(g) => g.count += 1,
            None => groups.push(SummandGroup::antipalindromes(1, d)),
        }
    }
    sum_checker(&groups)
}

/// Exactly six generalized antipalindromes of length `n-2`.
pub fn gap_checker() -> Nwa {
    sum_checker(&[SummandGroup::antipalindromes(6, 2).generalized()])
}
