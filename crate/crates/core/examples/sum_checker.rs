//! The generic sum-checker template: build checkers for custom summand
//! shapes and count how many of their inputs they accept.

use palsum::generators::{antipal_checker, sum_checker, SummandGroup};
use palsum::oracle::{simulate_nwa, Flavor};

fn main() -> palsum::Result<()> {
    let anti = antipal_checker(&[2, 2, 2]);
    let rep = simulate_nwa(&anti, 1, 4095, Flavor::Antipalindrome, &[vec![2, 2, 2]])?;
    println!(
        "three antipalindromes of length n-2: {} states, accepted {} of 1..4095, disagreements {}",
        anti.num_states(),
        rep.accepted,
        rep.disagreements.len()
    );

    let two = sum_checker(&[
        SummandGroup::palindromes(1, 0),
        SummandGroup::palindromes(1, 1),
    ]);
    let rep = simulate_nwa(&two, 1, 4095, Flavor::Palindrome, &[vec![0, 1]])?;
    println!(
        "palindromes of lengths n and n-1: {} states, accepted {}, disagreements {}",
        two.num_states(),
        rep.accepted,
        rep.disagreements.len()
    );
    Ok(())
}
