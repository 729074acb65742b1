//! Brute-force queries: decompositions, least number of summands,
//! exceptions and a Schnirelmann density prefix.

use palsum::oracle::{decide, density_prefix, exceptions, min_summands, Flavor, SumQuery};

fn main() {
    for n in [176u64, 157441, 1_000_001] {
        let q = SumQuery::new(n, 2, 3, Flavor::Palindrome);
        match decide(&q) {
            Some(w) => println!("{n} = {w}"),
            None => println!("{n} is not a sum of 3 binary palindromes"),
        }
    }
    println!(
        "176 needs {:?}",
        min_summands(176, 2, Flavor::Palindrome, 4)
    );

    let ex = exceptions(Flavor::Palindrome, 2, 3, 2000);
    println!(
        "binary, 3 summands, up to 2000: {} exceptions {:?}",
        ex.len(),
        ex
    );

    let mut anti: Vec<u64> = exceptions(Flavor::Antipalindrome, 2, 3, 2000);
    anti.retain(|n| n % 2 == 0);
    println!("even numbers up to 2000 that need more than 3 antipalindromes: {anti:?}");

    let d = density_prefix(Flavor::Palindrome, 2, 2, 5000);
    println!(
        "density prefix of sums of 2 binary palindromes: {} ~ {:.4} at {}",
        d.min_ratio,
        d.as_f64(),
        d.argmin
    );
}
