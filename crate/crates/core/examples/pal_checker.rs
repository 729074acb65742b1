//! Build the binary palindrome-sum checkers, print their sizes and compare
//! each one with the brute-force oracle on a range of inputs.

use palsum::encoding::encode_nwa_input;
use palsum::generators::{pal_checker, pal_checker2, pal_checker3};
use palsum::nwa::determinize;
use palsum::oracle::{simulate_nwa, Flavor};

fn main() -> palsum::Result<()> {
    let checkers = [
        ("palChecker", pal_checker(), vec![0]),
        ("palChecker2", pal_checker2(), vec![0, 2, 3]),
        ("palChecker3", pal_checker3(), vec![1, 2, 3]),
    ];
    for (name, m, offsets) in checkers {
        let det = determinize(&m)?;
        let rep = simulate_nwa(
            &m,
            1,
            2047,
            Flavor::Palindrome,
            std::slice::from_ref(&offsets),
        )?;
        println!(
            "{name}: {} states, {} after determinization; 1..2047 accepted={} disagreements={}",
            m.num_states(),
            det.num_states(),
            rep.accepted,
            rep.disagreements.len()
        );
    }

    let n = 2001;
    let w = encode_nwa_input(n)?;
    println!(
        "{n} is encoded as {w}; palChecker2 accepts: {}",
        pal_checker2().accepts(&w)?
    );
    Ok(())
}
