//! Negative controls: dropping a case from a proof must make it fail with a
//! counterexample the oracle confirms.

use palsum::encoding::{encode_nwa_input, len_base_k};
use palsum::oracle::{decide, Flavor, SumQuery};
use palsum::prover::{ProveOptions, Theorem};

fn flips(t: Theorem, control: &str) -> u64 {
    let r = t.prove(&ProveOptions::with_control(control)).unwrap();
    assert!(!r.holds, "{} without {control} still holds", t.id());
    let cx = r.counterexample.expect("counterexample");
    assert!(cx.oracle_confirmed, "{} / {control}: {cx:?}", t.id());
    cx.value
}

fn check_all(t: Theorem) {
    for &c in t.controls() {
        if (t, c) == (Theorem::Binary, "pal") {
            continue;
        }
        flips(t, c);
    }
}

#[test]
fn binary_controls() {
    // Dropping palChecker2 or palChecker3 breaks the proof.
    let v = flips(Theorem::Binary, "pal2");
    assert_eq!(v % 2, 1);
    assert!(len_base_k(v, 2) >= 8);
    flips(Theorem::Binary, "pal3");
}

#[test]
fn single_palindrome_case_is_redundant() {
    // Odd palindromic inputs are already covered by the two 3-summand cases.
    let r = Theorem::Binary
        .prove(&ProveOptions::with_control("pal"))
        .unwrap();
    assert!(r.holds);
}

#[test]
fn base3_controls() {
    check_all(Theorem::Base3);
}

#[test]
fn base4_controls() {
    check_all(Theorem::Base4);
}

#[test]
fn genpal_controls() {
    check_all(Theorem::GenPal);
}

#[test]
fn gap_controls() {
    check_all(Theorem::Gap);
}

#[test]
fn counterexamples_are_real() {
    // The weakened binary proof's counterexample still has a 3-palindrome
    // representation; it is only outside the remaining case.
    let r = Theorem::Binary
        .prove(&ProveOptions::with_control("pal2"))
        .unwrap();
    let cx = r.counterexample.unwrap();
    assert_eq!(cx.word, encode_nwa_input(cx.value).unwrap().to_string());
    assert!(decide(&SumQuery::new(cx.value, 2, 3, Flavor::Palindrome)).is_some());
}

#[test]
fn proofs_are_deterministic() {
    for t in [Theorem::Base3, Theorem::GenPal, Theorem::Antipal] {
        let a = t.prove(&ProveOptions::default()).unwrap().to_string();
        let b = t.prove(&ProveOptions::default()).unwrap().to_string();
        assert_eq!(a, b);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| {
        Theorem::GenPal
            .prove(&ProveOptions::default())
            .unwrap()
            .to_string()
    });
    assert_eq!(
        single,
        Theorem::GenPal
            .prove(&ProveOptions::default())
            .unwrap()
            .to_string()
    );
}
