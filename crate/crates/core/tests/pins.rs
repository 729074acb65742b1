//! Values pinned against published numbers and small hand computations.

use palsum::encoding::{encode_nwa_input, folded_encode, from_digits, to_base_k};
use palsum::generators::{
    antipal_checker, fig1_machine, folded_case_machine, gpal_checker, pal_checker, pal_checker2,
    pal_checker3, syntax_checker, ValueParity, BASE3_CASES,
};
use palsum::nfa;
use palsum::nwa::{self, NestedWord, NwaBuilder, TaggedSymbol};
use palsum::oracle::{
    count_sum_two_gen_pal_same_length, decide, decide_cases, density_prefix, enumerate, exceptions,
    min_summands, simulate_nwa, Flavor, MinSummands, SumQuery,
};

fn word(s: &str) -> NestedWord {
    NestedWord::parse_letters(s).unwrap()
}

#[test]
fn binary_expansions() {
    assert_eq!(to_base_k(43, 2), vec![1, 0, 1, 0, 1, 1]);
    assert_eq!(to_base_k(34, 3), vec![1, 0, 2, 1]);
    assert_eq!(from_digits(&[1, 3, 5], 2), 15);
    assert_eq!(from_digits(&[2, 2, 2], 3), 26);
}

#[test]
fn nwa_inputs() {
    assert_eq!(encode_nwa_input(43).unwrap().to_string(), "bbafef");
    assert_eq!(encode_nwa_input(21).unwrap().to_string(), "badef");
    assert_eq!(encode_nwa_input(1).unwrap().to_string(), "d");
}

#[test]
fn folded_inputs() {
    let show = |n| {
        folded_encode(n, 3)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    assert_eq!(show(34), "F1 S0 P[2,1]");
    assert_eq!(show(104), "F1 S0 P[2,2] M1");
}

#[test]
fn pal_checker_samples() {
    let m = pal_checker();
    for (n, want) in [(21, true), (22, false), (33, true), (2, false)] {
        assert_eq!(
            m.accepts(&encode_nwa_input(n).unwrap()).unwrap(),
            want,
            "n={n}"
        );
    }
    for n in 16..1u64 << 14 {
        let s = format!("{n:b}");
        let pal = s.chars().rev().collect::<String>() == s;
        assert_eq!(
            m.accepts(&encode_nwa_input(n).unwrap()).unwrap(),
            pal,
            "n={n}"
        );
    }
}

#[test]
fn checker_sizes_and_labels() {
    assert_eq!(pal_checker().num_states(), 9);
    assert_eq!(pal_checker2().num_states(), 771);
    let m3 = pal_checker3();
    assert_eq!(m3.num_states(), 1539);
    // Tuple (0,1,1,1,0,0,0,0,0,0) in the exported naming scheme.
    assert_eq!(m3.label(m3.initial_states()[0]), "q_0_111_0_00_000");
    assert_eq!(gpal_checker().num_states(), 39);
    let base3 = folded_case_machine(3, BASE3_CASES[0].1);
    assert_eq!(base3.label(base3.initial_states()[0]), "(0,0,0,0,0,0)");
}

#[test]
fn fig1_emptiness_witness() {
    let w = nwa::is_empty(&fig1_machine());
    let expected = NestedWord::new(vec![
        TaggedSymbol::call(0),
        TaggedSymbol::internal(1),
        TaggedSymbol::ret(2),
    ]);
    assert_eq!(w.witness(), Some(&expected));
    let b = NwaBuilder::new(nwa::Alphabet::binary());
    assert!(nwa::is_empty(&b.build()).is_empty());
}

#[test]
fn complement_of_pal_checker_accepts_two() {
    let syntax = syntax_checker(1, ValueParity::Any);
    let not_pal = nwa::complement(&pal_checker(), &syntax).unwrap();
    assert!(not_pal.accepts(&word("af")).unwrap());
    assert!(!not_pal.accepts(&word("bf")).unwrap());
}

#[test]
fn intersection_of_binary_cases_matches_oracle() {
    let a = nwa::determinize(&pal_checker2()).unwrap();
    let b = nwa::determinize(&pal_checker3()).unwrap();
    let both = nwa::intersect_with_budget(&a, &b, 2_000_000).unwrap();
    assert!(both.is_deterministic());
    for n in 513..=1024u64 {
        let want = decide_cases(n, 2, Flavor::Palindrome, &[vec![0, 2, 3]]).is_some()
            && decide_cases(n, 2, Flavor::Palindrome, &[vec![1, 2, 3]]).is_some();
        assert_eq!(
            both.accepts(&encode_nwa_input(n).unwrap()).unwrap(),
            want,
            "n={n}"
        );
    }
}

#[test]
fn pal_checker2_weakened_alone_fails() {
    let syntax = syntax_checker(4, ValueParity::OddOnly);
    let det = nwa::determinize(&pal_checker2()).unwrap();
    let inc = nwa::is_included(&syntax, &det).unwrap();
    let w = inc.counterexample().expect("counterexample");
    let n = palsum::encoding::decode_nwa_input(w).unwrap();
    assert!(decide_cases(n, 2, Flavor::Palindrome, &[vec![0, 2, 3]]).is_none());
}

#[test]
fn antipal_single_summand_accepts_antipalindromes() {
    let m = antipal_checker(&[0]);
    let accepted: Vec<u64> = (2..=240u64)
        .filter(|&n| m.accepts(&encode_nwa_input(n).unwrap()).unwrap())
        .collect();
    assert_eq!(
        accepted,
        [2, 10, 12, 38, 42, 52, 56, 142, 150, 170, 178, 204, 212, 232, 240]
    );
}

#[test]
fn antipal_checkers_accept_only_even() {
    let m = antipal_checker(&[2, 2, 2]);
    for n in 256..4096u64 {
        if m.accepts(&encode_nwa_input(n).unwrap()).unwrap() {
            assert_eq!(n % 2, 0, "n={n}");
        }
    }
    let rep = simulate_nwa(
        &antipal_checker(&[0, 1]),
        4,
        4095,
        Flavor::Antipalindrome,
        &[vec![0, 1]],
    )
    .unwrap();
    assert!(rep.agrees());
}

#[test]
fn gap_two_summand_exceptions() {
    assert_eq!(
        exceptions(Flavor::GeneralizedAntipalindrome, 2, 2, 1045),
        [
            29, 60, 91, 109, 111, 121, 122, 131, 135, 272, 329, 347, 365, 371, 373, 391, 401, 429,
            441, 445, 449, 469, 473, 509, 531, 539, 546, 577, 611, 660, 696, 731, 744, 791, 804,
            884, 905, 940, 985, 1011, 1020, 1045
        ]
    );
}

#[test]
fn sequence_prefixes() {
    assert_eq!(
        enumerate(Flavor::Antipalindrome, 2, 56),
        [2, 10, 12, 38, 42, 52, 56]
    );
    assert_eq!(
        enumerate(Flavor::Palindrome, 3, 26),
        [0, 1, 2, 4, 8, 10, 13, 16, 20, 23, 26]
    );
}

#[test]
fn oracle_samples() {
    assert!(decide(&SumQuery::new(176, 2, 3, Flavor::Palindrome)).is_none());
    let w = decide(&SumQuery::new(176, 2, 4, Flavor::Palindrome)).unwrap();
    assert_eq!(w.summands.iter().sum::<u64>(), 176);
    assert_eq!(
        decide(&SumQuery::new(5, 2, 1, Flavor::Palindrome))
            .unwrap()
            .summands,
        [5]
    );
    assert_eq!(
        min_summands(0, 2, Flavor::Palindrome, 4),
        MinSummands::Exactly(0)
    );
    assert_eq!(
        min_summands(176, 2, Flavor::Palindrome, 4),
        MinSummands::Exactly(4)
    );
    assert_eq!(
        exceptions(Flavor::GeneralizedPalindrome, 2, 2, 157441),
        [157441]
    );
    // 2^10 = (2^10 - 1) + 1.
    let w = decide(&SumQuery::new(1024, 2, 2, Flavor::Palindrome)).unwrap();
    assert_eq!(w.summands.len(), 2);
}

#[test]
fn enumeration_counts() {
    assert_eq!(count_sum_two_gen_pal_same_length(1), 3);
    assert_eq!(count_sum_two_gen_pal_same_length(2), 3);
    assert_eq!(count_sum_two_gen_pal_same_length(12), 729);
}

#[test]
fn density_of_single_palindromes() {
    // Palindromes in 1..=10: 1,3,5,7,9; ratios A(n)/n bottom out at 1/2 for n = 2.
    let d = density_prefix(Flavor::Palindrome, 2, 1, 10);
    assert_eq!((*d.min_ratio.numer(), *d.min_ratio.denom()), (1, 2));
    assert_eq!(d.argmin, 2);
}

#[test]
fn base3_union_determinize_minimize_agree() {
    let nfa = palsum::generators::base3_machine();
    let dfa = nfa::minimize(&nfa::determinize(&nfa).unwrap());
    assert_eq!(nfa::minimize(&dfa).num_states(), dfa.num_states());
    for n in 243..=1000u64 {
        let w = folded_encode(n, 3).unwrap();
        assert_eq!(dfa.accepts(&w).unwrap(), nfa.accepts(&w).unwrap());
    }
    // An independently built union minimizes to an isomorphic machine.
    let mut folded = None;
    for (_, s) in BASE3_CASES {
        let d = nfa::minimize(&nfa::determinize(&folded_case_machine(3, s)).unwrap());
        folded = Some(match folded {
            None => d,
            Some(acc) => nfa::minimize(&nfa::dfa_union(&acc, &d).unwrap()),
        });
    }
    assert!(nfa::isomorphic(&dfa, &folded.unwrap()));
}

#[test]
fn corrupted_machine_disagrees() {
    let m = pal_checker();
    let mut b = NwaBuilder::new(m.alphabet().clone());
    for q in 0..m.num_states() as u32 {
        b.add_state(m.label(q), !m.is_accepting(q));
    }
    for &q in m.initial_states() {
        b.set_initial(q);
    }
    for q in 0..m.num_states() as u32 {
        for &(s, d) in m.call_edges(q) {
            b.add_call(q, m.alphabet().symbol(nwa::SymbolClass::Call, s), d);
        }
        for &(s, d) in m.internal_edges(q) {
            b.add_internal(q, m.alphabet().symbol(nwa::SymbolClass::Internal, s), d);
        }
    }
    for (q, p, s, d) in m.return_transitions() {
        b.add_return(q, p, m.alphabet().symbol(nwa::SymbolClass::Return, s), d);
    }
    let flipped = b.build();
    let rep = simulate_nwa(&flipped, 16, 200, Flavor::Palindrome, &[vec![0]]).unwrap();
    assert!(!rep.agrees());
}
