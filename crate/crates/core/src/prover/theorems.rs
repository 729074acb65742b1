use std::time::Instant;

use super::{Counterexample, ProofReport, ProveOptions, Theorem};
use crate::encoding::{
    decode_nwa_input, encode_nwa_input, folded_decode, folded_encode, len_base_k, to_base_k,
};
use crate::error::{Error, Result};
use crate::generators::{
    folded_case_machine, folded_syntax, pal_checker, pal_checker2, pal_checker3, sum_checker,
    sum_checker_with_budget, syntax_checker, syntax_checker_with, LengthParity, SummandGroup,
    Summands, SyntaxConfig, ValueParity, BASE3_CASES, BASE4_CASES,
};
use crate::nfa::{self, determinize_with_budget as nfa_determinize, dfa_union, minimize, Dfa};
use crate::nwa::{determinize_with_budget, is_included_with_budget, union_with_budget, Nwa};
use crate::oracle::{decide_cases, is_member, min_summands_table, simulate_range, Flavor};

/// Even integers up to 35082 that are not a sum of at most 3 antipalindromes.
pub const ANTIPAL_THREE_EXCEPTIONS: [u64; 27] = [
    8, 18, 28, 130, 134, 138, 148, 158, 176, 318, 530, 538, 548, 576, 644, 1300, 2170, 2202, 2212,
    2228, 2230, 2248, 8706, 8938, 8948, 34970, 35082,
];

fn binary_string(n: u64) -> String {
    to_base_k(n, 2).iter().map(|d| d.to_string()).collect()
}

/// Runs `syntax ⊆ machine` and fills `holds` / `counterexample`.
fn check_nwa_inclusion(
    r: &mut ProofReport,
    syntax: &Nwa,
    machine: &Nwa,
    budget: usize,
    refuted: impl Fn(u64) -> bool,
) -> Result<()> {
    let inc = is_included_with_budget(syntax, machine, budget)?;
    r.holds = inc.holds();
    if let Some(w) = inc.counterexample() {
        let value = decode_nwa_input(w)?;
        r.counterexample = Some(Counterexample {
            word: w.to_string(),
            value,
            oracle_confirmed: refuted(value),
        });
    }
    Ok(())
}

fn note_simulation<M, O>(r: &mut ProofReport, lo: u64, hi: u64, machine: M, oracle: O) -> Result<()>
where
    M: Fn(u64) -> Result<bool> + Sync,
    O: Fn(u64) -> bool + Sync,
{
    let sim = simulate_range(lo, hi, machine, oracle)?;
    r.note("simulation.range", format!("{lo}..{hi}"));
    r.note("simulation.accepted", sim.accepted);
    r.note("simulation.disagreements", sim.disagreements.len());
    if let Some(d) = sim.disagreements.first() {
        r.note("simulation.first_disagreement", d.n);
    }
    Ok(())
}

/// Sweeps `1..=limit` and returns the first `n` needing more than `max` summands.
fn first_over(flavor: Flavor, limit: u64, max: usize, only_even: bool) -> Option<u64> {
    let table = min_summands_table(flavor, 2, limit, max);
    (1..=limit).find(|&n| (!only_even || n % 2 == 0) && table[n as usize] as usize > max)
}

fn oracle_counterexample(n: u64) -> Counterexample {
    Counterexample {
        word: binary_string(n),
        value: n,
        oracle_confirmed: true,
    }
}

/// Odd integers with `n >= 8` bits are sums of palindromes with length profile
/// `(n)`, `(n, n-2, n-3)` or `(n-1, n-2, n-3)`.
pub fn prove_binary(opts: &ProveOptions) -> Result<ProofReport> {
    let start = Instant::now();
    let mut r = ProofReport::new(Theorem::Binary);
    let syntax = syntax_checker(4, ValueParity::OddOnly);
    r.machine_sizes.push(("syntax".into(), syntax.num_states()));

    let parts: [(&str, &str, fn() -> Nwa, Vec<usize>); 3] = [
        ("pal", "palChecker", pal_checker, vec![0]),
        ("pal2", "palChecker2", pal_checker2, vec![0, 2, 3]),
        ("pal3", "palChecker3", pal_checker3, vec![1, 2, 3]),
    ];
    let mut cases = Vec::new();
    let mut dets = Vec::new();
    for (control, name, build, offsets) in parts {
        let m = build();
        r.machine_sizes.push((name.into(), m.num_states()));
        if opts.negative_control.as_deref() == Some(control) {
            r.note("dropped", name);
            continue;
        }
        let det = determinize_with_budget(&m, opts.budget)?;
        r.machine_sizes
            .push((format!("{name}.det"), det.num_states()));
        dets.push(det);
        cases.push(offsets);
    }
    let mut it = dets.into_iter();
    let mut fin = it.next().expect("at least two machines remain");
    for det in it {
        fin = union_with_budget(&fin, &det, &syntax, opts.budget)?;
    }
    r.machine_sizes.push(("FinalAut".into(), fin.num_states()));

    check_nwa_inclusion(&mut r, &syntax, &fin, opts.budget, |n| {
        decide_cases(n, 2, Flavor::Palindrome, &cases).is_none()
    })?;
    note_simulation(
        &mut r,
        513,
        1024,
        |n| fin.accepts(&encode_nwa_input(n)?),
        |n| {
            n % 2 == 1
                && len_base_k(n, 2) >= 8
                && decide_cases(n, 2, Flavor::Palindrome, &cases).is_some()
        },
    )?;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Every natural number is a sum of at most 4 binary palindromes: the
/// automaton result plus oracle sweeps for the small and even cases.
pub fn prove_corollary_main(opts: &ProveOptions) -> Result<ProofReport> {
    let start = Instant::now();
    let binary = prove_binary(&ProveOptions {
        budget: opts.budget,
        negative_control: None,
    })?;
    let mut r = ProofReport::new(Theorem::Corollary);
    r.machine_sizes = binary.machine_sizes.clone();
    r.note("binary.holds", binary.holds);

    let limit = (1u64 << 16) - 1;
    let table = min_summands_table(Flavor::Palindrome, 2, limit, 5);
    r.base_case_range = Some((1, 127));
    let small_ok = (1..128).all(|n| table[n] <= 4);
    r.note("base_cases.ok", small_ok);

    let max = *table[1..].iter().max().unwrap();
    let argmax = (1..=limit).find(|&n| table[n as usize] == max).unwrap();
    r.note("sweep.range", format!("1..{limit}"));
    r.note("sweep.max_summands", max);
    r.note("sweep.first_max", argmax);

    // 2^(n-1) = (2^(n-1) - 1) + 1 covers the even numbers that are powers of two.
    let split_ok = (2..=40u32).all(|n| {
        let p = 1u64 << (n - 1);
        is_member(Flavor::Palindrome, 2, p - 1) && is_member(Flavor::Palindrome, 2, 1)
    });
    r.note("power_of_two_split.ok", split_ok);

    r.holds = binary.holds && small_ok && max <= 4 && split_ok;
    if max > 4 {
        r.counterexample = Some(oracle_counterexample(argmax));
    } else if !binary.holds {
        r.counterexample = binary.counterexample.clone();
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

fn offsets(s: Summands) -> Vec<usize> {
    [(s.n, 0), (s.n1, 1), (s.n2, 2), (s.n3, 3)]
        .iter()
        .filter(|&&(on, _)| on)
        .map(|&(_, o)| o)
        .collect()
}

fn prove_folded(
    theorem: Theorem,
    base: u8,
    all_cases: &[(char, Summands)],
    min_len: usize,
    sim: (u64, u64),
    opts: &ProveOptions,
) -> Result<ProofReport> {
    let start = Instant::now();
    let mut r = ProofReport::new(theorem);
    let k = base as u32;
    let mut cases = Vec::new();
    let mut union: Option<Dfa> = None;
    for &(name, summands) in all_cases {
        if opts.negative_control.as_deref() == Some(name.to_string().as_str()) {
            r.note("dropped", format!("case_{name}"));
            continue;
        }
        let nfa = folded_case_machine(base, summands);
        r.machine_sizes
            .push((format!("case_{name}"), nfa.num_states()));
        let min = minimize(&nfa_determinize(&nfa, opts.budget)?);
        r.machine_sizes
            .push((format!("case_{name}.min"), min.num_states()));
        union = Some(match union {
            None => min,
            Some(u) => minimize(&dfa_union(&u, &min)?),
        });
        cases.push(offsets(summands));
    }
    let union = union.ok_or_else(|| Error::contract("every case was dropped"))?;
    r.machine_sizes
        .push(("union.min".into(), union.num_states()));

    let syntax = folded_syntax(base, min_len);
    r.machine_sizes.push(("syntax".into(), syntax.num_states()));
    let inc = nfa::is_included_with_budget(&syntax, &union.to_nfa(), opts.budget)?;
    r.holds = inc.holds();
    if let Some(w) = inc.counterexample() {
        let value = folded_decode(w, k)?;
        r.counterexample = Some(Counterexample {
            word: w
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            value,
            oracle_confirmed: decide_cases(value, k, Flavor::Palindrome, &cases).is_none(),
        });
    }
    note_simulation(
        &mut r,
        sim.0,
        sim.1,
        |n| union.accepts(&folded_encode(n, k)?),
        |n| decide_cases(n, k, Flavor::Palindrome, &cases).is_some(),
    )?;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Base-3 integers of length `n >= 9`: four length profiles.
pub fn prove_base3(opts: &ProveOptions) -> Result<ProofReport> {
    prove_folded(Theorem::Base3, 3, &BASE3_CASES, 9, (243, 1000), opts)
}

/// Base-4 integers of length `n >= 7`: two length profiles.
pub fn prove_base4(opts: &ProveOptions) -> Result<ProofReport> {
    prove_folded(Theorem::Base4, 4, &BASE4_CASES, 7, (4096, 16383), opts)
}

/// Every length-`n` integer, `n >= 6`, is a sum of at most two generalized
/// palindromes of length `n` and one of length `n-1`.
pub fn prove_genpal(opts: &ProveOptions) -> Result<ProofReport> {
    let start = Instant::now();
    let mut r = ProofReport::new(Theorem::GenPal);
    let (groups, offs) = match opts.negative_control.as_deref() {
        Some("n") => (vec![(1, 0), (1, 1)], vec![0, 1]),
        Some("n-1") => (vec![(2, 0)], vec![0, 0]),
        _ => (vec![(2, 0), (1, 1)], vec![0, 0, 1]),
    };
    if let Some(c) = &opts.negative_control {
        r.note("dropped", format!("one summand of length {c}"));
    }
    let groups: Vec<SummandGroup> = groups
        .into_iter()
        .map(|(c, d)| SummandGroup::palindromes(c, d).generalized())
        .collect();
    let cases = vec![offs];

    let syntax = syntax_checker_with(SyntaxConfig::new(3));
    let m = sum_checker(&groups);
    r.machine_sizes.push(("syntax".into(), syntax.num_states()));
    r.machine_sizes.push(("gpalChecker".into(), m.num_states()));
    let det = determinize_with_budget(&m, opts.budget)?;
    r.machine_sizes
        .push(("gpalChecker.det".into(), det.num_states()));

    check_nwa_inclusion(&mut r, &syntax, &det, opts.budget, |n| {
        decide_cases(n, 2, Flavor::GeneralizedPalindrome, &cases).is_none()
    })?;

    let limit = 4095;
    r.base_case_range = Some((1, 31));
    let over = first_over(Flavor::GeneralizedPalindrome, limit, 3, false);
    r.note("base_cases.ok", over.is_none_or(|n| n > 31));
    r.note("sweep.range", format!("1..{limit}"));
    r.note("sweep.max_summands_ok", over.is_none());
    if let Some(n) = over {
        r.holds = false;
        r.counterexample
            .get_or_insert_with(|| oracle_counterexample(n));
    }
    note_simulation(
        &mut r,
        32,
        limit + 1,
        |n| det.accepts(&encode_nwa_input(n)?),
        |n| decide_cases(n, 2, Flavor::GeneralizedPalindrome, &cases).is_some(),
    )?;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Every even-length integer of length `n >= 6` is a sum of exactly 6
/// generalized antipalindromes of length `n-2`.
pub fn prove_gap(opts: &ProveOptions) -> Result<ProofReport> {
    let start = Instant::now();
    let mut r = ProofReport::new(Theorem::Gap);
    let count: u8 = match &opts.negative_control {
        Some(c) => c
            .parse()
            .map_err(|_| Error::contract(format!("bad summand count `{c}`")))?,
        None => 6,
    };
    if opts.negative_control.is_some() {
        r.note("summands", count);
    }
    let cases = vec![vec![2usize; count as usize]];

    let syntax = syntax_checker_with(SyntaxConfig::new(3).lengths(LengthParity::Even));
    let m = sum_checker(&[SummandGroup::antipalindromes(count, 2).generalized()]);
    r.machine_sizes.push(("syntax".into(), syntax.num_states()));
    r.machine_sizes.push(("gapChecker".into(), m.num_states()));
    let det = determinize_with_budget(&m, opts.budget)?;
    r.machine_sizes
        .push(("gapChecker.det".into(), det.num_states()));

    check_nwa_inclusion(&mut r, &syntax, &det, opts.budget, |n| {
        decide_cases(n, 2, Flavor::GeneralizedAntipalindrome, &cases).is_none()
    })?;

    // At most 7 for everything: the automaton covers even lengths >= 6.
    let limit = 4095;
    r.base_case_range = Some((1, limit));
    let over = first_over(Flavor::GeneralizedAntipalindrome, limit, 7, false);
    r.note("sweep.max_summands_ok", over.is_none());
    if let Some(n) = over {
        r.holds = false;
        r.counterexample
            .get_or_insert_with(|| oracle_counterexample(n));
    }
    note_simulation(
        &mut r,
        64,
        1023,
        |n| det.accepts(&encode_nwa_input(n)?),
        |n| decide_cases(n, 2, Flavor::GeneralizedAntipalindrome, &cases).is_some(),
    )?;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Oracle evidence for the antipalindrome conjectures up to `limit`; never a
/// proof. Also attempts the 10-summand machine under the state budget.
pub fn check_antipal_conjectures(limit: u64, opts: &ProveOptions) -> Result<ProofReport> {
    let start = Instant::now();
    let mut r = ProofReport::new(Theorem::Antipal);
    r.note("status", "evidence");
    let top = *ANTIPAL_THREE_EXCEPTIONS.last().unwrap();
    let table = min_summands_table(Flavor::Antipalindrome, 2, limit.max(top), 4);

    let found: Vec<u64> = (2..=top)
        .step_by(2)
        .filter(|&n| table[n as usize] > 3)
        .collect();
    let list_ok = found == ANTIPAL_THREE_EXCEPTIONS;
    r.note(
        "three.exceptions",
        found
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    r.note("three.matches_list", list_ok);

    let over4 = (2..=limit).step_by(2).find(|&n| table[n as usize] > 4);
    r.note("four.range", format!("2..{limit}"));
    r.note("four.all_even_ok", over4.is_none());
    r.base_case_range = Some((1, 255));
    let small_ok = (2..256).step_by(2).all(|n| table[n] <= 4);
    r.note("four.below_256_ok", small_ok);

    let groups = [SummandGroup::antipalindromes(10, 3)];
    let attempt = sum_checker_with_budget(&groups, opts.budget)
        .and_then(|m| determinize_with_budget(&m, opts.budget));
    match attempt {
        Ok(det) => r
            .machine_sizes
            .push(("antipal10.det".into(), det.num_states())),
        Err(Error::ResourceLimit { budget }) => r.note(
            "antipal10.machine",
            format!("resource-limit (budget {budget})"),
        ),
        Err(e) => return Err(e),
    }

    r.holds = list_ok && over4.is_none() && small_ok;
    if let Some(n) = over4 {
        r.counterexample = Some(oracle_counterexample(n));
    }
    r.elapsed = start.elapsed();
    Ok(r)
}
