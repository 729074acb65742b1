//! Folded-input automata for base 3: one NFA per length case, minimized and
//! checked against the oracle.

use palsum::encoding::folded_encode;
use palsum::generators::{folded_case_machine, BASE3_CASES};
use palsum::nfa::{determinize, minimize};
use palsum::oracle::simulate_folded;

fn main() -> palsum::Result<()> {
    for (name, summands) in BASE3_CASES {
        let nfa = folded_case_machine(3, summands);
        let min = minimize(&determinize(&nfa)?);
        let offsets: Vec<usize> = [summands.n, summands.n1, summands.n2, summands.n3]
            .iter()
            .enumerate()
            .filter(|p| *p.1)
            .map(|p| p.0)
            .collect();
        let rep = simulate_folded(&nfa, 3, 27, 3000, &[offsets])?;
        println!(
            "case {name} ({}): {} NFA states, {} minimal DFA states, disagreements on 27..3000: {}",
            summands.describe(),
            nfa.num_states(),
            min.num_states(),
            rep.disagreements.len()
        );
    }
    let w = folded_encode(2024, 3)?;
    let shown: Vec<String> = w.iter().map(|s| s.to_string()).collect();
    println!("2024 folded in base 3: {}", shown.join(" "));
    Ok(())
}
