//! Build a small nested-word automaton by hand, run it, determinize it and
//! ask for an emptiness witness.

use palsum::generators::fig1_machine;
use palsum::nwa::{determinize, is_empty, NestedWord};

fn main() -> palsum::Result<()> {
    let m = fig1_machine();
    println!(
        "fig1: {} states, {} transitions",
        m.num_states(),
        m.num_transitions()
    );

    for w in ["0 1 2", "0 0 1 2 2", "0 1 2 2", "1"] {
        let word = parse(w)?;
        println!("  {w:<12} accepted={}", m.accepts(&word)?);
    }

    let det = determinize(&m)?;
    println!("determinized: {} states", det.num_states());
    match is_empty(&det).witness() {
        Some(w) => println!("shortest accepted word: {w}"),
        None => println!("language is empty"),
    }
    Ok(())
}

fn parse(s: &str) -> palsum::Result<NestedWord> {
    use palsum::nwa::TaggedSymbol;
    let syms = s
        .split_whitespace()
        .map(|t| match t {
            "0" => TaggedSymbol::call(0),
            "1" => TaggedSymbol::internal(1),
            _ => TaggedSymbol::ret(2),
        })
        .collect();
    Ok(NestedWord::new(syms))
}
