//! Machine serialization: a native line format (the round-trip source of
//! truth) and a subset of the ULTIMATE automata-script syntax.

mod ats;
mod native;

pub use ats::{read_ats, write_ats};
pub use native::{read_native, write_native};

use crate::nfa::Nfa;
use crate::nwa::Nwa;

/// Either kind of automaton this crate builds.
#[derive(Clone, Debug)]
pub enum Machine {
    Nwa(Nwa),
    Nfa(Nfa),
}

impl Machine {
    pub fn num_states(&self) -> usize {
        match self {
            Machine::Nwa(m) => m.num_states(),
            Machine::Nfa(m) => m.num_states(),
        }
    }

    pub fn num_transitions(&self) -> usize {
        match self {
            Machine::Nwa(m) => m.num_transitions(),
            Machine::Nfa(m) => m.num_transitions(),
        }
    }
}

impl From<Nwa> for Machine {
    fn from(m: Nwa) -> Self {
        Machine::Nwa(m)
    }
}

impl From<Nfa> for Machine {
    fn from(m: Nfa) -> Self {
        Machine::Nfa(m)
    }
}

/// Unique, whitespace-free state names: the machine's own labels when they
/// qualify, otherwise `q<id>`.
fn state_names(count: usize, label: impl Fn(usize) -> String) -> Vec<String> {
    let labels: Vec<String> = (0..count).map(&label).collect();
    let usable = labels
        .iter()
        .all(|l| !l.is_empty() && !l.contains(|c: char| c.is_whitespace() || c == '"'));
    let mut seen = std::collections::HashSet::new();
    if usable && labels.iter().all(|l| seen.insert(l.as_str())) {
        labels
    } else {
        (0..count).map(|q| format!("q{q}")).collect()
    }
}
