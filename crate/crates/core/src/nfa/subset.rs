use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::nwa::DEFAULT_STATE_BUDGET;

use super::{Dfa, Nfa, StateId};

pub fn determinize(nfa: &Nfa) -> Result<Dfa> {
    determinize_with_budget(nfa, DEFAULT_STATE_BUDGET)
}

/// Reachable subset construction. The empty subset is kept as an explicit
/// sink so the result is complete.
pub fn determinize_with_budget(nfa: &Nfa, budget: usize) -> Result<Dfa> {
    let sigma = nfa.alphabet().size();
    let mut index: FxHashMap<Vec<StateId>, StateId> = FxHashMap::default();
    let mut subsets: Vec<Vec<StateId>> = Vec::new();
    let mut delta: Vec<StateId> = Vec::new();
    let mut accepting = Vec::new();

    let mut intern = |set: Vec<StateId>,
                      subsets: &mut Vec<Vec<StateId>>,
                      accepting: &mut Vec<bool>|
     -> Result<StateId> {
        if let Some(&id) = index.get(&set) {
            return Ok(id);
        }
        if subsets.len() >= budget {
            return Err(Error::ResourceLimit { budget });
        }
        let id = subsets.len() as StateId;
        accepting.push(set.iter().any(|&q| nfa.is_accepting(q)));
        index.insert(set.clone(), id);
        subsets.push(set);
        Ok(id)
    };

    let initial = intern(nfa.initial_states().to_vec(), &mut subsets, &mut accepting)?;
    let mut buckets: Vec<Vec<StateId>> = vec![Vec::new(); sigma];
    let mut done = 0;
    while done < subsets.len() {
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &q in &subsets[done] {
            for &(s, d) in nfa.raw_edges(q) {
                buckets[s as usize].push(d);
            }
        }
        for b in buckets.iter_mut() {
            b.sort_unstable();
            b.dedup();
            let id = intern(b.clone(), &mut subsets, &mut accepting)?;
            delta.push(id);
        }
        done += 1;
    }
    Ok(Dfa::from_parts(nfa.alphabet(), initial, accepting, delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfa::{FoldedAlphabet, FoldedSymbol};

    #[test]
    fn budget_is_enforced() {
        let a = FoldedAlphabet::new(2);
        let mut nfa = Nfa::new(a);
        let q = nfa.add_state("q", true);
        let r = nfa.add_state("r", false);
        nfa.set_initial(q);
        nfa.add_transition(q, FoldedSymbol::First(1), r);
        assert!(matches!(
            determinize_with_budget(&nfa, 1),
            Err(Error::ResourceLimit { budget: 1 })
        ));
        let dfa = determinize_with_budget(&nfa, 10).unwrap();
        // {q}, {r}, {} (sink)
        assert_eq!(dfa.num_states(), 3);
    }
}
