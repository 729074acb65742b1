use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::nwa::DEFAULT_STATE_BUDGET;

use super::minimize::reachable;
use super::subset::determinize_with_budget;
use super::{Dfa, FoldedSymbol, Nfa, StateId};

/// Outcome of `L(a) ⊆ L(b)` for finite automata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NfaInclusion {
    Included,
    /// Shortest word in `L(a) \ L(b)`, least in symbol-index order among those.
    Counterexample(Vec<FoldedSymbol>),
}

impl NfaInclusion {
    pub fn holds(&self) -> bool {
        matches!(self, NfaInclusion::Included)
    }

    pub fn counterexample(&self) -> Option<&[FoldedSymbol]> {
        match self {
            NfaInclusion::Included => None,
            NfaInclusion::Counterexample(w) => Some(w),
        }
    }
}

/// Same states and transitions, acceptance flipped.
pub fn complement(dfa: &Dfa) -> Dfa {
    let accepting = dfa.accepting.iter().map(|&a| !a).collect();
    Dfa::from_parts(dfa.alphabet, dfa.initial, accepting, dfa.delta.clone())
}

fn product(a: &Dfa, b: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
    if a.alphabet != b.alphabet {
        return Err(Error::contract("alphabet mismatch in DFA product"));
    }
    let sigma = a.alphabet.size();
    let mut index: FxHashMap<(StateId, StateId), StateId> = FxHashMap::default();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert(pairs[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for s in 0..sigma {
            let t = (a.next(p, s), b.next(q, s));
            let id = *index.entry(t).or_insert_with(|| {
                pairs.push(t);
                (pairs.len() - 1) as StateId
            });
            delta.push(id);
        }
        i += 1;
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| accept(a.is_accepting(p), b.is_accepting(q)))
        .collect();
    Ok(Dfa::from_parts(a.alphabet, 0, accepting, delta))
}

pub fn dfa_intersect(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    product(a, b, |x, y| x && y)
}

pub fn dfa_union(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    product(a, b, |x, y| x || y)
}

/// True when the reachable parts are equal up to renaming of states.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.alphabet == b.alphabet && reachable(a) == reachable(b)
}

pub fn is_included(a: &Nfa, b: &Nfa) -> Result<NfaInclusion> {
    is_included_with_budget(a, b, DEFAULT_STATE_BUDGET)
}

/// Breadth-first search of `a × det(b)` for a pair accepting in `a` and
/// rejecting in `b`. Expanding symbols in index order makes the first hit
/// the least shortest counterexample.
pub fn is_included_with_budget(a: &Nfa, b: &Nfa, budget: usize) -> Result<NfaInclusion> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::contract("alphabet mismatch in NFA inclusion"));
    }
    let db = determinize_with_budget(b, budget)?;
    let alphabet = a.alphabet();
    let mut parent: FxHashMap<(StateId, StateId), Option<((StateId, StateId), u16)>> =
        FxHashMap::default();
    let mut queue = VecDeque::new();
    for &q in a.initial_states() {
        let node = (q, db.initial());
        if parent.insert(node, None).is_none() {
            queue.push_back(node);
        }
    }
    while let Some(node @ (q, d)) = queue.pop_front() {
        if a.is_accepting(q) && !db.is_accepting(d) {
            let mut word = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, s))) = parent.get(&cur).copied() {
                word.push(alphabet.symbol(s as usize));
                cur = prev;
            }
            word.reverse();
            return Ok(NfaInclusion::Counterexample(word));
        }
        // Edges are sorted by symbol, so successors are queued in symbol order.
        for &(s, t) in a.raw_edges(q) {
            let next = (t, db.next(d, s as usize));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((node, s)));
                queue.push_back(next);
            }
        }
    }
    Ok(NfaInclusion::Included)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfa::{determinize, minimize, FoldedAlphabet};

    fn ends_with(base: u8, d: u8) -> Nfa {
        let a = FoldedAlphabet::new(base);
        let mut nfa = Nfa::new(a);
        let q = nfa.add_state("q", false);
        let r = nfa.add_state("r", true);
        nfa.set_initial(q);
        for s in a.symbols() {
            nfa.add_transition(q, s, q);
        }
        nfa.add_transition(q, FoldedSymbol::Middle(d), r);
        nfa
    }

    #[test]
    fn inclusion_is_reflexive() {
        let n = ends_with(2, 1);
        assert!(is_included(&n, &n).unwrap().holds());
    }

    #[test]
    fn counterexample_is_shortest_and_least() {
        let a = ends_with(2, 1);
        let b = ends_with(2, 0);
        let r = is_included(&a, &b).unwrap();
        assert_eq!(r.counterexample(), Some(&[FoldedSymbol::Middle(1)][..]));
    }

    #[test]
    fn de_morgan_on_products() {
        let a = determinize(&ends_with(2, 1)).unwrap();
        let b = determinize(&ends_with(2, 0)).unwrap();
        let u = minimize(&dfa_union(&a, &b).unwrap());
        let via = minimize(&complement(
            &dfa_intersect(&complement(&a), &complement(&b)).unwrap(),
        ));
        assert!(isomorphic(&u, &via));
    }
}
