//! Finite automata over folded base-k digit alphabets.
//!
//! A folded word presents the two most significant digits one at a time and
//! then pairs `[high, low]` taken from opposite ends of the digit string,
//! with a trailing middle digit when the length is odd. The first pair gets
//! its own symbol kind so machines can demand nonzero leading digits without
//! counting positions.

mod minimize;
mod ops;
mod subset;

use std::fmt;

use crate::error::{Error, Result};

pub use minimize::minimize;
pub use ops::{
    complement, dfa_intersect, dfa_union, is_included, is_included_with_budget, isomorphic,
    NfaInclusion,
};
pub use subset::{determinize, determinize_with_budget};

pub type StateId = u32;

/// One letter of a folded word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoldedSymbol {
    /// Most significant digit.
    First(u8),
    /// Second most significant digit.
    Second(u8),
    /// First folded pair (third digit from the top, least significant digit).
    FirstPair(u8, u8),
    Pair(u8, u8),
    /// Middle digit of an odd-length input.
    Middle(u8),
}

impl FoldedSymbol {
    pub fn digits(self) -> (u8, Option<u8>) {
        match self {
            FoldedSymbol::First(d) | FoldedSymbol::Second(d) | FoldedSymbol::Middle(d) => (d, None),
            FoldedSymbol::FirstPair(h, l) | FoldedSymbol::Pair(h, l) => (h, Some(l)),
        }
    }

    /// Parses the forms produced by `Display`: `F2`, `S0`, `P[1,2]`, `[1,2]`, `M1`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let digit = |t: &str| t.trim().parse::<u8>().ok();
        let pair = |t: &str| {
            let inner = t.strip_prefix('[')?.strip_suffix(']')?;
            let (h, l) = inner.split_once(',')?;
            Some((digit(h)?, digit(l)?))
        };
        if let Some(rest) = s.strip_prefix('F') {
            return digit(rest).map(FoldedSymbol::First);
        }
        if let Some(rest) = s.strip_prefix('S') {
            return digit(rest).map(FoldedSymbol::Second);
        }
        if let Some(rest) = s.strip_prefix('M') {
            return digit(rest).map(FoldedSymbol::Middle);
        }
        if let Some(rest) = s.strip_prefix('P') {
            return pair(rest).map(|(h, l)| FoldedSymbol::FirstPair(h, l));
        }
        pair(s).map(|(h, l)| FoldedSymbol::Pair(h, l))
    }
}

impl fmt::Display for FoldedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FoldedSymbol::First(d) => write!(f, "F{d}"),
            FoldedSymbol::Second(d) => write!(f, "S{d}"),
            FoldedSymbol::FirstPair(h, l) => write!(f, "P[{h},{l}]"),
            FoldedSymbol::Pair(h, l) => write!(f, "[{h},{l}]"),
            FoldedSymbol::Middle(d) => write!(f, "M{d}"),
        }
    }
}

/// The folded alphabet for base `k`, indexed densely as
/// First | Second | FirstPair | Pair | Middle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldedAlphabet {
    base: u8,
}

impl FoldedAlphabet {
    pub fn new(base: u8) -> Self {
        assert!(base >= 2, "base must be at least 2");
        FoldedAlphabet { base }
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn size(&self) -> usize {
        let k = self.base as usize;
        3 * k + 2 * k * k
    }

    pub fn index_of(&self, sym: FoldedSymbol) -> Option<usize> {
        let k = self.base as usize;
        let ok = |d: u8| (d as usize) < k;
        match sym {
            FoldedSymbol::First(d) if ok(d) => Some(d as usize),
            FoldedSymbol::Second(d) if ok(d) => Some(k + d as usize),
            FoldedSymbol::FirstPair(h, l) if ok(h) && ok(l) => {
                Some(2 * k + h as usize * k + l as usize)
            }
            FoldedSymbol::Pair(h, l) if ok(h) && ok(l) => {
                Some(2 * k + k * k + h as usize * k + l as usize)
            }
            FoldedSymbol::Middle(d) if ok(d) => Some(2 * k + 2 * k * k + d as usize),
            _ => None,
        }
    }

    pub fn symbol(&self, index: usize) -> FoldedSymbol {
        let k = self.base as usize;
        let d = |x: usize| x as u8;
        match index {
            i if i < k => FoldedSymbol::First(d(i)),
            i if i < 2 * k => FoldedSymbol::Second(d(i - k)),
            i if i < 2 * k + k * k => {
                let j = i - 2 * k;
                FoldedSymbol::FirstPair(d(j / k), d(j % k))
            }
            i if i < 2 * k + 2 * k * k => {
                let j = i - 2 * k - k * k;
                FoldedSymbol::Pair(d(j / k), d(j % k))
            }
            i => {
                assert!(i < self.size(), "symbol index out of range");
                FoldedSymbol::Middle(d(i - 2 * k - 2 * k * k))
            }
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = FoldedSymbol> + '_ {
        (0..self.size()).map(|i| self.symbol(i))
    }

    fn indices(&self, word: &[FoldedSymbol]) -> Result<Vec<usize>> {
        word.iter()
            .map(|&s| {
                self.index_of(s)
                    .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
            })
            .collect()
    }
}

/// Nondeterministic finite automaton over a folded alphabet.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: FoldedAlphabet,
    labels: Vec<String>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    /// Per state, `(symbol index, target)` sorted.
    trans: Vec<Vec<(u16, StateId)>>,
}

impl Nfa {
    pub fn new(alphabet: FoldedAlphabet) -> Self {
        Nfa {
            alphabet,
            labels: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>, accepting: bool) -> StateId {
        self.labels.push(label.into());
        self.accepting.push(accepting);
        self.trans.push(Vec::new());
        (self.labels.len() - 1) as StateId
    }

    pub fn set_initial(&mut self, q: StateId) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
            self.initial.sort_unstable();
        }
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q as usize] = accepting;
    }

    /// Adds a transition; duplicates are ignored.
    pub fn add_transition(&mut self, from: StateId, sym: FoldedSymbol, to: StateId) {
        let idx = self
            .alphabet
            .index_of(sym)
            .expect("symbol outside the alphabet") as u16;
        let row = &mut self.trans[from as usize];
        if let Err(pos) = row.binary_search(&(idx, to)) {
            row.insert(pos, (idx, to));
        }
    }

    pub fn alphabet(&self) -> FoldedAlphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q as usize]
    }

    pub fn find_state(&self, label: &str) -> Option<StateId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as StateId)
    }

    pub fn initial_states(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub fn edges(&self, q: StateId) -> impl Iterator<Item = (FoldedSymbol, StateId)> + '_ {
        self.trans[q as usize]
            .iter()
            .map(move |&(s, d)| (self.alphabet.symbol(s as usize), d))
    }

    pub(crate) fn raw_edges(&self, q: StateId) -> &[(u16, StateId)] {
        &self.trans[q as usize]
    }

    pub(crate) fn successors(&self, q: StateId, sym: usize) -> impl Iterator<Item = StateId> + '_ {
        let row = &self.trans[q as usize];
        let lo = row.partition_point(|&(s, _)| (s as usize) < sym);
        row[lo..]
            .iter()
            .take_while(move |&&(s, _)| s as usize == sym)
            .map(|&(_, d)| d)
    }

    /// Standard subset simulation.
    pub fn accepts(&self, word: &[FoldedSymbol]) -> Result<bool> {
        let syms = self.alphabet.indices(word)?;
        let mut current: Vec<StateId> = self.initial.clone();
        for s in syms {
            let mut next: Vec<StateId> = current
                .iter()
                .flat_map(|&q| self.successors(q, s))
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                return Ok(false);
            }
            current = next;
        }
        Ok(current.iter().any(|&q| self.is_accepting(q)))
    }

    /// Disjoint union: the result accepts `L(self) ∪ L(other)`.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::contract("alphabet mismatch in NFA union"));
        }
        let mut out = self.clone();
        let shift = self.num_states() as StateId;
        for q in 0..other.num_states() as StateId {
            out.add_state(other.label(q).to_string(), other.is_accepting(q));
        }
        for q in 0..other.num_states() {
            out.trans[q + shift as usize] = other.trans[q]
                .iter()
                .map(|&(s, d)| (s, d + shift))
                .collect();
        }
        for &q in &other.initial {
            out.set_initial(q + shift);
        }
        Ok(out)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.num_states() as StateId;
        if self.initial.iter().any(|&q| q >= n) {
            return Err(Error::contract("initial state out of range"));
        }
        for row in &self.trans {
            if row
                .iter()
                .any(|&(s, d)| d >= n || s as usize >= self.alphabet.size())
            {
                return Err(Error::contract(
                    "transition references an undeclared state or symbol",
                ));
            }
        }
        Ok(())
    }
}

/// Complete deterministic automaton. State 0 is not special; `initial` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: FoldedAlphabet,
    initial: StateId,
    accepting: Vec<bool>,
    /// Row-major `num_states × alphabet.size()` transition table.
    delta: Vec<StateId>,
}

impl Dfa {
    pub(crate) fn from_parts(
        alphabet: FoldedAlphabet,
        initial: StateId,
        accepting: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Self {
        debug_assert_eq!(delta.len(), accepting.len() * alphabet.size());
        Dfa {
            alphabet,
            initial,
            accepting,
            delta,
        }
    }

    pub fn alphabet(&self) -> FoldedAlphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub fn next(&self, q: StateId, sym: usize) -> StateId {
        self.delta[q as usize * self.alphabet.size() + sym]
    }

    pub fn accepts(&self, word: &[FoldedSymbol]) -> Result<bool> {
        let syms = self.alphabet.indices(word)?;
        let q = syms.into_iter().fold(self.initial, |q, s| self.next(q, s));
        Ok(self.is_accepting(q))
    }

    /// States from which no accepting state is reachable.
    pub fn dead_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let sigma = self.alphabet.size();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..sigma {
                preds[self.delta[q * sigma + s] as usize].push(q as StateId);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<StateId> = (0..n as StateId).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live.into_iter().map(|l| !l).collect()
    }

    /// Views the DFA as an NFA, dropping dead states.
    pub fn to_nfa(&self) -> Nfa {
        let dead = self.dead_states();
        let mut nfa = Nfa::new(self.alphabet);
        let mut map = vec![StateId::MAX; self.num_states()];
        for q in 0..self.num_states() {
            if !dead[q] {
                map[q] = nfa.add_state(format!("d{q}"), self.accepting[q]);
            }
        }
        let sigma = self.alphabet.size();
        for q in 0..self.num_states() {
            if dead[q] {
                continue;
            }
            for s in 0..sigma {
                let d = self.delta[q * sigma + s] as usize;
                if !dead[d] {
                    nfa.trans[map[q] as usize].push((s as u16, map[d]));
                }
            }
        }
        if !dead[self.initial as usize] {
            nfa.set_initial(map[self.initial as usize]);
        }
        nfa
    }
}
