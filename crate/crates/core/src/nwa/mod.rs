//! Nested-word automata over a call/internal/return partitioned alphabet.
//!
//! A call pushes the state the automaton is leaving; a return pops that
//! state and may condition its transition on it. Internal symbols never
//! touch the stack. Words handled by this crate are front-loaded: all calls,
//! then internals, then as many returns as there were calls.

mod determinize;
mod emptiness;
mod explore;
mod ops;
mod run;

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub use determinize::{determinize, determinize_with_budget, DEFAULT_STATE_BUDGET};
pub use emptiness::{is_empty, is_included, is_included_with_budget, Emptiness, Inclusion};
pub use ops::{
    complement, complement_with_budget, intersect, intersect_with_budget, union, union_with_budget,
};

#[allow(unused_imports)]
pub(crate) use explore::{materialize, Flip, NwaView, Product};
pub use run::accepts;

/// Index of a state inside an [`Nwa`].
pub type StateId = u32;

/// Marker used for "no state", e.g. the bottom of the stack.
pub(crate) const NONE: StateId = StateId::MAX;

/// Which part of the stack discipline a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolClass {
    Call,
    Internal,
    Return,
}

/// An input letter: a stack class plus the digit it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedSymbol {
    pub class: SymbolClass,
    pub digit: u8,
}

impl TaggedSymbol {
    pub const A: TaggedSymbol = TaggedSymbol::call(0);
    pub const B: TaggedSymbol = TaggedSymbol::call(1);
    pub const C: TaggedSymbol = TaggedSymbol::internal(0);
    pub const D: TaggedSymbol = TaggedSymbol::internal(1);
    pub const E: TaggedSymbol = TaggedSymbol::ret(0);
    pub const F: TaggedSymbol = TaggedSymbol::ret(1);

    pub const fn call(digit: u8) -> Self {
        TaggedSymbol {
            class: SymbolClass::Call,
            digit,
        }
    }

    pub const fn internal(digit: u8) -> Self {
        TaggedSymbol {
            class: SymbolClass::Internal,
            digit,
        }
    }

    pub const fn ret(digit: u8) -> Self {
        TaggedSymbol {
            class: SymbolClass::Return,
            digit,
        }
    }

    /// The binary letter a..f, if the digit is 0 or 1.
    pub fn letter(self) -> Option<char> {
        let base = match self.class {
            SymbolClass::Call => b'a',
            SymbolClass::Internal => b'c',
            SymbolClass::Return => b'e',
        };
        (self.digit < 2).then(|| (base + self.digit) as char)
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'a' => Self::A,
            'b' => Self::B,
            'c' => Self::C,
            'd' => Self::D,
            'e' => Self::E,
            'f' => Self::F,
            _ => return None,
        })
    }

    /// Stable textual name: the letter for binary digits, otherwise a class
    /// prefix (`c`, `i`, `r`) followed by the digit.
    pub fn name(self) -> String {
        match self.letter() {
            Some(c) => c.to_string(),
            None => {
                let prefix = match self.class {
                    SymbolClass::Call => 'c',
                    SymbolClass::Internal => 'i',
                    SymbolClass::Return => 'r',
                };
                format!("{prefix}{}", self.digit)
            }
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let mut chars = s.chars();
        let first = chars.next()?;
        let rest = chars.as_str();
        if rest.is_empty() {
            return Self::from_letter(first);
        }
        let digit: u8 = rest.parse().ok()?;
        Some(match first {
            'c' => Self::call(digit),
            'i' => Self::internal(digit),
            'r' => Self::ret(digit),
            _ => return None,
        })
    }
}

impl fmt::Display for TaggedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A finite sequence of tagged symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedWord(pub Vec<TaggedSymbol>);

impl NestedWord {
    pub fn new(symbols: Vec<TaggedSymbol>) -> Self {
        NestedWord(symbols)
    }

    /// Parse a word written with the binary letters a..f (whitespace ignored).
    pub fn parse_letters(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                TaggedSymbol::from_letter(c).ok_or_else(|| Error::UnknownSymbol(c.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(NestedWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[TaggedSymbol] {
        &self.0
    }

    /// True for the front-loaded shape `calls^h internals^m returns^h`.
    pub fn is_front_loaded(&self) -> bool {
        let calls = self
            .0
            .iter()
            .take_while(|s| s.class == SymbolClass::Call)
            .count();
        let internals = self.0[calls..]
            .iter()
            .take_while(|s| s.class == SymbolClass::Internal)
            .count();
        let rest = &self.0[calls + internals..];
        rest.len() == calls && rest.iter().all(|s| s.class == SymbolClass::Return)
    }
}

impl fmt::Display for NestedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.0.iter().all(|s| s.letter().is_some());
        for (i, s) in self.0.iter().enumerate() {
            if !letters && i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromIterator<TaggedSymbol> for NestedWord {
    fn from_iter<T: IntoIterator<Item = TaggedSymbol>>(iter: T) -> Self {
        NestedWord(iter.into_iter().collect())
    }
}

/// The digits available in each symbol class, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    calls: Vec<u8>,
    internals: Vec<u8>,
    returns: Vec<u8>,
}

impl Alphabet {
    pub fn new(calls: &[u8], internals: &[u8], returns: &[u8]) -> Self {
        let norm = |d: &[u8]| {
            let mut v = d.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        Alphabet {
            calls: norm(calls),
            internals: norm(internals),
            returns: norm(returns),
        }
    }

    /// `{a,b}`, `{c,d}`, `{e,f}`.
    pub fn binary() -> Self {
        Alphabet::new(&[0, 1], &[0, 1], &[0, 1])
    }

    pub fn digits(&self, class: SymbolClass) -> &[u8] {
        match class {
            SymbolClass::Call => &self.calls,
            SymbolClass::Internal => &self.internals,
            SymbolClass::Return => &self.returns,
        }
    }

    /// Position of the symbol within its class, used as the transition label.
    pub fn index_of(&self, sym: TaggedSymbol) -> Option<u8> {
        self.digits(sym.class)
            .iter()
            .position(|&d| d == sym.digit)
            .map(|i| i as u8)
    }

    pub fn symbol(&self, class: SymbolClass, index: u8) -> TaggedSymbol {
        TaggedSymbol {
            class,
            digit: self.digits(class)[index as usize],
        }
    }

    /// All symbols in the tie-break order call < internal < return, then digit.
    pub fn symbols(&self) -> Vec<TaggedSymbol> {
        let mut out = Vec::new();
        for class in [
            SymbolClass::Call,
            SymbolClass::Internal,
            SymbolClass::Return,
        ] {
            out.extend(
                self.digits(class)
                    .iter()
                    .map(|&digit| TaggedSymbol { class, digit }),
            );
        }
        out
    }

    pub(crate) fn size(&self, class: SymbolClass) -> u8 {
        self.digits(class).len() as u8
    }
}

/// Compressed per-state adjacency for call and internal transitions.
#[derive(Clone, Debug, Default)]
struct Adjacency {
    offsets: Vec<u32>,
    edges: Vec<(u8, StateId)>,
}

impl Adjacency {
    fn build(num_states: usize, mut list: Vec<(StateId, u8, StateId)>) -> Self {
        list.sort_unstable();
        list.dedup();
        let mut offsets = vec![0u32; num_states + 1];
        for &(q, _, _) in &list {
            offsets[q as usize + 1] += 1;
        }
        for i in 0..num_states {
            offsets[i + 1] += offsets[i];
        }
        let edges = list.into_iter().map(|(_, s, d)| (s, d)).collect();
        Adjacency { offsets, edges }
    }

    fn of(&self, q: StateId) -> &[(u8, StateId)] {
        let (lo, hi) = (self.offsets[q as usize], self.offsets[q as usize + 1]);
        &self.edges[lo as usize..hi as usize]
    }

    fn successors(&self, q: StateId, sym: u8) -> impl Iterator<Item = StateId> + '_ {
        let edges = self.of(q);
        let start = edges.partition_point(|&(s, _)| s < sym);
        edges[start..]
            .iter()
            .take_while(move |&&(s, _)| s == sym)
            .map(|&(_, d)| d)
    }

    fn len(&self) -> usize {
        self.edges.len()
    }
}

/// Return transitions keyed by (current state, popped state).
#[derive(Clone, Debug, Default)]
struct ReturnTable {
    index: FxHashMap<(StateId, StateId), (u32, u32)>,
    edges: Vec<(u8, StateId)>,
}

impl ReturnTable {
    fn build(mut list: Vec<(StateId, StateId, u8, StateId)>) -> Self {
        list.sort_unstable();
        list.dedup();
        let mut index = FxHashMap::default();
        let mut edges = Vec::with_capacity(list.len());
        let mut i = 0;
        while i < list.len() {
            let key = (list[i].0, list[i].1);
            let start = edges.len() as u32;
            while i < list.len() && (list[i].0, list[i].1) == key {
                edges.push((list[i].2, list[i].3));
                i += 1;
            }
            index.insert(key, (start, edges.len() as u32));
        }
        ReturnTable { index, edges }
    }

    fn of(&self, q: StateId, popped: StateId) -> &[(u8, StateId)] {
        match self.index.get(&(q, popped)) {
            Some(&(lo, hi)) => &self.edges[lo as usize..hi as usize],
            None => &[],
        }
    }

    fn iter(&self) -> impl Iterator<Item = (StateId, StateId, u8, StateId)> + '_ {
        self.index.iter().flat_map(move |(&(q, p), &(lo, hi))| {
            self.edges[lo as usize..hi as usize]
                .iter()
                .map(move |&(s, d)| (q, p, s, d))
        })
    }
}

/// An explicit nested-word automaton. Immutable once built.
#[derive(Clone, Debug)]
pub struct Nwa {
    alphabet: Alphabet,
    labels: Option<Vec<String>>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    calls: Adjacency,
    internals: Adjacency,
    returns: ReturnTable,
    deterministic: bool,
}

impl Nwa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial_states(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states() as StateId).filter(move |&q| self.accepting[q as usize])
    }

    /// Whether the automaton has a single initial state and no
    /// nondeterministic transition key.
    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Human-readable state name; generated machines carry structured labels.
    pub fn label(&self, q: StateId) -> String {
        match &self.labels {
            Some(l) => l[q as usize].clone(),
            None => format!("q{q}"),
        }
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn find_state(&self, label: &str) -> Option<StateId> {
        (0..self.num_states() as StateId).find(|&q| self.label(q) == label)
    }

    pub fn call_successors(&self, q: StateId, sym: u8) -> impl Iterator<Item = StateId> + '_ {
        self.calls.successors(q, sym)
    }

    pub fn internal_successors(&self, q: StateId, sym: u8) -> impl Iterator<Item = StateId> + '_ {
        self.internals.successors(q, sym)
    }

    pub fn return_successors(
        &self,
        q: StateId,
        popped: StateId,
        sym: u8,
    ) -> impl Iterator<Item = StateId> + '_ {
        self.returns
            .of(q, popped)
            .iter()
            .filter(move |&&(s, _)| s == sym)
            .map(|&(_, d)| d)
    }

    pub fn call_edges(&self, q: StateId) -> &[(u8, StateId)] {
        self.calls.of(q)
    }

    pub fn internal_edges(&self, q: StateId) -> &[(u8, StateId)] {
        self.internals.of(q)
    }

    pub(crate) fn return_edges(&self, q: StateId, popped: StateId) -> &[(u8, StateId)] {
        self.returns.of(q, popped)
    }

    /// Every return transition as (state, popped, symbol index, target), unordered.
    pub fn return_transitions(&self) -> impl Iterator<Item = (StateId, StateId, u8, StateId)> + '_ {
        self.returns.iter()
    }

    pub fn num_transitions(&self) -> usize {
        self.calls.len() + self.internals.len() + self.returns.edges.len()
    }

    /// Checks the structural invariants: states referenced by transitions
    /// exist and, if flagged deterministic, every key has at most one target.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.num_states() as StateId;
        let bad = |q: StateId| q >= n;
        if self.initial.iter().any(|&q| bad(q)) {
            return Err(Error::contract("initial state out of range"));
        }
        for q in 0..n {
            for adj in [&self.calls, &self.internals] {
                let edges = adj.of(q);
                if edges.iter().any(|&(_, d)| bad(d)) {
                    return Err(Error::contract(format!(
                        "transition from state {q} targets a missing state"
                    )));
                }
                if self.deterministic && edges.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::contract(format!(
                        "state {q} has two successors on one symbol"
                    )));
                }
            }
        }
        for (&(q, p), &(lo, hi)) in &self.returns.index {
            if bad(q) || bad(p) {
                return Err(Error::contract(
                    "return transition references a missing state",
                ));
            }
            let edges = &self.returns.edges[lo as usize..hi as usize];
            if edges.iter().any(|&(_, d)| bad(d)) {
                return Err(Error::contract("return transition targets a missing state"));
            }
            if self.deterministic && edges.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::contract(format!(
                    "return key ({q}, {p}) is nondeterministic"
                )));
            }
        }
        if self.deterministic && self.initial.len() != 1 {
            return Err(Error::contract(
                "deterministic automaton needs exactly one initial state",
            ));
        }
        Ok(())
    }
}

/// Incremental constructor for [`Nwa`].
#[derive(Clone, Debug)]
pub struct NwaBuilder {
    alphabet: Alphabet,
    labels: Vec<String>,
    named: bool,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    calls: Vec<(StateId, u8, StateId)>,
    internals: Vec<(StateId, u8, StateId)>,
    returns: Vec<(StateId, StateId, u8, StateId)>,
}

impl NwaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        NwaBuilder {
            alphabet,
            labels: Vec::new(),
            named: false,
            initial: Vec::new(),
            accepting: Vec::new(),
            calls: Vec::new(),
            internals: Vec::new(),
            returns: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>, accepting: bool) -> StateId {
        let label = label.into();
        if !label.is_empty() {
            self.named = true;
        }
        self.labels.push(label);
        self.accepting.push(accepting);
        (self.accepting.len() - 1) as StateId
    }

    pub fn add_states(&mut self, n: usize) -> std::ops::Range<StateId> {
        let start = self.accepting.len() as StateId;
        for _ in 0..n {
            self.add_state("", false);
        }
        start..start + n as StateId
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial.push(q);
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q as usize] = accepting;
    }

    fn index(&self, sym: TaggedSymbol, class: SymbolClass) -> u8 {
        assert_eq!(
            sym.class, class,
            "symbol {sym} used with the wrong transition kind"
        );
        self.alphabet
            .index_of(sym)
            .unwrap_or_else(|| panic!("symbol {sym} is not in the alphabet"))
    }

    pub fn add_call(&mut self, from: StateId, sym: TaggedSymbol, to: StateId) {
        let s = self.index(sym, SymbolClass::Call);
        self.calls.push((from, s, to));
    }

    pub fn add_internal(&mut self, from: StateId, sym: TaggedSymbol, to: StateId) {
        let s = self.index(sym, SymbolClass::Internal);
        self.internals.push((from, s, to));
    }

    pub fn add_return(&mut self, from: StateId, popped: StateId, sym: TaggedSymbol, to: StateId) {
        let s = self.index(sym, SymbolClass::Return);
        self.returns.push((from, popped, s, to));
    }

    pub(crate) fn add_call_idx(&mut self, from: StateId, sym: u8, to: StateId) {
        self.calls.push((from, sym, to));
    }

    pub(crate) fn add_internal_idx(&mut self, from: StateId, sym: u8, to: StateId) {
        self.internals.push((from, sym, to));
    }

    pub(crate) fn add_return_idx(&mut self, from: StateId, popped: StateId, sym: u8, to: StateId) {
        self.returns.push((from, popped, sym, to));
    }

    pub fn build(mut self) -> Nwa {
        let n = self.accepting.len();
        self.initial.sort_unstable();
        self.initial.dedup();
        let calls = Adjacency::build(n, self.calls);
        let internals = Adjacency::build(n, self.internals);
        let returns = ReturnTable::build(self.returns);
        let functional = |edges: &[(u8, StateId)]| edges.windows(2).all(|w| w[0].0 != w[1].0);
        let deterministic = self.initial.len() == 1
            && (0..n as StateId).all(|q| functional(calls.of(q)) && functional(internals.of(q)))
            && returns
                .index
                .values()
                .all(|&(lo, hi)| functional(&returns.edges[lo as usize..hi as usize]));
        Nwa {
            alphabet: self.alphabet,
            labels: self.named.then_some(self.labels),
            initial: self.initial,
            accepting: self.accepting,
            calls,
            internals,
            returns,
            deterministic,
        }
    }
}
