//! Emptiness and inclusion over front-loaded words `calls^h internals^m returns^h`.
//!
//! A run on such a word is a call path `q_0 .. q_h`, an internal path
//! `q_h .. r_h`, and a return path `r_h .. r_0` in which the k-th return from
//! the end pops `q_{k-1}`. The search therefore works on pairs `(q_k, r_k)`,
//! starting from (initial, accepting) and moving inward one call/return pair
//! at a time until the two halves can be joined by internal symbols.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::Result;

use super::determinize::DEFAULT_STATE_BUDGET;
use super::explore::{materialize, Flip, Product};
use super::ops::{deterministic, same_alphabet};
use super::{NestedWord, Nwa, StateId, SymbolClass};

type Pair = (StateId, StateId);

/// Outcome of an emptiness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    /// A shortest accepted word, lexicographically least among those.
    NonEmpty(NestedWord),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }

    pub fn witness(&self) -> Option<&NestedWord> {
        match self {
            Emptiness::Empty => None,
            Emptiness::NonEmpty(w) => Some(w),
        }
    }
}

/// Outcome of an inclusion check `L(a) ⊆ L(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Included,
    /// A shortest word accepted by `a` and rejected by `b`.
    Counterexample(NestedWord),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Included)
    }

    pub fn counterexample(&self) -> Option<&NestedWord> {
        match self {
            Inclusion::Included => None,
            Inclusion::Counterexample(w) => Some(w),
        }
    }
}

/// Decides whether `nwa` accepts some front-loaded word.
pub fn is_empty(nwa: &Nwa) -> Emptiness {
    Search::new(nwa).run()
}

/// Decides `L(a) ⊆ L(b)` by checking `a × complement(b)` for emptiness.
pub fn is_included(a: &Nwa, b: &Nwa) -> Result<Inclusion> {
    is_included_with_budget(a, b, DEFAULT_STATE_BUDGET)
}

pub fn is_included_with_budget(a: &Nwa, b: &Nwa, budget: usize) -> Result<Inclusion> {
    same_alphabet(a, b)?;
    let det = deterministic(b, budget)?;
    let product = materialize(&Product(a, Flip(&det)), budget)?;
    Ok(match is_empty(&product) {
        Emptiness::Empty => Inclusion::Included,
        Emptiness::NonEmpty(w) => Inclusion::Counterexample(w),
    })
}

struct Search<'a> {
    nwa: &'a Nwa,
    /// (popped, target) -> [(symbol, source)] for return transitions.
    reverse: FxHashMap<Pair, Vec<(u8, StateId)>>,
    internal_dist: FxHashMap<StateId, FxHashMap<StateId, u32>>,
    has_internals: bool,
}

impl<'a> Search<'a> {
    fn new(nwa: &'a Nwa) -> Self {
        let mut reverse: FxHashMap<Pair, Vec<(u8, StateId)>> = FxHashMap::default();
        for (q, p, s, d) in nwa.return_transitions() {
            reverse.entry((p, d)).or_default().push((s, q));
        }
        for v in reverse.values_mut() {
            v.sort_unstable();
        }
        let has_internals =
            (0..nwa.num_states() as StateId).any(|q| !nwa.internal_edges(q).is_empty());
        Search {
            nwa,
            reverse,
            internal_dist: FxHashMap::default(),
            has_internals,
        }
    }

    fn start_pairs(&self) -> Vec<Pair> {
        let finals: Vec<StateId> = self.nwa.accepting_states().collect();
        let mut out: Vec<Pair> = self
            .nwa
            .initial_states()
            .iter()
            .flat_map(|&q| finals.iter().map(move |&f| (q, f)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Shortest internal distance from `q` to `r`, if any.
    fn middle(&mut self, (q, r): Pair) -> Option<u32> {
        if q == r {
            return Some(0);
        }
        if !self.has_internals {
            return None;
        }
        let nwa = self.nwa;
        self.internal_dist
            .entry(q)
            .or_insert_with(|| {
                let mut dist = FxHashMap::default();
                dist.insert(q, 0);
                let mut frontier = vec![q];
                let mut d = 0;
                while !frontier.is_empty() {
                    d += 1;
                    let mut next = Vec::new();
                    for x in frontier {
                        for &(_, y) in nwa.internal_edges(x) {
                            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                                e.insert(d);
                                next.push(y);
                            }
                        }
                    }
                    frontier = next;
                }
                dist
            })
            .get(&r)
            .copied()
    }

    /// Pairs one level further inward, paired with the call and return
    /// symbols that lead there.
    fn inward(&self, (q, r): Pair, mut f: impl FnMut(u8, u8, Pair)) {
        let Some(preds) = self.reverse.get(&(q, r)) else {
            return;
        };
        for &(c, q2) in self.nwa.call_edges(q) {
            for &(rho, r2) in preds {
                f(c, rho, (q2, r2));
            }
        }
    }

    /// Length of a shortest accepted word, by breadth-first search over pairs.
    fn shortest_length(&mut self) -> Option<u32> {
        let mut visited: FxHashSet<Pair> = FxHashSet::default();
        let mut frontier = self.start_pairs();
        visited.extend(frontier.iter().copied());
        let mut best: Option<u32> = None;
        let mut level = 0u32;
        while !frontier.is_empty() {
            for &p in &frontier {
                if let Some(m) = self.middle(p) {
                    let len = 2 * level + m;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
            if best.is_some_and(|b| 2 * (level + 1) > b) {
                break;
            }
            let mut next = Vec::new();
            for &p in &frontier {
                self.inward(p, |_, _, n| {
                    if visited.insert(n) {
                        next.push(n);
                    }
                });
            }
            frontier = next;
            level += 1;
        }
        best
    }

    fn run(mut self) -> Emptiness {
        match self.shortest_length() {
            None => Emptiness::Empty,
            Some(len) => Emptiness::NonEmpty(self.least_word(len)),
        }
    }

    /// Reconstructs the lexicographically least accepted word of length `len`.
    fn least_word(&mut self, len: u32) -> NestedWord {
        let nwa = self.nwa;
        let depth = (len / 2) as usize;

        // Unrolled layers of pairs reachable at exactly level k.
        let mut layers: Vec<Vec<Pair>> = vec![self.start_pairs()];
        for k in 0..depth {
            let mut next = FxHashSet::default();
            for &p in &layers[k] {
                self.inward(p, |_, _, n| {
                    next.insert(n);
                });
            }
            let mut v: Vec<Pair> = next.into_iter().collect();
            v.sort_unstable();
            layers.push(v);
        }

        let mut exact = ExactInternal::new(nwa);
        // feasible[k]: pairs at level k that complete to an accepted word of length `len`.
        let mut feasible: Vec<FxHashSet<Pair>> = vec![FxHashSet::default(); depth + 1];
        for k in (0..=depth).rev() {
            let rem = len - 2 * k as u32;
            let mut set = FxHashSet::default();
            for &p in &layers[k] {
                let ok = exact.reaches(p.0, p.1, rem)
                    || (k < depth && {
                        let mut any = false;
                        self.inward(p, |_, _, n| any |= feasible[k + 1].contains(&n));
                        any
                    });
                if ok {
                    set.insert(p);
                }
            }
            feasible[k] = set;
        }

        // Prefix: choose the least call symbol that keeps a completion alive.
        let mut chosen: Vec<(u8, FxHashSet<Pair>)> = Vec::new();
        let mut current: FxHashSet<Pair> = feasible[0].clone();
        let n_calls = nwa.alphabet().size(SymbolClass::Call);
        let mut k = 0usize;
        'prefix: while k < depth {
            for c in 0..n_calls {
                let mut next = FxHashSet::default();
                for &p in &current {
                    self.inward(p, |sym, _, n| {
                        if sym == c && feasible[k + 1].contains(&n) {
                            next.insert(n);
                        }
                    });
                }
                if !next.is_empty() {
                    chosen.push((c, std::mem::replace(&mut current, next)));
                    k += 1;
                    continue 'prefix;
                }
            }
            break;
        }

        // Middle: least internal word joining the two halves.
        let rem = len - 2 * k as u32;
        let mut runs: Vec<(StateId, Pair)> = current
            .iter()
            .filter(|p| exact.reaches(p.0, p.1, rem))
            .map(|&p| (p.0, p))
            .collect();
        let mut middle = Vec::new();
        let n_int = nwa.alphabet().size(SymbolClass::Internal);
        for step in 0..rem {
            let left = rem - step - 1;
            for i in 0..n_int {
                let next: Vec<(StateId, Pair)> = runs
                    .iter()
                    .flat_map(|&(x, p)| nwa.internal_successors(x, i).map(move |y| (y, p)))
                    .filter(|&(y, p)| exact.reaches(y, p.1, left))
                    .collect();
                if !next.is_empty() {
                    middle.push(i);
                    runs = next;
                    break;
                }
            }
        }
        let mut inner: FxHashSet<Pair> = runs.into_iter().map(|(_, p)| p).collect();

        // Suffix: walk back outward choosing the least return symbol each time.
        let mut returns = Vec::new();
        for (c, outer) in chosen.iter().rev() {
            let mut by_call: FxHashMap<StateId, Vec<StateId>> = FxHashMap::default();
            for &(q, r) in &inner {
                by_call.entry(q).or_default().push(r);
            }
            let mut best: Option<u8> = None;
            let mut keep = FxHashSet::default();
            for &(q, r) in outer {
                for q2 in nwa.call_successors(q, *c) {
                    let Some(rs) = by_call.get(&q2) else { continue };
                    for &r2 in rs {
                        for &(rho, d) in nwa.return_edges(r2, q) {
                            if d != r {
                                continue;
                            }
                            match best {
                                Some(b) if rho > b => {}
                                Some(b) if rho == b => {
                                    keep.insert((q, r));
                                }
                                _ => {
                                    best = Some(rho);
                                    keep.clear();
                                    keep.insert((q, r));
                                }
                            }
                        }
                    }
                }
            }
            returns.push(best.expect("feasible pair has an outward continuation"));
            inner = keep;
        }

        let alphabet = nwa.alphabet();
        let mut word = Vec::with_capacity(len as usize);
        word.extend(
            chosen
                .iter()
                .map(|(c, _)| alphabet.symbol(SymbolClass::Call, *c)),
        );
        word.extend(
            middle
                .iter()
                .map(|&i| alphabet.symbol(SymbolClass::Internal, i)),
        );
        word.extend(
            returns
                .iter()
                .map(|&r| alphabet.symbol(SymbolClass::Return, r)),
        );
        NestedWord(word)
    }
}

/// Memoized "is `r` reachable from `x` by exactly n internal symbols".
struct ExactInternal<'a> {
    nwa: &'a Nwa,
    memo: FxHashMap<(StateId, u32), FxHashSet<StateId>>,
}

impl<'a> ExactInternal<'a> {
    fn new(nwa: &'a Nwa) -> Self {
        ExactInternal {
            nwa,
            memo: FxHashMap::default(),
        }
    }

    fn reaches(&mut self, x: StateId, r: StateId, n: u32) -> bool {
        if n == 0 {
            return x == r;
        }
        if let Some(set) = self.memo.get(&(x, n)) {
            return set.contains(&r);
        }
        let mut layer: FxHashSet<StateId> = std::iter::once(x).collect();
        for _ in 0..n {
            let mut next = FxHashSet::default();
            for &y in &layer {
                next.extend(self.nwa.internal_edges(y).iter().map(|&(_, z)| z));
            }
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        let hit = layer.contains(&r);
        self.memo.insert((x, n), layer);
        hit
    }
}
