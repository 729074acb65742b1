//! On-the-fly automata and their materialization.
//!
//! Products, complements and determinizations are described as lazy views
//! and turned into explicit [`Nwa`]s by exploring reachable configurations
//! (state, top of stack). Return transitions are only generated for
//! configurations that can actually occur, which keeps the output
//! proportional to what a run can observe rather than quadratic in the
//! state count.

use std::hash::Hash;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};

use super::{Alphabet, Nwa, NwaBuilder, StateId, SymbolClass, NONE};

/// A nested-word automaton whose states are produced on demand.
pub(crate) trait NwaView {
    type State: Clone + Eq + Hash;

    fn alphabet(&self) -> &Alphabet;
    fn initial_states(&self) -> Vec<Self::State>;
    fn is_accepting(&self, q: &Self::State) -> bool;
    fn call_succ(&self, q: &Self::State, sym: u8, out: &mut Vec<Self::State>);
    fn internal_succ(&self, q: &Self::State, sym: u8, out: &mut Vec<Self::State>);
    fn return_succ(
        &self,
        q: &Self::State,
        popped: &Self::State,
        sym: u8,
        out: &mut Vec<Self::State>,
    );
}

impl NwaView for Nwa {
    type State = StateId;

    fn alphabet(&self) -> &Alphabet {
        Nwa::alphabet(self)
    }

    fn initial_states(&self) -> Vec<StateId> {
        Nwa::initial_states(self).to_vec()
    }

    fn is_accepting(&self, q: &StateId) -> bool {
        Nwa::is_accepting(self, *q)
    }

    fn call_succ(&self, q: &StateId, sym: u8, out: &mut Vec<StateId>) {
        out.extend(self.call_successors(*q, sym));
    }

    fn internal_succ(&self, q: &StateId, sym: u8, out: &mut Vec<StateId>) {
        out.extend(self.internal_successors(*q, sym));
    }

    fn return_succ(&self, q: &StateId, popped: &StateId, sym: u8, out: &mut Vec<StateId>) {
        out.extend(self.return_successors(*q, *popped, sym));
    }
}

impl<V: NwaView + ?Sized> NwaView for &V {
    type State = V::State;

    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn initial_states(&self) -> Vec<Self::State> {
        (**self).initial_states()
    }
    fn is_accepting(&self, q: &Self::State) -> bool {
        (**self).is_accepting(q)
    }
    fn call_succ(&self, q: &Self::State, sym: u8, out: &mut Vec<Self::State>) {
        (**self).call_succ(q, sym, out)
    }
    fn internal_succ(&self, q: &Self::State, sym: u8, out: &mut Vec<Self::State>) {
        (**self).internal_succ(q, sym, out)
    }
    fn return_succ(
        &self,
        q: &Self::State,
        popped: &Self::State,
        sym: u8,
        out: &mut Vec<Self::State>,
    ) {
        (**self).return_succ(q, popped, sym, out)
    }
}

/// Synchronous product; accepts when both components accept.
pub(crate) struct Product<A, B>(pub A, pub B);

impl<A: NwaView, B: NwaView> NwaView for Product<A, B> {
    type State = (A::State, B::State);

    fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    fn initial_states(&self) -> Vec<Self::State> {
        let bs = self.1.initial_states();
        self.0
            .initial_states()
            .into_iter()
            .flat_map(|a| bs.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    fn is_accepting(&self, (a, b): &Self::State) -> bool {
        self.0.is_accepting(a) && self.1.is_accepting(b)
    }

    fn call_succ(&self, (a, b): &Self::State, sym: u8, out: &mut Vec<Self::State>) {
        let (mut sa, mut sb) = (Vec::new(), Vec::new());
        self.0.call_succ(a, sym, &mut sa);
        if sa.is_empty() {
            return;
        }
        self.1.call_succ(b, sym, &mut sb);
        cross(sa, &sb, out);
    }

    fn internal_succ(&self, (a, b): &Self::State, sym: u8, out: &mut Vec<Self::State>) {
        let (mut sa, mut sb) = (Vec::new(), Vec::new());
        self.0.internal_succ(a, sym, &mut sa);
        if sa.is_empty() {
            return;
        }
        self.1.internal_succ(b, sym, &mut sb);
        cross(sa, &sb, out);
    }

    fn return_succ(
        &self,
        (a, b): &Self::State,
        (pa, pb): &Self::State,
        sym: u8,
        out: &mut Vec<Self::State>,
    ) {
        let (mut sa, mut sb) = (Vec::new(), Vec::new());
        self.0.return_succ(a, pa, sym, &mut sa);
        if sa.is_empty() {
            return;
        }
        self.1.return_succ(b, pb, sym, &mut sb);
        cross(sa, &sb, out);
    }
}

fn cross<X: Clone, Y: Clone>(xs: Vec<X>, ys: &[Y], out: &mut Vec<(X, Y)>) {
    for x in xs {
        out.extend(ys.iter().map(|y| (x.clone(), y.clone())));
    }
}

/// Completion of a deterministic automaton with an implicit sink, with the
/// accepting set flipped. Missing transitions lead to the sink, which accepts.
pub(crate) struct Flip<'a>(pub &'a Nwa);

impl NwaView for Flip<'_> {
    type State = StateId;

    fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    fn initial_states(&self) -> Vec<StateId> {
        vec![self.0.initial_states().first().copied().unwrap_or(NONE)]
    }

    fn is_accepting(&self, q: &StateId) -> bool {
        *q == NONE || !self.0.is_accepting(*q)
    }

    fn call_succ(&self, q: &StateId, sym: u8, out: &mut Vec<StateId>) {
        out.push(if *q == NONE {
            NONE
        } else {
            self.0.call_successors(*q, sym).next().unwrap_or(NONE)
        });
    }

    fn internal_succ(&self, q: &StateId, sym: u8, out: &mut Vec<StateId>) {
        out.push(if *q == NONE {
            NONE
        } else {
            self.0.internal_successors(*q, sym).next().unwrap_or(NONE)
        });
    }

    fn return_succ(&self, q: &StateId, popped: &StateId, sym: u8, out: &mut Vec<StateId>) {
        out.push(if *q == NONE || *popped == NONE {
            NONE
        } else {
            self.0
                .return_successors(*q, *popped, sym)
                .next()
                .unwrap_or(NONE)
        });
    }
}

/// Explores every configuration (state, top of stack) reachable from the
/// initial states and records the transitions taken along the way.
///
/// The set of reachable configurations is computed exactly: a return from
/// `(q, t)` continues in `(q', u)` for every `u` that was below `t` when `t`
/// performed a call. Returns from an empty stack are dead.
pub(crate) fn materialize<V: NwaView>(view: &V, budget: usize) -> Result<Nwa> {
    Explorer::new(view, budget).run()
}

struct Explorer<'v, V: NwaView> {
    view: &'v V,
    budget: usize,
    ids: FxHashMap<V::State, StateId>,
    states: Vec<V::State>,
    seen: FxHashSet<(StateId, StateId)>,
    work: Vec<(StateId, StateId)>,
    /// Per-state transitions, computed the first time the state is processed.
    expanded: Vec<bool>,
    call_targets: Vec<Vec<StateId>>,
    internal_targets: Vec<Vec<StateId>>,
    /// below[t]: stack tops that can sit under `t` once `t` is pushed.
    below: Vec<Vec<StateId>>,
    below_seen: FxHashSet<(StateId, StateId)>,
    /// waiting[t]: states whose return successors with `t` popped are known.
    waiting: Vec<Vec<StateId>>,
    ret_done: FxHashMap<(StateId, StateId), Vec<(u8, StateId)>>,
    calls: Vec<(StateId, u8, StateId)>,
    internals: Vec<(StateId, u8, StateId)>,
}

impl<'v, V: NwaView> Explorer<'v, V> {
    fn new(view: &'v V, budget: usize) -> Self {
        Explorer {
            view,
            budget,
            ids: FxHashMap::default(),
            states: Vec::new(),
            seen: FxHashSet::default(),
            work: Vec::new(),
            expanded: Vec::new(),
            call_targets: Vec::new(),
            internal_targets: Vec::new(),
            below: Vec::new(),
            below_seen: FxHashSet::default(),
            waiting: Vec::new(),
            ret_done: FxHashMap::default(),
            calls: Vec::new(),
            internals: Vec::new(),
        }
    }

    fn intern(&mut self, q: V::State) -> Result<StateId> {
        if let Some(&id) = self.ids.get(&q) {
            return Ok(id);
        }
        if self.states.len() >= self.budget {
            return Err(Error::ResourceLimit {
                budget: self.budget,
            });
        }
        let id = self.states.len() as StateId;
        self.ids.insert(q.clone(), id);
        self.states.push(q);
        self.expanded.push(false);
        self.call_targets.push(Vec::new());
        self.internal_targets.push(Vec::new());
        self.below.push(Vec::new());
        self.waiting.push(Vec::new());
        Ok(id)
    }

    fn reach(&mut self, q: StateId, top: StateId) {
        if self.seen.insert((q, top)) {
            self.work.push((q, top));
        }
    }

    fn expand(&mut self, q: StateId, buf: &mut Vec<V::State>) -> Result<()> {
        if self.expanded[q as usize] {
            return Ok(());
        }
        self.expanded[q as usize] = true;
        let state = self.states[q as usize].clone();
        let alphabet = self.view.alphabet();
        for sym in 0..alphabet.size(SymbolClass::Call) {
            buf.clear();
            self.view.call_succ(&state, sym, buf);
            for s in std::mem::take(buf) {
                let d = self.intern(s)?;
                self.calls.push((q, sym, d));
                self.call_targets[q as usize].push(d);
            }
        }
        for sym in 0..alphabet.size(SymbolClass::Internal) {
            buf.clear();
            self.view.internal_succ(&state, sym, buf);
            for s in std::mem::take(buf) {
                let d = self.intern(s)?;
                self.internals.push((q, sym, d));
                self.internal_targets[q as usize].push(d);
            }
        }
        Ok(())
    }

    fn run(mut self) -> Result<Nwa> {
        let alphabet = self.view.alphabet().clone();
        let mut initial = Vec::new();
        for q in self.view.initial_states() {
            let id = self.intern(q)?;
            initial.push(id);
            self.reach(id, NONE);
        }
        let n_ret = alphabet.size(SymbolClass::Return);
        let mut buf = Vec::new();

        while let Some((q, top)) = self.work.pop() {
            self.expand(q, &mut buf)?;

            for i in 0..self.internal_targets[q as usize].len() {
                let d = self.internal_targets[q as usize][i];
                self.reach(d, top);
            }

            if !self.call_targets[q as usize].is_empty() {
                self.add_below(q, top);
                for i in 0..self.call_targets[q as usize].len() {
                    let d = self.call_targets[q as usize][i];
                    self.reach(d, q);
                }
            }

            if top != NONE && !self.ret_done.contains_key(&(q, top)) {
                let state = self.states[q as usize].clone();
                let popped = self.states[top as usize].clone();
                let mut edges = Vec::new();
                for sym in 0..n_ret {
                    buf.clear();
                    self.view.return_succ(&state, &popped, sym, &mut buf);
                    for s in std::mem::take(&mut buf) {
                        let d = self.intern(s)?;
                        edges.push((sym, d));
                    }
                }
                for &(_, d) in &edges {
                    for i in 0..self.below[top as usize].len() {
                        let u = self.below[top as usize][i];
                        self.reach(d, u);
                    }
                }
                self.ret_done.insert((q, top), edges);
                self.waiting[top as usize].push(q);
            }
        }

        let mut b = NwaBuilder::new(alphabet);
        for s in &self.states {
            b.add_state("", self.view.is_accepting(s));
        }
        for q in initial {
            b.set_initial(q);
        }
        for (q, s, d) in self.calls {
            b.add_call_idx(q, s, d);
        }
        for (q, s, d) in self.internals {
            b.add_internal_idx(q, s, d);
        }
        for ((q, p), edges) in self.ret_done {
            for (s, d) in edges {
                b.add_return_idx(q, p, s, d);
            }
        }
        Ok(b.build())
    }

    fn add_below(&mut self, t: StateId, under: StateId) {
        if !self.below_seen.insert((t, under)) {
            return;
        }
        self.below[t as usize].push(under);
        for i in 0..self.waiting[t as usize].len() {
            let q = self.waiting[t as usize][i];
            for j in 0..self.ret_done[&(q, t)].len() {
                let d = self.ret_done[&(q, t)][j].1;
                self.reach(d, under);
            }
        }
    }
}
