//! Summary-set determinization.
//!
//! A deterministic state is a sorted set of pairs `(entry, current)`: for
//! every run still alive, `entry` is the state pushed by the innermost pending
//! call (or [`NONE`] at top level) and `current` is where the run is now.
//! Keeping the entry lets a return match each run with the stack element it
//! actually pushed, which is what makes the construction exact.

use std::rc::Rc;

use crate::error::Result;

use super::explore::{materialize, NwaView};
use super::{Alphabet, Nwa, StateId, NONE};

/// Default bound on the number of determinized states.
pub const DEFAULT_STATE_BUDGET: usize = 200_000;

type Summary = Rc<[(StateId, StateId)]>;

struct Determinized<'a>(&'a Nwa);

fn finish(mut pairs: Vec<(StateId, StateId)>, out: &mut Vec<Summary>) {
    // The empty set is the sink; it is left implicit.
    if pairs.is_empty() {
        return;
    }
    pairs.sort_unstable();
    pairs.dedup();
    out.push(pairs.into());
}

impl NwaView for Determinized<'_> {
    type State = Summary;

    fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    fn initial_states(&self) -> Vec<Summary> {
        let mut out = Vec::new();
        finish(
            self.0.initial_states().iter().map(|&q| (NONE, q)).collect(),
            &mut out,
        );
        out
    }

    fn is_accepting(&self, s: &Summary) -> bool {
        s.iter().any(|&(_, q)| self.0.is_accepting(q))
    }

    fn call_succ(&self, s: &Summary, sym: u8, out: &mut Vec<Summary>) {
        let mut sources: Vec<StateId> = s.iter().map(|&(_, q)| q).collect();
        sources.sort_unstable();
        sources.dedup();
        let mut pairs = Vec::new();
        for q in sources {
            pairs.extend(self.0.call_successors(q, sym).map(|d| (q, d)));
        }
        finish(pairs, out);
    }

    fn internal_succ(&self, s: &Summary, sym: u8, out: &mut Vec<Summary>) {
        let mut pairs = Vec::new();
        for &(e, q) in s.iter() {
            pairs.extend(self.0.internal_successors(q, sym).map(|d| (e, d)));
        }
        finish(pairs, out);
    }

    fn return_succ(&self, s: &Summary, popped: &Summary, sym: u8, out: &mut Vec<Summary>) {
        let mut pairs = Vec::new();
        for &(e, pushed) in popped.iter() {
            let lo = s.partition_point(|&(entry, _)| entry < pushed);
            for &(_, q) in s[lo..].iter().take_while(|&&(entry, _)| entry == pushed) {
                pairs.extend(self.0.return_successors(q, pushed, sym).map(|d| (e, d)));
            }
        }
        finish(pairs, out);
    }
}

/// Determinizes with the default state budget.
pub fn determinize(nwa: &Nwa) -> Result<Nwa> {
    determinize_with_budget(nwa, DEFAULT_STATE_BUDGET)
}

/// Determinizes `nwa`; only summary sets reachable from the initial state are
/// built, and missing transitions stand for an implicit rejecting sink.
///
/// Fails with [`crate::Error::ResourceLimit`] once more than `budget` states
/// would be needed.
pub fn determinize_with_budget(nwa: &Nwa, budget: usize) -> Result<Nwa> {
    let det = materialize(&Determinized(nwa), budget)?;
    debug_assert!(det.is_deterministic() || det.initial_states().is_empty());
    Ok(det)
}
