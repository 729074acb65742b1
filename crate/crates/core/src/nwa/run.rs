use crate::error::{Error, Result};

use super::{NestedWord, Nwa, StateId, SymbolClass, NONE};

impl Nwa {
    /// Runs the automaton on `word`.
    ///
    /// Nondeterminism is resolved on the fly by tracking summaries
    /// (state the enclosing call pushed, current state), so the cost is
    /// polynomial in the number of states. A return with an empty stack kills
    /// every run.
    pub fn accepts(&self, word: &NestedWord) -> Result<bool> {
        let mut syms = Vec::with_capacity(word.len());
        for &s in word.symbols() {
            let idx = self
                .alphabet()
                .index_of(s)
                .ok_or_else(|| Error::UnknownSymbol(s.name()))?;
            syms.push((s.class, idx));
        }

        let mut current: Vec<(StateId, StateId)> =
            self.initial_states().iter().map(|&q| (NONE, q)).collect();
        let mut stack: Vec<Vec<(StateId, StateId)>> = Vec::new();
        let mut next = Vec::new();
        for (class, sym) in syms {
            next.clear();
            match class {
                SymbolClass::Call => {
                    let mut sources: Vec<StateId> = current.iter().map(|&(_, q)| q).collect();
                    sources.sort_unstable();
                    sources.dedup();
                    for q in sources {
                        next.extend(self.call_successors(q, sym).map(|d| (q, d)));
                    }
                    stack.push(std::mem::take(&mut current));
                }
                SymbolClass::Internal => {
                    for &(e, q) in &current {
                        next.extend(self.internal_successors(q, sym).map(|d| (e, d)));
                    }
                }
                SymbolClass::Return => {
                    let Some(below) = stack.pop() else {
                        return Ok(false);
                    };
                    // `current` is sorted by entry, so each pushed state owns a contiguous run.
                    for &(e, pushed) in &below {
                        let lo = current.partition_point(|&(entry, _)| entry < pushed);
                        for &(_, q) in current[lo..]
                            .iter()
                            .take_while(|&&(entry, _)| entry == pushed)
                        {
                            next.extend(self.return_successors(q, pushed, sym).map(|d| (e, d)));
                        }
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            std::mem::swap(&mut current, &mut next);
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|&(_, q)| self.is_accepting(q)))
    }
}

/// Free-function form of [`Nwa::accepts`].
pub fn accepts(nwa: &Nwa, word: &NestedWord) -> Result<bool> {
    nwa.accepts(word)
}
