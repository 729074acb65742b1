use std::collections::VecDeque;

use super::{Dfa, StateId};

/// Hopcroft partition refinement over the reachable part of `dfa`.
///
/// States of the result are numbered in breadth-first order from the
/// initial state (symbols in index order), so language-equal inputs give
/// identical outputs.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = reachable(dfa);
    let n = dfa.num_states();
    let sigma = dfa.alphabet().size();

    // inverse[s][q] = predecessors of q under s, stored CSR-style.
    let mut inv_start = vec![0usize; sigma * n + 1];
    for p in 0..n {
        for s in 0..sigma {
            let q = dfa.next(p as StateId, s) as usize;
            inv_start[s * n + q + 1] += 1;
        }
    }
    for i in 1..inv_start.len() {
        inv_start[i] += inv_start[i - 1];
    }
    let mut fill = inv_start.clone();
    let mut inv = vec![0 as StateId; sigma * n];
    for p in 0..n {
        for s in 0..sigma {
            let q = dfa.next(p as StateId, s) as usize;
            inv[fill[s * n + q]] = p as StateId;
            fill[s * n + q] += 1;
        }
    }

    let mut part = Partition::new(n, |q| dfa.is_accepting(q as StateId));
    let mut in_work: Vec<bool> = Vec::new();
    let mut work: Vec<(usize, usize)> = Vec::new();
    let nb = part.num_blocks();
    in_work.resize(nb * sigma, false);
    // Seeding with the smaller initial block suffices.
    if nb == 2 {
        let b = if part.size(0) <= part.size(1) { 0 } else { 1 };
        for s in 0..sigma {
            work.push((b, s));
            in_work[b * sigma + s] = true;
        }
    }

    let mut splitter: Vec<StateId> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    while let Some((b, s)) = work.pop() {
        in_work[b * sigma + s] = false;
        splitter.clear();
        splitter.extend_from_slice(part.members(b));
        for &q in &splitter {
            let lo = inv_start[s * n + q as usize];
            let hi = inv_start[s * n + q as usize + 1];
            for &p in &inv[lo..hi] {
                if let Some(blk) = part.mark(p as usize) {
                    touched.push(blk);
                }
            }
        }
        for blk in touched.drain(..) {
            if let Some(new) = part.split(blk) {
                in_work.resize(part.num_blocks() * sigma, false);
                for a in 0..sigma {
                    if in_work[blk * sigma + a] {
                        work.push((new, a));
                        in_work[new * sigma + a] = true;
                    } else {
                        let pick = if part.size(new) <= part.size(blk) {
                            new
                        } else {
                            blk
                        };
                        work.push((pick, a));
                        in_work[pick * sigma + a] = true;
                    }
                }
            }
        }
    }

    // Quotient, renumbered breadth-first from the initial block.
    let nb = part.num_blocks();
    let mut order = vec![StateId::MAX; nb];
    let mut queue = VecDeque::new();
    let start = part.block_of(dfa.initial() as usize);
    order[start] = 0;
    queue.push_back(start);
    let mut blocks = Vec::with_capacity(nb);
    while let Some(b) = queue.pop_front() {
        blocks.push(b);
        let rep = part.members(b)[0];
        for s in 0..sigma {
            let t = part.block_of(dfa.next(rep, s) as usize);
            if order[t] == StateId::MAX {
                order[t] = (blocks.len() + queue.len()) as StateId;
                queue.push_back(t);
            }
        }
    }
    let mut delta = Vec::with_capacity(nb * sigma);
    let mut accepting = Vec::with_capacity(nb);
    for &b in &blocks {
        let rep = part.members(b)[0];
        accepting.push(dfa.is_accepting(rep));
        for s in 0..sigma {
            delta.push(order[part.block_of(dfa.next(rep, s) as usize)]);
        }
    }
    Dfa::from_parts(dfa.alphabet(), 0, accepting, delta)
}

pub(crate) fn reachable(dfa: &Dfa) -> Dfa {
    let n = dfa.num_states();
    let sigma = dfa.alphabet().size();
    let mut map = vec![StateId::MAX; n];
    let mut order = vec![dfa.initial()];
    map[dfa.initial() as usize] = 0;
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        for s in 0..sigma {
            let t = dfa.next(q, s);
            if map[t as usize] == StateId::MAX {
                map[t as usize] = order.len() as StateId;
                order.push(t);
            }
        }
        i += 1;
    }
    let accepting = order.iter().map(|&q| dfa.is_accepting(q)).collect();
    let map = &map;
    let delta = order
        .iter()
        .flat_map(|&q| (0..sigma).map(move |s| map[dfa.next(q, s) as usize]))
        .collect();
    Dfa::from_parts(dfa.alphabet(), 0, accepting, delta)
}

/// Blocks are contiguous ranges of `elems`; marked elements are swapped to
/// the front of their block.
struct Partition {
    elems: Vec<StateId>,
    pos: Vec<usize>,
    block: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(n: usize, accepting: impl Fn(usize) -> bool) -> Self {
        let mut elems: Vec<StateId> = (0..n as StateId)
            .filter(|&q| accepting(q as usize))
            .collect();
        let split = elems.len();
        elems.extend((0..n as StateId).filter(|&q| !accepting(q as usize)));
        let mut p = Partition {
            pos: vec![0; n],
            block: vec![0; n],
            elems,
            start: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
        };
        let ranges: Vec<(usize, usize)> = [(0, split), (split, n)]
            .into_iter()
            .filter(|(a, b)| a < b)
            .collect();
        for (a, b) in ranges {
            let id = p.start.len();
            p.start.push(a);
            p.end.push(b);
            p.marked.push(0);
            for i in a..b {
                let q = p.elems[i] as usize;
                p.pos[q] = i;
                p.block[q] = id;
            }
        }
        p
    }

    fn num_blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[StateId] {
        &self.elems[self.start[b]..self.end[b]]
    }

    fn block_of(&self, q: usize) -> usize {
        self.block[q]
    }

    /// Marks `q`; returns its block the first time that block gets a mark.
    fn mark(&mut self, q: usize) -> Option<usize> {
        let b = self.block[q];
        let i = self.pos[q];
        let front = self.start[b] + self.marked[b];
        if i < front {
            return None;
        }
        let other = self.elems[front] as usize;
        self.elems.swap(i, front);
        self.pos[other] = i;
        self.pos[q] = front;
        self.marked[b] += 1;
        (self.marked[b] == 1).then_some(b)
    }

    /// Splits off the marked prefix of `b` as a new block when it is proper.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.marked[b];
        self.marked[b] = 0;
        if m == 0 || m == self.size(b) {
            return None;
        }
        let id = self.start.len();
        let s = self.start[b];
        self.start.push(s);
        self.end.push(s + m);
        self.marked.push(0);
        self.start[b] = s + m;
        for i in s..s + m {
            self.block[self.elems[i] as usize] = id;
        }
        Some(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfa::{determinize, FoldedAlphabet, FoldedSymbol, Nfa};

    fn last_digit_is_one(base: u8) -> Nfa {
        let a = FoldedAlphabet::new(base);
        let mut nfa = Nfa::new(a);
        let q = nfa.add_state("q", false);
        let r = nfa.add_state("r", true);
        nfa.set_initial(q);
        for s in a.symbols() {
            nfa.add_transition(q, s, q);
        }
        nfa.add_transition(q, FoldedSymbol::Middle(1), r);
        nfa
    }

    #[test]
    fn minimize_is_idempotent() {
        let dfa = determinize(&last_digit_is_one(2)).unwrap();
        let m1 = minimize(&dfa);
        let m2 = minimize(&m1);
        assert_eq!(m1.num_states(), 2);
        assert_eq!(m1, m2);
    }

    #[test]
    fn redundant_states_merge() {
        let a = FoldedAlphabet::new(2);
        let mut nfa = last_digit_is_one(2);
        // A second copy of the same language.
        let q2 = nfa.add_state("q2", false);
        let r2 = nfa.add_state("r2", true);
        nfa.set_initial(q2);
        for s in a.symbols() {
            nfa.add_transition(q2, s, q2);
        }
        nfa.add_transition(q2, FoldedSymbol::Middle(1), r2);
        let m = minimize(&determinize(&nfa).unwrap());
        assert_eq!(m.num_states(), 2);
    }
}
