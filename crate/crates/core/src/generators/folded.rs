//! Folded-input NFAs for sums of base-3 and base-4 palindromes.
//!
//! The input is aligned on the length `n-2` summand: the two leading digits
//! arrive unfolded, then each pair `[high, low]` adds one position at the top
//! end (checked against the expected outgoing carry `c1`) and one at the
//! bottom end (propagating the incoming carry `c2`). A state
//! `(c1, c2, x1, x2, y, z)` remembers the last two top guesses of the
//! length-`n` summand, the last top guess of the length-`n-1` summand and the
//! last bottom guess of the length-`n-3` summand.

use rustc_hash::FxHashMap;

use crate::nfa::{FoldedAlphabet, FoldedSymbol, Nfa, StateId};

/// Which of the summands of lengths `n`, `n-1`, `n-2`, `n-3` take part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Summands {
    pub n: bool,
    pub n1: bool,
    pub n2: bool,
    pub n3: bool,
}

impl Summands {
    pub const fn new(n: bool, n1: bool, n2: bool, n3: bool) -> Self {
        Summands { n, n1, n2, n3 }
    }

    pub fn count(&self) -> u32 {
        [self.n, self.n1, self.n2, self.n3]
            .iter()
            .filter(|&&b| b)
            .count() as u32
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (on, name) in [
            (self.n, "n"),
            (self.n1, "n-1"),
            (self.n2, "n-2"),
            (self.n3, "n-3"),
        ] {
            if on {
                parts.push(name);
            }
        }
        parts.join(",")
    }
}

/// Cases of the base-3 decomposition.
pub const BASE3_CASES: [(char, Summands); 4] = [
    ('a', Summands::new(true, true, true, false)),
    ('b', Summands::new(true, false, true, true)),
    ('c', Summands::new(false, true, true, true)),
    ('d', Summands::new(false, true, true, false)),
];

/// Cases of the base-4 decomposition.
pub const BASE4_CASES: [(char, Summands); 2] = [
    ('a', Summands::new(false, true, true, true)),
    ('b', Summands::new(true, false, true, true)),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Phase {
    Start,
    AfterFirst,
    AfterSecond,
    Pairs,
}

type Tuple = [u8; 6];

/// NFA accepting folded base-`base` words of integers that are a sum of
/// palindromes with the chosen lengths, one per selected length.
pub fn folded_case_machine(base: u8, summands: Summands) -> Nfa {
    let k = base as u32;
    let count = summands.count();
    // Largest carry c with c = floor((count*(k-1) + c) / k).
    let mut cmax = 0u32;
    loop {
        let next = (count * (k - 1) + cmax) / k;
        if next == cmax {
            break;
        }
        cmax = next;
    }
    let cmax = cmax as u8;

    let any: Vec<u8> = (0..base).collect();
    let nonzero: Vec<u8> = (1..base).collect();
    let zero = vec![0u8];
    let pick = |on: bool, lead: bool| -> &Vec<u8> {
        match (on, lead) {
            (false, _) => &zero,
            (true, true) => &nonzero,
            (true, false) => &any,
        }
    };

    let alphabet = FoldedAlphabet::new(base);
    let mut nfa = Nfa::new(alphabet);
    let mut ids: FxHashMap<(Phase, Tuple), StateId> = FxHashMap::default();
    let mut work: Vec<(StateId, Phase, Tuple)> = Vec::new();
    let label = |phase: Phase, t: &Tuple| {
        let tag = match phase {
            Phase::Start => "",
            Phase::AfterFirst => "F",
            Phase::AfterSecond => "S",
            Phase::Pairs => "P",
        };
        format!(
            "{tag}({},{},{},{},{},{})",
            t[0], t[1], t[2], t[3], t[4], t[5]
        )
    };
    let mut intern = |nfa: &mut Nfa,
                      phase: Phase,
                      t: Tuple,
                      work: &mut Vec<(StateId, Phase, Tuple)>|
     -> StateId {
        if let Some(&id) = ids.get(&(phase, t)) {
            return id;
        }
        let [c1, c2, x1, x2, _, _] = t;
        let accepting = phase == Phase::Pairs && c1 == c2 && x1 == x2;
        let id = nfa.add_state(label(phase, &t), accepting);
        ids.insert((phase, t), id);
        work.push((id, phase, t));
        id
    };

    let start = intern(&mut nfa, Phase::Start, [0; 6], &mut work);
    nfa.set_initial(start);
    let acc = nfa.add_state("q_acc", true);

    while let Some((from, phase, t)) = work.pop() {
        let [c1, c2, x1, x2, y, z] = t;
        match phase {
            Phase::Start => {
                for &i in pick(summands.n, true) {
                    for alpha in 0..=cmax {
                        let sum = i + alpha;
                        if sum / base == c1 {
                            let to = intern(
                                &mut nfa,
                                Phase::AfterFirst,
                                [alpha, 0, 0, i, 0, 0],
                                &mut work,
                            );
                            nfa.add_transition(from, FoldedSymbol::First(sum % base), to);
                        }
                    }
                }
            }
            Phase::AfterFirst => {
                for &i in pick(summands.n, false) {
                    for &j in pick(summands.n1, true) {
                        for alpha in 0..=cmax {
                            let sum = i + j + alpha;
                            if sum / base == c1 {
                                let to = intern(
                                    &mut nfa,
                                    Phase::AfterSecond,
                                    [alpha, 0, x2, i, j, 0],
                                    &mut work,
                                );
                                nfa.add_transition(from, FoldedSymbol::Second(sum % base), to);
                            }
                        }
                    }
                }
            }
            Phase::AfterSecond | Phase::Pairs => {
                let first = phase == Phase::AfterSecond;
                for &i in pick(summands.n, false) {
                    for &j in pick(summands.n1, false) {
                        for &kr in pick(summands.n2, first) {
                            for &l in pick(summands.n3, first) {
                                let low = x1 + y + kr + l + c2;
                                for alpha in 0..=cmax {
                                    let high = i + j + kr + z + alpha;
                                    if high / base != c1 {
                                        continue;
                                    }
                                    let to = intern(
                                        &mut nfa,
                                        Phase::Pairs,
                                        [alpha, low / base, x2, i, j, l],
                                        &mut work,
                                    );
                                    let (h, lo) = (high % base, low % base);
                                    let sym = if first {
                                        FoldedSymbol::FirstPair(h, lo)
                                    } else {
                                        FoldedSymbol::Pair(h, lo)
                                    };
                                    nfa.add_transition(from, sym, to);
                                }
                            }
                        }
                    }
                }
                if !first {
                    for &kr in pick(summands.n2, false) {
                        let sum = x1 + y + kr + z + c2;
                        if sum / base == c1 {
                            nfa.add_transition(from, FoldedSymbol::Middle(sum % base), acc);
                        }
                    }
                }
            }
        }
    }
    nfa
}

/// Union of the case machines for `cases`.
pub fn folded_union(base: u8, cases: &[Summands]) -> Nfa {
    let mut it = cases.iter();
    let first = it.next().expect("at least one case");
    let mut nfa = folded_case_machine(base, *first);
    for c in it {
        nfa = nfa
            .union(&folded_case_machine(base, *c))
            .expect("case machines share an alphabet");
    }
    nfa
}

pub fn base3_machine() -> Nfa {
    let cases: Vec<Summands> = BASE3_CASES.iter().map(|&(_, s)| s).collect();
    folded_union(3, &cases)
}

pub fn base4_machine() -> Nfa {
    let cases: Vec<Summands> = BASE4_CASES.iter().map(|&(_, s)| s).collect();
    folded_union(4, &cases)
}

/// Well-formed folded words (nonzero leading digit) of unfolded length at
/// least `min_len`, `min_len >= 3`.
pub fn folded_syntax(base: u8, min_len: usize) -> Nfa {
    assert!(min_len >= 3, "folded words have at least 3 digits");
    let alphabet = FoldedAlphabet::new(base);
    let mut nfa = Nfa::new(alphabet);
    let start = nfa.add_state("start", false);
    nfa.set_initial(start);
    let first = nfa.add_state("first", false);
    let second = nfa.add_state("second", false);
    for d in 1..base {
        nfa.add_transition(start, FoldedSymbol::First(d), first);
    }
    for d in 0..base {
        nfa.add_transition(first, FoldedSymbol::Second(d), second);
    }
    // pairs[j] = after j + 1 pairs, saturating.
    let max_pairs = min_len.saturating_sub(2).div_ceil(2);
    let max_pairs = max_pairs.max(1);
    let pairs: Vec<StateId> = (1..=max_pairs)
        .map(|j| nfa.add_state(format!("pairs{j}"), 2 + 2 * j >= min_len))
        .collect();
    let middle = nfa.add_state("middle", true);
    for h in 0..base {
        for l in 0..base {
            nfa.add_transition(second, FoldedSymbol::FirstPair(h, l), pairs[0]);
            for j in 0..max_pairs {
                let next = pairs[(j + 1).min(max_pairs - 1)];
                nfa.add_transition(pairs[j], FoldedSymbol::Pair(h, l), next);
            }
        }
    }
    let mut before_middle: Vec<(StateId, usize)> = vec![(second, 2)];
    before_middle.extend(pairs.iter().enumerate().map(|(j, &p)| (p, 2 + 2 * (j + 1))));
    for (q, len) in before_middle {
        // The last pair state stands for every longer length too.
        let saturated = q == *pairs.last().unwrap();
        if len + 1 >= min_len || saturated {
            for d in 0..base {
                nfa.add_transition(q, FoldedSymbol::Middle(d), middle);
            }
        }
    }
    nfa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{folded_encode, to_base_k};

    #[test]
    fn folded_syntax_lengths() {
        for (base, min_len) in [(3u8, 9usize), (4, 7), (3, 3), (3, 4)] {
            let s = folded_syntax(base, min_len);
            for n in (base as u64).pow(2)..(base as u64).pow(11) {
                if n % 97 != 0 {
                    continue;
                }
                let len = to_base_k(n, base as u32).len();
                assert_eq!(
                    s.accepts(&folded_encode(n, base as u32).unwrap()).unwrap(),
                    len >= min_len,
                    "base {base} n {n}"
                );
            }
        }
    }
}
