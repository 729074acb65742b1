use rayon::prelude::*;

use super::{decide, Flavor, SumQuery, Witness};
use crate::encoding::{encode_nwa_input, folded_encode, len_base_k};
use crate::error::Result;
use crate::nfa::Nfa;
use crate::nwa::Nwa;

/// Is `n` a sum of one `flavor` number of each length `len(n) - offset`,
/// for at least one of the offset lists in `cases`?
pub fn decide_cases(n: u64, base: u32, flavor: Flavor, cases: &[Vec<usize>]) -> Option<Witness> {
    let len = len_base_k(n, base);
    cases.iter().find_map(|offsets| {
        if offsets.iter().any(|&o| o >= len) {
            return None;
        }
        let lengths = offsets.iter().map(|&o| len - o).collect();
        decide(&SumQuery::with_lengths(n, base, flavor, lengths))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub n: u64,
    pub machine: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationReport {
    pub lo: u64,
    pub hi: u64,
    pub accepted: usize,
    pub disagreements: Vec<Disagreement>,
}

impl SimulationReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares `machine(n)` with `oracle(n)` for every `lo <= n <= hi`.
pub fn simulate_range<M, O>(lo: u64, hi: u64, machine: M, oracle: O) -> Result<SimulationReport>
where
    M: Fn(u64) -> Result<bool> + Sync,
    O: Fn(u64) -> bool + Sync,
{
    let results: Vec<(u64, bool, bool)> = (lo..=hi)
        .into_par_iter()
        .map(|n| Ok((n, machine(n)?, oracle(n))))
        .collect::<Result<_>>()?;
    Ok(SimulationReport {
        lo,
        hi,
        accepted: results.iter().filter(|r| r.1).count(),
        disagreements: results
            .into_iter()
            .filter(|&(_, m, o)| m != o)
            .map(|(n, machine, oracle)| Disagreement { n, machine, oracle })
            .collect(),
    })
}

/// Runs an NWA on binary encodings against the length-profile oracle.
pub fn simulate_nwa(
    nwa: &Nwa,
    lo: u64,
    hi: u64,
    flavor: Flavor,
    cases: &[Vec<usize>],
) -> Result<SimulationReport> {
    simulate_range(
        lo,
        hi,
        |n| nwa.accepts(&encode_nwa_input(n)?),
        |n| decide_cases(n, 2, flavor, cases).is_some(),
    )
}

/// Runs a folded NFA on base-`base` encodings against the palindrome oracle.
pub fn simulate_folded(
    nfa: &Nfa,
    base: u32,
    lo: u64,
    hi: u64,
    cases: &[Vec<usize>],
) -> Result<SimulationReport> {
    simulate_range(
        lo,
        hi,
        |n| nfa.accepts(&folded_encode(n, base)?),
        |n| decide_cases(n, base, Flavor::Palindrome, cases).is_some(),
    )
}
