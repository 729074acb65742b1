use crate::error::{Error, Result};

use super::determinize::{determinize_with_budget, DEFAULT_STATE_BUDGET};
use super::explore::{materialize, Flip, Product};
use super::Nwa;

pub(crate) fn same_alphabet(a: &Nwa, b: &Nwa) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::contract(format!(
            "alphabet mismatch: {:?} vs {:?}",
            a.alphabet(),
            b.alphabet()
        )));
    }
    Ok(())
}

/// Returns `nwa` itself when it is already deterministic, otherwise its
/// determinization.
pub(crate) fn deterministic(nwa: &Nwa, budget: usize) -> Result<std::borrow::Cow<'_, Nwa>> {
    if nwa.is_deterministic() {
        Ok(std::borrow::Cow::Borrowed(nwa))
    } else {
        determinize_with_budget(nwa, budget).map(std::borrow::Cow::Owned)
    }
}

/// Product construction: accepts `L(a) ∩ L(b)`.
pub fn intersect(a: &Nwa, b: &Nwa) -> Result<Nwa> {
    intersect_with_budget(a, b, DEFAULT_STATE_BUDGET)
}

pub fn intersect_with_budget(a: &Nwa, b: &Nwa, budget: usize) -> Result<Nwa> {
    same_alphabet(a, b)?;
    materialize(&Product(a, b), budget)
}

/// Accepts the words of `within` that `a` rejects. `a` is determinized first
/// when necessary.
pub fn complement(a: &Nwa, within: &Nwa) -> Result<Nwa> {
    complement_with_budget(a, within, DEFAULT_STATE_BUDGET)
}

pub fn complement_with_budget(a: &Nwa, within: &Nwa, budget: usize) -> Result<Nwa> {
    same_alphabet(a, within)?;
    let det = deterministic(a, budget)?;
    materialize(&Product(within, Flip(&det)), budget)
}

/// `(L(a) ∪ L(b)) ∩ L(within)`, built as the complement of the intersection of
/// complements.
pub fn union(a: &Nwa, b: &Nwa, within: &Nwa) -> Result<Nwa> {
    union_with_budget(a, b, within, DEFAULT_STATE_BUDGET)
}

pub fn union_with_budget(a: &Nwa, b: &Nwa, within: &Nwa, budget: usize) -> Result<Nwa> {
    same_alphabet(a, b)?;
    let not_a = complement_with_budget(a, within, budget)?;
    let not_b = complement_with_budget(b, within, budget)?;
    let neither = intersect_with_budget(&not_a, &not_b, budget)?;
    complement_with_budget(&neither, within, budget)
}
