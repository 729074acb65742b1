//! Guess-and-verify NWAs for "n is a sum of binary (anti)palindromes of
//! prescribed lengths".
//!
//! While reading calls (the low half of the bits) a t-state holds the running
//! carry, the guessed number of ones each summand group contributes at the
//! current position, and the last `delay` such counts. Returns read the high
//! half; the popped t-state supplies the count that mirrors the current
//! position, shifted by the group's delay. Guessing counts rather than
//! individual bits lets a group of `count` equal-length summands share one
//! coordinate.

use crate::error::{Error, Result};
use crate::nwa::{Alphabet, Nwa, NwaBuilder, StateId, TaggedSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Palindrome,
    Antipalindrome,
}

/// `count` summands of length `n - delay` (n = input length) sharing a shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SummandGroup {
    pub count: u8,
    pub delay: u8,
    pub shape: Shape,
    /// Leading zeroes allowed (generalized palindromes/antipalindromes).
    pub generalized: bool,
}

impl SummandGroup {
    pub fn palindromes(count: u8, delay: u8) -> Self {
        SummandGroup {
            count,
            delay,
            shape: Shape::Palindrome,
            generalized: false,
        }
    }

    pub fn antipalindromes(count: u8, delay: u8) -> Self {
        SummandGroup {
            count,
            delay,
            shape: Shape::Antipalindrome,
            generalized: false,
        }
    }

    pub fn generalized(mut self) -> Self {
        self.generalized = true;
        self
    }

    /// Digit contributed at position `L-1-t` given the count guessed at `t - delay`.
    fn mirror(&self, c: u8) -> u8 {
        match self.shape {
            Shape::Palindrome => c,
            Shape::Antipalindrome => self.count - c,
        }
    }

    /// Counts on two mirrored positions both guessed during the call phase.
    fn consistent(&self, c: u8, m: u8) -> bool {
        match self.shape {
            Shape::Palindrome => c == m,
            Shape::Antipalindrome => c + m == self.count,
        }
    }

    fn history_init(&self) -> u8 {
        match self.shape {
            Shape::Palindrome => 0,
            Shape::Antipalindrome => self.count,
        }
    }

    /// Allowed counts for the least significant position.
    fn first_guesses(&self) -> Vec<u8> {
        match (self.generalized, self.shape) {
            (true, _) => (0..=self.count).collect(),
            // The last digit of a palindrome equals its nonzero leading digit.
            (false, Shape::Palindrome) => vec![self.count],
            // An antipalindrome with leading 1 ends in 0.
            (false, Shape::Antipalindrome) => vec![0],
        }
    }
}

/// Decoded t-state coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TState {
    carry: u8,
    current: Vec<u8>,
    /// Per group, most recent first.
    history: Vec<Vec<u8>>,
}

/// Mixed-radix numbering of every t-state.
struct Layout<'a> {
    groups: &'a [SummandGroup],
    max_carry: u8,
}

impl Layout<'_> {
    fn radices(&self) -> Vec<u32> {
        let mut r = vec![self.max_carry as u32 + 1];
        r.extend(self.groups.iter().map(|g| g.count as u32 + 1));
        for g in self.groups {
            r.extend(std::iter::repeat_n(g.count as u32 + 1, g.delay as usize));
        }
        r
    }

    fn num_states(&self) -> usize {
        self.radices().iter().map(|&r| r as usize).product()
    }

    fn flatten(&self, s: &TState) -> Vec<u8> {
        let mut v = vec![s.carry];
        v.extend(&s.current);
        for h in &s.history {
            v.extend(h);
        }
        v
    }

    fn index(&self, s: &TState) -> StateId {
        let radices = self.radices();
        self.flatten(s)
            .iter()
            .zip(&radices)
            .fold(0u32, |acc, (&d, &r)| acc * r + d as u32)
    }

    fn decode(&self, mut idx: u32) -> TState {
        let radices = self.radices();
        let mut digits = vec![0u8; radices.len()];
        for (slot, &r) in digits.iter_mut().zip(&radices).rev() {
            *slot = (idx % r) as u8;
            idx /= r;
        }
        let n = self.groups.len();
        let mut history = Vec::with_capacity(n);
        let mut at = 1 + n;
        for g in self.groups {
            history.push(digits[at..at + g.delay as usize].to_vec());
            at += g.delay as usize;
        }
        TState {
            carry: digits[0],
            current: digits[1..1 + n].to_vec(),
            history,
        }
    }

    fn label(&self, s: &TState) -> String {
        let join = |v: &[u8]| v.iter().map(|d| d.to_string()).collect::<String>();
        let mut label = format!("q_{}_{}", s.carry, join(&s.current));
        for h in s.history.iter().filter(|h| !h.is_empty()) {
            label.push('_');
            label.push_str(&join(h));
        }
        label
    }
}

impl TState {
    /// Count that group `j` contributes at the mirrored position when this
    /// state is popped.
    fn popped_count(&self, j: usize, group: &SummandGroup) -> u8 {
        let c = match group.delay {
            0 => self.current[j],
            d => self.history[j][d as usize - 1],
        };
        group.mirror(c)
    }

    /// Count of group `j` at window offset `o` below the current position
    /// (`o = 0` is the current guess).
    fn at(&self, j: usize, o: usize) -> u8 {
        if o == 0 {
            self.current[j]
        } else {
            self.history[j][o - 1]
        }
    }

    /// Palindrome conditions for positions guessed on both sides of the
    /// middle. For odd lengths the window is `[h-d, h]` and includes the
    /// middle guess; for even lengths it is `[h-d, h-1]`.
    fn middle_ok(&self, groups: &[SummandGroup], odd: bool) -> bool {
        groups.iter().enumerate().all(|(j, g)| {
            let d = g.delay as usize;
            // Offsets below the current position h: o in lo..=d pairs with d + lo - o.
            let lo = if odd { 0 } else { 1 };
            (lo..=d).all(|o| {
                let m = d + lo - o;
                if o == m {
                    g.shape == Shape::Palindrome
                } else {
                    g.consistent(self.at(j, o), self.at(j, m))
                }
            })
        })
    }
}

/// Sum-checking NWA over the binary alphabet for the given summand groups.
///
/// State ids: t-states first in mixed-radix order, then `s_0..=s_max`.
/// The carry range is `0..=max(2, summands - 1)`.
pub fn sum_checker(groups: &[SummandGroup]) -> Nwa {
    sum_checker_with_budget(groups, usize::MAX).expect("no budget")
}

/// Like [`sum_checker`], but fails with [`Error::ResourceLimit`] before
/// building when the machine would have more than `max_transitions`
/// transitions.
pub fn sum_checker_with_budget(groups: &[SummandGroup], max_transitions: usize) -> Result<Nwa> {
    if groups.is_empty() {
        return Err(Error::contract("at least one summand group is required"));
    }
    let total: u32 = groups.iter().map(|g| g.count as u32).sum();
    let max_carry = total.saturating_sub(1).max(2) as u8;
    let layout = Layout { groups, max_carry };
    let n_t = layout.num_states();
    let guesses: usize = groups.iter().map(|g| g.count as usize + 1).product();
    // Calls, plus one return per (state, popped t-state) pair at worst.
    let estimate = n_t.saturating_mul(guesses).saturating_add(
        n_t.saturating_add(max_carry as usize + 1)
            .saturating_mul(n_t),
    );
    if estimate > max_transitions || n_t > u32::MAX as usize / 2 {
        return Err(Error::ResourceLimit {
            budget: max_transitions,
        });
    }
    let states: Vec<TState> = (0..n_t as u32).map(|i| layout.decode(i)).collect();

    let mut b = NwaBuilder::new(Alphabet::binary());
    for s in &states {
        b.add_state(layout.label(s), false);
    }
    let s_state = |c: u8| (n_t + c as usize) as StateId;
    for c in 0..=max_carry {
        b.add_state(format!("s_{c}"), c == 0);
    }

    // Initial states: zero carry, initial history, allowed first guesses.
    let mut firsts: Vec<Vec<u8>> = vec![Vec::new()];
    for g in groups {
        firsts = firsts
            .into_iter()
            .flat_map(|p| {
                g.first_guesses().into_iter().map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    for current in firsts {
        let s = TState {
            carry: 0,
            current,
            history: groups
                .iter()
                .map(|g| vec![g.history_init(); g.delay as usize])
                .collect(),
        };
        b.set_initial(layout.index(&s));
    }

    let all_guesses: Vec<Vec<u8>> = groups.iter().fold(vec![Vec::new()], |acc, g| {
        acc.into_iter()
            .flat_map(|p| {
                (0..=g.count).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect()
    });

    let even_ok: Vec<bool> = states.iter().map(|s| s.middle_ok(groups, false)).collect();
    let popped: Vec<u32> = states
        .iter()
        .map(|s| {
            groups
                .iter()
                .enumerate()
                .map(|(j, g)| s.popped_count(j, g) as u32)
                .sum()
        })
        .collect();

    for (q, s) in states.iter().enumerate() {
        let q = q as StateId;
        let sum = s.carry as u32 + s.current.iter().map(|&c| c as u32).sum::<u32>();
        let (bit, carry) = ((sum % 2) as u8, (sum / 2) as u8);

        let history: Vec<Vec<u8>> = groups
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut h = s.history[j].clone();
                if g.delay > 0 {
                    h.pop();
                    h.insert(0, s.current[j]);
                }
                h
            })
            .collect();
        for guess in &all_guesses {
            let next = TState {
                carry,
                current: guess.clone(),
                history: history.clone(),
            };
            b.add_call(q, TaggedSymbol::call(bit), layout.index(&next));
        }

        if s.middle_ok(groups, true) {
            b.add_internal(q, TaggedSymbol::internal(bit), s_state(carry));
        }

        if even_ok[q as usize] {
            for (p, &add) in popped.iter().enumerate() {
                let sum = s.carry as u32 + add;
                b.add_return(
                    q,
                    p as StateId,
                    TaggedSymbol::ret((sum % 2) as u8),
                    s_state((sum / 2) as u8),
                );
            }
        }
    }

    for c in 0..=max_carry {
        for (p, &add) in popped.iter().enumerate() {
            let sum = c as u32 + add;
            if sum / 2 <= max_carry as u32 {
                b.add_return(
                    s_state(c),
                    p as StateId,
                    TaggedSymbol::ret((sum % 2) as u8),
                    s_state((sum / 2) as u8),
                );
            }
        }
    }
    Ok(b.build())
}
