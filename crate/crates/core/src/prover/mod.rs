//! Theorem drivers: build the machines, run the inclusion checks, and sweep
//! the small cases with the oracle.

mod theorems;

pub use theorems::{
    check_antipal_conjectures, prove_base3, prove_base4, prove_binary, prove_corollary_main,
    prove_gap, prove_genpal, ANTIPAL_THREE_EXCEPTIONS,
};

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::nwa::DEFAULT_STATE_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Odd integers of at least 8 bits and the three length profiles.
    Binary,
    /// At most 4 binary palindromes for every natural number.
    Corollary,
    Base3,
    Base4,
    /// At most 3 generalized binary palindromes.
    GenPal,
    /// Exactly 6 generalized antipalindromes of length `n-2`.
    Gap,
    /// Oracle evidence for the antipalindrome conjectures.
    Antipal,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Binary,
        Theorem::Corollary,
        Theorem::Base3,
        Theorem::Base4,
        Theorem::GenPal,
        Theorem::Gap,
        Theorem::Antipal,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Binary => "binary",
            Theorem::Corollary => "corollary",
            Theorem::Base3 => "base3",
            Theorem::Base4 => "base4",
            Theorem::GenPal => "genpal",
            Theorem::Gap => "gap",
            Theorem::Antipal => "antipal",
        }
    }

    /// Names accepted by `--negative-control`.
    pub fn controls(self) -> &'static [&'static str] {
        match self {
            Theorem::Binary => &["pal", "pal2", "pal3"],
            Theorem::Base3 => &["a", "b", "c", "d"],
            Theorem::Base4 => &["a", "b"],
            Theorem::GenPal => &["n", "n-1"],
            Theorem::Gap => &["1", "2", "3", "4", "5"],
            Theorem::Corollary | Theorem::Antipal => &[],
        }
    }

    pub fn prove(self, opts: &ProveOptions) -> Result<ProofReport> {
        if let Some(c) = &opts.negative_control {
            if !self.controls().contains(&c.as_str()) {
                return Err(Error::contract(format!(
                    "`{}` has no negative control `{c}` (choices: {})",
                    self.id(),
                    self.controls().join(", ")
                )));
            }
        }
        match self {
            Theorem::Binary => prove_binary(opts),
            Theorem::Corollary => prove_corollary_main(opts),
            Theorem::Base3 => prove_base3(opts),
            Theorem::Base4 => prove_base4(opts),
            Theorem::GenPal => prove_genpal(opts),
            Theorem::Gap => prove_gap(opts),
            Theorem::Antipal => check_antipal_conjectures(1 << 14, opts),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .or(match s {
                "main" => Some(Theorem::Corollary),
                "gpal" => Some(Theorem::GenPal),
                _ => None,
            })
            .ok_or_else(|| Error::contract(format!("unknown theorem `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProveOptions {
    /// Bound on determinized / product states.
    pub budget: usize,
    /// Weaken the construction by dropping the named case or summand.
    pub negative_control: Option<String>,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            budget: DEFAULT_STATE_BUDGET,
            negative_control: None,
        }
    }
}

impl ProveOptions {
    pub fn with_control(control: &str) -> Self {
        ProveOptions {
            negative_control: Some(control.to_string()),
            ..Self::default()
        }
    }
}

/// A word in the checked language that the theorem's machine rejects (or an
/// integer the oracle sweep refutes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: String,
    pub value: u64,
    /// The oracle agrees that `value` has no decomposition of the checked kind.
    pub oracle_confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub theorem: Theorem,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    /// Integers handled by the oracle instead of the automaton.
    pub base_case_range: Option<(u64, u64)>,
    /// Machine name and state count, in construction order.
    pub machine_sizes: Vec<(String, usize)>,
    /// Further key=value observations (sweeps, simulations, controls).
    pub facts: Vec<(String, String)>,
    pub elapsed: Duration,
}

impl ProofReport {
    fn new(theorem: Theorem) -> Self {
        ProofReport {
            theorem,
            holds: false,
            counterexample: None,
            base_case_range: None,
            machine_sizes: Vec::new(),
            facts: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn size(&self, machine: &str) -> Option<usize> {
        self.machine_sizes
            .iter()
            .find(|(m, _)| m == machine)
            .map(|&(_, n)| n)
    }

    pub fn fact(&self, key: &str) -> Option<&str> {
        self.facts
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.to_string(), value.to_string()));
    }

    /// Deterministic key=value records; the elapsed time is left out.
    pub fn records(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("theorem".to_string(), self.theorem.id().to_string()),
            ("holds".to_string(), self.holds.to_string()),
        ];
        if let Some((lo, hi)) = self.base_case_range {
            out.push(("base_cases".into(), format!("{lo}..{hi}")));
        }
        for (m, n) in &self.machine_sizes {
            out.push((format!("states.{m}"), n.to_string()));
        }
        out.extend(self.facts.iter().cloned());
        if let Some(c) = &self.counterexample {
            out.push(("counterexample.word".into(), c.word.clone()));
            out.push(("counterexample.value".into(), c.value.to_string()));
            out.push((
                "counterexample.oracle_confirmed".into(),
                c.oracle_confirmed.to_string(),
            ));
        }
        out
    }
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.records() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
