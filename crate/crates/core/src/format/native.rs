//! Native format. One item per line, `#` starts a comment:
//!
//! ```text
//! palsum-nwa 1
//! alphabet a b | c d | e f
//! [states]
//! <name> [initial] [accepting]
//! [calls]
//! <from> <symbol> <to>
//! [internals]
//! <from> <symbol> <to>
//! [returns]
//! <from> <popped> <symbol> <to>
//! ```
//!
//! NFAs use the header `palsum-nfa 1`, a `base <k>` line, `[states]` and
//! `[transitions]` with `<from> <symbol> <to>`.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{state_names, Machine};
use crate::error::{Error, Result};
use crate::nfa::{FoldedAlphabet, FoldedSymbol, Nfa};
use crate::nwa::{Alphabet, Nwa, NwaBuilder, SymbolClass, TaggedSymbol};

const NWA_HEADER: &str = "palsum-nwa 1";
const NFA_HEADER: &str = "palsum-nfa 1";
const CLASSES: [SymbolClass; 3] = [
    SymbolClass::Call,
    SymbolClass::Internal,
    SymbolClass::Return,
];

pub fn write_native(machine: &Machine) -> String {
    match machine {
        Machine::Nwa(m) => write_nwa(m),
        Machine::Nfa(m) => write_nfa(m),
    }
}

fn flags(initial: bool, accepting: bool) -> &'static str {
    match (initial, accepting) {
        (true, true) => " initial accepting",
        (true, false) => " initial",
        (false, true) => " accepting",
        (false, false) => "",
    }
}

fn write_nwa(m: &Nwa) -> String {
    let names = state_names(m.num_states(), |q| m.label(q as u32));
    let a = m.alphabet();
    let mut out = String::new();
    writeln!(out, "{NWA_HEADER}").unwrap();
    let classes: Vec<String> = CLASSES
        .iter()
        .map(|&c| {
            a.digits(c)
                .iter()
                .map(|&d| TaggedSymbol { class: c, digit: d }.name())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    writeln!(out, "alphabet {}", classes.join(" | ")).unwrap();
    out.push_str("[states]\n");
    for q in 0..m.num_states() as u32 {
        let init = m.initial_states().contains(&q);
        writeln!(
            out,
            "{}{}",
            names[q as usize],
            flags(init, m.is_accepting(q))
        )
        .unwrap();
    }
    out.push_str("[calls]\n");
    for q in 0..m.num_states() as u32 {
        for &(s, d) in m.call_edges(q) {
            let sym = a.symbol(SymbolClass::Call, s);
            writeln!(out, "{} {} {}", names[q as usize], sym, names[d as usize]).unwrap();
        }
    }
    out.push_str("[internals]\n");
    for q in 0..m.num_states() as u32 {
        for &(s, d) in m.internal_edges(q) {
            let sym = a.symbol(SymbolClass::Internal, s);
            writeln!(out, "{} {} {}", names[q as usize], sym, names[d as usize]).unwrap();
        }
    }
    out.push_str("[returns]\n");
    let mut rets: Vec<_> = m.return_transitions().collect();
    rets.sort_unstable();
    for (q, p, s, d) in rets {
        let sym = a.symbol(SymbolClass::Return, s);
        writeln!(
            out,
            "{} {} {} {}",
            names[q as usize], names[p as usize], sym, names[d as usize]
        )
        .unwrap();
    }
    out
}

fn write_nfa(m: &Nfa) -> String {
    let names = state_names(m.num_states(), |q| m.label(q as u32).to_string());
    let mut out = String::new();
    writeln!(out, "{NFA_HEADER}").unwrap();
    writeln!(out, "base {}", m.alphabet().base()).unwrap();
    out.push_str("[states]\n");
    for q in 0..m.num_states() as u32 {
        let init = m.initial_states().contains(&q);
        writeln!(
            out,
            "{}{}",
            names[q as usize],
            flags(init, m.is_accepting(q))
        )
        .unwrap();
    }
    out.push_str("[transitions]\n");
    for q in 0..m.num_states() as u32 {
        for (sym, d) in m.edges(q) {
            writeln!(out, "{} {} {}", names[q as usize], sym, names[d as usize]).unwrap();
        }
    }
    out
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

struct StateTable {
    ids: HashMap<String, u32>,
}

impl StateTable {
    fn get(&self, line: usize, name: &str) -> Result<u32> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("undeclared state `{name}`")))
    }
}

/// State line: `<name> [initial] [accepting]`.
fn parse_state(line: usize, tokens: &[&str]) -> Result<(String, bool, bool)> {
    let (mut initial, mut accepting) = (false, false);
    for &t in &tokens[1..] {
        match t {
            "initial" => initial = true,
            "accepting" => accepting = true,
            other => return Err(Error::parse(line, format!("unknown state flag `{other}`"))),
        }
    }
    Ok((tokens[0].to_string(), initial, accepting))
}

pub fn read_native(text: &str) -> Result<Machine> {
    let mut it = lines(text);
    match it.next() {
        Some((_, t)) if t.join(" ") == NWA_HEADER => read_nwa(it).map(Machine::Nwa),
        Some((_, t)) if t.join(" ") == NFA_HEADER => read_nfa(it).map(Machine::Nfa),
        Some((line, _)) => Err(Error::parse(
            line,
            "expected a `palsum-nwa 1` or `palsum-nfa 1` header",
        )),
        None => Err(Error::parse(1, "empty machine file")),
    }
}

fn symbol(line: usize, name: &str, class: SymbolClass) -> Result<TaggedSymbol> {
    match TaggedSymbol::from_name(name) {
        Some(s) if s.class == class => Ok(s),
        _ => Err(Error::parse(
            line,
            format!("`{name}` is not a {class:?} symbol"),
        )),
    }
}

fn read_nwa<'a>(mut it: impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<Nwa> {
    let (line, t) = it
        .next()
        .ok_or_else(|| Error::parse(2, "missing alphabet line"))?;
    if t.first() != Some(&"alphabet") {
        return Err(Error::parse(line, "expected `alphabet`"));
    }
    let joined = t[1..].join(" ");
    let parts: Vec<&str> = joined.split('|').collect();
    if parts.len() != 3 {
        return Err(Error::parse(
            line,
            "alphabet needs three `|`-separated classes",
        ));
    }
    let mut digits: Vec<Vec<u8>> = Vec::new();
    for (part, &class) in parts.iter().zip(&CLASSES) {
        digits.push(
            part.split_whitespace()
                .map(|n| symbol(line, n, class).map(|s| s.digit))
                .collect::<Result<_>>()?,
        );
    }
    let alphabet = Alphabet::new(&digits[0], &digits[1], &digits[2]);
    let mut b = NwaBuilder::new(alphabet.clone());
    let mut table = StateTable {
        ids: HashMap::new(),
    };
    let mut section = "";
    for (line, t) in it {
        if t.len() == 1 && t[0].starts_with('[') {
            section = match t[0] {
                "[states]" | "[calls]" | "[internals]" | "[returns]" => t[0],
                other => return Err(Error::parse(line, format!("unknown section {other}"))),
            };
            continue;
        }
        let check = |n: usize| {
            if t.len() == n {
                Ok(())
            } else {
                Err(Error::parse(line, format!("expected {n} fields")))
            }
        };
        let known = |s: TaggedSymbol| {
            if alphabet.index_of(s).is_some() {
                Ok(s)
            } else {
                Err(Error::UnknownSymbol(s.name()))
            }
        };
        match section {
            "[states]" => {
                let (name, init, acc) = parse_state(line, &t)?;
                if table.ids.contains_key(&name) {
                    return Err(Error::parse(line, format!("duplicate state `{name}`")));
                }
                let q = b.add_state(name.clone(), acc);
                if init {
                    b.set_initial(q);
                }
                table.ids.insert(name, q);
            }
            "[calls]" => {
                check(3)?;
                let s = known(symbol(line, t[1], SymbolClass::Call)?)?;
                b.add_call(table.get(line, t[0])?, s, table.get(line, t[2])?);
            }
            "[internals]" => {
                check(3)?;
                let s = known(symbol(line, t[1], SymbolClass::Internal)?)?;
                b.add_internal(table.get(line, t[0])?, s, table.get(line, t[2])?);
            }
            "[returns]" => {
                check(4)?;
                let s = known(symbol(line, t[2], SymbolClass::Return)?)?;
                b.add_return(
                    table.get(line, t[0])?,
                    table.get(line, t[1])?,
                    s,
                    table.get(line, t[3])?,
                );
            }
            _ => return Err(Error::parse(line, "content before the first section")),
        }
    }
    Ok(b.build())
}

fn read_nfa<'a>(mut it: impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<Nfa> {
    let (line, t) = it
        .next()
        .ok_or_else(|| Error::parse(2, "missing base line"))?;
    let base: u8 = match t.as_slice() {
        ["base", k] => k.parse().map_err(|_| Error::parse(line, "bad base"))?,
        _ => return Err(Error::parse(line, "expected `base <k>`")),
    };
    if base < 2 {
        return Err(Error::parse(line, "base must be at least 2"));
    }
    let alphabet = FoldedAlphabet::new(base);
    let mut nfa = Nfa::new(alphabet);
    let mut table = StateTable {
        ids: HashMap::new(),
    };
    let mut section = "";
    for (line, t) in it {
        if t.len() == 1 && t[0].starts_with('[') && FoldedSymbol::parse(t[0]).is_none() {
            section = match t[0] {
                "[states]" | "[transitions]" => t[0],
                other => return Err(Error::parse(line, format!("unknown section {other}"))),
            };
            continue;
        }
        match section {
            "[states]" => {
                let (name, init, acc) = parse_state(line, &t)?;
                if table.ids.contains_key(&name) {
                    return Err(Error::parse(line, format!("duplicate state `{name}`")));
                }
                let q = nfa.add_state(name.clone(), acc);
                if init {
                    nfa.set_initial(q);
                }
                table.ids.insert(name, q);
            }
            "[transitions]" => {
                if t.len() != 3 {
                    return Err(Error::parse(line, "expected 3 fields"));
                }
                let sym = FoldedSymbol::parse(t[1])
                    .filter(|&s| alphabet.index_of(s).is_some())
                    .ok_or_else(|| Error::UnknownSymbol(t[1].to_string()))?;
                nfa.add_transition(table.get(line, t[0])?, sym, table.get(line, t[2])?);
            }
            _ => return Err(Error::parse(line, "content before the first section")),
        }
    }
    Ok(nfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fig1_machine, folded_case_machine, BASE3_CASES};

    #[test]
    fn nwa_round_trip_is_textually_stable() {
        let m = Machine::Nwa(fig1_machine());
        let text = write_native(&m);
        let back = read_native(&text).unwrap();
        assert_eq!(write_native(&back), text);
    }

    #[test]
    fn nfa_round_trip_is_textually_stable() {
        let m = Machine::Nfa(folded_case_machine(3, BASE3_CASES[3].1));
        let text = write_native(&m);
        let back = read_native(&text).unwrap();
        assert_eq!(write_native(&back), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "palsum-nfa 1\nbase 3\n[states]\nx initial\n[transitions]\nx F1 y\n";
        match read_native(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            read_native("hello"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
