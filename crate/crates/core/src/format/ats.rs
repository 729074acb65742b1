//! A subset of the ULTIMATE automata-script syntax:
//!
//! ```text
//! NestedWordAutomaton palChecker = (
//!     callAlphabet = {"a" "b" },
//!     internalAlphabet = {"c" "d" },
//!     returnAlphabet = {"e" "f" },
//!     states = {"q_0_1" "s_0" },
//!     initialStates = {"q_0_1" },
//!     finalStates = {"s_0" },
//!     callTransitions = { ("q_0_1" "b" "q_0_1") },
//!     internalTransitions = { },
//!     returnTransitions = { ("q_0_1" "q_0_1" "f" "s_0") }
//! );
//! ```
//!
//! Folded NFAs are written as `FiniteAutomaton` with `alphabet` and
//! `transitions`. Comments (`//`) are skipped by the reader.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{state_names, Machine};
use crate::error::{Error, Result};
use crate::nfa::{FoldedAlphabet, FoldedSymbol, Nfa};
use crate::nwa::{Alphabet, Nwa, NwaBuilder, SymbolClass, TaggedSymbol};

fn quoted<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let mut s = String::from("{");
    for i in items {
        write!(s, "\"{i}\" ").unwrap();
    }
    s.push('}');
    s
}

fn tuples(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return "{ }".into();
    }
    let mut s = String::from("{\n");
    for r in rows {
        let inner: Vec<String> = r.iter().map(|x| format!("\"{x}\"")).collect();
        writeln!(s, "        ({})", inner.join(" ")).unwrap();
    }
    s.push_str("    }");
    s
}

/// `name` must be an identifier; anything else is replaced by `_`.
pub fn write_ats(machine: &Machine, name: &str) -> String {
    let ident: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    match machine {
        Machine::Nwa(m) => write_nwa(m, &ident),
        Machine::Nfa(m) => write_nfa(m, &ident),
    }
}

fn write_nwa(m: &Nwa, name: &str) -> String {
    let names = state_names(m.num_states(), |q| m.label(q as u32));
    let a = m.alphabet();
    let class_names = |c: SymbolClass| -> Vec<String> {
        a.digits(c)
            .iter()
            .map(|&d| TaggedSymbol { class: c, digit: d }.name())
            .collect()
    };
    let calls = class_names(SymbolClass::Call);
    let internals = class_names(SymbolClass::Internal);
    let returns = class_names(SymbolClass::Return);
    let n = |q: u32| names[q as usize].clone();

    let mut call_rows = Vec::new();
    let mut internal_rows = Vec::new();
    for q in 0..m.num_states() as u32 {
        for &(s, d) in m.call_edges(q) {
            call_rows.push(vec![n(q), calls[s as usize].clone(), n(d)]);
        }
        for &(s, d) in m.internal_edges(q) {
            internal_rows.push(vec![n(q), internals[s as usize].clone(), n(d)]);
        }
    }
    let mut rets: Vec<_> = m.return_transitions().collect();
    rets.sort_unstable();
    let return_rows: Vec<Vec<String>> = rets
        .into_iter()
        .map(|(q, p, s, d)| vec![n(q), n(p), returns[s as usize].clone(), n(d)])
        .collect();

    let mut out = String::new();
    writeln!(out, "NestedWordAutomaton {name} = (").unwrap();
    writeln!(
        out,
        "    callAlphabet = {},",
        quoted(calls.iter().map(String::as_str))
    )
    .unwrap();
    writeln!(
        out,
        "    internalAlphabet = {},",
        quoted(internals.iter().map(String::as_str))
    )
    .unwrap();
    writeln!(
        out,
        "    returnAlphabet = {},",
        quoted(returns.iter().map(String::as_str))
    )
    .unwrap();
    writeln!(
        out,
        "    states = {},",
        quoted(names.iter().map(String::as_str))
    )
    .unwrap();
    let init: Vec<&str> = m
        .initial_states()
        .iter()
        .map(|&q| names[q as usize].as_str())
        .collect();
    writeln!(out, "    initialStates = {},", quoted(init)).unwrap();
    let fin: Vec<&str> = m
        .accepting_states()
        .map(|q| names[q as usize].as_str())
        .collect();
    writeln!(out, "    finalStates = {},", quoted(fin)).unwrap();
    writeln!(out, "    callTransitions = {},", tuples(&call_rows)).unwrap();
    writeln!(out, "    internalTransitions = {},", tuples(&internal_rows)).unwrap();
    writeln!(out, "    returnTransitions = {}", tuples(&return_rows)).unwrap();
    out.push_str(");\n");
    out
}

fn write_nfa(m: &Nfa, name: &str) -> String {
    let names = state_names(m.num_states(), |q| m.label(q as u32).to_string());
    let symbols: Vec<String> = m.alphabet().symbols().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    for q in 0..m.num_states() as u32 {
        for (sym, d) in m.edges(q) {
            rows.push(vec![
                names[q as usize].clone(),
                sym.to_string(),
                names[d as usize].clone(),
            ]);
        }
    }
    let mut out = String::new();
    writeln!(out, "FiniteAutomaton {name} = (").unwrap();
    writeln!(
        out,
        "    alphabet = {},",
        quoted(symbols.iter().map(String::as_str))
    )
    .unwrap();
    writeln!(
        out,
        "    states = {},",
        quoted(names.iter().map(String::as_str))
    )
    .unwrap();
    let init: Vec<&str> = m
        .initial_states()
        .iter()
        .map(|&q| names[q as usize].as_str())
        .collect();
    writeln!(out, "    initialStates = {},", quoted(init)).unwrap();
    let fin: Vec<&str> = (0..m.num_states() as u32)
        .filter(|&q| m.is_accepting(q))
        .map(|q| names[q as usize].as_str())
        .collect();
    writeln!(out, "    finalStates = {},", quoted(fin)).unwrap();
    writeln!(out, "    transitions = {}", tuples(&rows)).unwrap();
    out.push_str(");\n");
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Punct(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            '/' if chars.peek() == Some(&'/') => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') | None => return Err(Error::parse(line, "unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                out.push((line, Tok::Str(s)));
            }
            '(' | ')' | '{' | '}' | '=' | ',' | ';' => out.push((line, Tok::Punct(c))),
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = c.to_string();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((line, Tok::Word(s)));
            }
            other => {
                return Err(Error::parse(
                    line,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(out)
}

/// Set element: a bare atom or a parenthesized tuple.
#[derive(Clone, Debug)]
enum Item {
    Atom(String),
    Tuple(Vec<String>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.0)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .map(|t| t.1.clone())
            .ok_or_else(|| Error::parse(self.line(), "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next()? {
            Tok::Punct(p) if p == c => Ok(()),
            other => Err(Error::parse(
                self.line(),
                format!("expected `{c}`, found {other:?}"),
            )),
        }
    }

    fn atom(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Str(s) | Tok::Word(s) => Ok(s),
            other => Err(Error::parse(
                self.line(),
                format!("expected a name, found {other:?}"),
            )),
        }
    }

    fn peek_punct(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Punct(p))) if *p == c)
    }

    fn set(&mut self) -> Result<Vec<Item>> {
        self.expect('{')?;
        let mut items = Vec::new();
        while !self.peek_punct('}') {
            if self.peek_punct(',') {
                self.pos += 1;
                continue;
            }
            if self.peek_punct('(') {
                self.pos += 1;
                let mut t = Vec::new();
                while !self.peek_punct(')') {
                    if self.peek_punct(',') {
                        self.pos += 1;
                        continue;
                    }
                    t.push(self.atom()?);
                }
                self.pos += 1;
                items.push(Item::Tuple(t));
            } else {
                items.push(Item::Atom(self.atom()?));
            }
        }
        self.pos += 1;
        Ok(items)
    }

    /// `Kind name = ( key = set, ... );`
    fn automaton(&mut self) -> Result<(String, HashMap<String, (usize, Vec<Item>)>)> {
        let kind = match self.next()? {
            Tok::Word(w) => w,
            other => {
                return Err(Error::parse(
                    self.line(),
                    format!("expected an automaton kind, found {other:?}"),
                ))
            }
        };
        self.atom()?;
        self.expect('=')?;
        self.expect('(')?;
        let mut fields = HashMap::new();
        loop {
            if self.peek_punct(')') {
                self.pos += 1;
                break;
            }
            let line = self.line();
            let key = self.atom()?;
            self.expect('=')?;
            let value = self.set()?;
            fields.insert(key, (line, value));
            if self.peek_punct(',') {
                self.pos += 1;
            }
        }
        if self.peek_punct(';') {
            self.pos += 1;
        }
        Ok((kind, fields))
    }
}

type Fields = HashMap<String, (usize, Vec<Item>)>;

fn atoms(fields: &Fields, key: &str) -> Result<Vec<String>> {
    let Some((line, items)) = fields.get(key) else {
        return Ok(Vec::new());
    };
    items
        .iter()
        .map(|i| match i {
            Item::Atom(a) => Ok(a.clone()),
            Item::Tuple(_) => Err(Error::parse(
                *line,
                format!("`{key}` expects names, not tuples"),
            )),
        })
        .collect()
}

fn rows(fields: &Fields, key: &str, arity: usize) -> Result<Vec<(usize, Vec<String>)>> {
    let Some((line, items)) = fields.get(key) else {
        return Ok(Vec::new());
    };
    items
        .iter()
        .map(|i| match i {
            Item::Tuple(t) if t.len() == arity => Ok((*line, t.clone())),
            _ => Err(Error::parse(
                *line,
                format!("`{key}` expects {arity}-tuples"),
            )),
        })
        .collect()
}

fn state_ids(line: usize, names: &[String]) -> Result<HashMap<String, u32>> {
    let mut ids = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if ids.insert(n.clone(), i as u32).is_some() {
            return Err(Error::parse(line, format!("duplicate state `{n}`")));
        }
    }
    Ok(ids)
}

fn lookup(ids: &HashMap<String, u32>, line: usize, name: &str) -> Result<u32> {
    ids.get(name)
        .copied()
        .ok_or_else(|| Error::parse(line, format!("undeclared state `{name}`")))
}

/// Reads the first automaton in `text`.
pub fn read_ats(text: &str) -> Result<Machine> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let (kind, fields) = p.automaton()?;
    match kind.as_str() {
        "NestedWordAutomaton" => read_nwa(&fields).map(Machine::Nwa),
        "FiniteAutomaton" => read_nfa(&fields).map(Machine::Nfa),
        other => Err(Error::parse(
            1,
            format!("unsupported automaton kind `{other}`"),
        )),
    }
}

fn class_symbols(
    fields: &Fields,
    key: &str,
    class: SymbolClass,
) -> Result<HashMap<String, TaggedSymbol>> {
    atoms(fields, key)?
        .into_iter()
        .map(|n| match TaggedSymbol::from_name(&n) {
            Some(s) if s.class == class => Ok((n, s)),
            _ => Err(Error::UnknownSymbol(n)),
        })
        .collect()
}

fn read_nwa(fields: &Fields) -> Result<Nwa> {
    let calls = class_symbols(fields, "callAlphabet", SymbolClass::Call)?;
    let internals = class_symbols(fields, "internalAlphabet", SymbolClass::Internal)?;
    let returns = class_symbols(fields, "returnAlphabet", SymbolClass::Return)?;
    let digits = |m: &HashMap<String, TaggedSymbol>| {
        let mut d: Vec<u8> = m.values().map(|s| s.digit).collect();
        d.sort_unstable();
        d
    };
    let mut b = NwaBuilder::new(Alphabet::new(
        &digits(&calls),
        &digits(&internals),
        &digits(&returns),
    ));

    let names = atoms(fields, "states")?;
    let line = fields.get("states").map_or(1, |f| f.0);
    let ids = state_ids(line, &names)?;
    let finals = atoms(fields, "finalStates")?;
    for n in &names {
        b.add_state(n.clone(), finals.contains(n));
    }
    for n in atoms(fields, "initialStates")? {
        b.set_initial(lookup(&ids, line, &n)?);
    }
    for n in &finals {
        lookup(&ids, line, n)?;
    }
    let sym = |table: &HashMap<String, TaggedSymbol>, n: &str| {
        table
            .get(n)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(n.to_string()))
    };
    for (line, t) in rows(fields, "callTransitions", 3)? {
        b.add_call(
            lookup(&ids, line, &t[0])?,
            sym(&calls, &t[1])?,
            lookup(&ids, line, &t[2])?,
        );
    }
    for (line, t) in rows(fields, "internalTransitions", 3)? {
        b.add_internal(
            lookup(&ids, line, &t[0])?,
            sym(&internals, &t[1])?,
            lookup(&ids, line, &t[2])?,
        );
    }
    for (line, t) in rows(fields, "returnTransitions", 4)? {
        b.add_return(
            lookup(&ids, line, &t[0])?,
            lookup(&ids, line, &t[1])?,
            sym(&returns, &t[2])?,
            lookup(&ids, line, &t[3])?,
        );
    }
    Ok(b.build())
}

fn read_nfa(fields: &Fields) -> Result<Nfa> {
    let symbols: Vec<FoldedSymbol> = atoms(fields, "alphabet")?
        .iter()
        .map(|s| FoldedSymbol::parse(s).ok_or_else(|| Error::UnknownSymbol(s.clone())))
        .collect::<Result<_>>()?;
    let base = symbols
        .iter()
        .map(|s| {
            let (a, b) = s.digits();
            a.max(b.unwrap_or(0))
        })
        .max()
        .map_or(2, |d| (d + 1).max(2));
    let alphabet = FoldedAlphabet::new(base);
    let mut nfa = Nfa::new(alphabet);
    let names = atoms(fields, "states")?;
    let line = fields.get("states").map_or(1, |f| f.0);
    let ids = state_ids(line, &names)?;
    let finals = atoms(fields, "finalStates")?;
    for n in &names {
        nfa.add_state(n.clone(), finals.contains(n));
    }
    for n in atoms(fields, "initialStates")? {
        nfa.set_initial(lookup(&ids, line, &n)?);
    }
    for (line, t) in rows(fields, "transitions", 3)? {
        let s = FoldedSymbol::parse(&t[1])
            .filter(|&s| alphabet.index_of(s).is_some())
            .ok_or_else(|| Error::UnknownSymbol(t[1].clone()))?;
        nfa.add_transition(lookup(&ids, line, &t[0])?, s, lookup(&ids, line, &t[2])?);
    }
    Ok(nfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_native;
    use crate::generators::{fig1_machine, folded_case_machine, pal_checker, BASE4_CASES};

    #[test]
    fn nwa_ats_round_trip_matches_native() {
        for m in [fig1_machine(), pal_checker()] {
            let m = Machine::Nwa(m);
            let back = read_ats(&write_ats(&m, "m")).unwrap();
            assert_eq!(write_native(&back), write_native(&m));
        }
    }

    #[test]
    fn nfa_ats_round_trip_matches_native() {
        let m = Machine::Nfa(folded_case_machine(4, BASE4_CASES[0].1));
        let back = read_ats(&write_ats(&m, "base4 a")).unwrap();
        assert_eq!(write_native(&back), write_native(&m));
    }

    #[test]
    fn reads_hand_written_script() {
        let text = r#"
            // tiny machine: one call, one return
            NestedWordAutomaton t = (
                callAlphabet = {a},
                internalAlphabet = {},
                returnAlphabet = {e},
                states = {p q r},
                initialStates = {p},
                finalStates = {r},
                callTransitions = {(p a q)},
                internalTransitions = {},
                returnTransitions = {(q p e r)}
            );
        "#;
        let Machine::Nwa(m) = read_ats(text).unwrap() else {
            panic!()
        };
        assert_eq!(m.num_states(), 3);
        assert!(m
            .accepts(&crate::nwa::NestedWord::parse_letters("ae").unwrap())
            .unwrap());
    }
}
