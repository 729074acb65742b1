use crate::nwa::{Alphabet, Nwa, NwaBuilder, TaggedSymbol};

/// Constraint on the value's least significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueParity {
    Any,
    /// First symbol `b`: the encoded integer is odd.
    OddOnly,
}

/// Constraint on the number of bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LengthParity {
    Any,
    Even,
    Odd,
}

/// Shape `{a,b}^h {c,d}^m {e,f}^h` with `m <= 1` and `h >= min_half`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SyntaxConfig {
    pub min_half: usize,
    pub value: ValueParity,
    pub length: LengthParity,
    /// Most significant bit must be 1 (last symbol `f`).
    pub canonical: bool,
}

impl SyntaxConfig {
    pub fn new(min_half: usize) -> Self {
        SyntaxConfig {
            min_half,
            value: ValueParity::Any,
            length: LengthParity::Any,
            canonical: true,
        }
    }

    pub fn odd_values(mut self) -> Self {
        self.value = ValueParity::OddOnly;
        self
    }

    pub fn lengths(mut self, length: LengthParity) -> Self {
        self.length = length;
        self
    }

    pub fn non_canonical(mut self) -> Self {
        self.canonical = false;
        self
    }
}

/// Shorthand for the common cases: canonical encodings of integers with at
/// least `2 * min_half` bits.
pub fn syntax_checker(min_half: usize, parity: ValueParity) -> Nwa {
    let mut cfg = SyntaxConfig::new(min_half);
    cfg.value = parity;
    syntax_checker_with(cfg)
}

/// Builds the syntax machine. The bottom call pushes the initial state, so a
/// return popping it is the last symbol; that is the only way to accept, which
/// forces as many returns as calls.
pub fn syntax_checker_with(cfg: SyntaxConfig) -> Nwa {
    assert!(cfg.min_half >= 1, "min_half must be at least 1");
    let mut b = NwaBuilder::new(Alphabet::binary());
    let start = b.add_state("start", false);
    b.set_initial(start);
    // calls[i] = after i + 1 calls (saturating at min_half).
    let calls: Vec<_> = (1..=cfg.min_half)
        .map(|i| b.add_state(format!("call{i}"), false))
        .collect();
    let mid = b.add_state("mid", false);
    let ret = b.add_state("ret", false);
    let done = b.add_state("done", true);

    let first_calls: &[TaggedSymbol] = match cfg.value {
        ValueParity::Any => &[TaggedSymbol::A, TaggedSymbol::B],
        ValueParity::OddOnly => &[TaggedSymbol::B],
    };
    for &s in first_calls {
        b.add_call(start, s, calls[0]);
    }
    for i in 0..cfg.min_half {
        let next = calls[(i + 1).min(cfg.min_half - 1)];
        for s in [TaggedSymbol::A, TaggedSymbol::B] {
            b.add_call(calls[i], s, next);
        }
    }
    let full = calls[cfg.min_half - 1];
    if cfg.length != LengthParity::Even {
        for s in [TaggedSymbol::C, TaggedSymbol::D] {
            b.add_internal(full, s, mid);
        }
    }
    let mut from = vec![ret];
    if cfg.length != LengthParity::Odd {
        from.push(full);
    }
    if cfg.length != LengthParity::Even {
        from.push(mid);
    }
    let last: &[TaggedSymbol] = if cfg.canonical {
        &[TaggedSymbol::F]
    } else {
        &[TaggedSymbol::E, TaggedSymbol::F]
    };
    for &q in &from {
        for &p in &calls {
            for s in [TaggedSymbol::E, TaggedSymbol::F] {
                b.add_return(q, p, s, ret);
            }
        }
        for &s in last {
            b.add_return(q, start, s, done);
        }
    }
    b.build()
}

/// The textbook machine for `{0^n 1 2^n : n >= 1}` with call `0`, internal `1`
/// and return `2`.
pub fn fig1_machine() -> Nwa {
    let mut b = NwaBuilder::new(Alphabet::new(&[0], &[1], &[2]));
    let q0 = b.add_state("q0", false);
    let q1 = b.add_state("q1", false);
    let q2 = b.add_state("q2", false);
    let q3 = b.add_state("q3", true);
    b.set_initial(q0);
    b.add_call(q0, TaggedSymbol::call(0), q1);
    b.add_call(q1, TaggedSymbol::call(0), q1);
    b.add_internal(q1, TaggedSymbol::internal(1), q2);
    b.add_return(q2, q1, TaggedSymbol::ret(2), q2);
    b.add_return(q2, q0, TaggedSymbol::ret(2), q3);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode_nwa_input;
    use crate::nwa::NestedWord;

    fn accepts(m: &Nwa, w: &str) -> bool {
        m.accepts(&NestedWord::parse_letters(w).unwrap()).unwrap()
    }

    #[test]
    fn shape_instances() {
        let s = syntax_checker(4, ValueParity::Any);
        assert!(accepts(&s, "aaaaffff"));
        assert!(!accepts(&s, "aaaee"));
        assert!(!accepts(&s, "aaaffff"));
        assert!(accepts(&s, "aaaacffff"));
        assert!(!accepts(&s, "aaaaccffff"));
        assert!(!accepts(&s, "aaafff"));
    }

    #[test]
    fn odd_only_matches_integer_parity() {
        let s = syntax_checker(4, ValueParity::OddOnly);
        for n in 1..1u64 << 12 {
            let w = encode_nwa_input(n).unwrap();
            let bits = 64 - n.leading_zeros() as usize;
            assert_eq!(s.accepts(&w).unwrap(), n % 2 == 1 && bits >= 8, "n = {n}");
        }
    }

    #[test]
    fn length_parity() {
        let s = syntax_checker_with(SyntaxConfig::new(3).lengths(LengthParity::Even));
        for n in 1..1u64 << 10 {
            let bits = 64 - n.leading_zeros() as usize;
            let w = encode_nwa_input(n).unwrap();
            assert_eq!(s.accepts(&w).unwrap(), bits >= 6 && bits.is_multiple_of(2));
        }
    }

    #[test]
    fn fig1_language() {
        let m = fig1_machine();
        let w = |s: &str| {
            let syms = s
                .chars()
                .map(|c| match c {
                    '0' => TaggedSymbol::call(0),
                    '1' => TaggedSymbol::internal(1),
                    _ => TaggedSymbol::ret(2),
                })
                .collect::<NestedWord>();
            m.accepts(&syms).unwrap()
        };
        assert!(w("00122"));
        assert!(w("012"));
        assert!(!w("1"));
        assert!(!w("0012"));
    }
}
