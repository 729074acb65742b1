//! Number <-> word encodings.
//!
//! Digit strings are most-significant first, as usually written. NWA inputs
//! are read least-significant bit first: the low half of the bits become
//! calls, an odd middle bit becomes an internal symbol, and the high half
//! become returns, so bit `t` and bit `L-1-t` are matched by the stack.

use crate::error::{Error, Result};
use crate::nfa::FoldedSymbol;
use crate::nwa::{NestedWord, SymbolClass, TaggedSymbol};

/// Canonical base-`k` digits of `n`, most significant first; `0` gives `[0]`.
pub fn to_base_k(mut n: u64, k: u32) -> Vec<u8> {
    assert!((2..=256).contains(&k), "base must be in 2..=256");
    if n == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % k as u64) as u8);
        n /= k as u64;
    }
    out.reverse();
    out
}

/// Number of base-`k` digits of `n` (1 for `n = 0`).
pub fn len_base_k(n: u64, k: u32) -> usize {
    to_base_k(n, k).len()
}

/// Positional value of `digits` (most significant first) in base `k`.
/// Digits may exceed `k - 1`.
pub fn from_digits(digits: &[u64], k: u64) -> u64 {
    digits.iter().fold(0, |acc, &d| acc * k + d)
}

pub fn digits_to_string(digits: &[u8]) -> String {
    digits
        .iter()
        .map(|d| char::from_digit(*d as u32, 36).unwrap_or('?'))
        .collect()
}

/// The NWA input word for `n >= 1`.
pub fn encode_nwa_input(n: u64) -> Result<NestedWord> {
    if n == 0 {
        return Err(Error::contract("0 has no NWA encoding"));
    }
    let mut bits = to_base_k(n, 2);
    bits.reverse();
    Ok(fold_lsb_first(&bits))
}

/// Arranges LSB-first digits into calls, an optional internal, and returns.
pub fn fold_lsb_first(lsb_first: &[u8]) -> NestedWord {
    let l = lsb_first.len();
    let h = l / 2;
    lsb_first
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            if i < h {
                TaggedSymbol::call(d)
            } else if l % 2 == 1 && i == h {
                TaggedSymbol::internal(d)
            } else {
                TaggedSymbol::ret(d)
            }
        })
        .collect()
}

/// Inverse of [`encode_nwa_input`]. Accepts any front-loaded word with as
/// many returns as calls and at most one internal symbol; a zero most
/// significant digit is allowed.
pub fn decode_nwa_input(word: &NestedWord) -> Result<u64> {
    decode_nwa_word(word, 2)
}

pub fn decode_nwa_word(word: &NestedWord, base: u64) -> Result<u64> {
    if !word.is_front_loaded() {
        return Err(Error::contract(format!("`{word}` is not front-loaded")));
    }
    let count = |c: SymbolClass| word.symbols().iter().filter(|s| s.class == c).count();
    if count(SymbolClass::Call) != count(SymbolClass::Return) || count(SymbolClass::Internal) > 1 {
        return Err(Error::contract(format!(
            "`{word}` is not an encoded integer"
        )));
    }
    let mut digits: Vec<u64> = word.symbols().iter().map(|s| s.digit as u64).collect();
    if digits.iter().any(|&d| d >= base) {
        return Err(Error::contract(format!(
            "`{word}` has a digit outside base {base}"
        )));
    }
    digits.reverse();
    Ok(from_digits(&digits, base))
}

/// Folded word for `n` in base `k`; needs at least three digits.
///
/// The two leading digits come first. The remaining digits are paired
/// outside-in, `[a_{2i-1-t}, a_t]`, so the high side walks down from the top
/// while the low side walks up from the least significant digit. An odd
/// length leaves the middle digit as a trailing [`FoldedSymbol::Middle`].
pub fn folded_encode(n: u64, k: u32) -> Result<Vec<FoldedSymbol>> {
    let digits = to_base_k(n, k);
    folded_encode_digits(&digits)
}

pub fn folded_encode_digits(digits: &[u8]) -> Result<Vec<FoldedSymbol>> {
    let len = digits.len();
    if len < 3 {
        return Err(Error::contract(format!(
            "folded encoding needs at least 3 digits, got {len}"
        )));
    }
    // a[p] is the digit of weight k^p.
    let a = |p: usize| digits[len - 1 - p];
    let rest = len - 2;
    let pairs = rest / 2;
    let mut out = vec![
        FoldedSymbol::First(a(len - 1)),
        FoldedSymbol::Second(a(len - 2)),
    ];
    for t in 0..pairs {
        let (h, l) = (a(len - 3 - t), a(t));
        out.push(if t == 0 {
            FoldedSymbol::FirstPair(h, l)
        } else {
            FoldedSymbol::Pair(h, l)
        });
    }
    if rest % 2 == 1 {
        out.push(FoldedSymbol::Middle(a(pairs)));
    }
    Ok(out)
}

/// Digits (most significant first) of a well-formed folded word.
pub fn folded_decode_digits(word: &[FoldedSymbol]) -> Result<Vec<u8>> {
    let bad = || Error::contract("malformed folded word");
    let (first, second) = match word {
        [FoldedSymbol::First(f), FoldedSymbol::Second(s), ..] => (*f, *s),
        _ => return Err(bad()),
    };
    let mut high = vec![first, second];
    let mut low = Vec::new();
    let mut middle = None;
    for (t, sym) in word[2..].iter().enumerate() {
        match *sym {
            FoldedSymbol::FirstPair(h, l) if t == 0 => {
                high.push(h);
                low.push(l);
            }
            FoldedSymbol::Pair(h, l) if t > 0 && middle.is_none() => {
                high.push(h);
                low.push(l);
            }
            FoldedSymbol::Middle(d) if middle.is_none() && t + 3 == word.len() => middle = Some(d),
            _ => return Err(bad()),
        }
    }
    high.extend(middle);
    high.extend(low.iter().rev());
    Ok(high)
}

pub fn folded_decode(word: &[FoldedSymbol], k: u32) -> Result<u64> {
    let digits = folded_decode_digits(word)?;
    if digits.iter().any(|&d| d as u32 >= k) {
        return Err(Error::contract(format!("digit outside base {k}")));
    }
    let wide: Vec<u64> = digits.iter().map(|&d| d as u64).collect();
    Ok(from_digits(&wide, k as u64))
}
