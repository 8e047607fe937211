//! Base-k digit words, least significant digit first.
//!
//! A number `n` is written as the word `d_0 d_1 ... d_{m-1}` with
//! `n = sum d_i k^i`. The canonical word has no trailing zero, so `0` is the
//! empty word. Tuples of numbers are written over the product alphabet, the
//! shorter components padded with trailing zeros.

use std::fmt;

use crate::error::{Error, Result};

/// A word over the alphabet of `arity`-tuples of base-`base` digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    base: u32,
    arity: usize,
    /// Row-major: symbol `i` occupies `digits[i*arity .. (i+1)*arity]`.
    digits: Vec<u32>,
}

pub(crate) fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base))
    } else {
        Ok(())
    }
}

impl DigitWord {
    /// The empty word of the given shape.
    pub fn empty(base: u32, arity: usize) -> Result<Self> {
        check_base(base)?;
        if arity == 0 {
            return Err(Error::Arity { expected: 1, found: 0 });
        }
        Ok(DigitWord { base, arity, digits: Vec::new() })
    }

    /// Builds a word from a list of symbols, each an `arity`-tuple.
    pub fn from_symbols<S: AsRef<[u32]>>(base: u32, arity: usize, symbols: &[S]) -> Result<Self> {
        let mut w = Self::empty(base, arity)?;
        for s in symbols {
            w.push(s.as_ref())?;
        }
        Ok(w)
    }

    /// Builds an arity-1 word from single digits.
    pub fn from_digits(base: u32, digits: &[u32]) -> Result<Self> {
        let mut w = Self::empty(base, 1)?;
        for &d in digits {
            w.push(&[d])?;
        }
        Ok(w)
    }

    /// Appends one symbol.
    pub fn push(&mut self, symbol: &[u32]) -> Result<()> {
        if symbol.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, found: symbol.len() });
        }
        if let Some(&digit) = symbol.iter().find(|&&d| d >= self.base) {
            return Err(Error::DigitOutOfRange { digit, base: self.base });
        }
        self.digits.extend_from_slice(symbol);
        Ok(())
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.digits.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &[u32] {
        &self.digits[i * self.arity..(i + 1) * self.arity]
    }

    pub fn symbols(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.digits.chunks(self.arity)
    }

    /// Digits of an arity-1 word.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// True when the last symbol is all zeros (a non-canonical padding).
    pub fn ends_with_zero(&self) -> bool {
        !self.is_empty() && self.symbol(self.len() - 1).iter().all(|&d| d == 0)
    }

    /// The same word with `count` all-zero symbols appended.
    pub fn padded(&self, count: usize) -> Self {
        let mut w = self.clone();
        w.digits.extend(std::iter::repeat(0).take(count * self.arity));
        w
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for s in self.symbols() {
            if self.arity == 1 {
                if self.base <= 10 {
                    write!(f, "{}", s[0])?;
                } else {
                    write!(f, "<{}>", s[0])?;
                }
            } else {
                let parts: Vec<String> = s.iter().map(|d| d.to_string()).collect();
                write!(f, "[{}]", parts.join(","))?;
            }
        }
        Ok(())
    }
}

/// Canonical lsd-first representation of `n` in base `base`.
pub fn encode_lsd(n: u64, base: u32) -> Result<DigitWord> {
    check_base(base)?;
    let mut digits = Vec::new();
    let mut m = n;
    let k = base as u64;
    while m > 0 {
        digits.push((m % k) as u32);
        m /= k;
    }
    Ok(DigitWord { base, arity: 1, digits })
}

/// Value of an arity-1 lsd-first word. Trailing zeros are harmless.
pub fn decode_lsd(w: &DigitWord) -> Result<u64> {
    if w.arity != 1 {
        return Err(Error::Arity { expected: 1, found: w.arity });
    }
    decode_digits(w.digits.iter().copied(), w.base)
}

fn decode_digits(digits: impl DoubleEndedIterator<Item = u32>, base: u32) -> Result<u64> {
    let mut n: u64 = 0;
    for d in digits.rev() {
        n = n
            .checked_mul(base as u64)
            .and_then(|n| n.checked_add(d as u64))
            .ok_or_else(|| Error::Invalid("value does not fit in 64 bits".into()))?;
    }
    Ok(n)
}

/// Joint encoding of a tuple; every track has the length of the longest
/// canonical component.
pub fn encode_tuple(values: &[u64], base: u32) -> Result<DigitWord> {
    check_base(base)?;
    if values.is_empty() {
        return Err(Error::Arity { expected: 1, found: 0 });
    }
    let tracks: Vec<DigitWord> =
        values.iter().map(|&v| encode_lsd(v, base)).collect::<Result<_>>()?;
    let len = tracks.iter().map(|t| t.len()).max().unwrap_or(0);
    let mut w = DigitWord::empty(base, values.len())?;
    for i in 0..len {
        for t in &tracks {
            w.digits.push(t.digits.get(i).copied().unwrap_or(0));
        }
    }
    Ok(w)
}

/// Decodes every track of a tuple word.
pub fn decode_tuple(w: &DigitWord) -> Result<Vec<u64>> {
    (0..w.arity)
        .map(|t| decode_digits(w.symbols().map(|s| s[t]).collect::<Vec<_>>().into_iter(), w.base))
        .collect()
}

/// The coordinate sequence of one track.
pub fn project_track(w: &DigitWord, track: usize) -> Result<DigitWord> {
    if track >= w.arity {
        return Err(Error::TrackOutOfRange { track, arity: w.arity });
    }
    Ok(DigitWord { base: w.base, arity: 1, digits: w.symbols().map(|s| s[track]).collect() })
}

/// Length of the canonical representation (0 for n = 0).
pub fn canonical_len(n: u64, base: u32) -> usize {
    let mut len = 0;
    let mut m = n;
    while m > 0 {
        m /= base as u64;
        len += 1;
    }
    len
}
