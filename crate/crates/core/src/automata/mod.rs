//! Finite automata over tuple-digit alphabets.
//!
//! Symbols of an arity-`r`, base-`k` alphabet are `r`-tuples of digits. They
//! are indexed by reading the tuple as a base-`k` numeral with track 0 most
//! significant, so index order is lexicographic tuple order and the all-zero
//! padding symbol has index 0.

mod dfa;
mod format;
mod nfa;

use std::collections::hash_map::Entry;
use std::hash::Hash;

use rustc_hash::FxHashMap;

pub use dfa::{BoolOp, Dfa};
pub use format::Automaton;
pub use nfa::{Nfa, NfaTransition};

use crate::error::{Error, Result};
use crate::numeration::{check_base, DigitWord};

/// Shape of a tuple-digit alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    base: u32,
    arity: usize,
}

/// The padding symbol, all coordinates zero.
pub const ZERO_SYMBOL: u32 = 0;

impl Alphabet {
    pub fn new(base: u32, arity: usize) -> Result<Self> {
        check_base(base)?;
        let size = (base as u64).checked_pow(arity as u32);
        match size {
            Some(s) if s <= u32::MAX as u64 / 2 => Ok(Alphabet { base, arity }),
            _ => Err(Error::Invalid(format!("alphabet {base}^{arity} too large"))),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of symbols, `base^arity`.
    pub fn size(&self) -> usize {
        (self.base as usize).pow(self.arity as u32)
    }

    pub fn index(&self, digits: &[u32]) -> u32 {
        debug_assert_eq!(digits.len(), self.arity);
        digits.iter().fold(0, |acc, &d| acc * self.base + d)
    }

    pub fn digits(&self, symbol: u32) -> Vec<u32> {
        let mut out = vec![0; self.arity];
        let mut s = symbol;
        for slot in out.iter_mut().rev() {
            *slot = s % self.base;
            s /= self.base;
        }
        out
    }

    /// Coordinate `track` of a symbol.
    pub fn digit(&self, symbol: u32, track: usize) -> u32 {
        let shift = self.arity - 1 - track;
        (symbol / self.base.pow(shift as u32)) % self.base
    }

    /// Inserts a new coordinate `digit` at position `track` (0..=arity) of a
    /// symbol of this alphabet; the result lives in the arity+1 alphabet.
    pub fn insert_digit(&self, symbol: u32, track: usize, digit: u32) -> u32 {
        let low_len = self.arity - track;
        let low_mod = self.base.pow(low_len as u32);
        let high = symbol / low_mod;
        let low = symbol % low_mod;
        (high * self.base + digit) * low_mod + low
    }

    /// Removes coordinate `track`; the result lives in the arity-1 alphabet.
    pub fn remove_digit(&self, symbol: u32, track: usize) -> u32 {
        let low_len = self.arity - 1 - track;
        let low_mod = self.base.pow(low_len as u32);
        let high = symbol / (low_mod * self.base);
        let low = symbol % low_mod;
        high * low_mod + low
    }

    pub(crate) fn check_word(&self, w: &DigitWord) -> Result<()> {
        if w.base() != self.base {
            return Err(Error::BaseMismatch(self.base, w.base()));
        }
        if w.arity() != self.arity {
            return Err(Error::Arity { expected: self.arity, found: w.arity() });
        }
        Ok(())
    }

    pub(crate) fn word_symbols<'a>(&'a self, w: &'a DigitWord) -> impl Iterator<Item = u32> + 'a {
        w.symbols().map(move |s| self.index(s))
    }

    pub(crate) fn word_from_symbols(&self, symbols: &[u32]) -> DigitWord {
        if self.arity == 0 {
            // arity-0 automata are boolean constants; report the empty word
            return DigitWord::empty(self.base, 1).expect("base checked");
        }
        let syms: Vec<Vec<u32>> = symbols.iter().map(|&s| self.digits(s)).collect();
        DigitWord::from_symbols(self.base, self.arity, &syms)
            .expect("symbols come from this alphabet")
    }
}

/// Builds the complete DFA whose states are the keys reachable from `start`
/// under `step`, numbered in discovery order.
pub(crate) fn explore<K, S, A>(
    alphabet: Alphabet,
    start: K,
    limit: usize,
    mut step: S,
    mut accept: A,
) -> Result<Dfa>
where
    K: Hash + Eq + Clone,
    S: FnMut(&K, u32) -> K,
    A: FnMut(&K) -> bool,
{
    let size = alphabet.size();
    let mut ids: FxHashMap<K, u32> = FxHashMap::default();
    let mut keys = vec![start.clone()];
    ids.insert(start, 0);
    let mut delta: Vec<u32> = Vec::new();
    let mut next = 0;
    while next < keys.len() {
        let key = keys[next].clone();
        for sym in 0..size as u32 {
            let succ = step(&key, sym);
            let id = match ids.entry(succ) {
                Entry::Occupied(e) => *e.get(),
                Entry::Vacant(e) => {
                    let id = keys.len() as u32;
                    keys.push(e.key().clone());
                    e.insert(id);
                    if keys.len() > limit {
                        return Err(Error::ResourceLimit { states: keys.len(), limit });
                    }
                    id
                }
            };
            delta.push(id);
        }
        next += 1;
    }
    let finals = keys.iter().map(&mut accept).collect();
    Ok(Dfa::from_parts(alphabet, delta, 0, finals))
}
