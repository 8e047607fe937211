//! Text format for automata.
//!
//! ```text
//! dfa base=2 arity=1 states=2 initial=0 finals=1
//! 0 0 1 0
//! 0 1 1 1
//! 1 0 1 1
//! 1 1 1 1
//! ```
//!
//! Transitions are `<from> <d1,...,dr|eps> <mult> <to>`. For NFAs `initial`
//! is a list, and a final state may carry a weight as `q:w`.

use std::fmt::Write as _;

use super::{Alphabet, Dfa, Nfa, NfaTransition};
use crate::error::Result;
use crate::semiring::{NatInf, Semiring};
use crate::text::{content_lines, join, parse_err, parse_list, parse_num, Header};

/// Either kind of automaton, as read from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl Automaton {
    pub fn parse(text: &str) -> Result<Self> {
        let (line, first) = content_lines(text).next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (kind, _) = Header::parse(line, first, &["dfa", "nfa"])?;
        if kind == "dfa" {
            Dfa::from_text(text).map(Automaton::Dfa)
        } else {
            Nfa::from_text(text).map(Automaton::Nfa)
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Automaton::Dfa(d) => d.to_text(),
            Automaton::Nfa(n) => n.to_text(),
        }
    }
}

fn symbol_text(alphabet: Alphabet, symbol: Option<u32>) -> String {
    match symbol {
        None => "eps".into(),
        Some(_) if alphabet.arity() == 0 => "-".into(),
        Some(a) => join(alphabet.digits(a)),
    }
}

fn parse_symbol(line: usize, alphabet: Alphabet, s: &str) -> Result<Option<u32>> {
    if s == "eps" {
        return Ok(None);
    }
    if s == "-" && alphabet.arity() == 0 {
        return Ok(Some(0));
    }
    let digits: Vec<u32> = parse_list(line, s, "digit")?;
    if digits.len() != alphabet.arity() {
        return Err(parse_err(line, format!("symbol `{s}` does not have {} digits", alphabet.arity())));
    }
    if let Some(d) = digits.iter().find(|&&d| d >= alphabet.base()) {
        return Err(parse_err(line, format!("digit {d} out of range for base {}", alphabet.base())));
    }
    Ok(Some(alphabet.index(&digits)))
}

struct RawTransition {
    from: u32,
    symbol: Option<u32>,
    mult: NatInf,
    to: u32,
}

fn parse_transition(line: usize, alphabet: Alphabet, states: usize, s: &str) -> Result<RawTransition> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(parse_err(line, "expected `<from> <symbol> <mult> <to>`"));
    }
    let from: u32 = parse_num(line, parts[0], "state")?;
    let to: u32 = parse_num(line, parts[3], "state")?;
    for q in [from, to] {
        if q as usize >= states {
            return Err(parse_err(line, format!("state {q} out of range")));
        }
    }
    let symbol = parse_symbol(line, alphabet, parts[1])?;
    let mult = NatInf::parse_entry(parts[2]).map_err(|e| parse_err(line, e.to_string()))?;
    if mult.is_zero() {
        return Err(parse_err(line, "multiplicity must be positive"));
    }
    Ok(RawTransition { from, symbol, mult, to })
}

impl Dfa {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dfa base={} arity={} states={} initial={} finals={}\n",
            self.base(),
            self.arity(),
            self.num_states(),
            self.initial(),
            join(self.finals())
        );
        for q in 0..self.num_states() as u32 {
            for (a, &r) in self.row(q).iter().enumerate() {
                let _ = writeln!(out, "{q} {} 1 {r}", symbol_text(self.alphabet(), Some(a as u32)));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Dfa> {
        let mut lines = content_lines(text);
        let (hl, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (_, h) = Header::parse(hl, first, &["dfa"])?;
        let alphabet = Alphabet::new(h.get("base")?, h.get("arity")?)?;
        let states: usize = h.get("states")?;
        let initial: u32 = h.get("initial")?;
        let finals: Vec<u32> = parse_list(hl, h.raw("finals")?, "state")?;
        let m = alphabet.size();
        let mut delta: Vec<Option<u32>> = vec![None; states * m];
        for (line, s) in lines {
            let t = parse_transition(line, alphabet, states, s)?;
            let a = t.symbol.ok_or_else(|| parse_err(line, "a DFA has no ε-moves"))?;
            if t.mult != NatInf::one() {
                return Err(parse_err(line, "DFA transitions have multiplicity 1"));
            }
            let slot = &mut delta[t.from as usize * m + a as usize];
            if slot.is_some() {
                return Err(parse_err(line, "duplicate transition"));
            }
            *slot = Some(t.to);
        }
        let delta = delta
            .iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or(crate::error::Error::NotTotal { state: i / m, digit: (i % m) as u32 })
            })
            .collect::<Result<Vec<u32>>>()?;
        Dfa::new(alphabet.base(), alphabet.arity(), states, delta, initial, &finals)
    }
}

impl Nfa {
    pub fn to_text(&self) -> String {
        let finals = join(self.finals().iter().map(|(q, w)| {
            if *w == NatInf::one() {
                q.to_string()
            } else {
                format!("{q}:{w}")
            }
        }));
        let mut out = format!(
            "nfa base={} arity={} states={} initial={} finals={}\n",
            self.base(),
            self.arity(),
            self.num_states(),
            join(self.initials()),
            finals
        );
        for t in self.transitions() {
            let _ = writeln!(out, "{} {} {} {}", t.from, symbol_text(self.alphabet(), t.symbol), t.mult, t.to);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Nfa> {
        let mut lines = content_lines(text);
        let (hl, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (_, h) = Header::parse(hl, first, &["nfa"])?;
        let alphabet = Alphabet::new(h.get("base")?, h.get("arity")?)?;
        let states: usize = h.get("states")?;
        let initials: Vec<u32> = parse_list(hl, h.raw("initial")?, "state")?;
        let finals_raw = h.raw("finals")?;
        let mut finals = Vec::new();
        if !finals_raw.is_empty() {
            for item in finals_raw.split(',') {
                let (q, w) = match item.split_once(':') {
                    Some((q, w)) => {
                        (q, NatInf::parse_entry(w).map_err(|e| parse_err(hl, e.to_string()))?)
                    }
                    None => (item, NatInf::one()),
                };
                finals.push((parse_num(hl, q, "state")?, w));
            }
        }
        let mut transitions = Vec::new();
        for (line, s) in lines {
            let t = parse_transition(line, alphabet, states, s)?;
            transitions.push(NfaTransition { from: t.from, symbol: t.symbol, mult: t.mult, to: t.to });
        }
        Nfa::new(alphabet.base(), alphabet.arity(), states, transitions, initials, finals)
            .map_err(|e| parse_err(hl, e.to_string()))
    }
}
