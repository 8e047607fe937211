//! Regular expressions over digits, read most significant digit first.

use crate::automata::{Alphabet, Dfa, Nfa, NfaTransition};
use crate::error::{Error, Result};
use crate::semiring::{NatInf, Semiring};

/// Fragment of a Thompson automaton: entry and exit state.
#[derive(Clone, Copy)]
struct Frag {
    start: u32,
    end: u32,
}

struct Builder<'a> {
    src: &'a [u8],
    pos: usize,
    base: u32,
    states: u32,
    transitions: Vec<NfaTransition>,
}

impl Builder<'_> {
    fn state(&mut self) -> u32 {
        self.states += 1;
        self.states - 1
    }

    fn edge(&mut self, from: u32, symbol: Option<u32>, to: u32) {
        self.transitions.push(NfaTransition { from, symbol, mult: NatInf::one(), to });
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn alternation(&mut self) -> Result<Frag> {
        let mut f = self.concatenation()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let g = self.concatenation()?;
            let (s, e) = (self.state(), self.state());
            self.edge(s, None, f.start);
            self.edge(s, None, g.start);
            self.edge(f.end, None, e);
            self.edge(g.end, None, e);
            f = Frag { start: s, end: e };
        }
        Ok(f)
    }

    fn concatenation(&mut self) -> Result<Frag> {
        let s = self.state();
        let mut f = Frag { start: s, end: s };
        while let Some(c) = self.peek() {
            if c == b'|' || c == b')' {
                break;
            }
            let g = self.repetition()?;
            self.edge(f.end, None, g.start);
            f.end = g.end;
        }
        Ok(f)
    }

    fn repetition(&mut self) -> Result<Frag> {
        let mut f = self.atom()?;
        while let Some(op @ (b'*' | b'+' | b'?')) = self.peek() {
            self.pos += 1;
            let (s, e) = (self.state(), self.state());
            self.edge(s, None, f.start);
            self.edge(f.end, None, e);
            if op != b'+' {
                self.edge(s, None, e);
            }
            if op != b'?' {
                self.edge(f.end, None, f.start);
            }
            f = Frag { start: s, end: e };
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Frag> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.alternation()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() && ((c - b'0') as u32) < self.base => {
                self.pos += 1;
                let (s, e) = (self.state(), self.state());
                self.edge(s, Some((c - b'0') as u32), e);
                Ok(Frag { start: s, end: e })
            }
            Some(_) => Err(self.error("expected a digit or `(`")),
            None => Err(self.error("unexpected end of pattern")),
        }
    }
}

/// Pad-closed lsd-first automaton for the values whose representations
/// (most significant digit first) match `pattern`.
///
/// Supported syntax: digits below the base, concatenation, `|`, `*`, `+`,
/// `?` and parentheses. Whitespace is ignored.
pub fn regex_values(pattern: &str, base: u32) -> Result<Dfa> {
    let alphabet = Alphabet::new(base, 1)?;
    let src: Vec<u8> = pattern.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut b = Builder { src: &src, pos: 0, base, states: 0, transitions: Vec::new() };
    let f = b.alternation()?;
    if b.pos != src.len() {
        return Err(b.error("unbalanced `)`"));
    }
    let msd = Nfa::from_parts(alphabet, b.states as usize, b.transitions, vec![f.start], vec![(f.end, NatInf::one())]);
    Ok(msd.reverse().eps_eliminate().determinize()?.pad_closure().minimize())
}
