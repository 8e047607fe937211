use std::collections::BTreeMap;

use super::{explore, Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::numeration::DigitWord;
use crate::semiring::{NatInf, Semiring};

/// One weighted transition; `symbol == None` is an ε-move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfaTransition {
    pub from: u32,
    pub symbol: Option<u32>,
    pub mult: NatInf,
    pub to: u32,
}

/// Nondeterministic automaton with transition multiplicities.
///
/// Multiplicities and final weights live in ℕ∞ so that ε-saturated
/// counting automata stay representable. At the language level only their
/// being nonzero matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    num_states: usize,
    transitions: Vec<NfaTransition>,
    initials: Vec<u32>,
    finals: Vec<(u32, NatInf)>,
}

impl Nfa {
    /// Validating constructor. Zero multiplicities are rejected.
    pub fn new(
        base: u32,
        arity: usize,
        num_states: usize,
        transitions: Vec<NfaTransition>,
        initials: Vec<u32>,
        finals: Vec<(u32, NatInf)>,
    ) -> Result<Self> {
        let alphabet = Alphabet::new(base, arity)?;
        let in_range = |q: u32| {
            if (q as usize) < num_states {
                Ok(())
            } else {
                Err(Error::Invalid(format!("state {q} out of range")))
            }
        };
        for t in &transitions {
            in_range(t.from)?;
            in_range(t.to)?;
            if let Some(a) = t.symbol {
                if a as usize >= alphabet.size() {
                    return Err(Error::Invalid(format!("symbol index {a} out of range")));
                }
            }
            if t.mult.is_zero() {
                return Err(Error::Invalid("transition multiplicity must be positive".into()));
            }
        }
        for &q in &initials {
            in_range(q)?;
        }
        for (q, w) in &finals {
            in_range(*q)?;
            if w.is_zero() {
                return Err(Error::Invalid("final weight must be positive".into()));
            }
        }
        Ok(Self::from_parts(alphabet, num_states, transitions, initials, finals))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        mut transitions: Vec<NfaTransition>,
        mut initials: Vec<u32>,
        finals: Vec<(u32, NatInf)>,
    ) -> Self {
        transitions.retain(|t| !t.mult.is_zero());
        initials.sort_unstable();
        initials.dedup();
        // merge duplicate final entries by adding their weights
        let mut merged: BTreeMap<u32, NatInf> = BTreeMap::new();
        for (q, w) in finals {
            let e = merged.entry(q).or_insert_with(NatInf::zero);
            *e = e.add(&w);
        }
        let finals = merged.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Nfa { alphabet, num_states, transitions, initials, finals }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn base(&self) -> u32 {
        self.alphabet.base()
    }

    pub fn arity(&self) -> usize {
        self.alphabet.arity()
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn transitions(&self) -> &[NfaTransition] {
        &self.transitions
    }

    pub fn initials(&self) -> &[u32] {
        &self.initials
    }

    /// Final states with their weights, sorted by state.
    pub fn finals(&self) -> &[(u32, NatInf)] {
        &self.finals
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.symbol.is_none())
    }

    fn final_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.num_states];
        for (q, _) in &self.finals {
            mask[*q as usize] = true;
        }
        mask
    }

    /// Successor lists indexed by `state * |Σ| + symbol`.
    fn successor_table(&self) -> Vec<Vec<u32>> {
        let m = self.alphabet.size();
        let mut table = vec![Vec::new(); self.num_states * m];
        for t in &self.transitions {
            if let Some(a) = t.symbol {
                table[t.from as usize * m + a as usize].push(t.to);
            }
        }
        for row in &mut table {
            row.sort_unstable();
            row.dedup();
        }
        table
    }

    fn epsilon_closures(&self) -> Vec<Vec<u32>> {
        let mut eps: Vec<Vec<u32>> = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            if t.symbol.is_none() {
                eps[t.from as usize].push(t.to);
            }
        }
        (0..self.num_states)
            .map(|q| {
                let mut seen = vec![false; self.num_states];
                let mut stack = vec![q as u32];
                seen[q] = true;
                let mut out = Vec::new();
                while let Some(p) = stack.pop() {
                    out.push(p);
                    for &r in &eps[p as usize] {
                        if !seen[r as usize] {
                            seen[r as usize] = true;
                            stack.push(r);
                        }
                    }
                }
                out.sort_unstable();
                out
            })
            .collect()
    }

    /// Subset construction. Multiplicities are forgotten.
    pub fn determinize(&self) -> Result<Dfa> {
        self.determinize_bounded(usize::MAX)
    }

    pub(crate) fn determinize_bounded(&self, limit: usize) -> Result<Dfa> {
        if self.has_epsilon() {
            return Err(Error::HasEpsilon);
        }
        let m = self.alphabet.size();
        let table = self.successor_table();
        let finals = self.final_mask();
        let mut scratch: Vec<u32> = Vec::new();
        explore(
            self.alphabet,
            self.initials.clone(),
            limit,
            |set: &Vec<u32>, a| {
                scratch.clear();
                for &q in set {
                    scratch.extend_from_slice(&table[q as usize * m + a as usize]);
                }
                scratch.sort_unstable();
                scratch.dedup();
                scratch.clone()
            },
            |set| set.iter().any(|&q| finals[q as usize]),
        )
    }

    /// Language-preserving removal of ε-moves. Multiplicities are reset
    /// to 1; counting callers need ε-saturation instead.
    pub fn eps_eliminate(&self) -> Nfa {
        if !self.has_epsilon() {
            return self.clone();
        }
        let closures = self.epsilon_closures();
        let m = self.alphabet.size();
        let table = self.successor_table();
        let finals = self.final_mask();
        let mut transitions = Vec::new();
        let mut new_finals = Vec::new();
        for p in 0..self.num_states {
            for a in 0..m {
                let mut targets: Vec<u32> = closures[p]
                    .iter()
                    .flat_map(|&q| table[q as usize * m + a].iter().copied())
                    .collect();
                targets.sort_unstable();
                targets.dedup();
                transitions.extend(targets.into_iter().map(|to| NfaTransition {
                    from: p as u32,
                    symbol: Some(a as u32),
                    mult: NatInf::one(),
                    to,
                }));
            }
            if closures[p].iter().any(|&q| finals[q as usize]) {
                new_finals.push((p as u32, NatInf::one()));
            }
        }
        Nfa::from_parts(self.alphabet, self.num_states, transitions, self.initials.clone(), new_finals)
    }

    /// Language membership (ε-moves allowed).
    pub fn accepts(&self, word: &DigitWord) -> Result<bool> {
        self.alphabet.check_word(word)?;
        let closures = self.epsilon_closures();
        let m = self.alphabet.size();
        let table = self.successor_table();
        let close = |set: &[u32]| {
            let mut out: Vec<u32> =
                set.iter().flat_map(|&q| closures[q as usize].iter().copied()).collect();
            out.sort_unstable();
            out.dedup();
            out
        };
        let mut cur = close(&self.initials);
        for a in self.alphabet.word_symbols(word) {
            let next: Vec<u32> =
                cur.iter().flat_map(|&q| table[q as usize * m + a as usize].iter().copied()).collect();
            cur = close(&next);
        }
        let finals = self.final_mask();
        Ok(cur.iter().any(|&q| finals[q as usize]))
    }

    /// Reversed automaton: arrows flipped, initial and final roles swapped.
    /// Final weights become initial multiplicities through a fresh start
    /// state when they are not all one.
    pub fn reverse(&self) -> Nfa {
        let mut transitions: Vec<NfaTransition> = self
            .transitions
            .iter()
            .map(|t| NfaTransition { from: t.to, symbol: t.symbol, mult: t.mult.clone(), to: t.from })
            .collect();
        let finals = self.initials.iter().map(|&q| (q, NatInf::one())).collect();
        if self.finals.iter().all(|(_, w)| *w == NatInf::one()) {
            let initials = self.finals.iter().map(|(q, _)| *q).collect();
            return Nfa::from_parts(self.alphabet, self.num_states, transitions, initials, finals);
        }
        let start = self.num_states as u32;
        for (q, w) in &self.finals {
            transitions.push(NfaTransition { from: start, symbol: None, mult: w.clone(), to: *q });
        }
        Nfa::from_parts(self.alphabet, self.num_states + 1, transitions, vec![start], finals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(from: u32, symbol: Option<u32>, mult: u64, to: u32) -> NfaTransition {
        NfaTransition { from, symbol, mult: NatInf::from(mult), to }
    }

    fn w(s: &str) -> DigitWord {
        DigitWord::from_digits(2, &s.bytes().map(|b| (b - b'0') as u32).collect::<Vec<_>>()).unwrap()
    }

    fn one() -> NatInf {
        NatInf::one()
    }

    #[test]
    fn determinize_examples() {
        let all = Nfa::new(2, 1, 1, vec![tr(0, Some(0), 1, 0), tr(0, Some(1), 1, 0)], vec![0], vec![(0, one())])
            .unwrap();
        let d = all.determinize().unwrap().minimize();
        assert_eq!(d, Dfa::universal(2, 1).unwrap());

        // guess the position of a 1
        let guess = Nfa::new(
            2,
            1,
            2,
            vec![tr(0, Some(0), 1, 0), tr(0, Some(1), 1, 0), tr(0, Some(1), 1, 1), tr(1, Some(0), 1, 1), tr(1, Some(1), 1, 1)],
            vec![0],
            vec![(1, one())],
        )
        .unwrap();
        let d = guess.determinize().unwrap();
        assert_eq!(d.num_states(), 2);
        let contains_one = Dfa::new(2, 1, 2, vec![0, 1, 1, 1], 0, &[1]).unwrap();
        assert!(d.equivalent(&contains_one).unwrap());

        let twice = Nfa::new(
            2,
            1,
            4,
            vec![tr(0, Some(1), 1, 1), tr(0, Some(1), 1, 2), tr(1, Some(1), 1, 3), tr(2, Some(1), 1, 3)],
            vec![0],
            vec![(3, one())],
        )
        .unwrap();
        let d = twice.determinize().unwrap();
        assert_eq!(d, d.clone());
        assert!(d.accepts(&w("11")).unwrap());
        assert!(d.equivalent(&Dfa::singleton(&w("11")).unwrap()).unwrap());

        let eps = Nfa::new(2, 1, 2, vec![tr(0, None, 1, 1)], vec![0], vec![(1, one())]).unwrap();
        assert_eq!(eps.determinize(), Err(Error::HasEpsilon));
    }

    #[test]
    fn eps_eliminate_examples() {
        let plain = Nfa::new(2, 1, 1, vec![tr(0, Some(1), 1, 0)], vec![0], vec![(0, one())]).unwrap();
        assert_eq!(plain.eps_eliminate(), plain);

        let joined = Nfa::new(2, 1, 2, vec![tr(0, None, 1, 1)], vec![0], vec![(1, one())]).unwrap();
        let e = joined.eps_eliminate();
        assert!(!e.has_epsilon());
        assert!(e.accepts(&w("")).unwrap());
        assert!(!e.accepts(&w("0")).unwrap());

        // ε-cycle between 0 and 1, a 1-labelled edge from 1 to the final state 2
        let cyc = Nfa::new(
            2,
            1,
            3,
            vec![tr(0, None, 1, 1), tr(1, None, 1, 0), tr(1, Some(1), 1, 2)],
            vec![0],
            vec![(2, one())],
        )
        .unwrap();
        let e = cyc.eps_eliminate();
        for s in ["", "0", "1", "11", "10"] {
            assert_eq!(e.accepts(&w(s)).unwrap(), cyc.accepts(&w(s)).unwrap(), "{s}");
        }
        assert!(e.accepts(&w("1")).unwrap());
    }

    #[test]
    fn reverse_swaps_roles() {
        let a = Dfa::singleton(&w("011")).unwrap().to_nfa();
        let r = a.reverse();
        assert!(r.accepts(&w("110")).unwrap());
        assert!(!r.accepts(&w("011")).unwrap());
    }

    #[test]
    fn rejects_zero_multiplicity() {
        assert!(Nfa::new(2, 1, 1, vec![tr(0, Some(0), 0, 0)], vec![0], vec![]).is_err());
        assert!(Nfa::new(2, 1, 1, vec![tr(0, Some(2), 1, 0)], vec![0], vec![]).is_err());
    }
}
