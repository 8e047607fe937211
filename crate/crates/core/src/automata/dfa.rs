use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{explore, Alphabet, Nfa, NfaTransition, ZERO_SYMBOL};
use crate::error::{Error, Result};
use crate::numeration::{encode_tuple, DigitWord};
use crate::semiring::{NatInf, Semiring};

/// Complete deterministic automaton over a tuple-digit alphabet.
///
/// The transition table is dense: `delta[q * |Σ| + a]`. A dead state, when
/// needed, is an ordinary non-accepting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<u32>,
    initial: u32,
    finals: Vec<bool>,
}

/// Boolean connective for [`Dfa::product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    AndNot,
    Xor,
}

impl BoolOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::AndNot => a && !b,
            BoolOp::Xor => a != b,
        }
    }
}

impl Dfa {
    /// Validating constructor. `delta` is row-major, one row per state.
    pub fn new(
        base: u32,
        arity: usize,
        num_states: usize,
        delta: Vec<u32>,
        initial: u32,
        finals: &[u32],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(base, arity)?;
        if num_states == 0 {
            return Err(Error::Invalid("a DFA needs at least one state".into()));
        }
        if delta.len() != num_states * alphabet.size() {
            return Err(Error::Invalid(format!(
                "expected {} transitions, got {}",
                num_states * alphabet.size(),
                delta.len()
            )));
        }
        if let Some(&bad) = delta.iter().find(|&&q| q as usize >= num_states) {
            return Err(Error::Invalid(format!("transition target {bad} out of range")));
        }
        if initial as usize >= num_states {
            return Err(Error::Invalid(format!("initial state {initial} out of range")));
        }
        let mut fin = vec![false; num_states];
        for &f in finals {
            *fin.get_mut(f as usize)
                .ok_or_else(|| Error::Invalid(format!("final state {f} out of range")))? = true;
        }
        Ok(Dfa { alphabet, delta, initial, finals: fin })
    }

    pub(crate) fn from_parts(alphabet: Alphabet, delta: Vec<u32>, initial: u32, finals: Vec<bool>) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.size());
        Dfa { alphabet, delta, initial, finals }
    }

    /// One-state automaton accepting everything or nothing.
    pub fn constant(alphabet: Alphabet, accept: bool) -> Self {
        Dfa { alphabet, delta: vec![0; alphabet.size()], initial: 0, finals: vec![accept] }
    }

    /// Accepts every word.
    pub fn universal(base: u32, arity: usize) -> Result<Self> {
        Ok(Self::constant(Alphabet::new(base, arity)?, true))
    }

    /// Accepts no word.
    pub fn empty(base: u32, arity: usize) -> Result<Self> {
        Ok(Self::constant(Alphabet::new(base, arity)?, false))
    }

    /// Accepts exactly the given word (not padding-closed).
    pub fn singleton(word: &DigitWord) -> Result<Self> {
        let alphabet = Alphabet::new(word.base(), word.arity())?;
        let syms: Vec<u32> = alphabet.word_symbols(word).collect();
        let len = syms.len();
        // states 0..=len follow the word, len+1 is dead
        explore(
            alphabet,
            0usize,
            usize::MAX,
            |&q, a| if q < len && syms[q] == a { q + 1 } else { len + 1 },
            |&q| q == len,
        )
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
        self.finals.len()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = u32> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q as u32)
    }

    #[inline]
    pub fn step(&self, q: u32, symbol: u32) -> u32 {
        self.delta[q as usize * self.alphabet.size() + symbol as usize]
    }

    /// Successor row of a state, indexed by symbol.
    pub fn row(&self, q: u32) -> &[u32] {
        let m = self.alphabet.size();
        &self.delta[q as usize * m..(q as usize + 1) * m]
    }

    pub fn run(&self, symbols: impl IntoIterator<Item = u32>) -> u32 {
        symbols.into_iter().fold(self.initial, |q, a| self.step(q, a))
    }

    pub fn accepts(&self, word: &DigitWord) -> Result<bool> {
        self.alphabet.check_word(word)?;
        Ok(self.is_final(self.run(self.alphabet.word_symbols(word))))
    }

    /// Membership of the canonical encoding of a tuple of values.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        if self.arity() == 0 {
            return Ok(self.is_final(self.initial));
        }
        self.accepts(&encode_tuple(values, self.base())?)
    }

    pub fn complement(&self) -> Dfa {
        Dfa { finals: self.finals.iter().map(|f| !f).collect(), ..self.clone() }
    }

    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.product_bounded(other, op, usize::MAX)
    }

    pub(crate) fn product_bounded(&self, other: &Dfa, op: BoolOp, limit: usize) -> Result<Dfa> {
        self.check_compatible(other)?;
        explore(
            self.alphabet,
            (self.initial, other.initial),
            limit,
            |&(p, q), a| (self.step(p, a), other.step(q, a)),
            |&(p, q)| op.apply(self.is_final(p), other.is_final(q)),
        )
    }

    pub(crate) fn check_compatible(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.base(),
                self.arity(),
                other.base(),
                other.arity(),
            ));
        }
        Ok(())
    }

    /// Drops track `track`, guessing its digits nondeterministically.
    pub fn project(&self, track: usize) -> Result<Nfa> {
        let arity = self.arity();
        if arity == 1 {
            return Err(Error::ProjectArityOne);
        }
        if track >= arity {
            return Err(Error::TrackOutOfRange { track, arity });
        }
        let narrow = Alphabet::new(self.base(), arity - 1)?;
        let mut transitions = Vec::new();
        for q in 0..self.num_states() as u32 {
            for a in 0..narrow.size() as u32 {
                for d in 0..self.base() {
                    transitions.push(NfaTransition {
                        from: q,
                        symbol: Some(a),
                        mult: NatInf::one(),
                        to: self.step(q, narrow.insert_digit(a, track, d)),
                    });
                }
            }
        }
        Ok(Nfa::from_parts(
            narrow,
            self.num_states(),
            transitions,
            [self.initial].into(),
            self.finals().map(|q| (q, NatInf::one())).collect(),
        ))
    }

    /// Subset construction of the projection, followed by closure under
    /// trailing zeros and minimization. Works down to arity 0.
    pub(crate) fn exists_track(&self, track: usize, limit: usize) -> Result<Dfa> {
        let arity = self.arity();
        if track >= arity {
            return Err(Error::TrackOutOfRange { track, arity });
        }
        let narrow = Alphabet::new(self.base(), arity - 1)?;
        let base = self.base();
        // precomputed wide symbols for every (narrow symbol, digit)
        let wide: Vec<Vec<u32>> = (0..narrow.size() as u32)
            .map(|a| (0..base).map(|d| narrow.insert_digit(a, track, d)).collect())
            .collect();
        let mut scratch = Vec::new();
        let det = explore(
            narrow,
            vec![self.initial],
            limit,
            |set: &Vec<u32>, a| {
                scratch.clear();
                for &q in set {
                    for &s in &wide[a as usize] {
                        scratch.push(self.step(q, s));
                    }
                }
                scratch.sort_unstable();
                scratch.dedup();
                scratch.clone()
            },
            |set| set.iter().any(|&q| self.is_final(q)),
        )?;
        Ok(det.zero_closure().minimize())
    }

    /// Cylindrification: a new, ignored track is inserted at `position`.
    pub fn inflate(&self, position: usize) -> Result<Dfa> {
        let arity = self.arity();
        if position > arity {
            return Err(Error::TrackOutOfRange { track: position, arity: arity + 1 });
        }
        let wide = Alphabet::new(self.base(), arity + 1)?;
        let mut delta = Vec::with_capacity(self.num_states() * wide.size());
        for q in 0..self.num_states() as u32 {
            for a in 0..wide.size() as u32 {
                delta.push(self.step(q, wide.remove_digit(a, position)));
            }
        }
        Ok(Dfa { alphabet: wide, delta, initial: self.initial, finals: self.finals.clone() })
    }

    /// Marks accepting every state from which a run of zero symbols reaches
    /// a final state, so `w` is accepted iff some `w 0^j` was.
    pub(crate) fn zero_closure(&self) -> Dfa {
        let n = self.num_states();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n as u32 {
            preds[self.step(q, ZERO_SYMBOL) as usize].push(q);
        }
        let mut fin = self.finals.clone();
        let mut stack: Vec<u32> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !fin[p as usize] {
                    fin[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        Dfa { finals: fin, ..self.clone() }
    }

    /// Closes the language under adding and removing trailing zero symbols,
    /// so acceptance depends only on the encoded values.
    pub fn pad_closure(&self) -> Dfa {
        let closed = self.zero_closure();
        // accept x 0^m for every accepted x; the flag records that the
        // input so far is an accepted word followed by zeros only
        explore(
            self.alphabet,
            (closed.initial, false),
            usize::MAX,
            |&(q, flag), a| (closed.step(q, a), (flag || closed.is_final(q)) && a == ZERO_SYMBOL),
            |&(q, flag)| flag || closed.is_final(q),
        )
        .expect("no limit")
        .minimize()
    }

    /// True when the language is closed under adding and removing trailing
    /// zero symbols.
    pub fn is_pad_closed(&self) -> bool {
        let m = self.minimize();
        m.pad_closure() == m
    }

    /// Restriction to words that do not end with the padding symbol.
    pub fn canonical_only(&self) -> Dfa {
        explore(
            self.alphabet,
            (self.initial, false),
            usize::MAX,
            |&(q, _), a| (self.step(q, a), a == ZERO_SYMBOL),
            |&(q, last_zero)| self.is_final(q) && !last_zero,
        )
        .expect("no limit")
        .minimize()
    }

    /// States reachable from the initial state, in BFS order (symbols ascending).
    fn bfs_order(&self) -> Vec<u32> {
        let n = self.num_states();
        let mut seen = vec![false; n];
        let mut order = vec![self.initial];
        seen[self.initial as usize] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for &r in self.row(q) {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Renumbers states in BFS discovery order, dropping unreachable ones.
    fn canonical_numbering(&self) -> Dfa {
        let order = self.bfs_order();
        let mut id = vec![u32::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            id[q as usize] = i as u32;
        }
        let mut delta = Vec::with_capacity(order.len() * self.alphabet.size());
        for &q in &order {
            delta.extend(self.row(q).iter().map(|&r| id[r as usize]));
        }
        let finals = order.iter().map(|&q| self.is_final(q)).collect();
        Dfa { alphabet: self.alphabet, delta, initial: 0, finals }
    }

    /// Minimal complete automaton in canonical numbering: BFS discovery
    /// order from the initial state, symbols in lexicographic order.
    pub fn minimize(&self) -> Dfa {
        let dfa = self.canonical_numbering();
        let n = dfa.num_states();
        let m = dfa.alphabet.size();
        let mut class: Vec<u32> = dfa.finals.iter().map(|&f| f as u32).collect();
        let mut count = if dfa.finals.iter().all(|&f| f) || dfa.finals.iter().all(|&f| !f) {
            class.iter_mut().for_each(|c| *c = 0);
            1
        } else {
            2
        };
        // Moore refinement: split by (own class, successor classes)
        let mut sig = vec![0u32; n * (m + 1)];
        loop {
            for q in 0..n {
                let s = &mut sig[q * (m + 1)..(q + 1) * (m + 1)];
                s[0] = class[q];
                for (slot, &r) in s[1..].iter_mut().zip(dfa.row(q as u32)) {
                    *slot = class[r as usize];
                }
            }
            let mut ids: FxHashMap<&[u32], u32> = FxHashMap::default();
            let mut next = vec![0u32; n];
            for (q, c) in next.iter_mut().enumerate() {
                let key = &sig[q * (m + 1)..(q + 1) * (m + 1)];
                let fresh = ids.len() as u32;
                *c = *ids.entry(key).or_insert(fresh);
            }
            let new_count = ids.len();
            drop(ids);
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut rep = vec![u32::MAX; count];
        for q in 0..n {
            if rep[class[q] as usize] == u32::MAX {
                rep[class[q] as usize] = q as u32;
            }
        }
        let mut delta = Vec::with_capacity(count * m);
        for &r in &rep {
            delta.extend(dfa.row(r).iter().map(|&s| class[s as usize]));
        }
        let finals = rep.iter().map(|&r| dfa.is_final(r)).collect();
        Dfa { alphabet: dfa.alphabet, delta, initial: class[0], finals }.canonical_numbering()
    }

    /// Shortest accepted word, lexicographically least among the shortest.
    pub fn shortest_accepted(&self) -> Option<DigitWord> {
        let n = self.num_states();
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial as usize] = true;
        while let Some(q) = queue.pop_front() {
            if self.is_final(q) {
                let mut syms = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur as usize] {
                    syms.push(a);
                    cur = p;
                }
                syms.reverse();
                return Some(self.alphabet.word_from_symbols(&syms));
            }
            for (a, &r) in self.row(q).iter().enumerate() {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    parent[r as usize] = Some((q, a as u32));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// States that are reachable and can reach a final state.
    pub(crate) fn useful_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut reach = vec![false; n];
        for q in self.bfs_order() {
            reach[q as usize] = true;
        }
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n as u32 {
            for &r in self.row(q) {
                preds[r as usize].push(q);
            }
        }
        let mut co = vec![false; n];
        let mut stack: Vec<u32> = self.finals().collect();
        for &q in &stack {
            co[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !co[p as usize] {
                    co[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        reach.iter().zip(&co).map(|(&a, &b)| a && b).collect()
    }

    /// Finite language iff the trimmed transition graph is acyclic.
    pub fn is_finite(&self) -> bool {
        let useful = self.useful_states();
        let edges: Vec<Vec<u32>> = (0..self.num_states() as u32)
            .map(|q| {
                if useful[q as usize] {
                    self.row(q).iter().copied().filter(|&r| useful[r as usize]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        !crate::graph::has_cycle(&edges, &useful)
    }

    /// A shortest word in the symmetric difference, if any.
    pub fn counterexample(&self, other: &Dfa) -> Result<Option<DigitWord>> {
        Ok(self.product(other, BoolOp::Xor)?.shortest_accepted())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.counterexample(other)?.is_none())
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut transitions = Vec::new();
        for q in 0..self.num_states() as u32 {
            for (a, &r) in self.row(q).iter().enumerate() {
                transitions.push(NfaTransition {
                    from: q,
                    symbol: Some(a as u32),
                    mult: NatInf::one(),
                    to: r,
                });
            }
        }
        Nfa::from_parts(
            self.alphabet,
            self.num_states(),
            transitions,
            [self.initial].into(),
            self.finals().map(|q| (q, NatInf::one())).collect(),
        )
    }

    /// Accepted values among all tuples with coordinates below `bound`
    /// (test and oracle helper).
    pub fn accepted_values_below(&self, bound: u64) -> Result<Vec<Vec<u64>>> {
        let r = self.arity();
        let mut out = Vec::new();
        let mut cur = vec![0u64; r];
        loop {
            if self.accepts_values(&cur)? {
                out.push(cur.clone());
            }
            let mut t = r;
            loop {
                if t == 0 {
                    return Ok(out);
                }
                t -= 1;
                cur[t] += 1;
                if cur[t] < bound {
                    break;
                }
                cur[t] = 0;
            }
        }
    }
}
