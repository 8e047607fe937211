//! Counting automata: from a two-track predicate to the sequence that
//! counts its witnesses, and digit-set representation counts.

use std::collections::VecDeque;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use super::{decompose_infinity, digit_alphabet, eps_saturate, linrep_from_nfa, InfDecomposition, LinRep};
use crate::automata::{Dfa, Nfa, NfaTransition};
use crate::error::{Error, Result};
use crate::logic::Env;
use crate::numeration::check_base;
use crate::semiring::{Nat, NatInf, Semiring};

/// A counting sequence with its split into infinite and finite parts.
///
/// The series is independent of trailing zeros in the input word, so it
/// can be evaluated on any representation of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Counting {
    pub series: LinRep<NatInf>,
    pub decomposition: InfDecomposition,
    /// State count of the two-track predicate the count came from, if any.
    pub predicate_states: Option<usize>,
}

impl Counting {
    fn new(a: &Nfa, predicate_states: Option<usize>) -> Result<Counting> {
        let series = linrep_from_nfa(&eps_saturate(&trim(a)))?.trim();
        let decomposition = decompose_infinity(&series)?;
        Ok(Counting { series, decomposition, predicate_states })
    }

    pub fn evaluate(&self, n: u64) -> NatInf {
        self.series.evaluate(n)
    }

    /// The series over ℕ when every value is finite.
    pub fn finite_series(&self) -> Option<LinRep<Nat>> {
        self.decomposition.is_finite().then(|| self.decomposition.finite.clone())
    }
}

/// Keeps the states that lie on some accepting path.
fn trim(a: &Nfa) -> Nfa {
    let n = a.num_states();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for t in a.transitions() {
        fwd[t.from as usize].push(t.to as usize);
        bwd[t.to as usize].push(t.from as usize);
    }
    let search = |start: Vec<usize>, edges: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        for &s in &start {
            seen[s] = true;
        }
        let mut stack = start;
        while let Some(q) = stack.pop() {
            for &r in &edges[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    };
    let reach = search(a.initials().iter().map(|&q| q as usize).collect(), &fwd);
    let coreach = search(a.finals().iter().map(|(q, _)| *q as usize).collect(), &bwd);
    let mut id = vec![u32::MAX; n];
    let mut next = 0;
    for q in 0..n {
        if reach[q] && coreach[q] {
            id[q] = next;
            next += 1;
        }
    }
    let keep = |q: u32| id[q as usize] != u32::MAX;
    let transitions = a
        .transitions()
        .iter()
        .filter(|t| keep(t.from) && keep(t.to))
        .map(|t| NfaTransition { from: id[t.from as usize], to: id[t.to as usize], ..t.clone() })
        .collect();
    let initials = a.initials().iter().filter(|&&q| keep(q)).map(|&q| id[q as usize]).collect();
    let finals = a
        .finals()
        .iter()
        .filter(|(q, _)| keep(*q))
        .map(|(q, w)| (id[*q as usize], w.clone()))
        .collect();
    Nfa::from_parts(a.alphabet(), next as usize, transitions, initials, finals)
}

/// Builds a single-track NFA by search over hashable states. `moves`
/// returns `(input, successor)` pairs, `None` input meaning ε.
fn build_nfa<K, M, F>(base: u32, start: K, mut moves: M, mut accepting: F) -> Result<Nfa>
where
    K: Hash + Eq + Clone,
    M: FnMut(&K) -> Vec<(Option<u32>, K)>,
    F: FnMut(&K) -> bool,
{
    let mut ids: FxHashMap<K, u32> = FxHashMap::default();
    let mut keys = vec![start.clone()];
    ids.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();
    while let Some(i) = queue.pop_front() {
        for (input, succ) in moves(&keys[i].clone()) {
            let next = keys.len() as u32;
            let to = *ids.entry(succ.clone()).or_insert_with(|| {
                keys.push(succ);
                queue.push_back(next as usize);
                next
            });
            if keys.len() > crate::logic::DEFAULT_MAX_STATES {
                return Err(Error::ResourceLimit { states: keys.len(), limit: crate::logic::DEFAULT_MAX_STATES });
            }
            transitions.push(NfaTransition { from: i as u32, symbol: input, mult: NatInf::one(), to });
        }
    }
    let finals = (0..keys.len()).filter(|&i| accepting(&keys[i])).map(|i| (i as u32, NatInf::one())).collect();
    Ok(Nfa::from_parts(digit_alphabet(base), keys.len(), transitions, vec![0], finals))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Guess {
    /// Reading the digits of `n` together with a guessed digit of `i`.
    Along(u32),
    /// Past the input: further digits of `i`, the flag telling whether the
    /// last one was nonzero.
    Beyond(u32, bool),
}

/// Counts witnesses: `evaluate(n) = |{ i : (n, i) ∈ L(p) }|`, infinite when
/// there are infinitely many.
///
/// Each `i` gets exactly one path: its digits are guessed alongside the
/// digits of `n`, and when `i` is longer the rest is guessed on ε-moves,
/// ending in a nonzero digit. `p` reads tracks `(n, i)` and must be
/// pad-closed.
pub fn count_parameter(p: &Dfa) -> Result<Counting> {
    if p.arity() != 2 {
        return Err(Error::Arity { expected: 2, found: p.arity() });
    }
    if !p.is_pad_closed() {
        return Err(Error::Invalid("counting predicate must be pad-closed".into()));
    }
    let k = p.base();
    let alphabet = p.alphabet();
    let sym = |a: u32, b: u32| alphabet.index(&[a, b]);
    let beyond = |q: u32| (0..k).map(move |b| (None, Guess::Beyond(p.step(q, sym(0, b)), b != 0)));
    let nfa = build_nfa(
        k,
        Guess::Along(p.initial()),
        |g| match *g {
            Guess::Along(q) => (0..k)
                .flat_map(|a| (0..k).map(move |b| (Some(a), Guess::Along(p.step(q, sym(a, b))))))
                .chain(beyond(q))
                .collect(),
            Guess::Beyond(q, _) => beyond(q).collect(),
        },
        |g| match *g {
            Guess::Along(q) | Guess::Beyond(q, true) => p.is_final(q),
            Guess::Beyond(_, false) => false,
        },
    )?;
    Counting::new(&nfa, Some(p.num_states()))
}

/// The measure `m(n)` described by `p(n, t) ⟺ t < m(n)`: counts the `t ≥ 0`
/// with `p(n, t)`. Fails unless `p` is downward-closed in `t`, which is
/// decided exactly.
pub fn count_measure(p: &Dfa) -> Result<Counting> {
    if p.arity() != 2 {
        return Err(Error::Arity { expected: 2, found: p.arity() });
    }
    let mut env = Env::new(p.base())?;
    env.bind_relation("p", p)?;
    if env.decide_str("E n E t p(n, t + 1) & ~p(n, t)")?.holds {
        return Err(Error::Invalid("measure predicate is not downward-closed in its second track".into()));
    }
    count_parameter(p)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Digits {
    /// Consuming the input; `last` is the last guessed digit class.
    Along { carry: i64, last: Last },
    /// The guessed word has ended; the rest of the input must absorb the carry.
    Ended(i64),
    /// The input has ended; the guessed word goes on. `last` is `Empty`
    /// until the first digit guessed here.
    Beyond { carry: i64, last: Last },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Last {
    Empty,
    NonZero,
    Zero,
}

fn last_of(e: i64) -> Last {
    if e == 0 {
        Last::Zero
    } else {
        Last::NonZero
    }
}

/// `evaluate(n)` = number of words `e_0 ⋯ e_{m-1}` over `digits`, lsd
/// first and not ending in 0, with `Σ e_j k^j = n`.
pub fn representation_count(digits: &[i64], base: u32) -> Result<Counting> {
    check_base(base)?;
    let k = base as i64;
    let mut digits = digits.to_vec();
    digits.sort_unstable();
    digits.dedup();
    let ends = |last: Last| last != Last::Zero;
    let nfa = build_nfa(
        base,
        Digits::Along { carry: 0, last: Last::Empty },
        |s| {
            let mut out = Vec::new();
            match *s {
                Digits::Along { carry, last } => {
                    for &e in &digits {
                        for a in 0..k {
                            let s = carry + e - a;
                            if s.rem_euclid(k) == 0 {
                                out.push((Some(a as u32), Digits::Along { carry: s / k, last: last_of(e) }));
                            }
                        }
                    }
                    if ends(last) {
                        out.push((None, Digits::Ended(carry)));
                    }
                    out.push((None, Digits::Beyond { carry, last: Last::Empty }));
                }
                Digits::Ended(carry) => {
                    let a = carry.rem_euclid(k);
                    out.push((Some(a as u32), Digits::Ended((carry - a) / k)));
                }
                Digits::Beyond { carry, .. } => {
                    for &e in &digits {
                        let s = carry + e;
                        if s.rem_euclid(k) == 0 {
                            out.push((None, Digits::Beyond { carry: s / k, last: last_of(e) }));
                        }
                    }
                }
            }
            out
        },
        |s| match *s {
            Digits::Ended(c) => c == 0,
            Digits::Beyond { carry, last } => carry == 0 && last == Last::NonZero,
            Digits::Along { .. } => false,
        },
    )?;
    Counting::new(&nfa, None)
}
