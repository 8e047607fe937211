//! Linear representations of recognizable series and k-regular sequences.
//!
//! A series is given by `(u, μ, v)`: its value on a digit word
//! `d_0 d_1 ... d_{m-1}` is `u · μ(d_0) · μ(d_1) ⋯ μ(d_{m-1}) · v`. Words are
//! read lsd-first, so `evaluate(n)` feeds the canonical representation of
//! `n`; a representation with `μ(0)·v = v` gives the same value on every
//! padded representation.

mod counting;
mod infinity;
mod kernel;

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use counting::{count_measure, count_parameter, representation_count, Counting};
pub use infinity::{decompose_infinity, eps_saturate, push_infinity_to_u, InfDecomposition};
pub use kernel::{kernel_relations, KernelReport, KernelTerm, Recurrence};

use crate::automata::{Alphabet, Nfa, NfaTransition};
use crate::error::{Error, Result};
use crate::numeration::{check_base, DigitWord};
use crate::semiring::{Nat, NatInf, Rat, Semiring};
use crate::text::{content_lines, parse_err, Header};

/// Dense square matrix stored by rows.
pub type Matrix<S> = Vec<Vec<S>>;

/// Linear representation `(u, μ, v)` over the semiring `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinRep<S> {
    base: u32,
    u: Vec<S>,
    mu: Vec<Matrix<S>>,
    v: Vec<S>,
}

pub(crate) fn zero_matrix<S: Semiring>(r: usize, c: usize) -> Matrix<S> {
    vec![vec![S::zero(); c]; r]
}

fn transpose<S: Semiring>(m: &Matrix<S>) -> Matrix<S> {
    let r = m.len();
    let c = m.first().map_or(0, |row| row.len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

/// Row vector times matrix, skipping zero entries of the vector.
pub(crate) fn row_times<S: Semiring>(row: &[S], m: &Matrix<S>) -> Vec<S> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![S::zero(); cols];
    for (x, mrow) in row.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(mrow) {
            if !y.is_zero() {
                *o = o.add(&x.mul(y));
            }
        }
    }
    out
}

pub(crate) fn dot<S: Semiring>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc.add(&x.mul(y)) })
}

/// Matrix times column vector.
pub(crate) fn times_col<S: Semiring>(m: &Matrix<S>, col: &[S]) -> Vec<S> {
    m.iter().map(|row| dot(row, col)).collect()
}

impl<S: Semiring> LinRep<S> {
    /// Checks dimensions: `u` and `v` of length `r`, one `r × r` matrix per digit.
    pub fn new(base: u32, u: Vec<S>, mu: Vec<Matrix<S>>, v: Vec<S>) -> Result<Self> {
        check_base(base)?;
        let r = u.len();
        if mu.len() != base as usize {
            return Err(Error::Invalid(format!("expected {base} matrices, got {}", mu.len())));
        }
        if v.len() != r || mu.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(Error::Invalid(format!("inconsistent dimensions for rank {r}")));
        }
        Ok(LinRep { base, u, mu, v })
    }

    /// The zero series of rank 0.
    pub fn zero(base: u32) -> Result<Self> {
        Self::new(base, Vec::new(), vec![Vec::new(); base as usize], Vec::new())
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[S] {
        &self.u
    }

    pub fn mu(&self, digit: u32) -> &Matrix<S> {
        &self.mu[digit as usize]
    }

    pub fn v(&self) -> &[S] {
        &self.v
    }

    /// `u · μ(d_0) ⋯ μ(d_{m-1})`.
    pub fn state_after(&self, digits: &[u32]) -> Vec<S> {
        digits.iter().fold(self.u.clone(), |row, &d| row_times(&row, &self.mu[d as usize]))
    }

    pub fn evaluate_digits(&self, digits: &[u32]) -> S {
        dot(&self.state_after(digits), &self.v)
    }

    /// Value at `n`, fed as its canonical lsd-first representation.
    pub fn evaluate(&self, n: u64) -> S {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % self.base as u64) as u32);
            m /= self.base as u64;
        }
        self.evaluate_digits(&digits)
    }

    pub fn evaluate_word(&self, w: &DigitWord) -> Result<S> {
        if w.base() != self.base {
            return Err(Error::BaseMismatch(self.base, w.base()));
        }
        if w.arity() != 1 {
            return Err(Error::Arity { expected: 1, found: w.arity() });
        }
        Ok(self.evaluate_digits(w.digits()))
    }

    /// Series of reversed words: `u ↔ vᵀ` and every matrix transposed.
    pub fn reverse(&self) -> Self {
        LinRep { base: self.base, u: self.v.clone(), mu: self.mu.iter().map(transpose).collect(), v: self.u.clone() }
    }

    /// Rank-`2r` representation `g` with `g(0^i w) = f(w)` for every `w`
    /// not starting with 0, and `u·μ(0) = u`.
    pub fn normalize_leading(&self) -> Self {
        let r = self.rank();
        let mut u = vec![S::zero(); r];
        u.extend(self.u.iter().cloned());
        let mut v = self.v.clone();
        v.extend(self.v.iter().cloned());
        let mu = (0..self.base as usize)
            .map(|d| {
                let mut m = zero_matrix(2 * r, 2 * r);
                for i in 0..r {
                    for j in 0..r {
                        let x = &self.mu[d][i][j];
                        m[i][j] = x.clone();
                        if d != 0 {
                            m[r + i][j] = x.clone();
                        }
                    }
                    if d == 0 {
                        m[r + i][r + i] = S::one();
                    }
                }
                m
            })
            .collect();
        LinRep { base: self.base, u, mu, v }
    }

    /// Representation `g` with `g(w 0^i) = f(w)` for every `w` not ending
    /// in 0, and `μ(0)·v = v`.
    pub fn normalize_trailing(&self) -> Self {
        self.reverse().normalize_leading().reverse()
    }

    /// Drops coordinates that are structurally unreachable from `u` or
    /// cannot reach `v`. Values are unchanged.
    pub fn trim(&self) -> Self {
        let r = self.rank();
        let edges: Vec<Vec<usize>> = (0..r)
            .map(|i| (0..r).filter(|&j| self.mu.iter().any(|m| !m[i][j].is_zero())).collect())
            .collect();
        let search = |start: Vec<usize>, edges: &Vec<Vec<usize>>| {
            let mut seen = vec![false; r];
            let mut stack = start;
            for &s in &stack {
                seen[s] = true;
            }
            while let Some(i) = stack.pop() {
                for &j in &edges[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen
        };
        let fwd = search((0..r).filter(|&i| !self.u[i].is_zero()).collect(), &edges);
        let mut back_edges = vec![Vec::new(); r];
        for (i, out) in edges.iter().enumerate() {
            for &j in out {
                back_edges[j].push(i);
            }
        }
        let bwd = search((0..r).filter(|&i| !self.v[i].is_zero()).collect(), &back_edges);
        let keep: Vec<usize> = (0..r).filter(|&i| fwd[i] && bwd[i]).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[usize]) -> Self {
        LinRep {
            base: self.base,
            u: keep.iter().map(|&i| self.u[i].clone()).collect(),
            mu: self
                .mu
                .iter()
                .map(|m| keep.iter().map(|&i| keep.iter().map(|&j| m[i][j].clone()).collect()).collect())
                .collect(),
            v: keep.iter().map(|&i| self.v[i].clone()).collect(),
        }
    }

    /// Entry-wise conversion.
    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> LinRep<T> {
        LinRep {
            base: self.base,
            u: self.u.iter().map(&f).collect(),
            mu: self.mu.iter().map(|m| m.iter().map(|row| row.iter().map(&f).collect()).collect()).collect(),
            v: self.v.iter().map(&f).collect(),
        }
    }

    fn try_map<T: Semiring>(&self, f: impl Fn(&S) -> Option<T>) -> Option<LinRep<T>> {
        let vec = |xs: &[S]| xs.iter().map(&f).collect::<Option<Vec<T>>>();
        Some(LinRep {
            base: self.base,
            u: vec(&self.u)?,
            mu: self.mu.iter().map(|m| m.iter().map(|row| vec(row)).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?,
            v: vec(&self.v)?,
        })
    }

    pub fn to_text(&self) -> String {
        let row = |xs: &[S]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = format!("linrep semiring={} base={} rank={}\n", S::TAG, self.base, self.rank());
        let _ = writeln!(out, "u");
        if self.rank() > 0 {
            let _ = writeln!(out, "{}", row(&self.u));
        }
        for (d, m) in self.mu.iter().enumerate() {
            let _ = writeln!(out, "mu {d}");
            for r in m {
                let _ = writeln!(out, "{}", row(r));
            }
        }
        let _ = writeln!(out, "v");
        if self.rank() > 0 {
            let _ = writeln!(out, "{}", row(&self.v));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text).peekable();
        let (hl, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (_, h) = Header::parse(hl, first, &["linrep"])?;
        let tag = h.raw("semiring")?;
        if tag != S::TAG {
            return Err(parse_err(hl, format!("expected semiring={}, found {tag}", S::TAG)));
        }
        let base: u32 = h.get("base")?;
        check_base(base)?;
        let r: usize = h.get("rank")?;
        let mut last = hl;
        let mut marker = |want: &str, lines: &mut std::iter::Peekable<_>| -> Result<()> {
            match lines.next() {
                Some((l, s)) if s == want => {
                    last = l;
                    Ok(())
                }
                Some((l, s)) => Err(parse_err(l, format!("expected `{want}`, found `{s}`"))),
                None => Err(parse_err(last + 1, format!("expected `{want}`"))),
            }
        };
        let read_row = |lines: &mut std::iter::Peekable<_>| -> Result<Vec<S>> {
            let (l, s): (usize, &str) =
                lines.next().ok_or_else(|| parse_err(0, "unexpected end of input"))?;
            let row = s
                .split_whitespace()
                .map(|e| S::parse_entry(e).map_err(|err| parse_err(l, err.to_string())))
                .collect::<Result<Vec<S>>>()?;
            if row.len() != r {
                return Err(parse_err(l, format!("expected {r} entries, found {}", row.len())));
            }
            Ok(row)
        };
        marker("u", &mut lines)?;
        let u = if r > 0 { read_row(&mut lines)? } else { Vec::new() };
        let mut mu = Vec::new();
        for d in 0..base {
            marker(&format!("mu {d}"), &mut lines)?;
            mu.push((0..r).map(|_| read_row(&mut lines)).collect::<Result<Matrix<S>>>()?);
        }
        marker("v", &mut lines)?;
        let v = if r > 0 { read_row(&mut lines)? } else { Vec::new() };
        if let Some((l, _)) = lines.next() {
            return Err(parse_err(l, "unexpected trailing input"));
        }
        LinRep::new(base, u, mu, v)
    }
}

impl LinRep<NatInf> {
    /// The same series over ℕ, if no entry is infinite.
    pub fn to_nat(&self) -> Option<LinRep<Nat>> {
        self.try_map(|x| x.finite().cloned())
    }
}

impl LinRep<Nat> {
    pub fn to_natinf(&self) -> LinRep<NatInf> {
        self.map(|x| NatInf::Fin(x.clone()))
    }

    pub fn to_rat(&self) -> LinRep<Rat> {
        self.map(|x| Rat::from_integer(x.clone().into()))
    }
}

/// Path-counting series of an ε-free automaton: `u` is the indicator of
/// the initial states, `μ(a)[i][j]` sums the multiplicities of `i -a-> j`,
/// `v` holds the final weights.
pub fn linrep_from_nfa(a: &Nfa) -> Result<LinRep<NatInf>> {
    if a.has_epsilon() {
        return Err(Error::HasEpsilon);
    }
    let r = a.num_states();
    let k = a.base() as usize;
    if a.arity() != 1 {
        return Err(Error::Arity { expected: 1, found: a.arity() });
    }
    let mut u = vec![NatInf::zero(); r];
    for &q in a.initials() {
        u[q as usize] = NatInf::one();
    }
    let mut mu = vec![zero_matrix::<NatInf>(r, r); k];
    for t in a.transitions() {
        let cell = &mut mu[t.symbol.expect("ε-free") as usize][t.from as usize][t.to as usize];
        *cell = cell.add(&t.mult);
    }
    let mut v = vec![NatInf::zero(); r];
    for (q, w) in a.finals() {
        v[*q as usize] = w.clone();
    }
    LinRep::new(a.base(), u, mu, v)
}

/// Largest entry that [`nfa_from_linrep`] expands into parallel states.
const MAX_COPIES: u64 = 1 << 12;

/// Automaton whose number of accepting paths on every nonempty word equals
/// the series value; the empty word has no accepting path.
///
/// The representation is first rewritten to rank `r + 2` with a fresh start
/// and a fresh end coordinate, so that all weight sits on transitions. Each
/// coordinate then becomes `m` parallel states, `m` the largest entry, and
/// an entry `c` becomes `c` plain transitions into distinct copies.
pub fn nfa_from_linrep(l: &LinRep<Nat>) -> Result<Nfa> {
    let r = l.rank();
    let k = l.base() as usize;
    let t = r + 2;
    let (start, end) = (0usize, r + 1);
    // rank-(r+2) representation: start -a-> i carries (u μ(a))_i,
    // i -a-> end carries (μ(a) v)_i, start -a-> end carries u μ(a) v
    let mut mu: Vec<Matrix<Nat>> = vec![zero_matrix(t, t); k];
    for (d, m) in mu.iter_mut().enumerate() {
        let um = row_times(&l.u, &l.mu[d]);
        let mv = times_col(&l.mu[d], &l.v);
        for j in 0..r {
            m[start][1 + j] = um[j].clone();
            m[1 + j][end] = mv[j].clone();
            for i in 0..r {
                m[1 + i][1 + j] = l.mu[d][i][j].clone();
            }
        }
        m[start][end] = dot(&um, &l.v);
    }
    let max = mu
        .iter()
        .flat_map(|m| m.iter().flatten())
        .max()
        .cloned()
        .unwrap_or_default();
    let copies = max.to_u64().filter(|&c| c <= MAX_COPIES).ok_or_else(|| {
        Error::Invalid(format!("entry {max} too large to expand into parallel states"))
    })?;
    let m = copies.max(1) as usize;
    let state = |i: usize, c: usize| (i * m + c) as u32;
    let mut transitions = Vec::new();
    for (d, mat) in mu.iter().enumerate() {
        for i in 0..t {
            for j in 0..t {
                let count = mat[i][j].to_u64().expect("bounded above");
                for src in 0..m {
                    for c in 0..count as usize {
                        transitions.push(NfaTransition {
                            from: state(i, src),
                            symbol: Some(d as u32),
                            mult: NatInf::one(),
                            to: state(j, c),
                        });
                    }
                }
            }
        }
    }
    let finals = (0..m).map(|c| (state(end, c), NatInf::one())).collect();
    Nfa::new(l.base(), 1, t * m, transitions, vec![state(start, 0)], finals)
}

/// Exhaustive count of accepting paths of an ε-free automaton, weighted by
/// multiplicities. Exponential; meant for cross-checks on short words.
pub fn count_paths(a: &Nfa, word: &[u32]) -> NatInf {
    fn go(a: &Nfa, q: u32, word: &[u32]) -> NatInf {
        match word.split_first() {
            None => a
                .finals()
                .iter()
                .find(|(f, _)| *f == q)
                .map_or(NatInf::zero(), |(_, w)| w.clone()),
            Some((&s, rest)) => a
                .transitions()
                .iter()
                .filter(|t| t.from == q && t.symbol == Some(s))
                .fold(NatInf::zero(), |acc, t| acc.add(&t.mult.mul(&go(a, t.to, rest)))),
        }
    }
    a.initials().iter().fold(NatInf::zero(), |acc, &q| acc.add(&go(a, q, word)))
}

/// Linear representation of the base-`k` digit sum, rank 2.
pub fn digit_sum(base: u32) -> Result<LinRep<Nat>> {
    check_base(base)?;
    let n = |x: u64| BigUint::from(x);
    let mu = (0..base as u64).map(|d| vec![vec![n(1), n(d)], vec![n(0), n(1)]]).collect();
    LinRep::new(base, vec![n(1), n(0)], mu, vec![n(0), n(1)])
}

/// Whole-word alphabet used by single-track series automata.
pub(crate) fn digit_alphabet(base: u32) -> Alphabet {
    Alphabet::new(base, 1).expect("valid base")
}

/// A linear representation read from text, whatever its semiring.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLinRep {
    Nat(LinRep<Nat>),
    NatInf(LinRep<NatInf>),
    Rat(LinRep<Rat>),
}

impl AnyLinRep {
    pub fn parse(text: &str) -> Result<AnyLinRep> {
        let (line, first) = content_lines(text).next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (_, h) = Header::parse(line, first, &["linrep"])?;
        match h.raw("semiring")? {
            "nat" => LinRep::from_text(text).map(AnyLinRep::Nat),
            "natinf" => LinRep::from_text(text).map(AnyLinRep::NatInf),
            "rat" => LinRep::from_text(text).map(AnyLinRep::Rat),
            other => Err(parse_err(line, format!("unknown semiring `{other}`"))),
        }
    }

    /// Value at `n` as text (`inf` for infinity).
    pub fn evaluate_text(&self, n: u64) -> String {
        match self {
            AnyLinRep::Nat(l) => l.evaluate(n).to_string(),
            AnyLinRep::NatInf(l) => l.evaluate(n).to_string(),
            AnyLinRep::Rat(l) => l.evaluate(n).to_string(),
        }
    }
}

#[cfg(test)]
mod tests;
