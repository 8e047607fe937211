//! Structural properties: indicator sequences, recurrence, exponents,
//! factor-set comparison and the linear-growth check for counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::{palindrome, square, unbordered, Anchor, SHIFT_LESS};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::graph::has_cycle;
use crate::logic::Env;
use crate::numeration::decode_tuple;
use crate::regseq::Counting;
use crate::seqgen::Dfao;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndicatorKind {
    Square,
    Overlap,
    Palindrome,
    Unbordered,
}

impl fmt::Display for IndicatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndicatorKind::Square => "square",
            IndicatorKind::Overlap => "overlap",
            IndicatorKind::Palindrome => "palindrome",
            IndicatorKind::Unbordered => "unbordered",
        })
    }
}

impl FromStr for IndicatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<IndicatorKind> {
        match s {
            "square" => Ok(IndicatorKind::Square),
            "overlap" => Ok(IndicatorKind::Overlap),
            "palindrome" => Ok(IndicatorKind::Palindrome),
            "unbordered" => Ok(IndicatorKind::Unbordered),
            _ => Err(Error::Invalid(format!("unknown indicator `{s}` (square, overlap, palindrome, unbordered)"))),
        }
    }
}

/// Formula in `i`: some nonempty object of the given kind is anchored at `i`.
pub(crate) fn indicator_formula(kind: IndicatorKind, anchor: Anchor) -> Result<String> {
    Ok(match (kind, anchor) {
        (IndicatorKind::Square, a) => format!("E l {}", square("i", "l", a)),
        (IndicatorKind::Overlap, Anchor::Begin) => "E l (l >= 1 & (A m <= l: x[i+m] = x[i+l+m]))".to_string(),
        (IndicatorKind::Overlap, Anchor::End) => {
            "E l (l >= 1 & 2*l <= i & (A m <= l: x[i-2*l+m] = x[i-l+m]))".to_string()
        }
        (IndicatorKind::Palindrome, a) => format!("E l {}", palindrome("i", "l", a)),
        (IndicatorKind::Unbordered, Anchor::Begin) => format!("E n (n >= 1 & {})", unbordered("i", "n")),
        (IndicatorKind::Unbordered, Anchor::End) => format!(
            "E n (n >= 1 & n <= i+1 & (A l (l >= 1 & l < n) => E m < l: x[i+1-n+m] != x[i+1-l+m]))"
        ),
        (k, Anchor::Center) => return Err(Error::Invalid(format!("{k} has no centered form"))),
    })
}

/// 0/1 sequence: `1` at `i` when an object of `kind` is anchored there.
pub fn indicator(x: &Dfao, kind: IndicatorKind, anchor: Anchor) -> Result<Dfao> {
    indicator_in(&Env::for_sequence(x), kind, anchor)
}

pub(crate) fn indicator_in(env: &Env, kind: IndicatorKind, anchor: Anchor) -> Result<Dfao> {
    env.characteristic_str(&indicator_formula(kind, anchor)?)
}

/// 0/1 sequence: `1` at `n` when `x` has an unbordered factor of length `n`.
pub fn unbordered_characteristic(x: &Dfao) -> Result<Dfao> {
    Env::for_sequence(x)
        .characteristic_str("E j A l (l >= 1 & 2*l <= n) => E m < l: x[j+m] != x[j+n-l+m]")
}

/// True when `x` has unbordered factors of infinitely many lengths.
pub fn has_arbitrarily_large_unbordered(x: &Dfao) -> Result<bool> {
    Ok(!unbordered_characteristic(x)?.level_set(1).canonical_only().is_finite())
}

/// True when the critical exponent of `x` is infinite: factors of length
/// `n` with period `p` exist for unbounded `n / p`.
///
/// The pairs `(n, p)` form an automatic relation. The ratio is unbounded
/// exactly when accepted pairs have `n` arbitrarily many digits longer
/// than `p`, i.e. when a cycle can be read after the last nonzero digit
/// of `p` and before the last nonzero digit of `n`.
pub fn has_unbounded_exponent(x: &Dfao) -> Result<bool> {
    let pairs = Env::for_sequence(x)
        .relation("p >= 1 & E i A m (m + p < n) => x[i+m] = x[i+m+p]", &["n", "p"])?;
    Ok(gap_unbounded(&pairs))
}

/// For a two-track relation, whether accepted pairs have second-track
/// values with arbitrarily fewer digits than the first track.
fn gap_unbounded(pairs: &Dfa) -> bool {
    let alphabet = pairs.alphabet();
    let n = pairs.num_states();
    // node = (q, phase2, last first-track digit nonzero)
    let id = |q: u32, phase2: bool, nz: bool| q as usize * 4 + (phase2 as usize) * 2 + nz as usize;
    let mut edges: Vec<Vec<u32>> = vec![Vec::new(); 4 * n];
    for q in 0..n as u32 {
        for s in 0..alphabet.size() as u32 {
            let (a, b) = (alphabet.digit(s, 0), alphabet.digit(s, 1));
            let r = pairs.step(q, s);
            for nz in [false, true] {
                edges[id(q, false, nz)].push(id(r, false, a != 0) as u32);
                if b != 0 {
                    edges[id(q, false, nz)].push(id(r, true, a != 0) as u32);
                } else {
                    edges[id(q, true, nz)].push(id(r, true, a != 0) as u32);
                }
            }
        }
    }
    let accepting: Vec<bool> =
        (0..4 * n).map(|v| v % 4 == 3 && pairs.is_final((v / 4) as u32)).collect();
    let forward = reach(&edges, &[id(pairs.initial(), false, false)]);
    let mut back: Vec<Vec<u32>> = vec![Vec::new(); 4 * n];
    for (v, out) in edges.iter().enumerate() {
        for &w in out {
            back[w as usize].push(v as u32);
        }
    }
    let finals: Vec<usize> = (0..4 * n).filter(|&v| accepting[v]).collect();
    let backward = reach(&back, &finals);
    let active: Vec<bool> = (0..4 * n).map(|v| (v / 2) % 2 == 1 && forward[v] && backward[v]).collect();
    has_cycle(&edges, &active)
}

fn reach(edges: &[Vec<u32>], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; edges.len()];
    let mut stack = start.to_vec();
    for &s in start {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &edges[v] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w as usize);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceFlags {
    /// Every factor occurs infinitely often.
    pub recurrent: bool,
    /// Every factor occurs with bounded gaps.
    pub uniformly_recurrent: bool,
    pub ultimately_periodic: bool,
}

pub fn recurrence_flags(x: &Dfao) -> Result<RecurrenceFlags> {
    let env = Env::for_sequence(x);
    let recurrent = env
        .decide_str("A n A r (r >= 1) => E m (m > n) & A j < r: x[n+j] = x[m+j]")?
        .holds;
    let uniformly_recurrent = env
        .decide_str("A r (r >= 1) => E t (t > 0) & A n E m (m > n & m < n + t) & A j < r: x[n+j] = x[m+j]")?
        .holds;
    let ultimately_periodic = env.decide_str("E p (p >= 1) & E c A n (n >= c) => x[n] = x[n+p]")?.holds;
    Ok(RecurrenceFlags { recurrent, uniformly_recurrent, ultimately_periodic })
}

/// Worst-case size of the automata involved in comparing factor sets of
/// two sequences whose automata have at most `states` states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerBound {
    pub states: usize,
}

impl fmt::Display for TowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^2^2^(2*{}^2)", self.states)
    }
}

/// Shortest factor of one sequence missing from the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distinguishing {
    pub length: u64,
    /// Position in the sequence it was taken from.
    pub position: u64,
    pub factor: Vec<u32>,
    /// True when the factor is taken from `x` and missing from `y`.
    pub in_x: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorComparison {
    pub x_in_y: bool,
    pub y_in_x: bool,
    pub distinguishing: Option<Distinguishing>,
    pub bound: TowerBound,
}

impl FactorComparison {
    pub fn equal(&self) -> bool {
        self.x_in_y && self.y_in_x
    }
}

/// Compares the sets of finite factors of `x` and `y`.
pub fn factor_set_compare(x: &Dfao, y: &Dfao) -> Result<FactorComparison> {
    let env = Env::for_sequence(x).with_sequence("y", y)?;
    let bound = TowerBound { states: x.num_states().max(y.num_states()) };
    let mut found: Vec<Distinguishing> = Vec::new();
    let mut subset = [true; 2];
    for (dir, (a, b)) in [("x", "y"), ("y", "x")].into_iter().enumerate() {
        let missing = format!("E i A j E m < n: {a}[i+m] != {b}[j+m]");
        let lengths = env.relation(&missing, &["n"])?;
        if lengths.is_empty() {
            continue;
        }
        subset[dir] = false;
        let mut local = env.clone();
        local.bind_relation("d", &lengths)?;
        let least = local.relation("d(n) & A l < n: ~d(l)", &["n"])?;
        let n = decode_tuple(&least.shortest_accepted().expect("nonempty"))?[0];
        let at = local.relation(&format!("A j E m < {n}: {a}[i+m] != {b}[j+m]"), &["i"])?;
        let i = decode_tuple(&at.shortest_accepted().expect("nonempty"))?[0];
        let source = if dir == 0 { x } else { y };
        let factor = (i..i + n).map(|p| source.evaluate(p)).collect();
        found.push(Distinguishing { length: n, position: i, factor, in_x: dir == 0 });
    }
    let distinguishing = found.into_iter().min_by_key(|d| (d.length, !d.in_x));
    Ok(FactorComparison { x_in_y: subset[0], y_in_x: subset[1], distinguishing, bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearVerdict {
    /// `f(n) <= slope * n + intercept` for every `n`.
    Bounded { slope: BigUint, intercept: BigUint },
    /// Some value is infinite.
    Unbounded,
}

/// Linear bound for a count of first occurrences or witnesses.
///
/// With `q` states in the predicate, a witness with more than
/// `len(n) + q - 1` digits can be pumped into infinitely many witnesses,
/// so a finite count satisfies `f(n) <= k^(len(n)+q-1) <= k^q (n + 1)`.
pub fn linear_complexity_check(c: &Counting) -> Result<LinearVerdict> {
    let q = c
        .predicate_states
        .ok_or_else(|| Error::Invalid("linear bound needs a count built from a predicate".into()))?;
    if !c.decomposition.is_finite() {
        return Ok(LinearVerdict::Unbounded);
    }
    let k = BigUint::from(c.series.base());
    let bound = k.pow(q as u32);
    Ok(LinearVerdict::Bounded { slope: bound.clone(), intercept: bound })
}

/// Relation over `(i, j)`: the suffix of `x` at `i` is lexicographically
/// smaller than the suffix at `j`.
pub fn permutation_order(x: &Dfao) -> Result<Dfa> {
    Env::for_sequence(x).relation(SHIFT_LESS, &["i", "j"])
}
