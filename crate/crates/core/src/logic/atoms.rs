//! Automata for atomic formulas. Every automaton built here reads tuples of
//! lsd-first digits and is closed under trailing padding.

use super::ast::{LinearForm, RelOp};
use crate::automata::{explore, Alphabet, Dfa};
use crate::error::Result;
use crate::seqgen::Dfao;

/// Per-symbol value of `Σ a_v·d_v`, for coefficients aligned with the tracks.
fn symbol_sums(alphabet: Alphabet, coeffs: &[i64]) -> Vec<i64> {
    (0..alphabet.size() as u32)
        .map(|a| {
            coeffs
                .iter()
                .enumerate()
                .map(|(t, c)| c * alphabet.digit(a, t) as i64)
                .sum()
        })
        .collect()
}

pub(crate) fn aligned(form: &LinearForm, vars: &[String]) -> Vec<i64> {
    vars.iter().map(|v| form.coeffs.get(v).copied().unwrap_or(0)).collect()
}

/// `Σ coeffs·tracks + constant  op  0`.
pub(crate) fn linear_relation(
    alphabet: Alphabet,
    coeffs: &[i64],
    constant: i64,
    op: RelOp,
    limit: usize,
) -> Result<Dfa> {
    let k = alphabet.base() as i64;
    let sums = symbol_sums(alphabet, coeffs);
    let neg = |c: &[i64]| c.iter().map(|x| -x).collect::<Vec<_>>();
    match op {
        RelOp::Eq => {
            // state: pending carry; digits must cancel modulo k
            const DEAD: i64 = i64::MIN;
            explore(
                alphabet,
                constant,
                limit,
                |&c, a| {
                    if c == DEAD {
                        return DEAD;
                    }
                    let s = c + sums[a as usize];
                    if s.rem_euclid(k) == 0 {
                        s / k
                    } else {
                        DEAD
                    }
                },
                |&c| c == 0,
            )
            .map(|d| d.minimize())
        }
        RelOp::Ne => Ok(linear_relation(alphabet, coeffs, constant, RelOp::Eq, limit)?.complement()),
        RelOp::Le => {
            // state c: the remaining value must satisfy c + rest <= 0
            explore(
                alphabet,
                constant,
                limit,
                |&c, a| -(-(c + sums[a as usize])).div_euclid(k),
                |&c| c <= 0,
            )
            .map(|d| d.minimize())
        }
        RelOp::Lt => linear_relation(alphabet, coeffs, constant + 1, RelOp::Le, limit),
        RelOp::Ge => linear_relation(alphabet, &neg(coeffs), -constant, RelOp::Le, limit),
        RelOp::Gt => linear_relation(alphabet, &neg(coeffs), -constant + 1, RelOp::Le, limit),
    }
}

/// One side of a sequence comparison: `seq[Σ coeffs·tracks + constant]`.
pub(crate) struct IndexSide<'a> {
    pub seq: &'a Dfao,
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

/// Output of `seq` at `fed + k^len·carry`, where `q` is the state after
/// the fed digits and `carry >= 0`.
fn flush(seq: &Dfao, mut q: u32, mut carry: i64) -> u32 {
    let k = seq.base() as i64;
    while carry > 0 {
        q = seq.step(q, (carry % k) as u32);
        carry /= k;
    }
    seq.output(q)
}

/// `lhs op rhs`, where `rhs` is another index or a constant symbol.
/// False whenever an index is negative.
pub(crate) fn index_relation(
    alphabet: Alphabet,
    lhs: &IndexSide<'_>,
    op: RelOp,
    rhs: Result<&IndexSide<'_>, u32>,
    limit: usize,
) -> Result<Dfa> {
    let k = alphabet.base() as i64;
    let lsums = symbol_sums(alphabet, &lhs.coeffs);
    let rsums = match &rhs {
        Ok(side) => symbol_sums(alphabet, &side.coeffs),
        Err(_) => vec![0; alphabet.size()],
    };
    let advance = |seq: &Dfao, c: i64, q: u32, s: i64| {
        let v = c + s;
        (v.div_euclid(k), seq.step(q, v.rem_euclid(k) as u32))
    };
    let start = match &rhs {
        Ok(side) => (lhs.constant, lhs.seq.initial(), side.constant, side.seq.initial()),
        Err(_) => (lhs.constant, lhs.seq.initial(), 0, 0),
    };
    explore(
        alphabet,
        start,
        limit,
        |&(c1, q1, c2, q2), a| {
            let (c1, q1) = advance(lhs.seq, c1, q1, lsums[a as usize]);
            match &rhs {
                Ok(side) => {
                    let (c2, q2) = advance(side.seq, c2, q2, rsums[a as usize]);
                    (c1, q1, c2, q2)
                }
                Err(_) => (c1, q1, c2, q2),
            }
        },
        |&(c1, q1, c2, q2)| {
            if c1 < 0 || c2 < 0 {
                return false;
            }
            let left = flush(lhs.seq, q1, c1);
            let right = match &rhs {
                Ok(side) => flush(side.seq, q2, c2),
                Err(sym) => *sym,
            };
            op.holds(left, right)
        },
    )
    .map(|d| d.minimize())
}
