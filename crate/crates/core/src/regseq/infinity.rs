//! ε-saturation with exact path counts and the split of an ℕ∞ series into
//! its infinite support and a finite remainder.

use std::collections::BTreeMap;

use super::{digit_alphabet, zero_matrix, LinRep, Matrix};
use crate::automata::{explore, Dfa, Nfa, NfaTransition};
use crate::error::Result;
use crate::graph::scc;
use crate::logic::DEFAULT_MAX_STATES;
use crate::semiring::{Nat, NatInf, Semiring};

/// ε-path counts `D = Σ_i D_ε^i`: `d[i][j]` is the number of ε-paths from
/// `i` to `j` (the empty path included), infinite when some such path can
/// be pumped through an ε-cycle.
fn eps_closure_counts(a: &Nfa) -> Vec<BTreeMap<u32, NatInf>> {
    let n = a.num_states();
    let mut eps: Vec<Vec<(u32, NatInf)>> = vec![Vec::new(); n];
    for t in a.transitions().iter().filter(|t| t.symbol.is_none()) {
        eps[t.from as usize].push((t.to, t.mult.clone()));
    }
    let edges: Vec<Vec<u32>> = eps.iter().map(|out| out.iter().map(|(q, _)| *q).collect()).collect();
    let comp = scc(&edges);
    let num_comps = comp.iter().max().map_or(0, |&c| c + 1);
    let mut members = vec![Vec::new(); num_comps];
    for (q, &c) in comp.iter().enumerate() {
        members[c].push(q);
    }
    let cyclic: Vec<bool> = members
        .iter()
        .map(|m| m.len() > 1 || edges[m[0]].contains(&(m[0] as u32)))
        .collect();
    // components in topological order: Tarjan numbers sinks first
    let order: Vec<usize> = (0..num_comps).rev().collect();
    let mut result = vec![BTreeMap::new(); n];
    let mut value = vec![NatInf::zero(); n];
    for src in 0..n {
        if eps[src].is_empty() {
            result[src].insert(src as u32, NatInf::one());
            continue;
        }
        value.iter_mut().for_each(|x| *x = NatInf::zero());
        value[src] = NatInf::one();
        for &c in order.iter().filter(|&&c| c <= comp[src]) {
            if cyclic[c] && members[c].iter().any(|&q| !value[q].is_zero()) {
                for &q in &members[c] {
                    value[q] = NatInf::Inf;
                }
            }
            for &q in &members[c] {
                if value[q].is_zero() {
                    continue;
                }
                for (r, m) in &eps[q] {
                    if comp[*r as usize] != c {
                        let add = value[q].mul(m);
                        value[*r as usize] = value[*r as usize].add(&add);
                    }
                }
            }
        }
        for (q, x) in value.iter().enumerate() {
            if !x.is_zero() {
                result[src].insert(q as u32, x.clone());
            }
        }
    }
    result
}

/// ε-free automaton with the same weighted path count on every word.
///
/// Every digit transition `p -a-> q` is preceded by the ε-paths into `p`,
/// and every final weight by the ε-paths into the final state. Infinite
/// path families show up as multiplicity `inf`.
pub fn eps_saturate(a: &Nfa) -> Nfa {
    if !a.has_epsilon() {
        return a.clone();
    }
    let closure = eps_closure_counts(a);
    let mut by_source: Vec<Vec<&NfaTransition>> = vec![Vec::new(); a.num_states()];
    for t in a.transitions().iter().filter(|t| t.symbol.is_some()) {
        by_source[t.from as usize].push(t);
    }
    let finals: BTreeMap<u32, &NatInf> = a.finals().iter().map(|(q, w)| (*q, w)).collect();
    let mut transitions = BTreeMap::new();
    let mut new_finals = Vec::new();
    for (i, reach) in closure.iter().enumerate() {
        for (p, d) in reach {
            for t in &by_source[*p as usize] {
                let e = transitions.entry((i as u32, t.symbol, t.to)).or_insert_with(NatInf::zero);
                *e = e.add(&d.mul(&t.mult));
            }
            if let Some(w) = finals.get(p) {
                new_finals.push((i as u32, d.mul(w)));
            }
        }
    }
    let transitions = transitions
        .into_iter()
        .map(|((from, symbol, to), mult)| NfaTransition { from, symbol, mult, to })
        .collect();
    Nfa::from_parts(a.alphabet(), a.num_states(), transitions, a.initials().to_vec(), new_finals)
}

/// `f = χ_{L̄}·g + ∞·χ_L`: `infinite` accepts exactly the words on which
/// the series is infinite, and `finite` agrees with it everywhere else.
#[derive(Clone, Debug, PartialEq)]
pub struct InfDecomposition {
    pub infinite: Dfa,
    pub finite: LinRep<Nat>,
}

impl InfDecomposition {
    pub fn evaluate(&self, n: u64) -> NatInf {
        if self.infinite.accepts_values(&[n]).expect("arity 1") {
            NatInf::Inf
        } else {
            NatInf::Fin(self.finite.evaluate(n))
        }
    }

    /// True when no word has an infinite value.
    pub fn is_finite(&self) -> bool {
        self.infinite.is_empty()
    }
}

/// Abstraction of ℕ∞ onto {0, positive, ∞}.
const ZERO: u8 = 0;
const POS: u8 = 1;
const INF: u8 = 2;

fn abstract_value(x: &NatInf) -> u8 {
    match x {
        NatInf::Inf => INF,
        x if x.is_zero() => ZERO,
        _ => POS,
    }
}

fn abstract_row_times(row: &[u8], m: &[Vec<u8>]) -> Vec<u8> {
    let mut out = vec![ZERO; m.first().map_or(0, |r| r.len())];
    for (&x, mrow) in row.iter().zip(m) {
        if x == ZERO {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(mrow) {
            if y != ZERO {
                *o = (*o).max(x.max(y));
            }
        }
    }
    out
}

pub fn decompose_infinity(l: &LinRep<NatInf>) -> Result<InfDecomposition> {
    let abs_m: Vec<Vec<Vec<u8>>> = l
        .mu
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(abstract_value).collect()).collect())
        .collect();
    let abs_v: Vec<u8> = l.v.iter().map(abstract_value).collect();
    let start: Vec<u8> = l.u.iter().map(abstract_value).collect();
    let infinite = explore(
        digit_alphabet(l.base),
        start,
        DEFAULT_MAX_STATES,
        |row, a| abstract_row_times(row, &abs_m[a as usize]),
        |row| {
            row.iter()
                .zip(&abs_v)
                .any(|(&x, &y)| x != ZERO && y != ZERO && (x == INF || y == INF))
        },
    )?
    .minimize();
    let finite = l.map(NatInf::drop_inf);
    Ok(InfDecomposition { infinite, finite })
}

/// Value-equal representation whose only infinite entries lie in `u`.
///
/// Direct sum of `χ_{L̄} ⊙ g` (a Kronecker product with the complement of
/// the infinite part) and `∞·χ_L`.
pub fn push_infinity_to_u(l: &LinRep<NatInf>) -> Result<LinRep<NatInf>> {
    let dec = decompose_infinity(l)?;
    if dec.is_finite() {
        return Ok(dec.finite.to_natinf());
    }
    let dfa = &dec.infinite;
    let g = dec.finite.to_natinf();
    let (s, r) = (dfa.num_states(), g.rank());
    let k = l.base as usize;
    let total = s * r + s;
    let mut u = vec![NatInf::zero(); total];
    let mut v = vec![NatInf::zero(); total];
    let mut mu: Vec<Matrix<NatInf>> = vec![zero_matrix(total, total); k];
    let q0 = dfa.initial() as usize;
    for j in 0..r {
        u[q0 * r + j] = g.u[j].clone();
    }
    u[s * r + q0] = NatInf::Inf;
    for q in 0..s {
        let final_q = dfa.is_final(q as u32);
        for j in 0..r {
            if !final_q {
                v[q * r + j] = g.v[j].clone();
            }
        }
        if final_q {
            v[s * r + q] = NatInf::one();
        }
        for (d, m) in mu.iter_mut().enumerate() {
            let p = dfa.step(q as u32, d as u32) as usize;
            for i in 0..r {
                for j in 0..r {
                    m[q * r + i][p * r + j] = g.mu[d][i][j].clone();
                }
            }
            m[s * r + q][s * r + p] = NatInf::one();
        }
    }
    LinRep::new(l.base, u, mu, v)
}
