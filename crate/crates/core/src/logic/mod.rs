//! First-order predicates over automatic sequences, compiled to automata.
//!
//! A formula over natural variables with addition, comparisons and
//! sequence indexing is compiled bottom-up into a DFA whose tracks are its
//! free variables in lexicographic order. Every intermediate automaton is
//! minimal and closed under trailing padding, so acceptance depends only on
//! the values encoded.

mod ast;
mod atoms;
mod parse;

use std::collections::BTreeMap;

pub use ast::{Formula, IndexRhs, LinearForm, RelOp, Term};
pub use parse::{parse, parse_with_free};

use crate::automata::{Alphabet, BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::numeration::{check_base, decode_tuple};
use crate::seqgen::Dfao;
use atoms::{aligned, index_relation, linear_relation, IndexSide};

/// Default ceiling on the number of states of any intermediate automaton.
pub const DEFAULT_MAX_STATES: usize = 2_000_000;

/// Automaton for a formula, one track per variable in `vars` (sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compiled {
    pub vars: Vec<String>,
    pub dfa: Dfa,
}

impl Compiled {
    /// Membership of an assignment given in the order of `vars`.
    pub fn holds(&self, values: &[u64]) -> Result<bool> {
        self.dfa.accepts_values(values)
    }
}

/// Result of deciding a sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    /// For a sentence starting with `∃`, a witness when true; for one
    /// starting with `∀`, a counterexample when false.
    pub assignment: Option<Vec<(String, u64)>>,
}

/// Sequences and named relations a formula may refer to.
#[derive(Clone, Debug)]
pub struct Env {
    base: u32,
    seqs: BTreeMap<String, Dfao>,
    relations: BTreeMap<String, Dfa>,
    max_states: usize,
}

impl Env {
    pub fn new(base: u32) -> Result<Env> {
        check_base(base)?;
        Ok(Env { base, seqs: BTreeMap::new(), relations: BTreeMap::new(), max_states: DEFAULT_MAX_STATES })
    }

    /// Environment over the base of `seq`, binding it as `x`.
    pub fn for_sequence(seq: &Dfao) -> Env {
        let mut env = Env::new(seq.base()).expect("valid base");
        env.seqs.insert("x".into(), seq.clone());
        env
    }

    pub fn with_sequence(mut self, name: &str, seq: &Dfao) -> Result<Env> {
        self.bind_sequence(name, seq)?;
        Ok(self)
    }

    pub fn with_max_states(mut self, limit: usize) -> Env {
        self.max_states = limit;
        self
    }

    pub fn bind_sequence(&mut self, name: &str, seq: &Dfao) -> Result<()> {
        if seq.base() != self.base {
            return Err(Error::BaseMismatch(self.base, seq.base()));
        }
        self.seqs.insert(name.to_string(), seq.clone());
        Ok(())
    }

    /// Binds a padding-closed automaton as a relation usable as `name(t1, ..., tr)`.
    pub fn bind_relation(&mut self, name: &str, dfa: &Dfa) -> Result<()> {
        if dfa.base() != self.base {
            return Err(Error::BaseMismatch(self.base, dfa.base()));
        }
        self.relations.insert(name.to_string(), dfa.clone());
        Ok(())
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn sequence(&self, name: &str) -> Result<&Dfao> {
        self.seqs.get(name).ok_or_else(|| Error::UnboundSequence(name.to_string()))
    }

    /// Compiles `f`; the result has one track per free variable.
    pub fn compile(&self, f: &Formula) -> Result<Compiled> {
        let free = f.free_vars();
        let c = self.compile_rec(f)?;
        self.align(c, &free)
    }

    pub fn compile_str(&self, src: &str) -> Result<Compiled> {
        self.compile(&parse(src)?)
    }

    /// Compiles `src` with tracks in the given order. Every free variable
    /// must be listed.
    pub fn relation(&self, src: &str, order: &[&str]) -> Result<Dfa> {
        let f = parse_with_free(src, order)?;
        let mut sorted: Vec<String> = order.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != order.len() {
            return Err(Error::Invalid("duplicate variable in track order".into()));
        }
        let c = self.align(self.compile_rec(&f)?, &sorted)?;
        let target: Vec<String> = order.iter().map(|s| s.to_string()).collect();
        reorder(&c.dfa, &c.vars, &target)
    }

    pub fn decide(&self, f: &Formula) -> Result<Decision> {
        let free = f.free_vars();
        if !free.is_empty() {
            return Err(Error::UnboundVariable(free[0].clone()));
        }
        let (exists, block, body) = leading_block(f);
        if block.is_empty() {
            let c = self.compile_rec(f)?;
            return Ok(Decision { holds: c.dfa.is_final(c.dfa.initial()), assignment: None });
        }
        let c = self.compile_rec(body)?;
        let target = if exists { c.dfa.clone() } else { c.dfa.complement() };
        let word = target.shortest_accepted();
        let holds = word.is_some() == exists;
        let assignment = word.map(|w| {
            let values = if c.vars.is_empty() { Vec::new() } else { decode_tuple(&w).expect("fits") };
            block
                .iter()
                .map(|v| {
                    let val = c.vars.iter().position(|u| u == v).map_or(0, |p| values[p]);
                    (v.clone(), val)
                })
                .collect()
        });
        Ok(Decision { holds, assignment })
    }

    pub fn decide_str(&self, src: &str) -> Result<Decision> {
        self.decide(&parse_with_free(src, &[])?)
    }

    /// 0/1 sequence of a formula with exactly one free variable.
    pub fn characteristic(&self, f: &Formula) -> Result<Dfao> {
        let free = f.free_vars();
        if free.len() != 1 {
            return Err(Error::FreeVariables { expected: 1, found: free });
        }
        let c = self.compile(f)?;
        Ok(Dfao::from_dfa(&c.dfa)?.minimize())
    }

    pub fn characteristic_str(&self, src: &str) -> Result<Dfao> {
        self.characteristic(&parse(src)?)
    }

    fn check(&self, dfa: Dfa) -> Result<Dfa> {
        if dfa.num_states() > self.max_states {
            return Err(Error::ResourceLimit { states: dfa.num_states(), limit: self.max_states });
        }
        Ok(dfa)
    }

    fn constant(&self, value: bool) -> Compiled {
        let alphabet = Alphabet::new(self.base, 0).expect("valid base");
        Compiled { vars: Vec::new(), dfa: Dfa::constant(alphabet, value) }
    }

    fn compile_rec(&self, f: &Formula) -> Result<Compiled> {
        match f {
            Formula::True => Ok(self.constant(true)),
            Formula::False => Ok(self.constant(false)),
            Formula::Compare(a, op, b) => {
                let form = a.linear().plus(&b.linear(), -1);
                let vars: Vec<String> = form.coeffs.keys().cloned().collect();
                let alphabet = Alphabet::new(self.base, vars.len())?;
                let dfa = linear_relation(alphabet, &aligned(&form, &vars), form.constant, *op, self.max_states)?;
                Ok(Compiled { vars, dfa })
            }
            Formula::Index { seq, index, op, rhs } => {
                let lform = index.linear();
                let rform = match rhs {
                    IndexRhs::Index(_, t) => t.linear(),
                    IndexRhs::Symbol(_) => LinearForm::default(),
                };
                let mut vars: Vec<String> =
                    lform.coeffs.keys().chain(rform.coeffs.keys()).cloned().collect();
                vars.sort();
                vars.dedup();
                let alphabet = Alphabet::new(self.base, vars.len())?;
                let lhs = IndexSide { seq: self.sequence(seq)?, coeffs: aligned(&lform, &vars), constant: lform.constant };
                let dfa = match rhs {
                    IndexRhs::Index(name, _) => {
                        let side = IndexSide {
                            seq: self.sequence(name)?,
                            coeffs: aligned(&rform, &vars),
                            constant: rform.constant,
                        };
                        index_relation(alphabet, &lhs, *op, Ok(&side), self.max_states)?
                    }
                    IndexRhs::Symbol(c) => index_relation(alphabet, &lhs, *op, Err(*c), self.max_states)?,
                };
                Ok(Compiled { vars, dfa })
            }
            Formula::Relation(name, args) => self.compile_relation(name, args),
            Formula::Not(g) => {
                let c = self.compile_rec(g)?;
                Ok(Compiled { vars: c.vars, dfa: c.dfa.complement() })
            }
            Formula::And(a, b) => self.combine(a, b, BoolOp::And),
            Formula::Or(a, b) => self.combine(a, b, BoolOp::Or),
            Formula::Implies(a, b) => {
                let na = Formula::Not(a.clone());
                self.combine(&na, b, BoolOp::Or)
            }
            Formula::Iff(a, b) => {
                let c = self.combine(a, b, BoolOp::Xor)?;
                Ok(Compiled { vars: c.vars, dfa: c.dfa.complement() })
            }
            Formula::Exists(v, g) => {
                let c = self.compile_rec(g)?;
                self.exists(c, v)
            }
            Formula::Forall(v, g) => {
                let c = self.compile_rec(g)?;
                let neg = Compiled { vars: c.vars, dfa: c.dfa.complement() };
                let e = self.exists(neg, v)?;
                Ok(Compiled { vars: e.vars, dfa: e.dfa.complement() })
            }
        }
    }

    fn exists(&self, c: Compiled, v: &str) -> Result<Compiled> {
        match c.vars.iter().position(|u| u == v) {
            None => Ok(c),
            Some(pos) => {
                let dfa = self.check(c.dfa.exists_track(pos, self.max_states)?)?;
                let mut vars = c.vars;
                vars.remove(pos);
                Ok(Compiled { vars, dfa })
            }
        }
    }

    fn combine(&self, a: &Formula, b: &Formula, op: BoolOp) -> Result<Compiled> {
        let ca = self.compile_rec(a)?;
        let cb = self.compile_rec(b)?;
        let mut vars: Vec<String> = ca.vars.iter().chain(&cb.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        let da = self.align(ca, &vars)?.dfa;
        let db = self.align(cb, &vars)?.dfa;
        let dfa = self.check(da.product_bounded(&db, op, self.max_states)?.minimize())?;
        Ok(Compiled { vars, dfa })
    }

    /// Adds ignored tracks so the automaton ranges over `vars` (a sorted
    /// superset of `c.vars`).
    fn align(&self, c: Compiled, vars: &[String]) -> Result<Compiled> {
        let mut dfa = c.dfa;
        let mut j = 0;
        for (pos, v) in vars.iter().enumerate() {
            if c.vars.get(j) == Some(v) {
                j += 1;
            } else {
                dfa = dfa.inflate(pos)?;
            }
        }
        if j != c.vars.len() {
            return Err(Error::Invalid("alignment target is not a superset".into()));
        }
        Ok(Compiled { vars: vars.to_vec(), dfa })
    }

    fn compile_relation(&self, name: &str, args: &[Term]) -> Result<Compiled> {
        let rel = self.relations.get(name).ok_or_else(|| Error::UnboundSequence(name.to_string()))?;
        if rel.arity() != args.len() {
            return Err(Error::Arity { expected: rel.arity(), found: args.len() });
        }
        // plain distinct variables become tracks directly, anything else
        // goes through a fresh variable constrained by an equation
        let mut names = Vec::new();
        let mut equations = Vec::new();
        for (i, t) in args.iter().enumerate() {
            match t {
                Term::Var(v) if !names.contains(v) => names.push(v.clone()),
                _ => {
                    let fresh = format!("#r{i}");
                    equations.push(Formula::Compare(Term::Var(fresh.clone()), RelOp::Eq, t.clone()));
                    names.push(fresh);
                }
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        let mut c = Compiled { dfa: reorder(rel, &names, &sorted)?, vars: sorted };
        if equations.is_empty() {
            return Ok(c);
        }
        for eq in &equations {
            let e = self.compile_rec(eq)?;
            let mut vars: Vec<String> = c.vars.iter().chain(&e.vars).cloned().collect();
            vars.sort();
            vars.dedup();
            let da = self.align(c, &vars)?.dfa;
            let db = self.align(e, &vars)?.dfa;
            c = Compiled { dfa: self.check(da.product_bounded(&db, BoolOp::And, self.max_states)?.minimize())?, vars };
        }
        for name in names.iter().filter(|n| n.starts_with("#r")) {
            c = self.exists(c, name)?;
        }
        Ok(c)
    }
}

/// Splits off the leading block of like quantifiers.
fn leading_block(f: &Formula) -> (bool, Vec<String>, &Formula) {
    let mut vars = Vec::new();
    let exists = matches!(f, Formula::Exists(..));
    let mut cur = f;
    loop {
        match (cur, exists) {
            (Formula::Exists(v, g), true) | (Formula::Forall(v, g), false) => {
                vars.push(v.clone());
                cur = g;
            }
            _ => return (exists, vars, cur),
        }
    }
}

/// Moves tracks named `from` to the order given by `to` (same names).
fn reorder(dfa: &Dfa, from: &[String], to: &[String]) -> Result<Dfa> {
    if from == to {
        return Ok(dfa.clone());
    }
    let alphabet = dfa.alphabet();
    let source: Vec<usize> = from
        .iter()
        .map(|v| to.iter().position(|u| u == v).ok_or_else(|| Error::UnboundVariable(v.clone())))
        .collect::<Result<_>>()?;
    let map: Vec<u32> = (0..alphabet.size() as u32)
        .map(|a| {
            let digits: Vec<u32> = source.iter().map(|&p| alphabet.digit(a, p)).collect();
            alphabet.index(&digits)
        })
        .collect();
    let mut delta = Vec::with_capacity(dfa.num_states() * alphabet.size());
    for q in 0..dfa.num_states() as u32 {
        let row = dfa.row(q);
        delta.extend(map.iter().map(|&s| row[s as usize]));
    }
    let finals: Vec<u32> = dfa.finals().collect();
    Dfa::new(alphabet.base(), alphabet.arity(), dfa.num_states(), delta, dfa.initial(), &finals)
}

/// Compiles `f` in `env`.
pub fn compile(f: &Formula, env: &Env) -> Result<Compiled> {
    env.compile(f)
}

/// Decides the sentence `f` in `env`.
pub fn decide(f: &Formula, env: &Env) -> Result<Decision> {
    env.decide(f)
}

/// Characteristic sequence of a one-variable formula.
pub fn characteristic(f: &Formula, env: &Env) -> Result<Dfao> {
    env.characteristic(f)
}
