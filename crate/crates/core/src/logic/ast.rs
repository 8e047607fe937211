use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Arithmetic term over natural variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(u64),
    Add(Box<Term>, Box<Term>),
    /// Only meaningful inside comparisons and indices, where it is moved to
    /// the other side.
    Sub(Box<Term>, Box<Term>),
    Mul(u64, Box<Term>),
}

/// Comparison operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    pub fn holds<T: Ord>(self, a: T, b: T) -> bool {
        match self {
            RelOp::Eq => a == b,
            RelOp::Ne => a != b,
            RelOp::Lt => a < b,
            RelOp::Le => a <= b,
            RelOp::Gt => a > b,
            RelOp::Ge => a >= b,
        }
    }

    pub fn negate(self) -> RelOp {
        match self {
            RelOp::Eq => RelOp::Ne,
            RelOp::Ne => RelOp::Eq,
            RelOp::Lt => RelOp::Ge,
            RelOp::Le => RelOp::Gt,
            RelOp::Gt => RelOp::Le,
            RelOp::Ge => RelOp::Lt,
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        })
    }
}

/// Right-hand side of a sequence comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexRhs {
    /// `y[t]`
    Index(String, Term),
    /// A literal output symbol.
    Symbol(u32),
}

/// First-order formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Compare(Term, RelOp, Term),
    /// `x[t] op rhs`. A negative index makes the atom false.
    Index { seq: String, index: Term, op: RelOp, rhs: IndexRhs },
    /// Application of a named relation to terms.
    Relation(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Mul(_, t) => t.collect_vars(out),
        }
    }

    /// Integer linear form of the term.
    pub fn linear(&self) -> LinearForm {
        match self {
            Term::Var(v) => LinearForm { coeffs: [(v.clone(), 1)].into(), constant: 0 },
            Term::Const(c) => LinearForm { coeffs: BTreeMap::new(), constant: *c as i64 },
            Term::Add(a, b) => a.linear().plus(&b.linear(), 1),
            Term::Sub(a, b) => a.linear().plus(&b.linear(), -1),
            Term::Mul(c, t) => t.linear().scaled(*c as i64),
        }
    }
}

/// `Σ coeffs[v]·v + constant`, zero coefficients removed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn plus(&self, other: &LinearForm, sign: i64) -> LinearForm {
        let mut coeffs = self.coeffs.clone();
        for (v, c) in &other.coeffs {
            *coeffs.entry(v.clone()).or_insert(0) += sign * c;
        }
        coeffs.retain(|_, c| *c != 0);
        LinearForm { coeffs, constant: self.constant + sign * other.constant }
    }

    pub fn scaled(&self, by: i64) -> LinearForm {
        if by == 0 {
            return LinearForm::default();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * by)).collect(),
            constant: self.constant * by,
        }
    }

    pub fn eval(&self, env: &BTreeMap<String, u64>) -> i64 {
        self.constant + self.coeffs.iter().map(|(v, c)| c * env[v] as i64).sum::<i64>()
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out.into_iter().collect()
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Compare(a, _, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Index { index, rhs, .. } => {
                index.collect_vars(out);
                if let IndexRhs::Index(_, t) = rhs {
                    t.collect_vars(out);
                }
            }
            Formula::Relation(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Not(f) => f.collect_free(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut inner = BTreeSet::new();
                f.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Sequence names used by index atoms.
    pub fn sequences(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Index { seq, rhs, .. } = f {
                out.insert(seq.clone());
                if let IndexRhs::Index(s, _) = rhs {
                    out.insert(s.clone());
                }
            }
        });
        out
    }

    fn visit(&self, g: &mut impl FnMut(&Formula)) {
        g(self);
        match self {
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.visit(g),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(g);
                b.visit(g);
            }
            _ => {}
        }
    }
}
