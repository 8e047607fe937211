//! Exact linear algebra over ℚ: minimization of representations and
//! discovery of kernel relations `f(k^e n + c) = Σ λ_j f(k^{e_j} n + c_j)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{dot, row_times, LinRep};
use crate::error::{Error, Result};
use crate::semiring::Rat;
use crate::semiring::Semiring;


/// Incrementally built basis of a row space, with every echelon row kept
/// as a combination of the inserted basis vectors.
struct Span {
    basis: Vec<Vec<Rat>>,
    echelon: Vec<(usize, Vec<Rat>, Vec<Rat>)>,
}

impl Span {
    fn new() -> Self {
        Span { basis: Vec::new(), echelon: Vec::new() }
    }

    /// Writes `v = residual + Σ coeffs_j basis_j`.
    fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r = v.to_vec();
        let mut coeffs = vec![<Rat as Zero>::zero(); self.basis.len()];
        for (p, row, combo) in &self.echelon {
            if Zero::is_zero(&r[*p]) {
                continue;
            }
            let f = &r[*p] / &row[*p];
            for (x, y) in r.iter_mut().zip(row) {
                if !Zero::is_zero(y) {
                    *x -= &f * y;
                }
            }
            for (c, y) in coeffs.iter_mut().zip(combo) {
                if !Zero::is_zero(y) {
                    *c += &f * y;
                }
            }
        }
        (r, coeffs)
    }

    /// Coefficients of `v` over the basis, or `None` after adding `v` to it.
    fn insert(&mut self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (r, coeffs) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !Zero::is_zero(x)) else {
            return Some(coeffs);
        };
        let m = self.basis.len();
        let mut combo: Vec<Rat> = coeffs.into_iter().map(|c| -c).collect();
        combo.push(<Rat as One>::one());
        for (_, _, c) in &mut self.echelon {
            c.push(<Rat as Zero>::zero());
        }
        self.echelon.push((p, r, combo));
        self.basis.push(v.to_vec());
        debug_assert_eq!(self.basis.len(), m + 1);
        None
    }
}

/// Restriction to the span of the reachable row vectors `u·μ(w)`.
fn reachable_part(l: &LinRep<Rat>) -> LinRep<Rat> {
    let k = l.base as usize;
    let mut span = Span::new();
    if span.insert(&l.u).is_some() {
        return LinRep::zero(l.base).expect("valid base");
    }
    let mut images: Vec<Vec<Vec<Rat>>> = Vec::new();
    let mut next = 0;
    while next < span.basis.len() {
        let b = span.basis[next].clone();
        let row: Vec<Vec<Rat>> = (0..k).map(|d| row_times(&b, &l.mu[d])).collect();
        for img in &row {
            span.insert(img);
        }
        images.push(row);
        next += 1;
    }
    let s = span.basis.len();
    let coords = |v: &[Rat]| {
        let (_, mut c) = span.reduce(v);
        c.resize(s, <Rat as Zero>::zero());
        c
    };
    let mu = (0..k)
        .map(|d| images.iter().map(|row| coords(&row[d])).collect())
        .collect();
    let mut u = vec![<Rat as Zero>::zero(); s];
    u[0] = <Rat as One>::one();
    let v = span.basis.iter().map(|b| dot(b, &l.v)).collect();
    LinRep { base: l.base, u, mu, v }
}

impl LinRep<Rat> {
    /// Minimal representation of the same series (Schützenberger
    /// reduction: observable part of the reachable part).
    pub fn minimize(&self) -> LinRep<Rat> {
        reachable_part(&reachable_part(&self.reverse()).reverse())
    }
}

/// `coeff · f(k^exp · n + offset)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelTerm {
    pub coeff: Rat,
    pub exp: u32,
    pub offset: u64,
}

/// A linear relation between kernel elements, holding for every `n ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub base: u32,
    pub lhs: Vec<KernelTerm>,
    pub rhs: Vec<KernelTerm>,
}

/// Outcome of [`kernel_relations`].
#[derive(Clone, Debug, PartialEq)]
pub struct KernelReport {
    /// Independent kernel elements `(exp, offset)`, in discovery order.
    pub basis: Vec<(u32, u64)>,
    /// One relation per dependent kernel element up to the depth.
    pub relations: Vec<Recurrence>,
    /// Whether the basis spans the whole kernel. When false the relations
    /// are still valid but the system is partial.
    pub closed: bool,
}

/// Kernel vector of `f(k^e n + c)`: `u·μ(c padded to e digits)`.
fn kernel_vector(l: &LinRep<Rat>, exp: u32, offset: u64) -> Vec<Rat> {
    let k = l.base as u64;
    let mut c = offset;
    let digits: Vec<u32> = (0..exp)
        .map(|_| {
            let d = (c % k) as u32;
            c /= k;
            d
        })
        .collect();
    l.state_after(&digits)
}

fn check_term(base: u32, exp: u32, offset: u64) -> Result<()> {
    let modulus = (base as u64).checked_pow(exp).ok_or_else(|| Error::Invalid("modulus too large".into()))?;
    if offset >= modulus {
        return Err(Error::Invalid(format!("offset {offset} must be below the modulus {modulus}")));
    }
    Ok(())
}

/// Relations among `f(k^e n + c)` for `e ≤ depth`, `0 ≤ c < k^e`, found by
/// exact elimination in the minimal representation, where a combination
/// of kernel vectors vanishes exactly when the corresponding combination
/// of subsequences is identically zero.
///
/// Elements are visited by increasing `e`, then `c`; each one either joins
/// the basis or yields a relation over earlier basis elements.
pub fn kernel_relations(l: &LinRep<Rat>, depth: u32) -> Result<KernelReport> {
    check_term(l.base, depth, 0)?;
    let m = l.normalize_trailing().minimize();
    let k = l.base as u64;
    let mut span = Span::new();
    let mut basis = Vec::new();
    let mut relations = Vec::new();
    let mut new_at_depth = false;
    for e in 0..=depth {
        for c in 0..k.pow(e) {
            match span.insert(&kernel_vector(&m, e, c)) {
                None => {
                    basis.push((e, c));
                    new_at_depth |= e == depth;
                }
                Some(coeffs) => {
                    let rhs = coeffs
                        .into_iter()
                        .zip(&basis)
                        .filter(|(x, _)| !Zero::is_zero(x))
                        .map(|(coeff, &(exp, offset))| KernelTerm { coeff, exp, offset })
                        .collect();
                    relations.push(Recurrence {
                        base: l.base,
                        lhs: vec![KernelTerm { coeff: <Rat as One>::one(), exp: e, offset: c }],
                        rhs,
                    });
                }
            }
        }
    }
    Ok(KernelReport { basis, relations, closed: (depth > 0 && !new_at_depth) || m.rank() == 0 })
}

impl Recurrence {
    /// Parses relations such as `f(4n+1) = f(2n+1)` or
    /// `f(16n) = -2f(4n) + 3f(8n)`. Coefficients may be integers or `p/q`;
    /// every multiplier of `n` must be a power of `base`.
    pub fn parse(text: &str, base: u32) -> Result<Recurrence> {
        let text = text.replace('−', "-");
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("relation `{text}` has no `=`")))?;
        Ok(Recurrence { base, lhs: parse_side(l, base)?, rhs: parse_side(r, base)? })
    }

    /// Exact check over all `n ≥ 0`.
    pub fn verify(&self, l: &LinRep<Rat>) -> Result<bool> {
        if l.base != self.base {
            return Err(Error::BaseMismatch(l.base, self.base));
        }
        let m = l.normalize_trailing().minimize();
        let mut z = vec![<Rat as Zero>::zero(); m.rank()];
        for (sign, terms) in [(<Rat as One>::one(), &self.lhs), (-<Rat as One>::one(), &self.rhs)] {
            for t in terms {
                check_term(self.base, t.exp, t.offset)?;
                let w = kernel_vector(&m, t.exp, t.offset);
                let f = &sign * &t.coeff;
                for (x, y) in z.iter_mut().zip(&w) {
                    *x += &f * y;
                }
            }
        }
        Ok(z.iter().all(Zero::is_zero))
    }

    /// Evaluates both sides at `n` on a plain sequence.
    pub fn holds_at(&self, n: u64, f: impl Fn(u64) -> Rat) -> bool {
        let side = |terms: &[KernelTerm]| {
            terms.iter().fold(<Rat as Zero>::zero(), |acc, t| {
                acc + &t.coeff * f((self.base as u64).pow(t.exp) * n + t.offset)
            })
        };
        side(&self.lhs) == side(&self.rhs)
    }
}

fn parse_side(s: &str, base: u32) -> Result<Vec<KernelTerm>> {
    let bad = |msg: &str| Error::Invalid(format!("bad relation side `{}`: {msg}", s.trim()));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if let Some(stripped) = rest.strip_prefix(['+', '-']) {
            rest = stripped;
        } else if !terms.is_empty() {
            return Err(bad("expected `+` or `-`"));
        }
        let name_at = rest.find(|c: char| c.is_alphabetic()).ok_or_else(|| bad("missing sequence name"))?;
        let coeff_text = rest[..name_at].trim_end_matches('*').trim_start_matches('(').trim_end_matches(')');
        let mut coeff = if coeff_text.is_empty() {
            <Rat as One>::one()
        } else {
            <Rat as Semiring>::parse_entry(coeff_text).map_err(|_| bad("bad coefficient"))?
        };
        if negative {
            coeff = -coeff;
        }
        let open = name_at + rest[name_at..].find('(').ok_or_else(|| bad("missing `(`"))?;
        let close = open + rest[open..].find(')').ok_or_else(|| bad("missing `)`"))?;
        let arg = &rest[open + 1..close];
        let (mult, offset) = arg.split_once('n').ok_or_else(|| bad("argument must mention `n`"))?;
        let mult: u64 = if mult.is_empty() { 1 } else { mult.trim_end_matches('*').parse().map_err(|_| bad("bad multiplier"))? };
        let offset: u64 = match offset {
            "" => 0,
            o => o.strip_prefix('+').and_then(|o| o.parse().ok()).ok_or_else(|| bad("bad offset"))?,
        };
        let mut exp = 0;
        let mut power = 1u64;
        while power < mult {
            power = power.saturating_mul(base as u64);
            exp += 1;
        }
        if power != mult {
            return Err(bad("multiplier must be a power of the base"));
        }
        check_term(base, exp, offset)?;
        terms.push(KernelTerm { coeff, exp, offset });
        rest = &rest[close + 1..];
    }
    Ok(terms)
}

fn write_side(f: &mut fmt::Formatter<'_>, base: u32, terms: &[KernelTerm]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, t) in terms.iter().enumerate() {
        let mag = t.coeff.abs();
        match (i, t.coeff.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if !mag.is_one() {
            if mag.is_integer() {
                write!(f, "{}", mag.numer())?;
            } else {
                write!(f, "({mag})")?;
            }
        }
        let mult = BigInt::from(base).pow(t.exp);
        let scaled = if mult.is_one() { "n".to_string() } else { format!("{mult}n") };
        if t.offset == 0 {
            write!(f, "f({scaled})")?;
        } else {
            write!(f, "f({scaled}+{})", t.offset)?;
        }
    }
    Ok(())
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, self.base, &self.lhs)?;
        write!(f, " = ")?;
        write_side(f, self.base, &self.rhs)
    }
}
