//! Recursive-descent parser for the predicate language.
//!
//! ```text
//! formula  := iff
//! iff      := implies ("<=>" implies)*
//! implies  := or ("=>" implies)?
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "~" unary | quant | atom | "(" formula ")"
//! quant    := ("E" | "A") var ("," var)* [("<" | "<=") term] [":"] formula
//! atom     := "true" | "false" | operand relop operand
//!           | term "≡" num "mod" num | "mod(" term "," num "," num ")"
//!           | name "(" term ("," term)* ")"
//! operand  := name "[" term "]" | term
//! term     := product (("+" | "-") product)*
//! product  := num "*" factor | factor ["*" num]
//! factor   := var | num | "(" term ")"
//! ```
//!
//! A quantifier body extends as far to the right as possible.

use super::ast::{Formula, IndexRhs, RelOp, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Plus,
    Minus,
    Star,
    Slash,
    Rel(RelOp),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Congruent,
    Exists,
    Forall,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 3)].iter().map(|&(_, c)| c).collect();
        let (tok, len) = if two.starts_with("<=>") {
            (Tok::Iff, 3)
        } else if two.starts_with("=>") {
            (Tok::Implies, 2)
        } else if two.starts_with("<=") {
            (Tok::Rel(RelOp::Le), 2)
        } else if two.starts_with(">=") {
            (Tok::Rel(RelOp::Ge), 2)
        } else if two.starts_with("!=") {
            (Tok::Rel(RelOp::Ne), 2)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while at(j).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
            }
            let text: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            let n = text
                .parse()
                .map_err(|_| Error::Syntax { pos, msg: format!("number `{text}` too large") })?;
            (Tok::Num(n), j - i)
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while at(j).is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                j += 1;
            }
            let text: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            (Tok::Ident(text), j - i)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '=' => Tok::Rel(RelOp::Eq),
                '<' => Tok::Rel(RelOp::Lt),
                '>' => Tok::Rel(RelOp::Gt),
                '≠' => Tok::Rel(RelOp::Ne),
                '≤' => Tok::Rel(RelOp::Le),
                '≥' => Tok::Rel(RelOp::Ge),
                '~' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '⇒' | '→' => Tok::Implies,
                '⇔' | '↔' => Tok::Iff,
                '≡' => Tok::Congruent,
                '∃' => Tok::Exists,
                '∀' => Tok::Forall,
                _ => return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") }),
            };
            (tok, 1)
        };
        out.push((pos, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    fresh: usize,
}

/// Parses a formula. Congruences and bounded quantifiers are expanded.
pub fn parse(src: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(src)?, pos: 0, end: src.len(), fresh: 0 };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a formula and checks that its free variables are among `allowed`.
pub fn parse_with_free(src: &str, allowed: &[&str]) -> Result<Formula> {
    let f = parse(src)?;
    if let Some(v) = f.free_vars().into_iter().find(|v| !allowed.contains(&v.as_str())) {
        return Err(Error::UnboundVariable(v));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.offset(), msg: msg.into() }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected a variable name")),
        }
    }

    fn number(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected a number")),
        }
    }

    fn fresh_var(&mut self) -> String {
        self.fresh += 1;
        format!("#q{}", self.fresh)
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut f = self.implies()?;
        while self.eat(&Tok::Iff) {
            let g = self.implies()?;
            f = Formula::Iff(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if self.eat(&Tok::Implies) {
            let g = self.implies()?;
            return Ok(Formula::implies(f, g));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            let g = self.and()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn quantifier_token(&self) -> Option<bool> {
        let starts_var = matches!(self.peek_at(1), Some(Tok::Ident(s)) if !is_keyword(s));
        match self.peek() {
            Some(Tok::Exists) => Some(true),
            Some(Tok::Forall) => Some(false),
            Some(Tok::Ident(s)) if s == "E" && starts_var => Some(true),
            Some(Tok::Ident(s)) if s == "A" && starts_var => Some(false),
            _ => None,
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        if let Some(exists) = self.quantifier_token() {
            self.pos += 1;
            return self.quantifier(exists);
        }
        let start = self.pos;
        match self.atom() {
            Ok(f) => Ok(f),
            Err(atom_err) => {
                let atom_pos = self.pos;
                self.pos = start;
                if self.eat(&Tok::LParen) {
                    let inner = self.formula().and_then(|f| {
                        self.expect(&Tok::RParen, "`)`")?;
                        Ok(f)
                    });
                    match inner {
                        Ok(f) => Ok(f),
                        // report whichever attempt got further
                        Err(e) if self.pos >= atom_pos => Err(e),
                        Err(_) => Err(atom_err),
                    }
                } else {
                    Err(atom_err)
                }
            }
        }
    }

    fn quantifier(&mut self, exists: bool) -> Result<Formula> {
        let mut vars = vec![self.ident()?];
        while self.eat(&Tok::Comma) {
            vars.push(self.ident()?);
        }
        let bound = match self.peek() {
            Some(Tok::Rel(op @ (RelOp::Lt | RelOp::Le))) => {
                let op = *op;
                if vars.len() != 1 {
                    return Err(self.error("a bounded quantifier takes one variable"));
                }
                self.pos += 1;
                Some((op, self.term()?))
            }
            _ => None,
        };
        self.eat(&Tok::Colon);
        let mut body = self.formula()?;
        if let Some((op, t)) = bound {
            let guard = Formula::Compare(Term::Var(vars[0].clone()), op, t);
            body = if exists { Formula::and(guard, body) } else { Formula::implies(guard, body) };
        }
        for v in vars.iter().rev() {
            body = if exists { Formula::exists(v, body) } else { Formula::forall(v, body) };
        }
        Ok(body)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                return Ok(Formula::True);
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                return Ok(Formula::False);
            }
            Some(Tok::Ident(s)) if s == "mod" && self.peek_at(1) == Some(&Tok::LParen) => {
                self.pos += 2;
                let t = self.term()?;
                self.expect(&Tok::Comma, "`,`")?;
                let m = self.number()?;
                self.expect(&Tok::Comma, "`,`")?;
                let a = self.number()?;
                self.expect(&Tok::RParen, "`)`")?;
                return self.congruence(t, m, a);
            }
            Some(Tok::Ident(s)) if !is_keyword(s) && self.peek_at(1) == Some(&Tok::LParen) => {
                let name = s.clone();
                self.pos += 2;
                let mut args = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(&Tok::RParen, "`)`")?;
                return Ok(Formula::Relation(name, args));
            }
            _ => {}
        }
        let lhs = self.operand()?;
        if self.eat(&Tok::Congruent) {
            let Operand::Term(t) = lhs else {
                return Err(self.error("congruence needs an arithmetic term"));
            };
            let a = self.number()?;
            match self.peek() {
                Some(Tok::Ident(s)) if s == "mod" => self.pos += 1,
                _ => return Err(self.error("expected `mod`")),
            }
            let m = self.number()?;
            return self.congruence(t, m, a);
        }
        let op = match self.peek() {
            Some(Tok::Rel(op)) => *op,
            Some(Tok::Slash) => return Err(self.error("division is not supported; multiply the other side")),
            _ => return Err(self.error("expected a comparison operator")),
        };
        self.pos += 1;
        let rhs = self.operand()?;
        if self.peek() == Some(&Tok::Slash) {
            return Err(self.error("division is not supported; multiply the other side"));
        }
        self.comparison(lhs, op, rhs)
    }

    /// `t ≡ a (mod m)` becomes `∃q: t = m*q + a`.
    fn congruence(&mut self, t: Term, m: u64, a: u64) -> Result<Formula> {
        if m == 0 {
            return Err(self.error("modulus must be positive"));
        }
        let q = self.fresh_var();
        let rhs = Term::Add(Box::new(Term::Mul(m, Box::new(Term::Var(q.clone())))), Box::new(Term::Const(a % m)));
        Ok(Formula::exists(&q, Formula::Compare(t, RelOp::Eq, rhs)))
    }

    fn comparison(&self, lhs: Operand, op: RelOp, rhs: Operand) -> Result<Formula> {
        let flip = |op: RelOp| match op {
            RelOp::Lt => RelOp::Gt,
            RelOp::Le => RelOp::Ge,
            RelOp::Gt => RelOp::Lt,
            RelOp::Ge => RelOp::Le,
            o => o,
        };
        let symbol = |t: &Term| match t {
            Term::Const(c) => u32::try_from(*c).ok(),
            _ => None,
        };
        Ok(match (lhs, rhs) {
            (Operand::Term(a), Operand::Term(b)) => Formula::Compare(a, op, b),
            (Operand::Index(x, t), Operand::Index(y, u)) => {
                Formula::Index { seq: x, index: t, op, rhs: IndexRhs::Index(y, u) }
            }
            (Operand::Index(x, t), Operand::Term(c)) => {
                let c = symbol(&c).ok_or_else(|| self.error("a sequence value can only be compared with a constant symbol"))?;
                Formula::Index { seq: x, index: t, op, rhs: IndexRhs::Symbol(c) }
            }
            (Operand::Term(c), Operand::Index(x, t)) => {
                let c = symbol(&c).ok_or_else(|| self.error("a sequence value can only be compared with a constant symbol"))?;
                Formula::Index { seq: x, index: t, op: flip(op), rhs: IndexRhs::Symbol(c) }
            }
        })
    }

    fn operand(&mut self) -> Result<Operand> {
        if let (Some(Tok::Ident(s)), Some(Tok::LBrack)) = (self.peek(), self.peek_at(1)) {
            let name = s.clone();
            self.pos += 2;
            let t = self.term()?;
            self.expect(&Tok::RBrack, "`]`")?;
            return Ok(Operand::Index(name, t));
        }
        Ok(Operand::Term(self.term()?))
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                t = Term::Add(Box::new(t), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                t = Term::Sub(Box::new(t), Box::new(self.product()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        if let (Some(Tok::Num(c)), Some(Tok::Star)) = (self.peek(), self.peek_at(1)) {
            let c = *c;
            self.pos += 2;
            return Ok(Term::Mul(c, Box::new(self.factor()?)));
        }
        let f = self.factor()?;
        if self.eat(&Tok::Star) {
            let c = self.number().map_err(|_| self.error("only multiplication by a constant is supported"))?;
            return Ok(Term::Mul(c, Box::new(f)));
        }
        if self.peek() == Some(&Tok::Slash) {
            return Err(self.error("division is not supported; multiply the other side"));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(Term::Const(n))
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident()?)),
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

enum Operand {
    Term(Term),
    Index(String, Term),
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "E" | "A" | "mod" | "true" | "false")
}
