//! A small expression language for field elements and polynomials:
//! integers, variables, `+ - * / ^`, parentheses and implicit multiplication
//! (`2t`, `3(t+1)`).

use super::field::Field;
use super::poly::{Poly, PolyRing};
use super::ratfunc::{RatFunc, RationalFunctionField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[start..i].iter().collect();
            out.push(Tok::Int(text.parse().map_err(|_| Error::Parse(format!("integer `{text}` too large")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
                }
                _ => Err(Error::Parse("exponent must be an integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

/// Evaluates an expression in a field, with a callback resolving variables.
pub fn eval_in<F: Field>(
    field: &F,
    e: &Expr,
    var: &dyn Fn(&str) -> Option<F::Elem>,
) -> Result<F::Elem> {
    let rec = |x: &Expr| eval_in(field, x, var);
    Ok(match e {
        Expr::Int(n) => field.from_int(*n),
        Expr::Var(v) => var(v).ok_or_else(|| Error::Parse(format!("unknown variable `{v}`")))?,
        Expr::Neg(a) => field.neg(&rec(a)?),
        Expr::Add(a, b) => field.add(&rec(a)?, &rec(b)?),
        Expr::Sub(a, b) => field.sub(&rec(a)?, &rec(b)?),
        Expr::Mul(a, b) => field.mul(&rec(a)?, &rec(b)?),
        Expr::Div(a, b) => field
            .div(&rec(a)?, &rec(b)?)
            .ok_or_else(|| Error::Parse("division by zero".into()))?,
        Expr::Pow(a, k) => field
            .pow_signed(&rec(a)?, *k)
            .ok_or_else(|| Error::Parse("zero to a negative power".into()))?,
    })
}

/// Parses a polynomial in the variable `var` over `ring`, e.g. `t^2 + 2*t + 1`.
pub fn parse_poly<F: Field>(ring: &PolyRing<F>, s: &str, var: &str) -> Result<Poly<F::Elem>> {
    let k = RationalFunctionField::new(ring.field().clone());
    let r = parse_ratfunc(&k, s, var, &|_| None)?;
    if !k.is_polynomial(&r) {
        return Err(Error::Parse(format!("`{s}` is not a polynomial")));
    }
    Ok(r.num)
}

/// Parses a rational function in `var`; other names go through `consts`.
pub fn parse_ratfunc<F: Field>(
    k: &RationalFunctionField<F>,
    s: &str,
    var: &str,
    consts: &dyn Fn(&str) -> Option<F::Elem>,
) -> Result<RatFunc<F::Elem>> {
    let e = parse_expr(s)?;
    let x = k.var();
    eval_in(k, &e, &|name| {
        if name == var {
            Some(x.clone())
        } else {
            consts(name).map(|c| k.constant(&c))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ff::FiniteField;

    #[test]
    fn precedence_and_implicit_products() {
        let f = FiniteField::new(7, 1).unwrap();
        let ring = PolyRing::new(f.clone());
        let a = parse_poly(&ring, "2t^2 + 3(t - 1) - 1", "t").unwrap();
        let b = ring.from_coeffs_desc(vec![f.from_int(2), f.from_int(3), f.from_int(-4)]);
        assert_eq!(a, b);
        assert!(parse_poly(&ring, "1/t", "t").is_err());
        assert!(parse_expr("2 +").is_err());
    }

    #[test]
    fn rational_functions() {
        let f = FiniteField::new(3, 1).unwrap();
        let k = RationalFunctionField::new(f);
        let r = parse_ratfunc(&k, "(t^2 - 1)/(t + 1)", "t", &|_| None).unwrap();
        assert_eq!(k.fmt_elem(&r), "t + 2");
        let r = parse_ratfunc(&k, "t^-2", "t", &|_| None).unwrap();
        assert_eq!(k.fmt_elem(&r), "1/t^2");
    }
}
