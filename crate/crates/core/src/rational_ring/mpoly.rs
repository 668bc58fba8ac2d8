//! Sparse polynomials in `t1, t2` over the valuation ring of a local field.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::ff::{FfElem, FiniteField};
use crate::arith::field::Field;
use crate::arith::local::{LocalElement, LocalFieldCtx};
use crate::arith::parse::{parse_expr, Expr};
use crate::arith::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

pub type Exponent = [u32; 2];

/// Nonzero terms keyed by exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    terms: BTreeMap<Exponent, LocalElement>,
}

impl MPoly {
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &LocalElement)> {
        self.terms.iter()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &LocalElement> {
        self.terms.values()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `t_{i+1}`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }
}

fn fmt_monomial(e: &Exponent) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => out.push(format!("t{}", i + 1)),
            k => out.push(format!("t{}^{k}", i + 1)),
        }
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut factors = vec![format!("[{c}]")];
                factors.extend(fmt_monomial(e));
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `A[t1]` or `A[t1, t2]`. Implements [`Field`] for its ring operations;
/// `inv` only succeeds on constant units.
#[derive(Clone, Debug)]
pub struct MPolyRing {
    ctx: LocalFieldCtx,
    nvars: usize,
}

impl MPolyRing {
    pub fn new(ctx: &LocalFieldCtx, nvars: usize) -> Result<Self> {
        if !(1..=2).contains(&nvars) {
            return Err(Error::Unsupported(format!("{nvars} variables; only 1 or 2 are supported")));
        }
        Ok(MPolyRing { ctx: ctx.clone(), nvars })
    }

    pub fn ctx(&self) -> &LocalFieldCtx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Exponent, LocalElement)>) -> MPoly {
        let mut out = MPoly { terms: BTreeMap::new() };
        for (e, c) in terms {
            self.add_term(&mut out, e, &c);
        }
        out
    }

    fn add_term(&self, p: &mut MPoly, e: Exponent, c: &LocalElement) {
        if c.is_zero() {
            return;
        }
        let sum = match p.terms.get(&e) {
            Some(old) => self.ctx.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            p.terms.remove(&e);
        } else {
            p.terms.insert(e, sum);
        }
    }

    pub fn constant(&self, c: &LocalElement) -> MPoly {
        self.from_terms([([0, 0], c.clone())])
    }

    /// `t_{i+1}`.
    pub fn var(&self, i: usize) -> MPoly {
        let mut e = [0, 0];
        e[i] = 1;
        self.from_terms([(e, self.ctx.one())])
    }

    pub fn as_constant(&self, p: &MPoly) -> Option<LocalElement> {
        match p.terms.len() {
            0 => Some(self.ctx.zero()),
            1 => p.terms.get(&[0, 0]).cloned(),
            _ => None,
        }
    }

    /// Some coefficient is a unit.
    pub fn s_member(&self, f: &MPoly) -> bool {
        f.coeffs().any(|c| self.ctx.is_unit(c))
    }

    pub fn is_integral(&self, f: &MPoly) -> bool {
        f.coeffs().all(|c| self.ctx.is_integral(c))
    }

    /// Renames `t1 ↦ t_{i+1}` in a polynomial of `A[t1]`.
    pub fn substitute_var(&self, f: &MPoly, i: usize) -> MPoly {
        self.from_terms(f.terms().map(|(e, c)| {
            let mut ne = [0, 0];
            ne[i] = e[0];
            (ne, c.clone())
        }))
    }

    /// A polynomial in `t1` alone as a univariate polynomial.
    pub fn to_univariate(&self, f: &MPoly) -> Result<Poly<LocalElement>> {
        let ring = PolyRing::new(self.ctx.clone());
        let d = f.degree_in(0).unwrap_or(0) as usize;
        let mut c = vec![self.ctx.zero(); d + 1];
        for (e, v) in f.terms() {
            if e[1] != 0 {
                return Err(Error::Unsupported("polynomial involves t2".into()));
            }
            c[e[0] as usize] = v.clone();
        }
        Ok(ring.from_coeffs(c))
    }

    pub fn from_univariate(&self, p: &Poly<LocalElement>) -> MPoly {
        self.from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ([i as u32, 0], c.clone())))
    }

    /// Coefficientwise residue, collected by powers of `t2`: entry `j` is
    /// the coefficient of `t2^j` as a polynomial in `t1` over `κ`.
    pub fn residue(&self, f: &MPoly) -> Result<Vec<Poly<FfElem>>> {
        let kappa: &FiniteField = self.ctx.residue_field();
        let ring = PolyRing::new(kappa.clone());
        let d2 = f.degree_in(1).unwrap_or(0) as usize;
        let d1 = f.degree_in(0).unwrap_or(0) as usize;
        let mut rows = vec![vec![kappa.zero(); d1 + 1]; d2 + 1];
        for (e, c) in f.terms() {
            let r = self.ctx.residue(c).map_err(|_| Error::PrecisionTooLowToReduce)?;
            rows[e[1] as usize][e[0] as usize] = r;
        }
        Ok(rows.into_iter().map(|r| ring.from_coeffs(r)).collect())
    }

    /// Parses `c*t1^a*t2^b + …`. Integer literals are embedded in `A`, `pi`
    /// is the uniformizer, `t` abbreviates `t1`, and `[…]` wraps an element
    /// in the exact local element syntax.
    pub fn parse(&self, s: &str) -> Result<MPoly> {
        let (text, consts) = extract_brackets(&self.ctx, s)?;
        let e = parse_expr(&text)?;
        self.eval(&e, &consts)
    }

    fn eval(&self, e: &Expr, consts: &[LocalElement]) -> Result<MPoly> {
        let rec = |x: &Expr| self.eval(x, consts);
        Ok(match e {
            Expr::Int(n) => self.constant(&self.ctx.from_int(*n)),
            Expr::Var(v) => self.resolve(v, consts)?,
            Expr::Neg(a) => self.neg(&rec(a)?),
            Expr::Add(a, b) => self.add(&rec(a)?, &rec(b)?),
            Expr::Sub(a, b) => self.sub(&rec(a)?, &rec(b)?),
            Expr::Mul(a, b) => self.mul(&rec(a)?, &rec(b)?),
            Expr::Div(a, b) => {
                let d = rec(b)?;
                let inv = self.inv(&d).ok_or_else(|| Error::Parse(format!("cannot divide by {d}")))?;
                self.mul(&rec(a)?, &inv)
            }
            Expr::Pow(a, k) => {
                let b = rec(a)?;
                self.pow_signed(&b, *k).ok_or_else(|| Error::Parse(format!("cannot invert {b}")))?
            }
        })
    }

    pub(crate) fn resolve(&self, name: &str, consts: &[LocalElement]) -> Result<MPoly> {
        match name {
            "t" | "t1" => Ok(self.var(0)),
            "t2" if self.nvars == 2 => Ok(self.var(1)),
            "pi" => Ok(self.constant(self.ctx.uniformizer())),
            _ => {
                if let Some(i) = name.strip_prefix("c").and_then(|k| k.parse::<usize>().ok()) {
                    if let Some(c) = consts.get(i) {
                        return Ok(self.constant(c));
                    }
                }
                Err(Error::Parse(format!("unknown variable `{name}`")))
            }
        }
    }
}

/// Replaces each `[…]` by a placeholder `c<i>` and parses its contents.
pub(crate) fn extract_brackets(ctx: &LocalFieldCtx, s: &str) -> Result<(String, Vec<LocalElement>)> {
    let mut text = String::new();
    let mut consts = Vec::new();
    let mut rest = s;
    while let Some(open) = rest.find('[') {
        let close = rest[open..]
            .find(']')
            .map(|c| open + c)
            .ok_or_else(|| Error::Parse(format!("unbalanced `[` in `{s}`")))?;
        text.push_str(&rest[..open]);
        text.push_str(&format!(" c{} ", consts.len()));
        consts.push(ctx.parse(&rest[open + 1..close])?);
        rest = &rest[close + 1..];
    }
    text.push_str(rest);
    Ok((text, consts))
}

impl Field for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly { terms: BTreeMap::new() }
    }

    fn one(&self) -> MPoly {
        self.constant(&self.ctx.one())
    }

    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        for (e, c) in b.terms() {
            self.add_term(&mut out, *e, c);
        }
        out
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        self.from_terms(a.terms().map(|(e, c)| (*e, self.ctx.neg(c))))
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = self.zero();
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                self.add_term(&mut out, [ea[0] + eb[0], ea[1] + eb[1]], &self.ctx.mul(ca, cb));
            }
        }
        out
    }

    fn inv(&self, a: &MPoly) -> Option<MPoly> {
        let c = self.as_constant(a)?;
        if !self.ctx.is_unit(&c) {
            return None;
        }
        Some(self.constant(&self.ctx.inv(&c)?))
    }

    fn characteristic(&self) -> u64 {
        self.ctx.characteristic()
    }

    /// Equality modulo `π^N`, the absolute precision of integral values.
    fn equal(&self, a: &MPoly, b: &MPoly) -> bool {
        let n = self.ctx.precision() as i64;
        self.sub(a, b).coeffs().all(|c| c.valuation().is_none_or(|v| v >= n))
    }

    fn fmt_elem(&self, a: &MPoly) -> String {
        a.to_string()
    }
}
