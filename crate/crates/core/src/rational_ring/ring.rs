//! `A(t1, …, tk)`: fractions over `A[t1, …, tk]` whose denominators have a
//! unit coefficient. This ring is local with maximal ideal `m·A(t)` and
//! residue field `κ(t1, …, tk)`.

use std::fmt;

use super::mpoly::{extract_brackets, MPoly, MPolyRing};
use crate::arith::ff::FfElem;
use crate::arith::field::Field;
use crate::arith::local::{LocalElement, LocalFieldCtx};
use crate::arith::parse::{parse_expr, Expr};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{RatFunc, RationalFunctionField};
use crate::bass_tate::Fqt;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RationalRingElem {
    pub num: MPoly,
    pub den: MPoly,
}

impl fmt::Display for RationalRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// `κ(t1)` or `κ(t1)(t2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidueValue {
    Univariate(RatFunc<FfElem>),
    Bivariate(RatFunc<RatFunc<FfElem>>),
}

#[derive(Clone, Debug)]
pub struct RationalRing {
    polys: MPolyRing,
}

impl RationalRing {
    pub fn new(ctx: &LocalFieldCtx, nvars: usize) -> Result<Self> {
        Ok(RationalRing {
            polys: MPolyRing::new(ctx, nvars)?,
        })
    }

    pub fn polys(&self) -> &MPolyRing {
        &self.polys
    }

    pub fn ctx(&self) -> &LocalFieldCtx {
        self.polys.ctx()
    }

    pub fn nvars(&self) -> usize {
        self.polys.nvars()
    }

    pub fn frac(&self, num: &MPoly, den: &MPoly) -> Result<RationalRingElem> {
        if !self.polys.is_integral(num) || !self.polys.is_integral(den) {
            return Err(Error::Unsupported("coefficients must be integral".into()));
        }
        if !self.polys.s_member(den) {
            return Err(Error::NotInS);
        }
        Ok(RationalRingElem {
            num: num.clone(),
            den: den.clone(),
        })
    }

    pub fn from_poly(&self, p: &MPoly) -> RationalRingElem {
        RationalRingElem {
            num: p.clone(),
            den: self.polys.one(),
        }
    }

    pub fn constant(&self, c: &LocalElement) -> RationalRingElem {
        self.from_poly(&self.polys.constant(c))
    }

    pub fn var(&self, i: usize) -> RationalRingElem {
        self.from_poly(&self.polys.var(i))
    }

    pub fn is_unit(&self, x: &RationalRingElem) -> bool {
        self.polys.s_member(&x.num)
    }

    /// Both parts constant.
    pub fn as_constant(&self, x: &RationalRingElem) -> Option<LocalElement> {
        let n = self.polys.as_constant(&x.num)?;
        let d = self.polys.as_constant(&x.den)?;
        self.ctx().div(&n, &d)
    }

    pub fn residue_map(&self, x: &RationalRingElem) -> Result<ResidueValue> {
        let kappa = self.ctx().residue_field().clone();
        let k1: Fqt = RationalFunctionField::new(kappa);
        let rows = |p: &MPoly| -> Result<Vec<RatFunc<FfElem>>> {
            Ok(self.polys.residue(p)?.iter().map(|r| k1.from_poly(r)).collect())
        };
        let (n, d) = (rows(&x.num)?, rows(&x.den)?);
        if self.nvars() == 1 {
            return Ok(ResidueValue::Univariate(k1.div(&n[0], &d[0]).ok_or(Error::NotInS)?));
        }
        let k2 = RationalFunctionField::new(k1.clone());
        let ring = PolyRing::new(k1.clone());
        let (pn, pd) = (ring.from_coeffs(n), ring.from_coeffs(d));
        let v = k2.frac(&pn, &pd).ok_or(Error::NotInS)?;
        Ok(ResidueValue::Bivariate(v))
    }

    /// `ι_i`: `A(t) → A(t1, t2)`, `t ↦ t_{i+1}`.
    pub fn substitute(&self, target: &RationalRing, x: &RationalRingElem, i: usize) -> RationalRingElem {
        RationalRingElem {
            num: target.polys.substitute_var(&x.num, i),
            den: target.polys.substitute_var(&x.den, i),
        }
    }

    /// Parses an expression in `t1, t2, pi`, integers and `[local element]`;
    /// division requires a divisor in `S`.
    pub fn parse(&self, s: &str) -> Result<RationalRingElem> {
        let (text, consts) = extract_brackets(self.ctx(), s)?;
        let e = parse_expr(&text)?;
        self.eval(&e, &consts)
    }

    fn eval(&self, e: &Expr, consts: &[LocalElement]) -> Result<RationalRingElem> {
        let rec = |x: &Expr| self.eval(x, consts);
        Ok(match e {
            Expr::Int(n) => self.constant(&self.ctx().from_int(*n)),
            Expr::Var(v) => self.from_poly(&self.polys.resolve(v, consts)?),
            Expr::Neg(a) => self.neg(&rec(a)?),
            Expr::Add(a, b) => self.add(&rec(a)?, &rec(b)?),
            Expr::Sub(a, b) => self.sub(&rec(a)?, &rec(b)?),
            Expr::Mul(a, b) => self.mul(&rec(a)?, &rec(b)?),
            Expr::Div(a, b) => {
                let d = rec(b)?;
                let inv = self.inv(&d).ok_or(Error::NotInS)?;
                self.mul(&rec(a)?, &inv)
            }
            Expr::Pow(a, k) => self.pow_signed(&rec(a)?, *k).ok_or(Error::NotInS)?,
        })
    }

    pub fn fmt_residue(&self, v: &ResidueValue) -> String {
        match v {
            ResidueValue::Univariate(x) => {
                let k1: Fqt = RationalFunctionField::new(self.ctx().residue_field().clone());
                k1.fmt_frac(x)
            }
            ResidueValue::Bivariate(x) => fmt_bivariate(self.ctx().residue_field(), x),
        }
    }
}

/// Prints an element of `κ(t1)(t2)` as a quotient of polynomials in `t1, t2`.
fn fmt_bivariate(kappa: &crate::arith::ff::FiniteField, x: &RatFunc<RatFunc<FfElem>>) -> String {
    let r1 = PolyRing::new(kappa.clone());
    // clear the t1-denominators of both parts
    let mut l = r1.one();
    for c in x.num.coeffs().iter().chain(x.den.coeffs()) {
        l = r1.exact_div(&r1.mul(&l, &c.den), &r1.gcd(&l, &c.den)).unwrap();
    }
    let rows = |p: &Poly<RatFunc<FfElem>>| -> Vec<Poly<FfElem>> {
        p.coeffs().iter().map(|c| r1.exact_div(&r1.mul(&c.num, &l), &c.den).unwrap()).collect()
    };
    let show = |rows: &[Poly<FfElem>]| -> (String, usize) {
        let mut parts = Vec::new();
        for (j, row) in rows.iter().enumerate().rev() {
            for (i, c) in row.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mut f = Vec::new();
                let mono = [(i, "t1"), (j, "t2")]
                    .iter()
                    .filter(|(k, _)| *k > 0)
                    .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect::<Vec<_>>();
                if !kappa.is_one(c) || mono.is_empty() {
                    f.push(kappa.fmt_coeff(c));
                }
                f.extend(mono);
                parts.push(f.join("*"));
            }
        }
        let n = parts.len();
        (if parts.is_empty() { "0".into() } else { parts.join(" + ") }, n)
    };
    let (n, nn) = show(&rows(&x.num));
    let (d, nd) = show(&rows(&x.den));
    if d == "1" {
        return n;
    }
    let wrap = |s: String, k: usize| if k > 1 { format!("({s})") } else { s };
    format!("{}/{}", wrap(n, nn), wrap(d, nd))
}

impl Field for RationalRing {
    type Elem = RationalRingElem;

    fn zero(&self) -> RationalRingElem {
        self.from_poly(&self.polys.zero())
    }

    fn one(&self) -> RationalRingElem {
        self.from_poly(&self.polys.one())
    }

    fn is_zero(&self, a: &RationalRingElem) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RationalRingElem, b: &RationalRingElem) -> RationalRingElem {
        let p = &self.polys;
        if p.equal(&a.den, &b.den) {
            return RationalRingElem {
                num: p.add(&a.num, &b.num),
                den: a.den.clone(),
            };
        }
        RationalRingElem {
            num: p.add(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den)),
            den: p.mul(&a.den, &b.den),
        }
    }

    fn neg(&self, a: &RationalRingElem) -> RationalRingElem {
        RationalRingElem {
            num: self.polys.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RationalRingElem, b: &RationalRingElem) -> RationalRingElem {
        let p = &self.polys;
        RationalRingElem {
            num: p.mul(&a.num, &b.num),
            den: p.mul(&a.den, &b.den),
        }
    }

    fn inv(&self, a: &RationalRingElem) -> Option<RationalRingElem> {
        self.is_unit(a).then(|| RationalRingElem {
            num: a.den.clone(),
            den: a.num.clone(),
        })
    }

    fn characteristic(&self) -> u64 {
        self.ctx().characteristic()
    }

    fn equal(&self, a: &RationalRingElem, b: &RationalRingElem) -> bool {
        let p = &self.polys;
        p.equal(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den))
    }

    fn fmt_elem(&self, a: &RationalRingElem) -> String {
        if self.polys.is_one(&a.den) {
            a.num.to_string()
        } else {
            a.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5t() -> RationalRing {
        RationalRing::new(&LocalFieldCtx::padic(5, 6).unwrap(), 1).unwrap()
    }

    #[test]
    fn units() {
        let r = z5t();
        assert!(r.is_unit(&r.parse("(t + 1)/(2t + 1)").unwrap()));
        assert!(!r.is_unit(&r.parse("5/(t + 1)").unwrap()));
        assert!(r.is_unit(&r.one()));
        assert_eq!(r.parse("1/(5t + 10)").unwrap_err(), Error::NotInS);
    }

    #[test]
    fn residues() {
        let r = z5t();
        let v = r.residue_map(&r.parse("(6t + 1)/(t + 7)").unwrap()).unwrap();
        assert_eq!(r.fmt_residue(&v), "(t + 1)/(t + 2)");
        let v = r.residue_map(&r.parse("5t + 1").unwrap()).unwrap();
        assert_eq!(r.fmt_residue(&v), "1");
        let v = r.residue_map(&r.parse("3").unwrap()).unwrap();
        assert_eq!(r.fmt_residue(&v), "3");
    }

    #[test]
    fn bivariate_residue() {
        let r = RationalRing::new(&LocalFieldCtx::padic(3, 4).unwrap(), 2).unwrap();
        let v = r.residue_map(&r.parse("(t1 + 3*t2)/(t2 + 1)").unwrap()).unwrap();
        assert_eq!(r.fmt_residue(&v), "t1/(t2 + 1)");
    }
}
