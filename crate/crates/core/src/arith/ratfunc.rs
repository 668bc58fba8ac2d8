//! Rational function fields `F(X)` over a field context.

use std::fmt;

use super::field::Field;
use super::poly::{Poly, PolyRing};

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

impl<E: fmt::Display> fmt::Display for RatFunc<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly<E>| {
            let parts: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        };
        write!(f, "{}/{}", show(&self.num), show(&self.den))
    }
}

#[derive(Clone, Debug)]
pub struct RationalFunctionField<F: Field> {
    ring: PolyRing<F>,
}

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F) -> Self {
        RationalFunctionField {
            ring: PolyRing::new(base),
        }
    }

    pub fn base(&self) -> &F {
        self.ring.field()
    }

    pub fn poly_ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    /// `num / den`, reduced. `None` if `den` is zero.
    pub fn frac(&self, num: &Poly<F::Elem>, den: &Poly<F::Elem>) -> Option<RatFunc<F::Elem>> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = self.ring.gcd(num, den);
        let n = self.ring.exact_div(num, &g).unwrap();
        let d = self.ring.exact_div(den, &g).unwrap();
        let lc = self.base().inv(d.lc().unwrap()).unwrap();
        Some(RatFunc {
            num: self.ring.scale(&lc, &n),
            den: self.ring.scale(&lc, &d),
        })
    }

    pub fn from_poly(&self, p: &Poly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc {
            num: p.clone(),
            den: self.ring.one(),
        }
    }

    pub fn constant(&self, c: &F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(&self.ring.constant(c.clone()))
    }

    /// The variable.
    pub fn var(&self) -> RatFunc<F::Elem> {
        self.from_poly(&self.ring.x())
    }

    pub fn is_polynomial(&self, a: &RatFunc<F::Elem>) -> bool {
        self.ring.is_one(&a.den)
    }

    /// Constant value, if `a` lies in the base field.
    pub fn as_constant(&self, a: &RatFunc<F::Elem>) -> Option<F::Elem> {
        if !self.is_polynomial(a) || a.num.degree().unwrap_or(0) > 0 {
            return None;
        }
        Some(self.ring.constant_term(&a.num))
    }

    /// Degree valuation at infinity: `deg den - deg num`.
    pub fn valuation_infinity(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        let dn = a.num.degree()? as i64;
        Some(a.den.degree().unwrap() as i64 - dn)
    }

    pub fn fmt_frac(&self, a: &RatFunc<F::Elem>) -> String {
        let n = self.ring.fmt(&a.num);
        if self.is_polynomial(a) {
            return n;
        }
        let d = self.ring.fmt(&a.den);
        let wrap = |s: String, p: &Poly<F::Elem>| {
            if p.coeffs().iter().filter(|c| !self.base().is_zero(c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &a.num), wrap(d, &a.den))
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    type Elem = RatFunc<F::Elem>;
    const POLY_VAR: &'static str = "X";

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: Poly::zero(),
            den: self.ring.one(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(&self.ring.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.ring.equal(&a.den, &b.den) {
            return self.frac(&self.ring.add(&a.num, &b.num), &a.den).unwrap();
        }
        let num = self.ring.add(&self.ring.mul(&a.num, &b.den), &self.ring.mul(&b.num, &a.den));
        self.frac(&num, &self.ring.mul(&a.den, &b.den)).unwrap()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.frac(&self.ring.mul(&a.num, &b.num), &self.ring.mul(&a.den, &b.den))
            .unwrap()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return None;
        }
        self.frac(&a.den, &a.num)
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.ring.equal(&a.num, &b.num) && self.ring.equal(&a.den, &b.den)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(&self.base().from_int(n))
    }

    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let p = self.characteristic() as usize;
        if p == 0 {
            return None;
        }
        let root = |f: &Poly<F::Elem>| -> Option<Poly<F::Elem>> {
            let mut out = Vec::new();
            for (i, c) in f.coeffs().iter().enumerate() {
                if i % p == 0 {
                    out.push(self.base().pth_root(c)?);
                } else if !self.base().is_zero(c) {
                    return None;
                }
            }
            Some(self.ring.from_coeffs(out))
        };
        self.frac(&root(&a.num)?, &root(&a.den)?)
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.fmt_frac(a)
    }

    fn fmt_coeff(&self, a: &Self::Elem) -> String {
        let s = self.fmt_frac(a);
        if !self.is_polynomial(a) || a.num.coeffs().iter().filter(|c| !self.base().is_zero(c)).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ff::FiniteField;

    #[test]
    fn arithmetic_in_f5_t() {
        let k = RationalFunctionField::new(FiniteField::new(5, 1).unwrap());
        let t = k.var();
        let one = k.one();
        let a = k.div(&one, &k.sub(&t, &one)).unwrap();
        let b = k.div(&one, &k.add(&t, &one)).unwrap();
        // 1/(t-1) - 1/(t+1) = 2/(t^2-1)
        let lhs = k.sub(&a, &b);
        let den = k.sub(&k.mul(&t, &t), &one);
        let rhs = k.div(&k.from_int(2), &den).unwrap();
        assert!(k.equal(&lhs, &rhs));
        assert_eq!(k.fmt_elem(&rhs), "2/(t^2 + 4)");
    }

    #[test]
    fn pth_roots() {
        let k = RationalFunctionField::new(FiniteField::new(3, 1).unwrap());
        let t = k.var();
        let t3 = k.pow(&t, 3);
        assert!(k.equal(&k.pth_root(&t3).unwrap(), &t));
        assert!(k.pth_root(&t).is_none());
    }
}
