//! Quotient rings `F[X]/(Q)` for a monic `Q`. A field when `Q` is irreducible.

use std::fmt;

use super::field::Field;
use super::poly::{Poly, PolyRing};

#[derive(Clone)]
pub struct SimpleExtension<F: Field> {
    ring: PolyRing<F>,
    modulus: Poly<F::Elem>,
}

/// Element of a [`SimpleExtension`]: a reduced polynomial in the generator.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem<E>(pub Poly<E>);

impl<E: fmt::Display> fmt::Display for ExtElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.coeffs().iter().map(|c| c.to_string()).collect();
        write!(f, "ext({})", parts.join(","))
    }
}

impl<F: Field> fmt::Debug for SimpleExtension<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[X]/({})", self.ring.field(), self.ring.fmt(&self.modulus))
    }
}

impl<F: Field> SimpleExtension<F> {
    /// `modulus` must be monic of degree at least 1.
    pub fn new(field: F, modulus: Poly<F::Elem>) -> Self {
        let ring = PolyRing::new(field);
        assert!(ring.is_monic(&modulus), "extension modulus must be monic");
        SimpleExtension { ring, modulus }
    }

    pub fn base(&self) -> &F {
        self.ring.field()
    }

    pub fn poly_ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Class of the variable.
    pub fn theta(&self) -> ExtElem<F::Elem> {
        self.reduce(&self.ring.x())
    }

    pub fn reduce(&self, p: &Poly<F::Elem>) -> ExtElem<F::Elem> {
        ExtElem(self.ring.rem(p, &self.modulus).unwrap())
    }

    pub fn embed(&self, c: &F::Elem) -> ExtElem<F::Elem> {
        ExtElem(self.ring.constant(c.clone()))
    }

    /// The element as a base-field constant, if it is one.
    pub fn as_base(&self, a: &ExtElem<F::Elem>) -> Option<F::Elem> {
        match a.0.degree() {
            None => Some(self.base().zero()),
            Some(0) => Some(a.0.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// Matrix of multiplication by `a` in the basis `1, θ, …, θ^{d-1}`
    /// (column `j` holds `a·θ^j`).
    pub fn mul_matrix(&self, a: &ExtElem<F::Elem>) -> Vec<Vec<F::Elem>> {
        let d = self.degree();
        let f = self.base();
        let mut m = vec![vec![f.zero(); d]; d];
        let mut col = a.clone();
        let theta = self.theta();
        for j in 0..d {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = self.ring.coeff_or_zero(&col.0, i);
            }
            col = self.mul(&col, &theta);
        }
        m
    }

    /// Field norm down to the base, as the determinant of multiplication.
    pub fn norm(&self, a: &ExtElem<F::Elem>) -> F::Elem {
        determinant(self.base(), self.mul_matrix(a))
    }
}

impl<F: Field> Field for SimpleExtension<F> {
    type Elem = ExtElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        ExtElem(Poly::zero())
    }

    fn one(&self) -> Self::Elem {
        self.reduce(&self.ring.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ExtElem(self.ring.add(&a.0, &b.0))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        ExtElem(self.ring.neg(&a.0))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ExtElem(self.ring.mul_mod(&a.0, &b.0, &self.modulus))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.0.is_zero() {
            return None;
        }
        self.ring.inv_mod(&a.0, &self.modulus).map(ExtElem)
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.ring.equal(&a.0, &b.0)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(&self.base().from_int(n))
    }

    fn owns(&self, a: &Self::Elem) -> bool {
        a.0.degree().is_none_or(|d| d < self.degree())
    }

    fn is_finite(&self) -> bool {
        self.base().is_finite()
    }

    fn fmt_coeff(&self, a: &Self::Elem) -> String {
        let s = self.ring.fmt_var(&a.0, "θ");
        if a.0.coeffs().iter().filter(|c| !self.base().is_zero(c)).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = m.len();
    let mut det = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !f.is_zero(&m[r][c])) else {
            return f.zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = f.neg(&det);
        }
        let inv = f.inv(&m[c][c]).expect("nonzero pivot in a field");
        det = f.mul(&det, &m[c][c]);
        for r in c + 1..n {
            if f.is_zero(&m[r][c]) {
                continue;
            }
            let k = f.mul(&m[r][c], &inv);
            for j in c..n {
                let t = f.mul(&k, &m[c][j]);
                m[r][j] = f.sub(&m[r][j], &t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ff::FiniteField;

    #[test]
    fn f9_as_extension_inverts() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let r = PolyRing::new(f3.clone());
        let m = r.from_coeffs(vec![f3.one(), f3.zero(), f3.one()]);
        let k = SimpleExtension::new(f3.clone(), m);
        let theta = k.theta();
        // θ^2 = -1
        assert!(k.equal(&k.mul(&theta, &theta), &k.from_int(-1)));
        let a = k.add(&theta, &k.one());
        let ai = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &ai)));
        // N(1 + θ) = (1+θ)(1-θ) = 1 - θ^2 = 2
        assert_eq!(k.norm(&a), f3.from_int(2));
    }
}
