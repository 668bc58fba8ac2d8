//! Dense univariate polynomials over a [`Field`] context.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::Field;

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`, handy in size arguments.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial ring `F[X]`. All arithmetic goes through the ring so that the
/// coefficient field context is available.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from coefficients listed highest degree first.
    pub fn from_coeffs_desc(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        coeffs.reverse();
        self.from_coeffs(coeffs)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut v = vec![self.field.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    /// `X - a`.
    pub fn linear(&self, a: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![self.field.neg(a), self.field.one()])
    }

    pub fn coeff_or_zero(&self, p: &Poly<F::Elem>, i: usize) -> F::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self, p: &Poly<F::Elem>) -> bool {
        p.coeffs.len() <= 1
    }

    pub fn constant_term(&self, p: &Poly<F::Elem>) -> F::Elem {
        self.coeff_or_zero(p, 0)
    }

    pub fn is_one(&self, p: &Poly<F::Elem>) -> bool {
        p.coeffs.len() == 1 && self.field.is_one(&p.coeffs[0])
    }

    pub fn is_monic(&self, p: &Poly<F::Elem>) -> bool {
        p.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn equal(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> bool {
        let n = a.coeffs.len().max(b.coeffs.len());
        (0..n).all(|i| self.field.equal(&self.coeff_or_zero(a, i), &self.coeff_or_zero(b, i)))
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.field.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn shift(&self, a: &Poly<F::Elem>, k: usize) -> Poly<F::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(a.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut e: u64) -> Poly<F::Elem> {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Division with remainder; `None` if `b` is zero or its leading
    /// coefficient is not invertible.
    pub fn div_rem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Option<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree()?;
        let inv_lc = self.field.inv(b.lc()?)?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Some((Poly::zero(), a.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - db];
        for k in (0..r.len() - db).rev() {
            let c = self.field.mul(&r[k + db], &inv_lc);
            if self.field.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.coeffs.iter().enumerate() {
                r[k + i] = self.field.sub(&r[k + i], &self.field.mul(&c, bi));
            }
            q[k] = c;
        }
        r.truncate(db);
        Some((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        self.div_rem(a, b).map(|(_, r)| r)
    }

    /// Quotient when `b` divides `a` exactly.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.div_rem(a, b)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.rem(a, b).is_some_and(|r| r.is_zero())
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let inv = self.field.inv(a.lc()?)?;
        Some(self.scale(&inv, a))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("field coefficients");
            a = b;
            b = r;
        }
        self.monic(&a).unwrap_or(a)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` the monic gcd.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1).expect("field coefficients");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().and_then(|c| self.field.inv(c)) {
            Some(inv) => (
                self.scale(&inv, &r0),
                self.scale(&inv, &s0),
                self.scale(&inv, &t0),
            ),
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.xgcd(a, m);
        if !self.is_one(&g) {
            return None;
        }
        self.rem(&s, m)
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let v = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_int(i as i64), c))
            .collect();
        self.from_coeffs(v)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    /// `a(b(X))`.
    pub fn compose(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = Poly::zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, b), &self.constant(c.clone()));
        }
        acc
    }

    pub fn mul_mod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m).expect("modulus must have unit leading coefficient")
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, e: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m).expect("modulus must have unit leading coefficient");
        let base = self.rem(a, m).expect("modulus must have unit leading coefficient");
        if e.is_zero() {
            return acc;
        }
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, a: &Poly<F::Elem>, e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.pow_mod(a, &BigUint::from(e), m)
    }

    /// `Res(a, b) = lc(a)^deg b · Π_{a(α)=0} b(α)`, computed by the Euclidean
    /// algorithm. Zero when either argument is zero.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
        let f = &self.field;
        let (Some(mut m), Some(mut n)) = (a.degree(), b.degree()) else {
            return f.zero();
        };
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = f.one();
        loop {
            if m == 0 {
                return f.mul(&acc, &f.pow(a.lc().unwrap(), n as u128));
            }
            let r = self.rem(&b, &a).expect("field coefficients");
            let Some(dr) = r.degree() else {
                return f.zero();
            };
            // Res(a, b) = lc(a)^(n - dr) Res(a, r) = lc(a)^(n - dr) (-1)^(m dr) Res(r, a)
            acc = f.mul(&acc, &f.pow(a.lc().unwrap(), (n - dr) as u128));
            if (m * dr) % 2 == 1 {
                acc = f.neg(&acc);
            }
            b = a;
            a = r;
            n = m;
            m = dr;
        }
    }

    /// Applies a coefficient map into another ring.
    pub fn map<G: Field>(
        &self,
        target: &PolyRing<G>,
        a: &Poly<F::Elem>,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> Poly<G::Elem> {
        target.from_coeffs(a.coeffs.iter().map(f).collect())
    }

    /// Sparse text form, highest degree first, e.g. `X^2 + 2*X + 1`.
    pub fn fmt(&self, a: &Poly<F::Elem>) -> String {
        self.fmt_var(a, F::POLY_VAR)
    }

    pub fn fmt_var(&self, a: &Poly<F::Elem>, var: &str) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if k == 0 {
                self.field.fmt_coeff(c)
            } else if self.field.is_one(c) {
                mono
            } else {
                format!("{}*{mono}", self.field.fmt_coeff(c))
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

/// `q^d` as a big integer.
pub fn big_pow(q: u64, d: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..d {
        acc *= q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ff::FiniteField;

    fn ring(p: u64) -> PolyRing<FiniteField> {
        PolyRing::new(FiniteField::new(p, 1).unwrap())
    }

    fn poly(r: &PolyRing<FiniteField>, desc: &[i64]) -> Poly<crate::arith::ff::FfElem> {
        r.from_coeffs_desc(desc.iter().map(|&c| r.field().from_int(c)).collect())
    }

    #[test]
    fn division_identity() {
        let r = ring(7);
        let a = poly(&r, &[3, 0, 5, 1, 2]);
        let b = poly(&r, &[2, 1, 6]);
        let (q, rem) = r.div_rem(&a, &b).unwrap();
        assert!(rem.degree() < b.degree());
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
    }

    #[test]
    fn xgcd_bezout() {
        let r = ring(5);
        let a = r.mul(&poly(&r, &[1, 1]), &poly(&r, &[1, 0, 2]));
        let b = r.mul(&poly(&r, &[1, 1]), &poly(&r, &[1, 3]));
        let (g, s, t) = r.xgcd(&a, &b);
        assert_eq!(g, poly(&r, &[1, 1]));
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(X^2 - 1, X - 2) over F_7 = (2^2 - 1) = 3 with lc(a)=1 and b(1)b(-1) = (-1)(-3) = 3.
        let r = ring(7);
        let a = poly(&r, &[1, 0, -1]);
        let b = poly(&r, &[1, -2]);
        assert_eq!(r.resultant(&a, &b), r.field().from_int(3));
        // Res(b, a) = (-1)^(2·1) Res(a, b).
        assert_eq!(r.resultant(&b, &a), r.field().from_int(3));
    }

    #[test]
    fn resultant_against_sylvester_determinant() {
        // Brute-force Sylvester determinant over F_5 for small random pairs.
        let r = ring(5);
        let f = r.field().clone();
        let cases = [(vec![1, 2, 3], vec![2, 0, 1, 4]), (vec![3, 1], vec![1, 1, 1]), (vec![1, 0, 0, 2], vec![4, 3])];
        for (a, b) in cases {
            let pa = poly(&r, &a);
            let pb = poly(&r, &b);
            let (m, n) = (a.len() - 1, b.len() - 1);
            let size = m + n;
            let mut mat = vec![vec![0i64; size]; size];
            for i in 0..n {
                for (j, &c) in a.iter().enumerate() {
                    mat[i][i + j] = c;
                }
            }
            for i in 0..m {
                for (j, &c) in b.iter().enumerate() {
                    mat[n + i][i + j] = c;
                }
            }
            let det = det_mod(mat, 5);
            assert_eq!(r.resultant(&pa, &pb), f.from_int(det));
        }
    }

    fn det_mod(mut m: Vec<Vec<i64>>, p: i64) -> i64 {
        let n = m.len();
        let mut det = 1i64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| m[r][c].rem_euclid(p) != 0) else {
                return 0;
            };
            if piv != c {
                m.swap(piv, c);
                det = -det;
            }
            let inv = (1..p).find(|x| (x * m[c][c]).rem_euclid(p) == 1).unwrap();
            det = (det * m[c][c]).rem_euclid(p);
            for r in c + 1..n {
                let k = (m[r][c] * inv).rem_euclid(p);
                for j in c..n {
                    m[r][j] = (m[r][j] - k * m[c][j]).rem_euclid(p);
                }
            }
        }
        det.rem_euclid(p)
    }

    #[test]
    fn formatting() {
        let r = ring(3);
        assert_eq!(r.fmt(&poly(&r, &[1, 0, 2])), "t^2 + 2");
        assert_eq!(r.fmt(&poly(&r, &[2, 1, 0])), "2*t^2 + t");
        assert_eq!(r.fmt(&Poly::zero()), "0");
    }
}
