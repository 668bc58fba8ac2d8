use std::fmt;

/// A field (or, for quotient rings, a commutative ring) given by a runtime
/// context. Elements are plain values; every operation goes through the
/// context so that parameters like `q`, the modulus or the precision never
/// have to be rebuilt per element.
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    /// Variable name used when printing polynomials over this field.
    const POLY_VAR: &'static str = "X";

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero and, in quotient rings, for zero divisors.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Equality as a field element; precision-aware for local fields.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
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

    /// Integer power, inverting for negative exponents.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inv(a).map(|b| self.pow(&b, e.unsigned_abs() as u128))
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// A p-th root where the field can compute one.
    fn pth_root(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Whether `a` belongs to this context (used for context-mismatch checks).
    fn owns(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        false
    }

    /// True when K_2 of this ring is known to vanish (finite fields and
    /// finite products of them).
    fn k2_vanishes(&self) -> bool {
        self.is_finite()
    }

    /// Text form of an element as a symbol entry.
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        a.to_string()
    }

    /// Formatting of an element when it appears as a polynomial coefficient.
    fn fmt_coeff(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}
