//! Places of a rational function field `F(X)` and coprime factor bases.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::ext::SimpleExtension;
use crate::arith::factor::{poly_key, FfPoly};
use crate::arith::ff::FiniteField;
use crate::arith::field::Field;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{RatFunc, RationalFunctionField};
use crate::error::{Error, Result};
use crate::localk::Valuation;

/// Multiplicity of the monic key `q` in `a` (`a` nonzero).
pub fn poly_valuation<F: Field>(ring: &PolyRing<F>, a: &Poly<F::Elem>, q: &Poly<F::Elem>) -> i64 {
    let mut a = a.clone();
    let mut k = 0;
    while let Some((quot, r)) = ring.div_rem(&a, q) {
        if !r.is_zero() || a.is_zero() {
            break;
        }
        a = quot;
        k += 1;
    }
    k
}

/// Valuation at a squarefree key `Q` whose prime factors all divide `x`
/// to the same order, and at infinity (`Q = None`, uniformizer `1/X`).
#[derive(Clone, Debug)]
pub struct FinitePlace<F: Field> {
    field: RationalFunctionField<F>,
    key: Poly<F::Elem>,
    residue: SimpleExtension<F>,
}

impl<F: Field> FinitePlace<F> {
    pub fn new(field: &RationalFunctionField<F>, key: Poly<F::Elem>) -> Self {
        let residue = SimpleExtension::new(field.base().clone(), key.clone());
        FinitePlace {
            field: field.clone(),
            key,
            residue,
        }
    }

    pub fn key(&self) -> &Poly<F::Elem> {
        &self.key
    }

    /// The unique representative of degree below `deg Q`.
    pub fn lift(&self, r: &<SimpleExtension<F> as Field>::Elem) -> RatFunc<F::Elem> {
        self.field.from_poly(&r.0)
    }

    pub fn valuation(&self, x: &RatFunc<F::Elem>) -> i64 {
        let ring = self.field.poly_ring();
        poly_valuation(ring, &x.num, &self.key) - poly_valuation(ring, &x.den, &self.key)
    }
}

impl<F: Field> Valuation for FinitePlace<F> {
    type Base = RationalFunctionField<F>;
    type Residue = SimpleExtension<F>;

    fn base(&self) -> &Self::Base {
        &self.field
    }

    fn residue_field(&self) -> &Self::Residue {
        &self.residue
    }

    fn uniformizer(&self) -> RatFunc<F::Elem> {
        self.field.from_poly(&self.key)
    }

    fn split(&self, x: &RatFunc<F::Elem>) -> Result<(i64, RatFunc<F::Elem>)> {
        if self.field.is_zero(x) {
            return Err(Error::ZeroEntry);
        }
        let k = self.valuation(x);
        let u = self.field.mul(x, &self.field.pow_signed(&self.uniformizer(), -k).unwrap());
        Ok((k, u))
    }

    fn reduce(&self, u: &RatFunc<F::Elem>) -> Result<<SimpleExtension<F> as Field>::Elem> {
        let n = self.residue.reduce(&u.num);
        let d = self.residue.reduce(&u.den);
        let di = self.residue.inv(&d).ok_or(Error::NonUnitEntry)?;
        Ok(self.residue.mul(&n, &di))
    }
}

#[derive(Clone, Debug)]
pub struct InfinitePlace<F: Field> {
    field: RationalFunctionField<F>,
}

impl<F: Field> InfinitePlace<F> {
    pub fn new(field: &RationalFunctionField<F>) -> Self {
        InfinitePlace { field: field.clone() }
    }
}

impl<F: Field> Valuation for InfinitePlace<F> {
    type Base = RationalFunctionField<F>;
    type Residue = F;

    fn base(&self) -> &Self::Base {
        &self.field
    }

    fn residue_field(&self) -> &F {
        self.field.base()
    }

    fn uniformizer(&self) -> RatFunc<F::Elem> {
        self.field.inv(&self.field.var()).unwrap()
    }

    fn split(&self, x: &RatFunc<F::Elem>) -> Result<(i64, RatFunc<F::Elem>)> {
        let k = self.field.valuation_infinity(x).ok_or(Error::ZeroEntry)?;
        let xk = self.field.pow_signed(&self.field.var(), k).unwrap();
        Ok((k, self.field.mul(x, &xk)))
    }

    fn reduce(&self, u: &RatFunc<F::Elem>) -> Result<F::Elem> {
        if u.num.degree() != u.den.degree() {
            return Err(Error::NonUnitEntry);
        }
        let f = self.field.base();
        f.div(u.num.lc().unwrap(), u.den.lc().unwrap()).ok_or(Error::NonUnitEntry)
    }
}

/// A place of `F_q(t)`: a monic irreducible polynomial or infinity.
/// Ordered by degree and coefficients, infinity last.
#[derive(Clone, Debug, PartialEq)]
pub enum Place {
    Finite(FfPoly),
    Infinity,
}

impl Eq for Place {}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => poly_key(a).cmp(&poly_key(b)),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Place {
    /// Degree of the residue field over `F_q`.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn display(&self, field: &FiniteField) -> String {
        match self {
            Place::Finite(p) => PolyRing::new(field.clone()).fmt(p),
            Place::Infinity => "inf".to_string(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => {
                let codes: Vec<String> = p.coeffs().iter().map(|c| c.code().to_string()).collect();
                write!(f, "[{}]", codes.join(","))
            }
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Squarefree-izes a monic key: `Q = Π Q_i^{e_i}` with the `Q_i` returned.
/// Inseparable keys `R(X^p)` are split by `p`-th roots when the base field
/// has them and kept whole otherwise.
fn squarefree_parts<F: Field>(ring: &PolyRing<F>, q: &Poly<F::Elem>) -> Vec<Poly<F::Elem>> {
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let d = ring.derivative(q);
    if d.is_zero() {
        let p = ring.field().characteristic() as usize;
        let mut root = Vec::new();
        for (i, c) in q.coeffs().iter().enumerate() {
            if i % p == 0 {
                match ring.field().pth_root(c) {
                    Some(r) => root.push(r),
                    None => return vec![q.clone()],
                }
            }
        }
        return squarefree_parts(ring, &ring.from_coeffs(root));
    }
    let g = ring.gcd(q, &d);
    if g.degree() == Some(0) {
        return vec![q.clone()];
    }
    let mut out = squarefree_parts(ring, &g);
    out.extend(squarefree_parts(ring, &ring.exact_div(q, &g).unwrap()));
    out
}

/// Pairwise coprime squarefree monic keys such that every input is a
/// constant times a product of key powers.
pub fn coprime_base<F: Field>(ring: &PolyRing<F>, polys: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
    let mut keys: Vec<Poly<F::Elem>> = Vec::new();
    let push = |keys: &mut Vec<Poly<F::Elem>>, p: Poly<F::Elem>| {
        if p.degree().unwrap_or(0) > 0 && !keys.iter().any(|k| ring.equal(k, &p)) {
            keys.push(p);
        }
    };
    for p in polys {
        if let Some(m) = ring.monic(p) {
            for s in squarefree_parts(ring, &m) {
                push(&mut keys, s);
            }
        }
    }
    loop {
        let mut split = None;
        'search: for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                let g = ring.gcd(&keys[i], &keys[j]);
                if g.degree().unwrap_or(0) > 0 {
                    split = Some((i, j, g));
                    break 'search;
                }
            }
        }
        let Some((i, j, g)) = split else {
            break;
        };
        let b = keys.remove(j);
        let a = keys.remove(i);
        for part in [ring.exact_div(&a, &g).unwrap(), ring.exact_div(&b, &g).unwrap(), g] {
            for s in squarefree_parts(ring, &part) {
                push(&mut keys, s);
            }
        }
    }
    keys.sort_by_key(|k| std::cmp::Reverse(k.degree().unwrap()));
    keys
}
