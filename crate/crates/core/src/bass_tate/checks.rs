//! Identity checks for the norm: linear extensions, the projection formula
//! and transitivity in towers.

use num_bigint::BigInt;

use super::norm::{fqt_is_irreducible, norm, norm_unchecked, PolyIrreducible};
use super::residues::{residue_vector, Fqt};
use crate::arith::ext::{determinant, ExtElem, SimpleExtension};
use crate::arith::ff::{FfElem, FiniteField};
use crate::arith::field::Field;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::localk::k1_value;
use crate::symbols::MilnorClass;

/// Fields where equality in `K_n` is decidable.
pub trait KCompare: PolyIrreducible {
    fn k_equal(&self, a: &MilnorClass<Self>, b: &MilnorClass<Self>) -> Result<bool>;
}

fn integer_value<F: Field>(a: &MilnorClass<F>) -> BigInt {
    a.terms().map(|t| t.coeff.clone()).sum()
}

impl KCompare for FiniteField {
    fn k_equal(&self, a: &MilnorClass<Self>, b: &MilnorClass<Self>) -> Result<bool> {
        if a.degree() != b.degree() {
            return Ok(false);
        }
        Ok(match a.degree() {
            0 => integer_value(a) == integer_value(b),
            1 => self.equal(&k1_value(a)?, &k1_value(b)?),
            // K_n F_q = 0 for n ≥ 2
            _ => true,
        })
    }
}

impl KCompare for Fqt {
    fn k_equal(&self, a: &MilnorClass<Self>, b: &MilnorClass<Self>) -> Result<bool> {
        if a.degree() != b.degree() {
            return Ok(false);
        }
        Ok(match a.degree() {
            0 => integer_value(a) == integer_value(b),
            1 => self.equal(&k1_value(a)?, &k1_value(b)?),
            2 => residue_vector(self, &a.sub(b))?.is_zero(),
            _ => true,
        })
    }
}

/// `N_{F(a)/F}(ξ) = ξ` along `X - a`.
pub fn linear_norm_check<F: KCompare>(base: &F, a: &F::Elem, xi: &MilnorClass<F>) -> Result<bool> {
    let pi = PolyRing::new(base.clone()).linear(a);
    let ext = SimpleExtension::new(base.clone(), pi.clone());
    let lifted = xi.map_entries(&ext, |c| Ok(ext.embed(c)))?;
    base.k_equal(&norm(base, &pi, &lifted)?, xi)
}

/// `N({ι x}·y) = x·N(y)` for `x` over `F` and `y` over `F[X]/π`.
pub fn projection_formula_check<F: KCompare>(
    base: &F,
    pi: &Poly<F::Elem>,
    x: &MilnorClass<F>,
    y: &MilnorClass<SimpleExtension<F>>,
) -> Result<bool> {
    let ext = y.field();
    let ix = x.map_entries(ext, |c| Ok(ext.embed(c)))?;
    let lhs = norm(base, pi, &ix.product(y)?)?;
    let rhs = x.product(&norm(base, pi, y)?)?;
    base.k_equal(&lhs, &rhs)
}

/// Result of comparing `N_{F'/F} ∘ N_{F''/F'}` with `N_{F''/F}` on one
/// element `h(θ₂)`.
#[derive(Clone, Debug)]
pub struct TowerCheck {
    /// Minimal polynomial of `θ₂` over `F`.
    pub eliminated: Poly<RatFunc<FfElem>>,
    pub through_tower: RatFunc<FfElem>,
    pub direct: RatFunc<FfElem>,
    pub holds: bool,
}

type Ext1 = SimpleExtension<Fqt>;

/// Coordinates of `Σ c_j θ₂^j` in the `F`-basis `θ₁^i θ₂^j`.
fn coords(ext1: &Ext1, d2: usize, e: &ExtElem<ExtElem<RatFunc<FfElem>>>) -> Vec<RatFunc<FfElem>> {
    let r2 = PolyRing::new(ext1.clone());
    let d1 = ext1.degree();
    let mut out = Vec::with_capacity(d1 * d2);
    for j in 0..d2 {
        let c = r2.coeff_or_zero(&e.0, j);
        for i in 0..d1 {
            out.push(ext1.poly_ring().coeff_or_zero(&c.0, i));
        }
    }
    out
}

/// Characteristic polynomial of `θ₂` over `F`, by interpolating
/// `det(y - M)` at `y = t^k`.
pub fn eliminate(k: &Fqt, pi1: &Poly<RatFunc<FfElem>>, pi2: &Poly<ExtElem<RatFunc<FfElem>>>) -> Result<Poly<RatFunc<FfElem>>> {
    let ext1 = SimpleExtension::new(k.clone(), pi1.clone());
    let ext2 = SimpleExtension::new(ext1.clone(), pi2.clone());
    let (d1, d2) = (ext1.degree(), ext2.degree());
    let dim = d1 * d2;
    let r1 = ext1.poly_ring();
    let theta2 = ext2.theta();
    // column (i, j) is θ₂·θ₁^i θ₂^j
    let mut m = vec![vec![k.zero(); dim]; dim];
    for j in 0..d2 {
        for i in 0..d1 {
            let b = ext2.reduce(&ext2.poly_ring().monomial(ext1.reduce(&r1.monomial(k.one(), i)), j));
            let col = coords(&ext1, d2, &ext2.mul(&b, &theta2));
            for (row, v) in col.into_iter().enumerate() {
                m[row][i + d1 * j] = v;
            }
        }
    }
    let ring = PolyRing::new(k.clone());
    let points: Vec<RatFunc<FfElem>> = (0..=dim as i64).map(|e| k.pow_signed(&k.var(), e).unwrap()).collect();
    let mut r = Poly::zero();
    for (a, ya) in points.iter().enumerate() {
        let mut shifted = m.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = if i == j { k.sub(ya, v) } else { k.neg(v) };
            }
        }
        let val = determinant(k, shifted);
        let mut basis = ring.constant(val);
        for (b, yb) in points.iter().enumerate() {
            if a != b {
                let scale = k.inv(&k.sub(ya, yb)).unwrap();
                basis = ring.scale(&scale, &ring.mul(&basis, &ring.linear(yb)));
            }
        }
        r = ring.add(&r, &basis);
    }
    Ok(r)
}

/// Compares the two norms of `h(θ₂)` down the tower
/// `F ⊂ F' = F[X]/π₁ ⊂ F'' = F'[Y]/π₂`, `[F'':F] ≤ 4`.
pub fn functoriality_check(
    k: &Fqt,
    pi1: &Poly<RatFunc<FfElem>>,
    pi2: &Poly<ExtElem<RatFunc<FfElem>>>,
    h: &Poly<RatFunc<FfElem>>,
) -> Result<TowerCheck> {
    if !fqt_is_irreducible(k, pi1)? {
        return Err(Error::NotIrreducible);
    }
    let r = eliminate(k, pi1, pi2)?;
    if !fqt_is_irreducible(k, &r)? {
        return Err(Error::EliminationFailed(format!(
            "{} is reducible",
            PolyRing::new(k.clone()).fmt_var(&r, "Y")
        )));
    }
    let ext1 = SimpleExtension::new(k.clone(), pi1.clone());
    let ext2 = SimpleExtension::new(ext1.clone(), pi2.clone());
    let h1 = PolyRing::new(ext1.clone()).from_coeffs(h.coeffs().iter().map(|c| ext1.embed(c)).collect());
    let xi2 = ext2.reduce(&h1);
    if ext2.is_zero(&xi2) {
        return Err(Error::ZeroInput);
    }
    let mid = norm_unchecked(&ext1, pi2, &MilnorClass::symbol(&ext2, vec![xi2])?)?;
    let through = k1_value(&norm(k, pi1, &mid)?)?;
    let ext3 = SimpleExtension::new(k.clone(), r.clone());
    let direct = k1_value(&norm(k, &r, &MilnorClass::symbol(&ext3, vec![ext3.reduce(h)])?)?)?;
    let holds = k.equal(&through, &direct);
    Ok(TowerCheck {
        eliminated: r,
        through_tower: through,
        direct,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::RationalFunctionField;

    fn f3t() -> Fqt {
        RationalFunctionField::new(FiniteField::new(3, 1).unwrap())
    }

    #[test]
    fn projection_for_quadratic() {
        let k = f3t();
        let ring = PolyRing::new(k.clone());
        let t = k.var();
        let pi = ring.from_coeffs(vec![k.neg(&t), k.zero(), k.one()]);
        let ext = SimpleExtension::new(k.clone(), pi.clone());
        let x = MilnorClass::symbol(&k, vec![k.add(&t, &k.one())]).unwrap();
        let y = MilnorClass::symbol(&ext, vec![ext.add(&ext.theta(), &ext.one())]).unwrap();
        assert!(projection_formula_check(&k, &pi, &x, &y).unwrap());
        let one = MilnorClass::integer(&ext, 1);
        assert!(projection_formula_check(&k, &pi, &x, &one).unwrap());
    }

    #[test]
    fn linear_identity() {
        let k = f3t();
        let t = k.var();
        let xi = MilnorClass::symbol(&k, vec![t.clone(), k.add(&t, &k.one())]).unwrap();
        assert!(linear_norm_check(&k, &k.from_int(2), &xi).unwrap());
    }

    #[test]
    fn quartic_tower() {
        // F' = F(√t), F'' = F'(√θ₁): θ₂ has minimal polynomial Y⁴ - t
        let k = f3t();
        let ring = PolyRing::new(k.clone());
        let t = k.var();
        let pi1 = ring.from_coeffs(vec![k.neg(&t), k.zero(), k.one()]);
        let ext1 = SimpleExtension::new(k.clone(), pi1.clone());
        let r1 = PolyRing::new(ext1.clone());
        let pi2 = r1.from_coeffs(vec![ext1.neg(&ext1.theta()), ext1.zero(), ext1.one()]);
        let h = ring.from_coeffs(vec![k.one(), k.one()]);
        let c = functoriality_check(&k, &pi1, &pi2, &h).unwrap();
        let expect = ring.from_coeffs(vec![k.neg(&t), k.zero(), k.zero(), k.zero(), k.one()]);
        assert!(ring.equal(&c.eliminated, &expect));
        assert!(c.holds);
        // resultant oracle: N(1 + θ₂) = Π (1 + α) over roots of Y⁴ - t
        let ext = SimpleExtension::new(k.clone(), expect);
        assert!(k.equal(&c.direct, &ext.norm(&ext.reduce(&h))));
    }
}
