//! `B ⊗_A A(t) → B(t)` for `B = A[X]/π` with `π̄` irreducible over `κ`.
//!
//! The left side is stored as polynomials in `X` of degree below `deg π`
//! with coefficients in `A(t)`, the right side as fractions of polynomials
//! in `t` over `B` with a denominator in `S_B`. Going right clears
//! denominators; going left multiplies by the adjugate of the denominator's
//! multiplication matrix over `A[t]`, whose determinant is the norm and lies
//! in `S` because `B` is local.

use rand::Rng;

use super::mpoly::{MPoly, MPolyRing};
use super::ring::{RationalRing, RationalRingElem};
use crate::arith::ext::{ExtElem, SimpleExtension};
use crate::arith::field::Field;
use crate::arith::local::{LocalElement, LocalFieldCtx};
use crate::arith::poly::{Poly, PolyRing};
use crate::bass_tate::PolyIrreducible;
use crate::error::{Error, Result};

type BElem = ExtElem<LocalElement>;

/// An element `num/den` of `B(t)`.
#[derive(Clone, Debug)]
pub struct BFrac {
    pub num: Poly<BElem>,
    pub den: Poly<BElem>,
}

#[derive(Clone, Debug)]
pub struct BaseChange {
    b: SimpleExtension<LocalFieldCtx>,
    bt: PolyRing<SimpleExtension<LocalFieldCtx>>,
    at: RationalRing,
    left: SimpleExtension<RationalRing>,
}

impl BaseChange {
    pub fn new(ctx: &LocalFieldCtx, pi: &Poly<LocalElement>) -> Result<Self> {
        let ring = PolyRing::new(ctx.clone());
        if !ring.is_monic(pi) || pi.degree().unwrap_or(0) == 0 {
            return Err(Error::NotMonic);
        }
        if pi.coeffs().iter().any(|c| !ctx.is_integral(c)) {
            return Err(Error::Unsupported("modulus must have integral coefficients".into()));
        }
        let kappa = ctx.residue_field();
        let reduced = PolyRing::new(kappa.clone()).from_coeffs(
            pi.coeffs()
                .iter()
                .map(|c| ctx.residue(c).map_err(|_| Error::PrecisionTooLowToReduce))
                .collect::<Result<_>>()?,
        );
        if !kappa.is_irreducible_poly(&reduced)? {
            return Err(Error::ResidueReducible);
        }
        let b = SimpleExtension::new(ctx.clone(), pi.clone());
        let at = RationalRing::new(ctx, 1)?;
        let pi_left = PolyRing::new(at.clone()).from_coeffs(pi.coeffs().iter().map(|c| at.constant(c)).collect());
        Ok(BaseChange {
            bt: PolyRing::new(b.clone()),
            left: SimpleExtension::new(at.clone(), pi_left),
            b,
            at,
        })
    }

    pub fn left(&self) -> &SimpleExtension<RationalRing> {
        &self.left
    }

    pub fn degree(&self) -> usize {
        self.b.degree()
    }

    fn polys(&self) -> &MPolyRing {
        self.at.polys()
    }

    fn x_power(&self, i: usize) -> BElem {
        self.b.reduce(&self.b.poly_ring().monomial(self.b.base().one(), i))
    }

    /// `A[t] → B[t]`.
    fn embed_poly(&self, f: &MPoly) -> Result<Poly<BElem>> {
        let u = self.polys().to_univariate(f)?;
        Ok(self.bt.from_coeffs(u.coeffs().iter().map(|c| self.b.embed(c)).collect()))
    }

    /// Coefficient of `X^i` of a polynomial over `B`, as a polynomial of `A[t]`.
    fn component(&self, f: &Poly<BElem>, i: usize) -> MPoly {
        let coeffs: Vec<LocalElement> = f.coeffs().iter().map(|c| self.b.poly_ring().coeff_or_zero(&c.0, i)).collect();
        self.polys().from_univariate(&PolyRing::new(self.b.base().clone()).from_coeffs(coeffs))
    }

    pub fn to_right(&self, x: &ExtElem<RationalRingElem>) -> Result<BFrac> {
        let d = self.degree();
        let coeff = |i: usize| self.left.poly_ring().coeff_or_zero(&x.0, i);
        let mut den = self.bt.one();
        for i in 0..d {
            den = self.bt.mul(&den, &self.embed_poly(&coeff(i).den)?);
        }
        let mut num = Poly::zero();
        for i in 0..d {
            let mut term = self.bt.scale(&self.x_power(i), &self.embed_poly(&coeff(i).num)?);
            for j in (0..d).filter(|&j| j != i) {
                term = self.bt.mul(&term, &self.embed_poly(&coeff(j).den)?);
            }
            num = self.bt.add(&num, &term);
        }
        Ok(BFrac { num, den })
    }

    pub fn to_left(&self, y: &BFrac) -> Result<ExtElem<RationalRingElem>> {
        let d = self.degree();
        let p = self.polys();
        // column j: den · X^j
        let mut m = vec![vec![p.zero(); d]; d];
        for j in 0..d {
            let col = self.bt.scale(&self.x_power(j), &y.den);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = self.component(&col, i);
            }
        }
        let det = laplace(p, &m);
        if !p.s_member(&det) {
            return Err(Error::NotInS);
        }
        // den^{-1}·det has coordinates (adj M)·e_0, the cofactors of row 0
        let mut inv = Poly::zero();
        for j in 0..d {
            let minor: Vec<Vec<MPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let mut cof = laplace(p, &minor);
            if j % 2 == 1 {
                cof = p.neg(&cof);
            }
            inv = self.bt.add(&inv, &self.bt.scale(&self.x_power(j), &self.embed_poly(&cof)?));
        }
        let prod = self.bt.mul(&y.num, &inv);
        let coeffs = (0..d)
            .map(|i| self.at.frac(&self.component(&prod, i), &det))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.left.reduce(&self.left.poly_ring().from_coeffs(coeffs)))
    }

    pub fn right_mul(&self, a: &BFrac, b: &BFrac) -> BFrac {
        BFrac {
            num: self.bt.mul(&a.num, &b.num),
            den: self.bt.mul(&a.den, &b.den),
        }
    }

    pub fn right_add(&self, a: &BFrac, b: &BFrac) -> BFrac {
        BFrac {
            num: self.bt.add(&self.bt.mul(&a.num, &b.den), &self.bt.mul(&b.num, &a.den)),
            den: self.bt.mul(&a.den, &b.den),
        }
    }

    /// Cross-multiplied equality modulo `π^N`; every integral value
    /// computed here is known to that absolute precision.
    pub fn right_equal(&self, a: &BFrac, b: &BFrac) -> bool {
        let d = self.bt.sub(&self.bt.mul(&a.num, &b.den), &self.bt.mul(&b.num, &a.den));
        let n = self.b.base().precision() as i64;
        d.coeffs().iter().all(|c| c.0.coeffs().iter().all(|x| x.valuation().is_none_or(|v| v >= n)))
    }

    pub fn left_equal(&self, a: &ExtElem<RationalRingElem>, b: &ExtElem<RationalRingElem>) -> bool {
        (0..self.degree()).all(|i| {
            let r = self.left.poly_ring();
            self.at.equal(&r.coeff_or_zero(&a.0, i), &r.coeff_or_zero(&b.0, i))
        })
    }

    fn random_integral<R: Rng + ?Sized>(&self, rng: &mut R) -> LocalElement {
        let ctx = self.b.base();
        match rng.gen_range(0..4) {
            0 => ctx.zero(),
            1 => ctx.mul(&ctx.random_unit(rng), ctx.uniformizer()),
            _ => ctx.random_unit(rng),
        }
    }

    fn random_apoly<R: Rng + ?Sized>(&self, rng: &mut R, in_s: bool) -> MPoly {
        let ctx = self.b.base();
        let deg = rng.gen_range(0..=2u32);
        let mut terms: Vec<([u32; 2], LocalElement)> = (0..=deg).map(|k| ([k, 0], self.random_integral(rng))).collect();
        if in_s {
            let k = rng.gen_range(0..=deg) as usize;
            terms[k].1 = ctx.random_unit(rng);
        }
        self.polys().from_terms(terms)
    }

    pub fn random_left<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ExtElem<RationalRingElem>> {
        let coeffs = (0..self.degree())
            .map(|_| self.at.frac(&self.random_apoly(rng, false), &self.random_apoly(rng, true)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.left.reduce(&self.left.poly_ring().from_coeffs(coeffs)))
    }

    fn random_b<R: Rng + ?Sized>(&self, rng: &mut R) -> BElem {
        let c: Vec<LocalElement> = (0..self.degree()).map(|_| self.random_integral(rng)).collect();
        self.b.reduce(&self.b.poly_ring().from_coeffs(c))
    }

    pub fn random_right<R: Rng + ?Sized>(&self, rng: &mut R) -> BFrac {
        let deg = rng.gen_range(0..=2);
        let num = self.bt.from_coeffs((0..=deg).map(|_| self.random_b(rng)).collect());
        let deg = rng.gen_range(0..=2);
        let mut den: Vec<BElem> = (0..=deg).map(|_| self.random_b(rng)).collect();
        den[0] = self.b.embed(&self.b.base().random_unit(rng));
        BFrac {
            num,
            den: self.bt.from_coeffs(den),
        }
    }
}

/// Determinant by cofactor expansion along the first row.
fn laplace(p: &MPolyRing, m: &[Vec<MPoly>]) -> MPoly {
    match m.len() {
        0 => p.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = p.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = p.mul(&m[0][j], &laplace(p, &minor));
                acc = if j % 2 == 0 { p.add(&acc, &term) } else { p.sub(&acc, &term) };
            }
            acc
        }
    }
}

/// Round trips and ring-operation compatibility on `samples` random pairs.
pub fn base_change_roundtrip<R: Rng + ?Sized>(
    ctx: &LocalFieldCtx,
    pi: &Poly<LocalElement>,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    let bc = BaseChange::new(ctx, pi)?;
    let left = bc.left();
    for _ in 0..samples {
        let x1 = bc.random_left(rng)?;
        let x2 = bc.random_left(rng)?;
        let (r1, r2) = (bc.to_right(&x1)?, bc.to_right(&x2)?);
        if !bc.left_equal(&bc.to_left(&r1)?, &x1) {
            return Ok(false);
        }
        if !bc.right_equal(&bc.to_right(&left.mul(&x1, &x2))?, &bc.right_mul(&r1, &r2)) {
            return Ok(false);
        }
        if !bc.right_equal(&bc.to_right(&left.add(&x1, &x2))?, &bc.right_add(&r1, &r2)) {
            return Ok(false);
        }
        let y = bc.random_right(rng);
        if !bc.right_equal(&bc.to_right(&bc.to_left(&y)?)?, &y) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x2_plus(ctx: &LocalFieldCtx, c: i64) -> Poly<LocalElement> {
        PolyRing::new(ctx.clone()).from_coeffs(vec![ctx.from_int(c), ctx.zero(), ctx.one()])
    }

    #[test]
    fn gaussian_over_z3() {
        let ctx = LocalFieldCtx::padic(3, 5).unwrap();
        let bc = BaseChange::new(&ctx, &x2_plus(&ctx, 1)).unwrap();
        // X·(t + 1)
        let at = RationalRing::new(&ctx, 1).unwrap();
        let t1 = at.parse("t + 1").unwrap();
        let x = bc.left().reduce(&bc.left().poly_ring().from_coeffs(vec![at.zero(), t1]));
        let back = bc.to_left(&bc.to_right(&x).unwrap()).unwrap();
        assert!(bc.left_equal(&back, &x));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(base_change_roundtrip(&ctx, &x2_plus(&ctx, 1), 10, &mut rng).unwrap());
    }

    #[test]
    fn rejects_split_modulus() {
        let ctx = LocalFieldCtx::padic(3, 5).unwrap();
        assert_eq!(BaseChange::new(&ctx, &x2_plus(&ctx, -1)).unwrap_err(), Error::ResidueReducible);
    }

    #[test]
    fn laurent_base() {
        let ctx = LocalFieldCtx::laurent(2, 5).unwrap();
        // X² + X + 1 is irreducible over F_2
        let pi = PolyRing::new(ctx.clone()).from_coeffs(vec![ctx.one(), ctx.one(), ctx.one()]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(base_change_roundtrip(&ctx, &pi, 10, &mut rng).unwrap());
    }
}
