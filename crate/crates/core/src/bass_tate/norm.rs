//! Norm maps `K_n(F[X]/π) → K_n F` read off at infinity.
//!
//! For `ξ` over `F[X]/π` we build `β` in `K_{n+1} F(X)` with `∂_π β = ξ` and
//! `∂_Q β = 0` at every other finite place, correcting from the highest
//! degree down, and set `N(ξ) = NORM_SIGN · ∂_∞ β` with the uniformizer
//! `1/X` at infinity. With `NORM_SIGN = -1` the norm along `X - a` is the
//! identity.
//!
//! Places are handled through a coprime base of squarefree keys built with
//! gcds only, so no factorization over `F` is needed. At a composite key the
//! tame formula is evaluated modulo the key, which is the residue at all of
//! its prime factors at once.

use num_bigint::BigInt;

use super::place::{coprime_base, FinitePlace, InfinitePlace};
use super::residues::{Fqt, MAX_CORRECTION_DEGREE};
use crate::arith::ext::SimpleExtension;
use crate::arith::factor::{is_irreducible, poly_factor, FfPoly};
use crate::arith::ff::{FfElem, FiniteField};
use crate::arith::field::Field;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{RatFunc, RationalFunctionField};
use crate::error::{Error, Result};
use crate::localk::{k1_class, k1_value, tame, Valuation};
use crate::symbols::MilnorClass;

pub const NORM_SIGN: i64 = -1;

/// Irreducibility of polynomials over the field.
pub trait PolyIrreducible: Field {
    fn is_irreducible_poly(&self, f: &Poly<Self::Elem>) -> Result<bool>;
}

impl PolyIrreducible for FiniteField {
    fn is_irreducible_poly(&self, f: &Poly<FfElem>) -> Result<bool> {
        Ok(f.degree().unwrap_or(0) > 0 && is_irreducible(&PolyRing::new(self.clone()), f))
    }
}

impl PolyIrreducible for Fqt {
    fn is_irreducible_poly(&self, f: &Poly<RatFunc<FfElem>>) -> Result<bool> {
        fqt_is_irreducible(self, f)
    }
}

/// All divisors of `c` in `F_q[t]` up to units, monic.
fn monic_divisors(ring: &PolyRing<FiniteField>, c: &FfPoly) -> Result<Vec<FfPoly>> {
    let mut out = vec![ring.one()];
    for (g, m) in poly_factor(ring, c)?.factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = d.clone();
            for _ in 0..=m {
                next.push(pw.clone());
                pw = ring.mul(&pw, &g);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Irreducibility over `F_q(t)` for degree at most 4. The polynomial is
/// scaled to a monic one with coefficients in `F_q[t]`; by Gauss's lemma
/// its monic factors then have polynomial coefficients, and their constant
/// terms divide the constant term.
pub fn fqt_is_irreducible(k: &Fqt, f: &Poly<RatFunc<FfElem>>) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) if d > 4 => return Err(Error::DegreeTooLarge(d)),
        Some(d) => d,
    };
    let fq = k.base().clone();
    let pr = k.poly_ring().clone();
    // clear denominators
    let mut l = pr.one();
    for c in f.coeffs() {
        l = pr.exact_div(&pr.mul(&l, &c.den), &pr.gcd(&l, &c.den)).unwrap();
    }
    let g: Vec<FfPoly> = f.coeffs().iter().map(|c| pr.exact_div(&pr.mul(&c.num, &l), &c.den).unwrap()).collect();
    let lc = g[d].clone();
    // h(Y) = lc^{d-1} g(Y / lc)
    let h: Vec<FfPoly> = (0..=d)
        .map(|i| {
            if i == d {
                pr.one()
            } else {
                pr.mul(&g[i], &pr.pow(&lc, (d - 1 - i) as u64))
            }
        })
        .collect();
    let units: Vec<FfElem> = fq.elements().filter(|x| !x.is_zero()).collect();
    let eval = |r: &FfPoly| {
        let mut acc = Poly::zero();
        for c in h.iter().rev() {
            acc = pr.add(&pr.mul(&acc, r), c);
        }
        acc
    };
    if h[0].is_zero() {
        return Ok(false);
    }
    let divs = monic_divisors(&pr, &h[0])?;
    for dv in &divs {
        for u in &units {
            if eval(&pr.scale(u, dv)).is_zero() {
                return Ok(false);
            }
        }
    }
    if d < 4 {
        return Ok(true);
    }
    // (Y² + aY + b)(Y² + cY + e) with b·e = h_0, a + c = h_3,
    // a·e + b·c = h_1, a·c + b + e = h_2
    let check = |a: &FfPoly, b: &FfPoly, e: &FfPoly| {
        let c = pr.sub(&h[3], a);
        pr.equal(&pr.add(&pr.mul(a, e), &pr.mul(b, &c)), &h[1])
            && pr.equal(&pr.add(&pr.mul(a, &c), &pr.add(b, e)), &h[2])
    };
    for dv in &divs {
        for u in &units {
            let b = pr.scale(u, dv);
            let e = pr.exact_div(&h[0], &b).unwrap();
            let diff = pr.sub(&e, &b);
            if !diff.is_zero() {
                let num = pr.sub(&h[1], &pr.mul(&b, &h[3]));
                if let Some((a, r)) = pr.div_rem(&num, &diff) {
                    if r.is_zero() && check(&a, &b, &e) {
                        return Ok(false);
                    }
                }
                continue;
            }
            // b = e: a(h_3 - a) = h_2 - 2b, so deg a ≤ max(deg h_3, deg(h_2 - 2b)/2)
            let rhs = pr.sub(&h[2], &pr.scale(&fq.from_int(2), &b));
            let bound = h[3].deg_i().max(rhs.deg_i() / 2).max(0) as usize;
            let q = fq.order();
            let total = q.checked_pow(bound as u32 + 1).unwrap_or(u64::MAX);
            if total > 1 << 20 {
                return Err(Error::DegreeTooLarge(bound));
            }
            for code in 0..total {
                let mut c = code;
                let coeffs: Vec<FfElem> = (0..=bound)
                    .map(|_| {
                        let x = fq.from_code(c % q).unwrap();
                        c /= q;
                        x
                    })
                    .collect();
                let a = pr.from_coeffs(coeffs);
                if check(&a, &b, &e) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn entry_polys<F: Field>(beta: &MilnorClass<RationalFunctionField<F>>) -> Vec<Poly<F::Elem>> {
    let mut out = Vec::new();
    for t in beta.terms() {
        for x in &t.entries {
            out.push(x.num.clone());
            out.push(x.den.clone());
        }
    }
    out
}

/// `β` with `∂_π β = ξ` and no residue at other finite places.
pub fn norm_lift<F: Field>(
    base: &F,
    pi: &Poly<F::Elem>,
    xi: &MilnorClass<SimpleExtension<F>>,
) -> Result<MilnorClass<RationalFunctionField<F>>> {
    let kx = RationalFunctionField::new(base.clone());
    let ring = kx.poly_ring().clone();
    if !ring.is_monic(pi) {
        return Err(Error::NotMonic);
    }
    if !ring.equal(xi.field().modulus(), pi) {
        return Err(Error::ContextMismatch);
    }
    let n = xi.degree();
    let ext = xi.field();
    let pi_place = FinitePlace::new(&kx, pi.clone());
    let mut beta = MilnorClass::zero(&kx, n + 1);
    let start = if n == 1 {
        k1_class(ext, k1_value(xi)?)?
    } else {
        xi.clone()
    };
    for t in start.terms() {
        let mut e = vec![kx.from_poly(pi)];
        e.extend(t.entries.iter().map(|u| pi_place.lift(u)));
        beta.add_term(t.coeff.clone(), e);
    }

    let mut spent = 0usize;
    loop {
        let mut polys = entry_polys(&beta);
        polys.push(pi.clone());
        let keys = coprime_base(&ring, &polys);
        let mut corrected = false;
        for q in keys {
            if ring.equal(&q, pi) {
                continue;
            }
            let place = FinitePlace::new(&kx, q.clone());
            let mut r = tame(&place, &beta)?;
            if n == 1 {
                r = k1_class(place.residue_field(), k1_value(&r)?)?;
            }
            if r.is_formally_zero() {
                continue;
            }
            spent += q.degree().unwrap();
            if spent > MAX_CORRECTION_DEGREE {
                return Err(Error::TerminationBound);
            }
            for t in r.terms() {
                let mut e = vec![kx.from_poly(&q)];
                e.extend(t.entries.iter().map(|u| place.lift(u)));
                beta.add_term(-t.coeff.clone(), e);
            }
            corrected = true;
            break;
        }
        if !corrected {
            return Ok(beta);
        }
    }
}

/// The norm without the irreducibility check on `π`.
pub fn norm_unchecked<F: Field>(
    base: &F,
    pi: &Poly<F::Elem>,
    xi: &MilnorClass<SimpleExtension<F>>,
) -> Result<MilnorClass<F>> {
    if xi.degree() == 0 {
        let d = BigInt::from(pi.degree().unwrap_or(0));
        let k: BigInt = xi.terms().map(|t| t.coeff.clone()).sum();
        return Ok(MilnorClass::integer(base, k * d));
    }
    let beta = norm_lift(base, pi, xi)?;
    let kx = RationalFunctionField::new(base.clone());
    let at_inf = tame(&InfinitePlace::new(&kx), &beta)?;
    let out = at_inf.scale(&BigInt::from(NORM_SIGN));
    if out.degree() == 1 {
        return k1_class(base, k1_value(&out)?);
    }
    Ok(out)
}

/// `N_{F[X]/π / F}` on `K_n`, `π` monic irreducible.
pub fn norm<F: PolyIrreducible>(
    base: &F,
    pi: &Poly<F::Elem>,
    xi: &MilnorClass<SimpleExtension<F>>,
) -> Result<MilnorClass<F>> {
    if !PolyRing::new(base.clone()).is_monic(pi) {
        return Err(Error::NotMonic);
    }
    if !base.is_irreducible_poly(pi)? {
        return Err(Error::NotIrreducible);
    }
    norm_unchecked(base, pi, xi)
}
