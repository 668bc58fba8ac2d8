//! The δ-kernel test: `δ(s) = s(t1) - s(t2)` in `K_n A(t1, t2)`.
//!
//! Vanishing in `K_n A(t1, t2)` is not decidable here, so the test is a
//! sound necessary condition. `δ(s)` is reduced to `κ(t1, t2)`, `t2` is
//! specialized at points `c` of a finite extension `F_{q^k}` of `κ` and the
//! image in `K_n F_{q^k}(t1)` is decided through residue vectors. A nonzero
//! image certifies `s ∉ ker δ`.

use num_bigint::BigInt;

use super::ring::{RationalRing, ResidueValue};
use crate::arith::ff::{FfElem, FfEmbedding, FiniteField};
use crate::arith::field::Field;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::{RatFunc, RationalFunctionField};
use crate::bass_tate::{residue_vector, Fqt};
use crate::error::{Error, Result};
use crate::localk::k1_value;
use crate::symbols::MilnorClass;

pub const DEFAULT_SPECIALIZATIONS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    /// `δ(s)` cancelled formally over `A(t1, t2)`.
    pub formally_zero: bool,
    /// Order of the field `t2` was specialized in.
    pub specialization_field: u64,
    pub points_tested: usize,
    /// First point (by code) whose image is nonzero.
    pub witness: Option<u64>,
}

impl DeltaReport {
    pub fn in_kernel(&self) -> bool {
        self.witness.is_none()
    }
}

/// `δ(s)` over `A(t1, t2)`.
pub fn delta(ring: &RationalRing, s: &MilnorClass<RationalRing>) -> Result<MilnorClass<RationalRing>> {
    if ring.nvars() != 1 {
        return Err(Error::Unsupported("δ is defined on classes over A(t)".into()));
    }
    let two = RationalRing::new(ring.ctx(), 2)?;
    let mut out = MilnorClass::zero(&two, s.degree());
    for t in s.terms() {
        for (i, sign) in [(0usize, 1i64), (1, -1)] {
            let e = t.entries.iter().map(|x| ring.substitute(&two, x, i)).collect();
            out.add_term(&t.coeff * BigInt::from(sign), e);
        }
    }
    Ok(out)
}

fn specialization_field(q: u64, wanted: usize) -> Result<FiniteField> {
    let base = FiniteField::of_order(q)?;
    let mut order = q;
    let mut k = 1;
    while order < 2 * wanted as u64 + 2 {
        order *= q;
        k += 1;
    }
    FiniteField::new(base.p(), base.degree() * k)
}

/// Image of an entry of `κ(t1)(t2)` under `t2 ↦ c`, or `None` at a zero or
/// pole.
fn specialize(big: &Fqt, emb: &FfEmbedding, x: &RatFunc<RatFunc<FfElem>>, c: &FfElem) -> Option<RatFunc<FfElem>> {
    let ring = big.poly_ring();
    let lift = |r: &RatFunc<FfElem>| {
        let m = |p: &Poly<FfElem>| ring.from_coeffs(p.coeffs().iter().map(|a| emb.apply(a)).collect());
        big.frac(&m(&r.num), &m(&r.den)).unwrap()
    };
    let cc = big.constant(c);
    let eval = |p: &Poly<RatFunc<FfElem>>| {
        let mut acc = big.zero();
        for a in p.coeffs().iter().rev() {
            acc = big.add(&big.mul(&acc, &cc), &lift(a));
        }
        acc
    };
    let (n, d) = (eval(&x.num), eval(&x.den));
    if big.is_zero(&n) || big.is_zero(&d) {
        return None;
    }
    big.div(&n, &d)
}

fn vanishes(big: &Fqt, c: &MilnorClass<Fqt>) -> Result<bool> {
    Ok(match c.degree() {
        0 => c.terms().map(|t| t.coeff.clone()).sum::<BigInt>() == BigInt::from(0),
        1 => big.is_one(&k1_value(c)?),
        2 => residue_vector(big, c)?.is_zero(),
        // K_n F_{q^k}(t) = 0 for n ≥ 3
        _ => true,
    })
}

pub fn delta_kernel_report(ring: &RationalRing, s: &MilnorClass<RationalRing>, points: usize) -> Result<DeltaReport> {
    if s.terms().any(|t| t.entries.iter().any(|x| !ring.is_unit(x))) {
        return Err(Error::NonUnitEntry);
    }
    let d = delta(ring, s)?;
    let kappa = ring.ctx().residue_field().clone();
    if d.is_formally_zero() {
        return Ok(DeltaReport {
            formally_zero: true,
            specialization_field: kappa.order(),
            points_tested: 0,
            witness: None,
        });
    }
    let two = d.field();
    let mut reduced = Vec::new();
    for t in d.terms() {
        let mut e = Vec::new();
        for x in &t.entries {
            match two.residue_map(x)? {
                ResidueValue::Bivariate(v) => e.push(v),
                ResidueValue::Univariate(_) => unreachable!(),
            }
        }
        reduced.push((t.coeff.clone(), e));
    }
    let big_f = specialization_field(kappa.order(), points)?;
    let emb = FfEmbedding::new(&kappa, &big_f)?;
    let big: Fqt = RationalFunctionField::new(big_f.clone());
    let mut tested = 0;
    for code in 2..big_f.order() {
        if tested == points {
            break;
        }
        let c = big_f.from_code(code)?;
        let mut img = MilnorClass::zero(&big, d.degree());
        let mut ok = true;
        for (coeff, entries) in &reduced {
            let mut e = Vec::new();
            for x in entries {
                match specialize(&big, &emb, x, &c) {
                    Some(v) => e.push(v),
                    None => ok = false,
                }
            }
            if !ok {
                break;
            }
            img.add_term(coeff.clone(), e);
        }
        if !ok {
            continue;
        }
        tested += 1;
        if !vanishes(&big, &img)? {
            return Ok(DeltaReport {
                formally_zero: false,
                specialization_field: big_f.order(),
                points_tested: tested,
                witness: Some(code),
            });
        }
    }
    Ok(DeltaReport {
        formally_zero: false,
        specialization_field: big_f.order(),
        points_tested: tested,
        witness: None,
    })
}

/// True iff every sampled image of `δ(s)` vanishes.
pub fn delta_kernel_check(ring: &RationalRing, s: &MilnorClass<RationalRing>) -> Result<bool> {
    Ok(delta_kernel_report(ring, s, DEFAULT_SPECIALIZATIONS)?.in_kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::local::LocalFieldCtx;

    fn z3t() -> RationalRing {
        RationalRing::new(&LocalFieldCtx::padic(3, 5).unwrap(), 1).unwrap()
    }

    #[test]
    fn constants_are_in_kernel() {
        let r = z3t();
        let s = MilnorClass::symbol(&r, vec![r.parse("2").unwrap(), r.parse("4").unwrap()]).unwrap();
        let rep = delta_kernel_report(&r, &s, 16).unwrap();
        assert!(rep.formally_zero && rep.in_kernel());
        assert!(delta_kernel_check(&r, &MilnorClass::zero(&r, 2)).unwrap());
    }

    #[test]
    fn t_and_unit_is_not() {
        let r = z3t();
        let s = MilnorClass::symbol(&r, vec![r.parse("t").unwrap(), r.parse("2").unwrap()]).unwrap();
        assert!(!delta_kernel_check(&r, &s).unwrap());
        let s = MilnorClass::symbol(&r, vec![r.parse("t + 1").unwrap()]).unwrap();
        assert!(!delta_kernel_check(&r, &s).unwrap());
        let s = MilnorClass::symbol(&r, vec![r.parse("3").unwrap()]).unwrap();
        assert_eq!(delta_kernel_check(&r, &s).unwrap_err(), Error::NonUnitEntry);
    }
}
