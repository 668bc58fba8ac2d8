//! Milnor K-groups of finite fields by brute force.
//!
//! `F_q^×` is cyclic of order `q-1` with generator `g`, so the tensor power
//! `T_n(F_q^×)` is cyclic of order `q-1`, generated by `g⊗…⊗g`, and
//! `{g^{e_1},…,g^{e_n}}` has coordinate `e_1⋯e_n`. The Steinberg relators
//! `{…,g^i,…,g^j,…}` with `g^i + g^j = 1` have coordinates `i·j·Πk`, all
//! multiples of `i·j`, so the rows `i·j` together with `q-1` span the same
//! subgroup as the full relator set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::class::MilnorClass;
use super::presentation::AbGroupPresentation;
use crate::arith::ff::FiniteField;
use crate::arith::field::Field;
use crate::error::{Error, Result};

pub const DEFAULT_KGROUP_BOUND: u64 = 1 << 10;
pub const MAX_KGROUP_DEGREE: usize = 4;

/// Where a relation row comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationSource {
    /// `(q-1)·(g⊗…⊗g) = 0`
    Order,
    /// `{g^i, g^j, g, …, g}` with `g^i + g^j = 1`
    Steinberg { i: u64, j: u64 },
    /// An extra relation `m·(g⊗…⊗g)`, used for quotients mod `m`.
    Multiple(u64),
}

#[derive(Clone, Debug)]
pub struct FfKGroup {
    pub field: FiniteField,
    pub degree: usize,
    pub presentation: AbGroupPresentation<BigInt>,
    pub sources: Vec<RelationSource>,
    /// Number of Steinberg pairs `(i, j)` enumerated.
    pub pairs_enumerated: usize,
}

impl FfKGroup {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.presentation.invariant_factors()
    }

    /// Coordinate of a class in `T_n ≅ Z/(q-1)` (degree ≥ 1).
    pub fn exponent(&self, c: &MilnorClass<FiniteField>) -> BigInt {
        class_exponent(&self.field, c)
    }

    pub fn is_zero(&self, c: &MilnorClass<FiniteField>) -> bool {
        if self.degree == 0 {
            return c.terms().all(|t| t.coeff.is_zero());
        }
        self.presentation.is_zero(&[self.exponent(c)])
    }
}

/// `Σ coeff · Π dlog(entries)` modulo `q-1`.
pub fn class_exponent(field: &FiniteField, c: &MilnorClass<FiniteField>) -> BigInt {
    let n = BigInt::from(field.order() - 1);
    let mut acc = BigInt::zero();
    for t in c.terms() {
        let mut e = t.coeff.clone();
        for x in &t.entries {
            e *= x.exponent().expect("symbol entries are nonzero");
        }
        acc += e;
    }
    acc.mod_floor(&n)
}

/// Relation rows for `T_n(F_q^×)`, optionally with an extra `m` row; rows
/// that do not shrink the gcd of the rows so far are consequences of them
/// and are dropped.
pub fn kgroup_rows(field: &FiniteField, degree: usize, extra: Option<u64>) -> (Vec<u64>, Vec<RelationSource>, usize) {
    let n = field.order() - 1;
    let mut rows = vec![n];
    let mut sources = vec![RelationSource::Order];
    let mut g = n;
    if let Some(m) = extra {
        if g.gcd(&m) < g {
            rows.push(m);
            sources.push(RelationSource::Multiple(m));
            g = g.gcd(&m);
        }
    }
    let mut pairs = 0;
    if degree >= 2 {
        let one = field.one();
        for i in 1..n {
            let x = field.from_exponent(i as i64);
            let y = field.sub(&one, &x);
            let Some(j) = y.exponent() else {
                continue;
            };
            pairs += 1;
            let r = ((i as u128 * j as u128) % n as u128) as u64;
            if g.gcd(&r) < g {
                rows.push(r);
                sources.push(RelationSource::Steinberg { i, j });
                g = g.gcd(&r);
            }
        }
    }
    (rows, sources, pairs)
}

pub fn ff_kgroup(q: u64, degree: usize) -> Result<FfKGroup> {
    ff_kgroup_bounded(q, degree, DEFAULT_KGROUP_BOUND)
}

pub fn ff_kgroup_bounded(q: u64, degree: usize, bound: u64) -> Result<FfKGroup> {
    if degree > MAX_KGROUP_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    if q > bound {
        return Err(Error::FieldTooLarge {
            order: q as u128,
            bound,
        });
    }
    let field = FiniteField::of_order(q)?;
    if degree == 0 {
        return Ok(FfKGroup {
            field,
            degree,
            presentation: AbGroupPresentation::new(1, Vec::new()),
            sources: Vec::new(),
            pairs_enumerated: 0,
        });
    }
    let (rows, sources, pairs) = kgroup_rows(&field, degree, None);
    let presentation = AbGroupPresentation::new(1, rows.into_iter().map(|r| vec![BigInt::from(r)]).collect());
    Ok(FfKGroup {
        field,
        degree,
        presentation,
        sources,
        pairs_enumerated: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_of_f5() {
        let k = ff_kgroup(5, 1).unwrap();
        assert_eq!(k.invariant_factors(), vec![BigInt::from(4)]);
    }

    #[test]
    fn k2_and_k3_vanish() {
        assert!(ff_kgroup(5, 2).unwrap().invariant_factors().is_empty());
        assert!(ff_kgroup(9, 3).unwrap().invariant_factors().is_empty());
    }

    #[test]
    fn k0_is_z() {
        assert_eq!(ff_kgroup(7, 0).unwrap().invariant_factors(), vec![BigInt::from(0)]);
    }

    #[test]
    fn bounds() {
        assert_eq!(ff_kgroup(5, 5).unwrap_err(), Error::DegreeTooLarge(5));
        assert!(matches!(ff_kgroup(2048, 2), Err(Error::FieldTooLarge { .. })));
        assert_eq!(ff_kgroup(6, 2).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn steinberg_symbols_have_zero_image() {
        let k = ff_kgroup(13, 2).unwrap();
        let f = &k.field;
        for x in f.elements().skip(2) {
            let y = f.sub(&f.one(), &x);
            let c = MilnorClass::symbol(f, vec![x, y]).unwrap();
            assert!(k.is_zero(&c));
        }
    }
}
