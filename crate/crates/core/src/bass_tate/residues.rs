//! Residue vectors of `K_2 F_q(t)`, Weil reciprocity and the split section.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use super::place::{FinitePlace, InfinitePlace, Place};
use crate::arith::ext::{ExtElem, SimpleExtension};
use crate::arith::factor::{poly_factor, FfPoly};
use crate::arith::ff::{FfElem, FiniteField};
use crate::arith::field::Field;
use crate::arith::poly::PolyRing;
use crate::arith::ratfunc::{RatFunc, RationalFunctionField};
use crate::error::{Error, Result};
use crate::localk::{k1_value, tame};
use crate::symbols::MilnorClass;

/// `F_q(t)`.
pub type Fqt = RationalFunctionField<FiniteField>;

/// Total degree of section corrections before giving up.
pub const MAX_CORRECTION_DEGREE: usize = 64;

/// Finitely supported `Place → κ(place)^×`; trivial entries are omitted.
/// The infinite entry is a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueVector {
    field: FiniteField,
    entries: BTreeMap<Place, ExtElem<FfElem>>,
}

impl ResidueVector {
    pub fn zero(field: &FiniteField) -> Self {
        ResidueVector {
            field: field.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn residue_field(&self, place: &Place) -> SimpleExtension<FiniteField> {
        let ring = PolyRing::new(self.field.clone());
        match place {
            Place::Finite(p) => SimpleExtension::new(self.field.clone(), p.clone()),
            Place::Infinity => SimpleExtension::new(self.field.clone(), ring.x()),
        }
    }

    pub fn entries(&self) -> impl DoubleEndedIterator<Item = (&Place, &ExtElem<FfElem>)> {
        self.entries.iter()
    }

    pub fn get(&self, place: &Place) -> Option<&ExtElem<FfElem>> {
        self.entries.get(place)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sets an entry; the value is reduced into the place's residue field.
    pub fn set(&mut self, place: Place, value: ExtElem<FfElem>) {
        let k = self.residue_field(&place);
        let v = k.reduce(&value.0);
        if k.is_one(&v) {
            self.entries.remove(&place);
        } else {
            self.entries.insert(place, v);
        }
    }

    pub fn infinity(&self) -> FfElem {
        self.entries
            .get(&Place::Infinity)
            .map_or(self.field.one(), |e| PolyRing::new(self.field.clone()).constant_term(&e.0))
    }

    /// `self + k·other` (written additively, so entries multiply).
    pub fn add_scaled(&self, k: i64, other: &Self) -> Self {
        let mut out = self.clone();
        for (place, v) in &other.entries {
            let f = self.residue_field(place);
            let cur = out.entries.get(place).cloned().unwrap_or_else(|| f.one());
            out.set(place.clone(), f.mul(&cur, &f.pow_signed(v, k).unwrap()));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(-1, other)
    }

    /// The same vector with the infinite entry removed.
    pub fn finite_part(&self) -> Self {
        let mut out = self.clone();
        out.entries.remove(&Place::Infinity);
        out
    }

    /// `Π N_{κ(P)/F_q}(r_P)`.
    pub fn norm_product(&self) -> FfElem {
        let f = &self.field;
        self.entries
            .iter()
            .fold(f.one(), |acc, (place, v)| f.mul(&acc, &self.residue_field(place).norm(v)))
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, v)| {
                let k = self.residue_field(p);
                format!("{} -> {}", p.display(&self.field), k.fmt_coeff(v))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn support(k: &Fqt, a: &MilnorClass<Fqt>) -> Result<Vec<FfPoly>> {
    let ring = k.poly_ring();
    let mut places: Vec<FfPoly> = Vec::new();
    for t in a.terms() {
        for x in &t.entries {
            for p in [&x.num, &x.den] {
                if p.degree().unwrap_or(0) == 0 {
                    continue;
                }
                for (g, _) in poly_factor(ring, p)?.factors {
                    if !places.contains(&g) {
                        places.push(g);
                    }
                }
            }
        }
    }
    Ok(places)
}

/// `∂_P` of a degree-2 class at every place, infinity included.
pub fn residue_vector(k: &Fqt, a: &MilnorClass<Fqt>) -> Result<ResidueVector> {
    let f = k.base();
    let mut out = ResidueVector::zero(f);
    match a.degree() {
        2 => {}
        n if n >= 3 => return Ok(out),
        n => return Err(Error::Unsupported(format!("residue vectors of degree {n} classes"))),
    }
    if a.terms().any(|t| t.entries.iter().any(|x| k.is_zero(x))) {
        return Err(Error::ZeroEntry);
    }
    for p in support(k, a)? {
        let place = FinitePlace::new(k, p.clone());
        let r = k1_value(&tame(&place, a)?)?;
        out.set(Place::Finite(p), r);
    }
    let r = k1_value(&tame(&InfinitePlace::new(k), a)?)?;
    out.set(Place::Infinity, ExtElem(k.poly_ring().constant(r)));
    Ok(out)
}

/// Weil reciprocity: the norms of all residues multiply to 1.
pub fn reciprocity_check(v: &ResidueVector) -> bool {
    v.field.is_one(&v.norm_product())
}

fn sym(k: &Fqt, a: RatFunc<FfElem>, b: RatFunc<FfElem>) -> MilnorClass<Fqt> {
    MilnorClass::symbol(k, vec![a, b]).expect("nonzero entries")
}

/// `{t, u₀}` with `u₀` the fixed generator of `F_q^×`.
pub fn reference_class(k: &Fqt) -> MilnorClass<Fqt> {
    sym(k, k.var(), k.constant(&k.base().generator()))
}

/// Splits `v = v' + j·res({t, u₀})` with `v'` trivial at infinity and
/// `0 ≤ j < q - 1`.
pub fn normalize_infinity(k: &Fqt, v: &ResidueVector) -> Result<(i64, ResidueVector)> {
    let f = k.base();
    let e = f.dlog(&v.infinity()).ok_or(Error::ZeroEntry)? as i64;
    let n = f.order() as i64 - 1;
    let r = residue_vector(k, &reference_class(k))?;
    // res({t,u₀}) at infinity is u₀^{-1}
    let j = (-e).rem_euclid(n.max(1));
    Ok((j, v.add_scaled(-j, &r)))
}

/// A class whose residue vector is `v`; `v` must satisfy reciprocity and
/// be trivial at infinity.
pub fn bt_section(k: &Fqt, v: &ResidueVector) -> Result<MilnorClass<Fqt>> {
    if !reciprocity_check(v) {
        return Err(Error::ReciprocityFails);
    }
    if v.get(&Place::Infinity).is_some() {
        return Err(Error::InfinityEntryNonzero);
    }
    let mut s = MilnorClass::zero(k, 2);
    let mut spent = 0usize;
    loop {
        let cur = residue_vector(k, &s)?;
        let diff = v.sub(&cur).finite_part();
        // highest place still wrong
        let Some((place, d)) = diff.entries().next_back() else {
            break;
        };
        let Place::Finite(p) = place else { unreachable!() };
        spent += place.degree();
        if spent > MAX_CORRECTION_DEGREE {
            return Err(Error::TerminationBound);
        }
        s.add_assign(&sym(k, k.from_poly(p), k.from_poly(&d.0)));
    }
    if residue_vector(k, &s)? != *v {
        return Err(Error::ReciprocityFails);
    }
    Ok(s)
}

/// Section for any reciprocal vector: normalizes the infinite entry with
/// multiples of `{t, u₀}` first.
pub fn bt_section_full(k: &Fqt, v: &ResidueVector) -> Result<MilnorClass<Fqt>> {
    if !reciprocity_check(v) {
        return Err(Error::ReciprocityFails);
    }
    let (j, w) = normalize_infinity(k, v)?;
    let mut s = bt_section(k, &w)?;
    s.add_scaled(&BigInt::from(j), &reference_class(k));
    Ok(s)
}

/// Random polynomial of degree at most `max_deg`, nonzero.
pub fn random_poly<R: Rng + ?Sized>(f: &FiniteField, max_deg: usize, rng: &mut R) -> FfPoly {
    let ring = PolyRing::new(f.clone());
    loop {
        let d = rng.gen_range(0..=max_deg);
        let c: Vec<FfElem> = (0..=d).map(|_| f.from_code(rng.gen_range(0..f.order())).unwrap()).collect();
        let p = ring.from_coeffs(c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random nonzero rational function with numerator and denominator of
/// degree at most `max_deg`.
pub fn random_ratfunc<R: Rng + ?Sized>(k: &Fqt, max_deg: usize, rng: &mut R) -> RatFunc<FfElem> {
    let num = random_poly(k.base(), max_deg, rng);
    let den = random_poly(k.base(), max_deg.min(1), rng);
    k.frac(&num, &den).unwrap()
}

/// Random sum of `terms` symbols `±{f, g}`.
pub fn random_class<R: Rng + ?Sized>(k: &Fqt, degree: usize, terms: usize, max_deg: usize, rng: &mut R) -> MilnorClass<Fqt> {
    let mut c = MilnorClass::zero(k, degree);
    for _ in 0..terms {
        let e: Vec<_> = (0..degree).map(|_| random_ratfunc(k, max_deg, rng)).collect();
        let coeff = if rng.gen_bool(0.5) { 1 } else { -1 };
        c.add_term(BigInt::from(coeff), e);
    }
    c
}
