//! Complete discretely valued fields at finite precision: `Q_p` and `F_q((t))`.

use std::fmt;

use rand::Rng;

use super::ff::{FfElem, FiniteField};
use super::field::Field;
use super::laurent::{parse_laurent, LaurentSeries};
use super::padic::{parse_padic, PadicNumber};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LocalElement {
    Padic(PadicNumber),
    Laurent(LaurentSeries),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalModel {
    Padic,
    Laurent,
}

/// A local field context: model, residue field, precision and the chosen
/// uniformizer (default `p` or `t`).
#[derive(Clone, Debug)]
pub struct LocalFieldCtx {
    model: LocalModel,
    residue: FiniteField,
    precision: u32,
    uniformizer: LocalElement,
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalElement::Padic(x) => write!(f, "{x}"),
            LocalElement::Laurent(x) => write!(f, "{x}"),
        }
    }
}

impl LocalElement {
    pub fn is_zero(&self) -> bool {
        match self {
            LocalElement::Padic(x) => x.is_zero(),
            LocalElement::Laurent(x) => x.is_zero(),
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        match self {
            LocalElement::Padic(x) => x.valuation(),
            LocalElement::Laurent(x) => x.valuation(),
        }
    }

    pub fn precision(&self) -> u32 {
        match self {
            LocalElement::Padic(x) => x.precision(),
            LocalElement::Laurent(x) => x.precision(),
        }
    }

    pub fn abs_precision(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.precision() as i64)
    }

    pub fn as_padic(&self) -> Option<&PadicNumber> {
        match self {
            LocalElement::Padic(x) => Some(x),
            LocalElement::Laurent(_) => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentSeries> {
        match self {
            LocalElement::Laurent(x) => Some(x),
            LocalElement::Padic(_) => None,
        }
    }
}

pub fn parse_local(s: &str) -> Result<LocalElement> {
    let s = s.trim();
    if s.starts_with("padic(") {
        parse_padic(s).map(LocalElement::Padic)
    } else if s.starts_with("laurent(") {
        parse_laurent(s).map(LocalElement::Laurent)
    } else {
        Err(Error::Parse(format!("not a local field element: `{s}`")))
    }
}

impl LocalFieldCtx {
    /// `Q_p` at relative precision `N`.
    pub fn padic(p: u64, precision: u32) -> Result<Self> {
        PadicNumber::check_params(p, precision)?;
        Ok(LocalFieldCtx {
            model: LocalModel::Padic,
            residue: FiniteField::new(p, 1)?,
            precision,
            uniformizer: LocalElement::Padic(PadicNumber::from_i64(p, precision, p as i64)),
        })
    }

    /// `F_q((t))` at relative precision `N`.
    pub fn laurent(q: u64, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PrecisionTooLow("precision must be at least 1".into()));
        }
        let residue = FiniteField::of_order(q)?;
        let t = LaurentSeries::t_power(&residue, precision, 1);
        Ok(LocalFieldCtx {
            model: LocalModel::Laurent,
            residue,
            precision,
            uniformizer: LocalElement::Laurent(t),
        })
    }

    /// Replaces the uniformizer; it must have valuation 1.
    pub fn with_uniformizer(mut self, pi: LocalElement) -> Result<Self> {
        if !self.owns(&pi) || pi.valuation() != Some(1) {
            return Err(Error::Unsupported("uniformizer must have valuation 1".into()));
        }
        self.uniformizer = pi;
        Ok(self)
    }

    /// Same field at another precision, keeping the uniformizer.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        let base = match self.model {
            LocalModel::Padic => Self::padic(self.residue.p(), precision)?,
            LocalModel::Laurent => Self::laurent(self.residue.order(), precision)?,
        };
        let pi = base.coerce(&self.uniformizer);
        Ok(LocalFieldCtx {
            uniformizer: pi,
            ..base
        })
    }

    pub fn model(&self) -> LocalModel {
        self.model
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn p(&self) -> u64 {
        self.residue.p()
    }

    /// Order of the residue field.
    pub fn q(&self) -> u64 {
        self.residue.order()
    }

    pub fn is_equicharacteristic(&self) -> bool {
        self.model == LocalModel::Laurent
    }

    pub fn uniformizer(&self) -> &LocalElement {
        &self.uniformizer
    }

    /// `padic:p:N` or `laurent:q:N`.
    pub fn spec(&self) -> String {
        match self.model {
            LocalModel::Padic => format!("padic:{}:{}", self.p(), self.precision),
            LocalModel::Laurent => format!("laurent:{}:{}", self.q(), self.precision),
        }
    }

    /// Inverse of [`LocalFieldCtx::spec`].
    pub fn from_spec(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad local field `{s}`, expected padic:p:N or laurent:q:N"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [kind, a, n] = parts.as_slice() else {
            return Err(bad());
        };
        let a: u64 = a.parse().map_err(|_| bad())?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        match *kind {
            "padic" => Self::padic(a, n),
            "laurent" => Self::laurent(a, n),
            _ => Err(bad()),
        }
    }

    pub fn describe(&self) -> String {
        match self.model {
            LocalModel::Padic => format!("Q_{} (precision {})", self.p(), self.precision),
            LocalModel::Laurent => format!("F_{}((t)) (precision {})", self.q(), self.precision),
        }
    }

    /// Moves an element of the same field into this precision.
    pub fn coerce(&self, x: &LocalElement) -> LocalElement {
        match x {
            LocalElement::Padic(a) => LocalElement::Padic(a.with_precision(self.precision)),
            LocalElement::Laurent(a) => LocalElement::Laurent(a.with_precision(self.precision)),
        }
    }

    /// `t^k`, or `p^k` in the p-adic model.
    pub fn pi_power(&self, k: i64) -> LocalElement {
        match self.model {
            LocalModel::Padic => LocalElement::Padic(
                PadicNumber::from_parts(self.p(), self.precision, k, 1).unwrap(),
            ),
            LocalModel::Laurent => {
                LocalElement::Laurent(LaurentSeries::t_power(&self.residue, self.precision, k))
            }
        }
    }

    pub fn valuation(&self, x: &LocalElement) -> Option<i64> {
        x.valuation()
    }

    pub fn is_unit(&self, x: &LocalElement) -> bool {
        x.valuation() == Some(0)
    }

    pub fn is_integral(&self, x: &LocalElement) -> bool {
        x.valuation().is_none_or(|v| v >= 0)
    }

    /// `x = u · π^k` with `k = v(x)` and `u` a unit.
    pub fn unit_decompose(&self, x: &LocalElement) -> Result<(i64, LocalElement)> {
        let k = x.valuation().ok_or(Error::ZeroElement)?;
        let pik = self.pow_signed(&self.uniformizer, -k).unwrap();
        Ok((k, self.mul(x, &pik)))
    }

    /// Residue of an integral element in the residue field.
    pub fn residue(&self, x: &LocalElement) -> Result<FfElem> {
        match x {
            LocalElement::Padic(a) => {
                let r = a.residue().ok_or(Error::NonUnitEntry)?;
                self.residue.from_code(r)
            }
            LocalElement::Laurent(a) => a.residue().ok_or(Error::NonUnitEntry),
        }
    }

    /// Lifts a residue class; in the p-adic model the lift is the integer
    /// code of the class, in the Laurent model the constant series.
    pub fn lift_residue(&self, c: &FfElem) -> LocalElement {
        match self.model {
            LocalModel::Padic => self.from_int(c.code() as i64),
            LocalModel::Laurent => {
                LocalElement::Laurent(LaurentSeries::constant(&self.residue, self.precision, c))
            }
        }
    }

    pub fn teichmuller(&self, x: &LocalElement) -> Result<LocalElement> {
        match x {
            LocalElement::Padic(a) => a
                .with_precision(self.precision)
                .teichmuller()
                .map(LocalElement::Padic),
            LocalElement::Laurent(a) => a.teichmuller().map(LocalElement::Laurent),
        }
    }

    /// Teichmüller lift of a residue class.
    pub fn teichmuller_of(&self, c: &FfElem) -> LocalElement {
        if c.is_zero() {
            return self.zero();
        }
        self.teichmuller(&self.lift_residue(c)).unwrap()
    }

    /// Principal unit: valuation 0 and residue 1.
    pub fn is_principal_unit(&self, x: &LocalElement) -> bool {
        self.is_unit(x) && self.residue(x).is_ok_and(|r| self.residue.is_one(&r))
    }

    /// Congruence modulo `π^k`.
    pub fn congruent(&self, a: &LocalElement, b: &LocalElement, k: i64) -> bool {
        let d = self.sub(a, b);
        d.valuation().is_none_or(|v| v >= k)
    }

    /// Uniformly random unit (residue drawn from κ^×, higher digits random).
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> LocalElement {
        match self.model {
            LocalModel::Padic => {
                let p = self.p();
                let m = p.pow(self.precision);
                let mut u = rng.gen_range(1..m);
                while u % p == 0 {
                    u = rng.gen_range(1..m);
                }
                LocalElement::Padic(PadicNumber::from_parts(p, self.precision, 0, u).unwrap())
            }
            LocalModel::Laurent => {
                let f = &self.residue;
                let mut c: Vec<FfElem> = (0..self.precision)
                    .map(|_| f.from_code(rng.gen_range(0..f.order())).unwrap())
                    .collect();
                if c[0].is_zero() {
                    c[0] = f.from_exponent(rng.gen_range(0..f.order() as i64 - 1));
                }
                LocalElement::Laurent(LaurentSeries::from_coeffs(f, self.precision, 0, &c))
            }
        }
    }

    /// Random unit with a given residue, i.e. `lift(c) · (1 + π·(…))`.
    pub fn random_unit_with_residue<R: Rng + ?Sized>(&self, c: &FfElem, rng: &mut R) -> LocalElement {
        let u = self.random_unit(rng);
        let w = self.teichmuller(&u).unwrap();
        let principal = self.div(&u, &w).unwrap();
        self.mul(&self.lift_residue(c), &principal)
    }

    pub fn parse(&self, s: &str) -> Result<LocalElement> {
        let x = parse_local(s)?;
        if !self.owns(&x) {
            return Err(Error::ContextMismatch);
        }
        Ok(x)
    }

    /// Exact rational `a/b` embedded at context precision (p-adic model), or
    /// the residue of `a/b` as a constant series (Laurent model).
    pub fn from_ratio(&self, a: i64, b: i64) -> Option<LocalElement> {
        self.div(&self.from_int(a), &self.from_int(b))
    }
}

impl Field for LocalFieldCtx {
    type Elem = LocalElement;

    fn zero(&self) -> LocalElement {
        match self.model {
            LocalModel::Padic => LocalElement::Padic(PadicNumber::zero(self.p(), self.precision)),
            LocalModel::Laurent => LocalElement::Laurent(LaurentSeries::zero(&self.residue, self.precision)),
        }
    }

    fn one(&self) -> LocalElement {
        self.from_int(1)
    }

    fn is_zero(&self, a: &LocalElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        match (a, b) {
            (LocalElement::Padic(x), LocalElement::Padic(y)) => LocalElement::Padic(x.add(y)),
            (LocalElement::Laurent(x), LocalElement::Laurent(y)) => LocalElement::Laurent(x.add(y)),
            _ => panic!("mixed local models in one expression"),
        }
    }

    fn neg(&self, a: &LocalElement) -> LocalElement {
        match a {
            LocalElement::Padic(x) => LocalElement::Padic(x.neg()),
            LocalElement::Laurent(x) => LocalElement::Laurent(x.neg()),
        }
    }

    fn mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        match (a, b) {
            (LocalElement::Padic(x), LocalElement::Padic(y)) => LocalElement::Padic(x.mul(y)),
            (LocalElement::Laurent(x), LocalElement::Laurent(y)) => LocalElement::Laurent(x.mul(y)),
            _ => panic!("mixed local models in one expression"),
        }
    }

    fn inv(&self, a: &LocalElement) -> Option<LocalElement> {
        match a {
            LocalElement::Padic(x) => x.inv().map(LocalElement::Padic),
            LocalElement::Laurent(x) => x.inv().map(LocalElement::Laurent),
        }
    }

    fn characteristic(&self) -> u64 {
        match self.model {
            LocalModel::Padic => 0,
            LocalModel::Laurent => self.p(),
        }
    }

    fn equal(&self, a: &LocalElement, b: &LocalElement) -> bool {
        match (a, b) {
            (LocalElement::Padic(x), LocalElement::Padic(y)) => x.equal(y),
            (LocalElement::Laurent(x), LocalElement::Laurent(y)) => x.equal(y),
            _ => false,
        }
    }

    fn from_int(&self, n: i64) -> LocalElement {
        match self.model {
            LocalModel::Padic => LocalElement::Padic(PadicNumber::from_i64(self.p(), self.precision, n)),
            LocalModel::Laurent => LocalElement::Laurent(LaurentSeries::constant(
                &self.residue,
                self.precision,
                &self.residue.from_int(n),
            )),
        }
    }

    fn pow(&self, a: &LocalElement, e: u128) -> LocalElement {
        match a {
            LocalElement::Padic(x) => LocalElement::Padic(x.pow(e)),
            LocalElement::Laurent(x) => LocalElement::Laurent(x.pow(e)),
        }
    }

    fn owns(&self, a: &LocalElement) -> bool {
        match (self.model, a) {
            (LocalModel::Padic, LocalElement::Padic(x)) => x.p() == self.p(),
            (LocalModel::Laurent, LocalElement::Laurent(x)) => x.field().same_field(&self.residue),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_decompose_fifty() {
        let k = LocalFieldCtx::padic(5, 6).unwrap();
        let (e, u) = k.unit_decompose(&k.from_int(50)).unwrap();
        assert_eq!(e, 2);
        assert!(k.equal(&u, &k.from_int(2)));
        assert_eq!(k.unit_decompose(&k.zero()).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn unit_decompose_laurent() {
        let k = LocalFieldCtx::laurent(2, 6).unwrap();
        let f = k.residue_field().clone();
        let x = LocalElement::Laurent(LaurentSeries::from_coeffs(&f, 6, -3, &[f.one(), f.one()]));
        let (e, u) = k.unit_decompose(&x).unwrap();
        assert_eq!(e, -3);
        let expected = LocalElement::Laurent(LaurentSeries::from_coeffs(&f, 6, 0, &[f.one(), f.one()]));
        assert!(k.equal(&u, &expected));
    }

    #[test]
    fn custom_uniformizer() {
        // π = 10 = 2·5 in Q_5; 50 = 2·5^2 = (1/2)·10^2
        let k = LocalFieldCtx::padic(5, 6).unwrap();
        let k = k.clone().with_uniformizer(k.from_int(10)).unwrap();
        let (e, u) = k.unit_decompose(&k.from_int(50)).unwrap();
        assert_eq!(e, 2);
        assert!(k.equal(&k.mul(&u, &k.from_int(2)), &k.one()));
        assert!(k.clone().with_uniformizer(k.from_int(25)).is_err());
    }

    #[test]
    fn teichmuller_is_root_of_unity() {
        let k = LocalFieldCtx::padic(7, 5).unwrap();
        for a in 1..7 {
            let w = k.teichmuller(&k.from_int(a + 7 * 3)).unwrap();
            assert!(k.is_one(&k.pow(&w, 6)));
            assert_eq!(k.residue(&w).unwrap().code(), a as u64);
        }
        let w = k.teichmuller(&k.from_int(8)).unwrap();
        assert!(k.is_one(&w));
    }
}
