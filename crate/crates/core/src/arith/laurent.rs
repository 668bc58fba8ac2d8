//! Truncated Laurent series over a finite field, `F_q((t))` with relative
//! precision `N`.

use std::fmt;

use super::ff::{FfElem, FiniteField};
use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LaurentValue {
    Zero,
    /// `t^valuation · (c_0 + c_1 t + …)`, `c_0 ≠ 0`, `N` coefficients.
    Nonzero { valuation: i64, coeffs: Vec<FfElem> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    field: FiniteField,
    precision: u32,
    value: LaurentValue,
}

impl LaurentSeries {
    pub fn zero(field: &FiniteField, precision: u32) -> Self {
        LaurentSeries {
            field: field.clone(),
            precision,
            value: LaurentValue::Zero,
        }
    }

    /// Builds `t^valuation · Σ coeffs[i] t^i`, normalizing leading zeros and
    /// padding or truncating to `precision` coefficients.
    pub fn from_coeffs(field: &FiniteField, precision: u32, valuation: i64, coeffs: &[FfElem]) -> Self {
        let Some(lead) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero(field, precision);
        };
        let mut c: Vec<FfElem> = coeffs[lead..].iter().take(precision as usize).cloned().collect();
        c.resize(precision as usize, field.zero());
        LaurentSeries {
            field: field.clone(),
            precision,
            value: LaurentValue::Nonzero {
                valuation: valuation + lead as i64,
                coeffs: c,
            },
        }
    }

    pub fn constant(field: &FiniteField, precision: u32, c: &FfElem) -> Self {
        Self::from_coeffs(field, precision, 0, std::slice::from_ref(c))
    }

    /// `t^k`.
    pub fn t_power(field: &FiniteField, precision: u32, k: i64) -> Self {
        Self::from_coeffs(field, precision, k, &[field.one()])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn value(&self) -> &LaurentValue {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == LaurentValue::Zero
    }

    pub fn valuation(&self) -> Option<i64> {
        match &self.value {
            LaurentValue::Zero => None,
            LaurentValue::Nonzero { valuation, .. } => Some(*valuation),
        }
    }

    pub fn abs_precision(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.precision as i64)
    }

    /// Coefficient of `t^k`, zero outside the known window.
    pub fn coeff(&self, k: i64) -> FfElem {
        match &self.value {
            LaurentValue::Zero => self.field.zero(),
            LaurentValue::Nonzero { valuation, coeffs } => {
                let i = k - valuation;
                if i < 0 || i >= coeffs.len() as i64 {
                    self.field.zero()
                } else {
                    coeffs[i as usize].clone()
                }
            }
        }
    }

    pub fn leading(&self) -> Option<&FfElem> {
        match &self.value {
            LaurentValue::Zero => None,
            LaurentValue::Nonzero { coeffs, .. } => coeffs.first(),
        }
    }

    /// Residue of an integral element.
    pub fn residue(&self) -> Option<FfElem> {
        match self.valuation() {
            None => Some(self.field.zero()),
            Some(0) => self.leading().cloned(),
            Some(v) if v > 0 => Some(self.field.zero()),
            _ => None,
        }
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        match &self.value {
            LaurentValue::Zero => Self::zero(&self.field, precision),
            LaurentValue::Nonzero { valuation, coeffs } => {
                Self::from_coeffs(&self.field, precision, *valuation, coeffs)
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.value {
            LaurentValue::Zero => self.clone(),
            LaurentValue::Nonzero { valuation, coeffs } => LaurentSeries {
                field: self.field.clone(),
                precision: self.precision,
                value: LaurentValue::Nonzero {
                    valuation: *valuation,
                    coeffs: coeffs.iter().map(|c| self.field.neg(c)).collect(),
                },
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) else {
            return if self.is_zero() { other.clone() } else { self.clone() };
        };
        let v = va.min(vb);
        let abs = (va + self.precision as i64).min(vb + other.precision as i64);
        let coeffs: Vec<FfElem> = (v..abs)
            .map(|k| self.field.add(&self.coeff(k), &other.coeff(k)))
            .collect();
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(&self.field, self.precision.max(other.precision)),
            Some(lead) => Self::from_coeffs(&self.field, (abs - v) as u32 - lead as u32, v, &coeffs),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        match (&self.value, &other.value) {
            (
                LaurentValue::Nonzero { valuation: va, coeffs: a },
                LaurentValue::Nonzero { valuation: vb, coeffs: b },
            ) => {
                let n = precision as usize;
                let f = &self.field;
                let mut c = vec![f.zero(); n];
                for i in 0..n {
                    for j in 0..n - i {
                        c[i + j] = f.add(&c[i + j], &f.mul(&a[i], &b[j]));
                    }
                }
                Self::from_coeffs(f, precision, va + vb, &c)
            }
            _ => Self::zero(&self.field, precision),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let LaurentValue::Nonzero { valuation, coeffs } = &self.value else {
            return None;
        };
        let f = &self.field;
        let n = self.precision as usize;
        let c0_inv = f.inv(&coeffs[0]).unwrap();
        let mut b = vec![f.zero(); n];
        b[0] = c0_inv.clone();
        for k in 1..n {
            let mut s = f.zero();
            for i in 1..=k {
                s = f.add(&s, &f.mul(&coeffs[i], &b[k - i]));
            }
            b[k] = f.neg(&f.mul(&s, &c0_inv));
        }
        Some(Self::from_coeffs(f, self.precision, -valuation, &b))
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = Self::constant(&self.field, self.precision, &self.field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn equal(&self, other: &Self) -> bool {
        match (&self.value, &other.value) {
            (LaurentValue::Zero, LaurentValue::Zero) => true,
            (
                LaurentValue::Nonzero { valuation: va, coeffs: a },
                LaurentValue::Nonzero { valuation: vb, coeffs: b },
            ) => {
                let n = self.precision.min(other.precision) as usize;
                va == vb && a[..n] == b[..n]
            }
            _ => false,
        }
    }

    /// Teichmüller representative: the constant term, as `F_q ⊂ F_q[[t]]`.
    pub fn teichmuller(&self) -> Result<Self> {
        if self.valuation() != Some(0) {
            return Err(Error::NotAUnit);
        }
        Ok(Self::constant(&self.field, self.precision, self.leading().unwrap()))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.field.order();
        match &self.value {
            LaurentValue::Zero => write!(f, "laurent({q},{}):0", self.precision),
            LaurentValue::Nonzero { valuation, coeffs } => {
                let codes: Vec<String> = coeffs.iter().map(|c| c.code().to_string()).collect();
                write!(f, "laurent({q},{}):t^{valuation}*({})", self.precision, codes.join(","))
            }
        }
    }
}

/// Parses `laurent(q,N):t^k*(c0,c1,…)` or `laurent(q,N):0`.
pub fn parse_laurent(s: &str) -> Result<LaurentSeries> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed Laurent series `{s}`"));
    let rest = s.strip_prefix("laurent(").ok_or_else(bad)?;
    let (params, value) = rest.split_once("):").ok_or_else(bad)?;
    let (q, n) = params.split_once(',').ok_or_else(bad)?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let field = FiniteField::of_order(q)?;
    let value = value.trim();
    if value == "0" {
        return Ok(LaurentSeries::zero(&field, n));
    }
    let (tk, list) = value.split_once('*').ok_or_else(bad)?;
    let k: i64 = tk.trim().strip_prefix("t^").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let list = list.trim().strip_prefix('(').and_then(|l| l.strip_suffix(')')).ok_or_else(bad)?;
    let coeffs = list
        .split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|_| bad()).and_then(|c| field.from_code(c)))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != n as usize || coeffs[0].is_zero() {
        return Err(bad());
    }
    Ok(LaurentSeries::from_coeffs(&field, n, k, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3, 1).unwrap()
    }

    fn series(c: &[i64], v: i64) -> LaurentSeries {
        let f = f3();
        let coeffs: Vec<FfElem> = c.iter().map(|&x| f.from_int(x)).collect();
        LaurentSeries::from_coeffs(&f, 5, v, &coeffs)
    }

    #[test]
    fn geometric_inverse() {
        // (1 - t)^{-1} = 1 + t + t^2 + …
        let x = series(&[1, -1], 0);
        let y = x.inv().unwrap();
        assert!(y.equal(&series(&[1, 1, 1, 1, 1], 0)));
        assert!(x.mul(&y).equal(&series(&[1], 0)));
    }

    #[test]
    fn cancellation_shifts_valuation() {
        let a = series(&[1, 2], 0);
        let b = series(&[1], 0);
        let d = a.sub(&b);
        assert_eq!(d.valuation(), Some(1));
        assert_eq!(d.precision(), 4);
    }

    #[test]
    fn text_round_trip() {
        for x in [series(&[1, 1], -3), series(&[2, 0, 1], 4), LaurentSeries::zero(&f3(), 5)] {
            assert_eq!(parse_laurent(&x.to_string()).unwrap(), x);
        }
        assert_eq!(series(&[1, 1], -3).to_string(), "laurent(3,5):t^-3*(1,1,0,0,0)");
    }
}
