//! p-adic numbers with relative precision.
//!
//! A nonzero value is `unit · p^valuation`, the unit known modulo `p^N`
//! where `N` is the element's relative precision. Zero is a separate marker.
//! Arithmetic lowers precision pessimistically; cancellation in a sum that
//! leaves nothing known collapses to the zero marker.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PadicValue {
    Zero,
    Nonzero { valuation: i64, unit: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    p: u64,
    precision: u32,
    value: PadicValue,
}

pub(crate) fn pow_u64(p: u64, k: u32) -> u64 {
    p.pow(k)
}

/// Largest `N` with `p^N < 2^63`.
pub fn max_precision(p: u64) -> u32 {
    let mut n = 0;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 63) {
        acc *= p as u128;
        n += 1;
    }
    n
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u128, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `m` via the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

impl PadicNumber {
    pub fn check_params(p: u64, precision: u32) -> Result<()> {
        if !crate::arith::ff::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 || precision > max_precision(p) {
            return Err(Error::PrecisionTooHigh { p, precision });
        }
        Ok(())
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        PadicNumber {
            p,
            precision,
            value: PadicValue::Zero,
        }
    }

    /// `unit · p^valuation`; the unit is reduced modulo `p^precision` and must
    /// be coprime to `p`.
    pub fn from_parts(p: u64, precision: u32, valuation: i64, unit: u64) -> Result<Self> {
        if unit.is_multiple_of(p) {
            return Err(Error::Parse(format!("unit {unit} is divisible by {p}")));
        }
        Ok(PadicNumber {
            p,
            precision,
            value: PadicValue::Nonzero {
                valuation,
                unit: unit % pow_u64(p, precision),
            },
        })
    }

    pub fn from_i64(p: u64, precision: u32, n: i64) -> Self {
        if n == 0 {
            return Self::zero(p, precision);
        }
        let mut v = 0;
        let mut m = n.unsigned_abs() as u128;
        while m.is_multiple_of(p as u128) {
            m /= p as u128;
            v += 1;
        }
        let modulus = pow_u64(p, precision);
        let mut u = (m % modulus as u128) as u64;
        if n < 0 {
            u = (modulus - u) % modulus;
        }
        PadicNumber {
            p,
            precision,
            value: PadicValue::Nonzero { valuation: v, unit: u },
        }
    }

    /// `a / b` for integers `b ≠ 0`.
    pub fn from_ratio(p: u64, precision: u32, a: i64, b: i64) -> Option<Self> {
        let num = Self::from_i64(p, precision, a);
        let den = Self::from_i64(p, precision, b);
        num.div(&den)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn value(&self) -> PadicValue {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == PadicValue::Zero
    }

    pub fn valuation(&self) -> Option<i64> {
        match self.value {
            PadicValue::Zero => None,
            PadicValue::Nonzero { valuation, .. } => Some(valuation),
        }
    }

    pub fn unit(&self) -> Option<u64> {
        match self.value {
            PadicValue::Zero => None,
            PadicValue::Nonzero { unit, .. } => Some(unit),
        }
    }

    /// Absolute precision `valuation + N`; `None` for the zero marker.
    pub fn abs_precision(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.precision as i64)
    }

    fn modulus(&self) -> u64 {
        pow_u64(self.p, self.precision)
    }

    /// Residue class modulo `p` of an integral element.
    pub fn residue(&self) -> Option<u64> {
        match self.value {
            PadicValue::Zero => Some(0),
            PadicValue::Nonzero { valuation, unit } => match valuation {
                0 => Some(unit % self.p),
                v if v > 0 => Some(0),
                _ => None,
            },
        }
    }

    /// Value modulo `p^k` as an integer in `[0, p^k)`, for integral elements.
    pub fn mod_pk(&self, k: u32) -> Option<u64> {
        match self.value {
            PadicValue::Zero => Some(0),
            PadicValue::Nonzero { valuation, unit } => {
                if valuation < 0 {
                    return None;
                }
                let m = pow_u64(self.p, k);
                if valuation >= k as i64 {
                    return Some(0);
                }
                Some(mul_mod(unit % m, pow_u64(self.p, valuation as u32), m))
            }
        }
    }

    /// Same value at a different relative precision. Raising the precision
    /// pads with zero digits, which is exact only for elements known to be
    /// integers.
    pub fn with_precision(&self, precision: u32) -> Self {
        let value = match self.value {
            PadicValue::Zero => PadicValue::Zero,
            PadicValue::Nonzero { valuation, unit } => PadicValue::Nonzero {
                valuation,
                unit: unit % pow_u64(self.p, precision),
            },
        };
        PadicNumber {
            p: self.p,
            precision,
            value,
        }
    }

    pub fn neg(&self) -> Self {
        match self.value {
            PadicValue::Zero => *self,
            PadicValue::Nonzero { valuation, unit } => {
                let m = self.modulus();
                PadicNumber {
                    value: PadicValue::Nonzero {
                        valuation,
                        unit: (m - unit) % m,
                    },
                    ..*self
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (va, ua, vb, ub) = match (self.value, other.value) {
            (PadicValue::Zero, _) => return *other,
            (_, PadicValue::Zero) => return *self,
            (
                PadicValue::Nonzero { valuation: va, unit: ua },
                PadicValue::Nonzero { valuation: vb, unit: ub },
            ) => (va, ua, vb, ub),
        };
        let v = va.min(vb);
        let abs = (va + self.precision as i64).min(vb + other.precision as i64);
        let width = (abs - v) as u32;
        let m = pow_u64(self.p, width);
        let sa = mul_mod(ua % m, pow_u64(self.p, (va - v).min(width as i64) as u32), m);
        let sb = mul_mod(ub % m, pow_u64(self.p, (vb - v).min(width as i64) as u32), m);
        let mut s = (sa + sb) % m;
        if s == 0 {
            return PadicNumber {
                p: self.p,
                precision: self.precision.max(other.precision),
                value: PadicValue::Zero,
            };
        }
        let mut k = 0;
        while s.is_multiple_of(self.p) {
            s /= self.p;
            k += 1;
        }
        PadicNumber {
            p: self.p,
            precision: width - k,
            value: PadicValue::Nonzero {
                valuation: v + k as i64,
                unit: s,
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.value, other.value) {
            (
                PadicValue::Nonzero { valuation: va, unit: ua },
                PadicValue::Nonzero { valuation: vb, unit: ub },
            ) => {
                let precision = self.precision.min(other.precision);
                let m = pow_u64(self.p, precision);
                PadicNumber {
                    p: self.p,
                    precision,
                    value: PadicValue::Nonzero {
                        valuation: va + vb,
                        unit: mul_mod(ua % m, ub % m, m),
                    },
                }
            }
            _ => PadicNumber {
                p: self.p,
                precision: self.precision.min(other.precision),
                value: PadicValue::Zero,
            },
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self.value {
            PadicValue::Zero => None,
            PadicValue::Nonzero { valuation, unit } => Some(PadicNumber {
                value: PadicValue::Nonzero {
                    valuation: -valuation,
                    unit: inv_mod(unit, self.modulus()).expect("units are coprime to p"),
                },
                ..*self
            }),
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u128) -> Self {
        match self.value {
            PadicValue::Zero if e == 0 => Self::from_i64(self.p, self.precision, 1),
            PadicValue::Zero => *self,
            PadicValue::Nonzero { valuation, unit } => PadicNumber {
                value: PadicValue::Nonzero {
                    valuation: valuation * e as i64,
                    unit: pow_mod(unit, e, self.modulus()),
                },
                ..*self
            },
        }
    }

    /// Equality modulo the coarser of the two precisions.
    pub fn equal(&self, other: &Self) -> bool {
        match (self.value, other.value) {
            (PadicValue::Zero, PadicValue::Zero) => true,
            (
                PadicValue::Nonzero { valuation: va, unit: ua },
                PadicValue::Nonzero { valuation: vb, unit: ub },
            ) => {
                let m = pow_u64(self.p, self.precision.min(other.precision));
                va == vb && ua % m == ub % m
            }
            _ => false,
        }
    }

    /// Equality of absolute residues modulo `p^k`.
    pub fn congruent(&self, other: &Self, k: i64) -> bool {
        let d = self.sub(other);
        match d.valuation() {
            None => true,
            Some(v) => v >= k,
        }
    }

    /// Teichmüller representative of a unit: `x^{p^{N-1}}` at precision `N`.
    pub fn teichmuller(&self) -> Result<Self> {
        if self.valuation() != Some(0) {
            return Err(Error::NotAUnit);
        }
        let e = (self.p as u128).pow(self.precision - 1);
        Ok(self.pow(e))
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            PadicValue::Zero => write!(f, "padic({},{}):0", self.p, self.precision),
            PadicValue::Nonzero { valuation, unit } => {
                write!(f, "padic({},{}):{}*{}^{}", self.p, self.precision, unit, self.p, valuation)
            }
        }
    }
}

/// Parses `padic(p,N):u*p^k` or `padic(p,N):0`.
pub fn parse_padic(s: &str) -> Result<PadicNumber> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed p-adic number `{s}`"));
    let rest = s.strip_prefix("padic(").ok_or_else(bad)?;
    let (params, value) = rest.split_once("):").ok_or_else(bad)?;
    let (p, n) = params.split_once(',').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    PadicNumber::check_params(p, n)?;
    let value = value.trim();
    if value == "0" {
        return Ok(PadicNumber::zero(p, n));
    }
    let (u, pk) = value.split_once('*').ok_or_else(bad)?;
    let (base, k) = pk.split_once('^').ok_or_else(bad)?;
    if base.trim().parse::<u64>().map_err(|_| bad())? != p {
        return Err(bad());
    }
    let u: u64 = u.trim().parse().map_err(|_| bad())?;
    let k: i64 = k.trim().parse().map_err(|_| bad())?;
    if u >= pow_u64(p, n) {
        return Err(bad());
    }
    PadicNumber::from_parts(p, n, k, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5(n: i64) -> PadicNumber {
        PadicNumber::from_i64(5, 4, n)
    }

    #[test]
    fn valuation_split() {
        let x = z5(50);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.unit(), Some(2));
        assert_eq!(z5(-1).unit(), Some(624));
    }

    #[test]
    fn cancellation_lowers_precision() {
        let a = z5(1 + 5);
        let b = z5(1);
        let d = a.sub(&b);
        assert_eq!(d.valuation(), Some(1));
        assert_eq!(d.precision(), 3);
        assert!(d.equal(&z5(5)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse_of_unit() {
        let x = z5(7);
        let y = x.inv().unwrap();
        assert!(x.mul(&y).equal(&z5(1)));
        let z = z5(10).inv().unwrap();
        assert_eq!(z.valuation(), Some(-1));
    }

    #[test]
    fn teichmuller_of_seven_mod_25() {
        let x = PadicNumber::from_i64(5, 2, 7);
        // 7^4 = 2401 = 96·25 + 1
        assert_eq!(2401 % 25, 1);
        let w = x.teichmuller().unwrap();
        assert_eq!(w.unit(), Some(7));
        assert_eq!(PadicNumber::from_i64(5, 2, 6).teichmuller().unwrap().unit(), Some(1));
    }

    #[test]
    fn text_round_trip() {
        for x in [z5(50), z5(-3), z5(0), z5(7).inv().unwrap(), z5(1).div(&z5(125)).unwrap()] {
            assert_eq!(parse_padic(&x.to_string()).unwrap(), x);
        }
        assert_eq!(z5(50).to_string(), "padic(5,4):2*5^2");
    }

    #[test]
    fn precision_bound() {
        assert_eq!(max_precision(2), 62);
        assert!(PadicNumber::check_params(5, 28).is_err());
        assert!(PadicNumber::check_params(4, 2).is_err());
    }
}
