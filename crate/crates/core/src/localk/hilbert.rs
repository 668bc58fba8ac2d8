//! The Hilbert symbol on `Q_p` and a brute-force quadratic form oracle.

use std::fmt;

use crate::arith::ff::FfElem;
use crate::arith::field::Field;
use crate::arith::hensel::hensel_lift;
use crate::arith::local::{LocalElement, LocalFieldCtx, LocalModel};
use crate::arith::padic::PadicNumber;
use crate::arith::poly::PolyRing;
use crate::error::{Error, Result};

/// `(a, b)` as an element of `Z/2` (`p = 2`) or the tame pairing class in
/// `F_p^×` (odd `p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertValue {
    Sign(u8),
    Tame(FfElem),
}

impl HilbertValue {
    /// Trivial in `(K_2 Q_p)/p`. Every class of `F_p^×` is a `p`-th power,
    /// so the odd tame pairing is always trivial there.
    pub fn is_trivial_mod_p(&self) -> bool {
        match self {
            HilbertValue::Sign(s) => *s == 0,
            HilbertValue::Tame(x) => {
                let f = x.field();
                let p = f.p() as u128;
                let root = f.pow(x, modular_inverse(p, (f.order() - 1) as u128));
                f.equal(&f.pow(&root, p), x)
            }
        }
    }
}

fn modular_inverse(a: u128, n: u128) -> u128 {
    (1..n.max(2)).find(|k| (a * k) % n == 1 % n).unwrap_or(1)
}

impl fmt::Display for HilbertValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertValue::Sign(s) => write!(f, "{s}"),
            HilbertValue::Tame(x) => write!(f, "{x}"),
        }
    }
}

fn padic_of(ctx: &LocalFieldCtx, x: &LocalElement) -> Result<PadicNumber> {
    if ctx.model() != LocalModel::Padic {
        return Err(Error::Unsupported("Hilbert symbols are computed over Q_p".into()));
    }
    let a = x.as_padic().ok_or(Error::ContextMismatch)?;
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(*a)
}

/// `(v, u mod p^k)` for `x = p^v·u`; needs `k` known digits of `u`.
fn split_digits(x: &PadicNumber, k: u32) -> Result<(i64, u64)> {
    if x.precision() < k {
        return Err(Error::PrecisionTooLow(format!("{x} has fewer than {k} digits")));
    }
    let v = x.valuation().ok_or(Error::ZeroInput)?;
    let u = x.unit().ok_or(Error::ZeroInput)? % x.p().pow(k);
    Ok((v, u))
}

pub fn hilbert(ctx: &LocalFieldCtx, a: &LocalElement, b: &LocalElement) -> Result<HilbertValue> {
    let (a, b) = (padic_of(ctx, a)?, padic_of(ctx, b)?);
    let p = ctx.p();
    if p == 2 {
        let (alpha, u) = split_digits(&a, 3)?;
        let (beta, v) = split_digits(&b, 3)?;
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let s = eps(u) * eps(v) + (alpha.rem_euclid(2) as u64) * omega(v) + (beta.rem_euclid(2) as u64) * omega(u);
        return Ok(HilbertValue::Sign((s % 2) as u8));
    }
    let (alpha, u) = split_digits(&a, 1)?;
    let (beta, v) = split_digits(&b, 1)?;
    let f = ctx.residue_field();
    let (ur, vr) = (f.from_code(u)?, f.from_code(v)?);
    let sign = if (alpha * beta).rem_euclid(2) == 1 { f.from_int(-1) } else { f.one() };
    let num = f.pow_signed(&vr, alpha).ok_or(Error::ZeroInput)?;
    let den = f.pow_signed(&ur, beta).ok_or(Error::ZeroInput)?;
    Ok(HilbertValue::Tame(f.mul(&sign, &f.div(&num, &den).ok_or(Error::ZeroInput)?)))
}

/// Default digits searched by [`qf_oracle`].
pub fn default_search_precision(p: u64) -> u32 {
    if p == 2 {
        6
    } else {
        3
    }
}

const MAX_SEARCH: u64 = 1 << 26;

/// Decides whether `z² = a·x² + b·y²` has a nonzero solution over `Q_p`.
///
/// Any solution scales to a primitive integral one, whose reduction mod
/// `p^k` is a primitive zero of `Q = a x² + b y² - z²`; we enumerate those
/// with a unit coordinate normalized to 1. Finding none proves there is no
/// solution. A zero found is lifted by Hensel on a coordinate that is a
/// unit with unit coefficient and the lifted solution is checked.
pub fn qf_oracle(ctx: &LocalFieldCtx, a: &LocalElement, b: &LocalElement, k: u32) -> Result<bool> {
    let (pa, pb) = (padic_of(ctx, a)?, padic_of(ctx, b)?);
    let p = ctx.p();
    let min = if p == 2 { 3 } else { 1 };
    if k < min {
        return Err(Error::PrecisionTooLow(format!("search precision {k} is below {min}")));
    }
    let pk = p
        .checked_pow(k)
        .filter(|m| m.checked_mul(*m).is_some_and(|s| s <= MAX_SEARCH))
        .ok_or_else(|| Error::Unsupported(format!("search space {p}^{} is too large", 2 * k)))?;
    // a = p^α u  ~  p^(α mod 2) u
    let (alpha, u) = split_digits(&pa, k)?;
    let (beta, v) = split_digits(&pb, k)?;
    let ca = if alpha.rem_euclid(2) == 1 { (u as u128 * p as u128 % pk as u128) as u64 } else { u };
    let cb = if beta.rem_euclid(2) == 1 { (v as u128 * p as u128 % pk as u128) as u64 } else { v };
    let ea = ctx.mul(&ctx.pi_power(alpha.rem_euclid(2)), &unit_part(ctx, &pa));
    let eb = ctx.mul(&ctx.pi_power(beta.rem_euclid(2)), &unit_part(ctx, &pb));

    let m = pk as u128;
    let q = |x: u64, y: u64, z: u64| -> u128 {
        let (x, y, z) = (x as u128, y as u128, z as u128);
        (ca as u128 * (x * x % m) % m + cb as u128 * (y * y % m) % m + m - z * z % m) % m
    };
    let mut found_any = false;
    let mut try_lift = |x: u64, y: u64, z: u64| -> Result<bool> {
        found_any = true;
        lift_solution(ctx, &ea, &eb, [x, y, z], alpha.rem_euclid(2) == 0, beta.rem_euclid(2) == 0)
    };
    // z = 1
    for x in 0..pk {
        for y in 0..pk {
            if q(x, y, 1) == 0 && try_lift(x, y, 1)? {
                return Ok(true);
            }
        }
    }
    // z ≡ 0, x = 1
    for z in (0..pk).step_by(p as usize) {
        for y in 0..pk {
            if q(1, y, z) == 0 && try_lift(1, y, z)? {
                return Ok(true);
            }
        }
    }
    // z ≡ x ≡ 0, y = 1
    for z in (0..pk).step_by(p as usize) {
        for x in (0..pk).step_by(p as usize) {
            if q(x, 1, z) == 0 && try_lift(x, 1, z)? {
                return Ok(true);
            }
        }
    }
    if found_any {
        return Err(Error::PrecisionTooLow(format!(
            "zeros modulo {p}^{k} did not lift; search more digits"
        )));
    }
    Ok(false)
}

fn unit_part(ctx: &LocalFieldCtx, x: &PadicNumber) -> LocalElement {
    let v = x.valuation().unwrap_or(0);
    ctx.mul(&LocalElement::Padic(*x), &ctx.pi_power(-v))
}

/// Tries each coordinate in turn: fix the other two and solve for it.
fn lift_solution(
    ctx: &LocalFieldCtx,
    a: &LocalElement,
    b: &LocalElement,
    xyz: [u64; 3],
    a_unit: bool,
    b_unit: bool,
) -> Result<bool> {
    let p = ctx.p();
    let [x, y, z] = xyz.map(|c| ctx.from_int(c as i64));
    let check = |x: &LocalElement, y: &LocalElement, z: &LocalElement| {
        let rhs = ctx.add(&ctx.mul(a, &ctx.mul(x, x)), &ctx.mul(b, &ctx.mul(y, y)));
        ctx.equal(&ctx.mul(z, z), &rhs)
    };
    let unit = |c: u64| !c.is_multiple_of(p);
    // unit-coefficient coordinates first; a coefficient of valuation 1
    // costs one digit of the congruence
    let options = [(2usize, true), (0, a_unit), (1, b_unit)];
    let order = options.iter().filter(|o| o.1).chain(options.iter().filter(|o| !o.1));
    for &(idx, _) in order {
        if !unit(xyz[idx]) {
            continue;
        }
        let mut sol = [x.clone(), y.clone(), z.clone()];
        // c² = w with the other coordinates fixed
        let w = match idx {
            2 => ctx.add(&ctx.mul(a, &ctx.mul(&x, &x)), &ctx.mul(b, &ctx.mul(&y, &y))),
            0 => ctx.div(&ctx.sub(&ctx.mul(&z, &z), &ctx.mul(b, &ctx.mul(&y, &y))), a).unwrap(),
            _ => ctx.div(&ctx.sub(&ctx.mul(&z, &z), &ctx.mul(a, &ctx.mul(&x, &x))), b).unwrap(),
        };
        let c0 = &sol[idx];
        let ratio = ctx.div(&w, &ctx.mul(c0, c0)).unwrap();
        let ring = PolyRing::new(ctx.clone());
        let f = ring.sub(&ring.monomial(ctx.one(), 2), &ring.constant(ratio));
        let Ok(r) = hensel_lift(ctx, &f, &ctx.one(), ctx.precision() as i64) else {
            continue;
        };
        sol[idx] = ctx.mul(c0, &r);
        if check(&sol[0], &sol[1], &sol[2]) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> LocalFieldCtx {
        LocalFieldCtx::padic(2, 10).unwrap()
    }

    #[test]
    fn two_five_is_nontrivial() {
        let k = q2();
        assert_eq!(hilbert(&k, &k.from_int(2), &k.from_int(5)).unwrap(), HilbertValue::Sign(1));
        assert!(!qf_oracle(&k, &k.from_int(2), &k.from_int(5), 6).unwrap());
    }

    #[test]
    fn five_seven_is_trivial() {
        let k = q2();
        assert_eq!(hilbert(&k, &k.from_int(5), &k.from_int(7)).unwrap(), HilbertValue::Sign(0));
        assert!(qf_oracle(&k, &k.from_int(5), &k.from_int(7), 6).unwrap());
    }

    #[test]
    fn one_represents_everything() {
        let k = LocalFieldCtx::padic(3, 6).unwrap();
        for b in [2, 3, 6, -1, 7] {
            assert!(qf_oracle(&k, &k.one(), &k.from_int(b), 3).unwrap());
        }
    }

    #[test]
    fn odd_tame_pairing() {
        let k = LocalFieldCtx::padic(5, 4).unwrap();
        let h = hilbert(&k, &k.from_int(5), &k.from_int(2)).unwrap();
        assert_eq!(h, HilbertValue::Tame(k.residue_field().from_code(2).unwrap()));
        assert!(h.is_trivial_mod_p());
        assert_eq!(hilbert(&k, &k.zero(), &k.one()).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn low_precision() {
        let k = LocalFieldCtx::padic(2, 2).unwrap();
        assert!(matches!(hilbert(&k, &k.from_int(3), &k.from_int(5)), Err(Error::PrecisionTooLow(_))));
    }
}
