//! Newton–Hensel lifting of simple roots over a local field.

use super::field::Field;
use super::local::{LocalElement, LocalFieldCtx, LocalModel};
use super::padic::max_precision;
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

const MAX_NEWTON_STEPS: usize = 64;

/// Lifts an approximate root `x0` of `f` to a root modulo `π^target`.
///
/// Requires `v(f(x0)) > 2·v(f'(x0))`. The result agrees with `x0` modulo
/// `π^{v(f(x0)) - v(f'(x0))}` and is re-checked before it is returned.
pub fn hensel_lift(
    ctx: &LocalFieldCtx,
    f: &Poly<LocalElement>,
    x0: &LocalElement,
    target: i64,
) -> Result<LocalElement> {
    let ring = PolyRing::new(ctx.clone());
    let df = ring.derivative(f);
    let fx0 = ring.eval(f, x0);
    let dfx0 = ring.eval(&df, x0);
    let delta = dfx0.valuation().ok_or(Error::NewtonConditionFails)?;
    let start = match fx0.valuation() {
        None => return Ok(x0.clone()),
        Some(v) => v,
    };
    if start <= 2 * delta {
        return Err(Error::NewtonConditionFails);
    }

    let x0_val = x0.valuation().unwrap_or(0).min(0);
    let want = (target + 2 * delta.max(0) + 2 - x0_val).max(ctx.precision() as i64);
    let cap = match ctx.model() {
        LocalModel::Padic => max_precision(ctx.p()) as i64,
        LocalModel::Laurent => 4096,
    };
    if want > cap {
        return Err(Error::PrecisionExhausted(format!(
            "Newton iteration needs {want} digits, at most {cap} are representable"
        )));
    }
    let work = ctx.with_precision(want as u32)?;
    let wring = PolyRing::new(work.clone());
    let wf = wring.from_coeffs(f.coeffs().iter().map(|c| work.coerce(c)).collect());
    let wdf = wring.derivative(&wf);
    let mut x = work.coerce(x0);
    let reached = |v: &LocalElement| v.valuation().is_none_or(|k| k >= target);

    let mut steps = 0;
    loop {
        let fx = wring.eval(&wf, &x);
        if reached(&fx) {
            break;
        }
        if steps == MAX_NEWTON_STEPS {
            return Err(Error::PrecisionExhausted(format!(
                "no convergence to precision {target} after {MAX_NEWTON_STEPS} Newton steps"
            )));
        }
        let dfx = wring.eval(&wdf, &x);
        let step = work.div(&fx, &dfx).ok_or(Error::NewtonConditionFails)?;
        x = work.sub(&x, &step);
        steps += 1;
    }

    // Re-verify: root to the target and congruent to the start.
    let fx = wring.eval(&wf, &x);
    if !reached(&fx) || !work.congruent(&x, &work.coerce(x0), start - delta) {
        return Err(Error::PrecisionExhausted("lifted root failed re-verification".into()));
    }
    let rel = match x.valuation() {
        Some(v) => (target - v).max(1) as u32,
        None => return Ok(ctx.zero()),
    };
    let out = ctx.with_precision(rel)?;
    Ok(out.coerce(&x))
}

/// `X^k - a` as a polynomial over the local field.
pub fn power_minus(ctx: &LocalFieldCtx, k: u64, a: &LocalElement) -> Poly<LocalElement> {
    let ring = PolyRing::new(ctx.clone());
    ring.sub(&ring.monomial(ctx.one(), k as usize), &ring.constant(a.clone()))
}

/// `k`-th root of a principal unit `u`, `k` prime to the residue
/// characteristic, congruent to 1, at absolute precision `target`.
pub fn principal_root(ctx: &LocalFieldCtx, u: &LocalElement, k: u64, target: i64) -> Result<LocalElement> {
    if k.is_multiple_of(ctx.p()) {
        return Err(Error::BadModulus { m: k, p: ctx.p() });
    }
    if !ctx.is_principal_unit(u) {
        return Err(Error::NonUnitEntry);
    }
    if k == 1 {
        return Ok(u.clone());
    }
    hensel_lift(ctx, &power_minus(ctx, k, u), &ctx.one(), target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ctx: &LocalFieldCtx, desc: &[i64]) -> Poly<LocalElement> {
        PolyRing::new(ctx.clone()).from_coeffs_desc(desc.iter().map(|&c| ctx.from_int(c)).collect())
    }

    #[test]
    fn cube_root_of_two_mod_125() {
        let k = LocalFieldCtx::padic(5, 3).unwrap();
        let x = hensel_lift(&k, &poly(&k, &[1, 0, 0, -2]), &k.from_int(3), 3).unwrap();
        assert_eq!(x.as_padic().unwrap().mod_pk(3), Some(53));
        assert_eq!(53u64.pow(3) % 125, 2);
    }

    #[test]
    fn square_root_of_six_mod_25() {
        let k = LocalFieldCtx::padic(5, 2).unwrap();
        let x = hensel_lift(&k, &poly(&k, &[1, 0, -6]), &k.from_int(1), 2).unwrap();
        assert_eq!(x.as_padic().unwrap().mod_pk(2), Some(16));
        assert_eq!(256 % 25, 6);
    }

    #[test]
    fn exact_root_returns_itself() {
        let k = LocalFieldCtx::padic(7, 4).unwrap();
        let x = hensel_lift(&k, &poly(&k, &[1, -10]), &k.from_int(10), 4).unwrap();
        assert!(k.equal(&x, &k.from_int(10)));
    }

    #[test]
    fn newton_condition_is_enforced() {
        // X^2 - 2 over Z_5 has no root; f(1) = -1 is a unit.
        let k = LocalFieldCtx::padic(5, 4).unwrap();
        let err = hensel_lift(&k, &poly(&k, &[1, 0, -2]), &k.from_int(1), 4).unwrap_err();
        assert_eq!(err, Error::NewtonConditionFails);
    }

    #[test]
    fn square_root_in_laurent_series() {
        let k = LocalFieldCtx::laurent(3, 8).unwrap();
        let f = k.residue_field().clone();
        let one_plus_t = LocalElement::Laurent(crate::arith::laurent::LaurentSeries::from_coeffs(
            &f,
            8,
            0,
            &[f.one(), f.one()],
        ));
        let s = principal_root(&k, &one_plus_t, 2, 8).unwrap();
        assert!(k.equal(&k.mul(&s, &s), &one_plus_t));
    }

    #[test]
    fn lifting_in_two_stages_agrees() {
        let k = LocalFieldCtx::padic(7, 10).unwrap();
        let f = poly(&k, &[1, 0, 0, -6]);
        let x5 = hensel_lift(&k, &f, &k.from_int(3), 5).unwrap();
        let x10 = hensel_lift(&k, &f, &x5, 10).unwrap();
        let direct = hensel_lift(&k, &f, &k.from_int(3), 10).unwrap();
        assert!(k.equal(&x10, &direct));
    }
}
