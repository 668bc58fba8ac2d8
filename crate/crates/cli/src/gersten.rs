//! Sampled checks of `0 → K_n O → K_n F → K_{n-1} κ → 0` modulo `m` over
//! `F_q((t))`.

use milnor_core::arith::{Field, FiniteField, LocalElement, LocalFieldCtx};
use milnor_core::localk::{generator_form, tame, tame_section};
use milnor_core::symbols::ffk::{class_exponent, kgroup_rows};
use milnor_core::symbols::{AbGroupPresentation, MilnorClass};
use milnor_core::Error;
use num_bigint::BigInt;
use rand::Rng;

use crate::error::{CliError, CliResult};
use crate::report::Report;

pub const MAX_GERSTEN_DEGREE: usize = 3;

/// Whether a class over `F_q` vanishes in `K_d(F_q)/m`.
pub fn zero_mod_m(field: &FiniteField, c: &MilnorClass<FiniteField>, m: u64) -> bool {
    if c.degree() == 0 {
        let s: BigInt = c.terms().map(|t| t.coeff.clone()).sum();
        return (s % BigInt::from(m)) == BigInt::from(0);
    }
    let (rows, _, _) = kgroup_rows(field, c.degree(), Some(m));
    let rows = rows.into_iter().map(|r| vec![BigInt::from(r)]).collect();
    AbGroupPresentation::new(1, rows).is_zero(&[class_exponent(field, c)])
}

fn random_residue_class<R: Rng>(k: &FiniteField, degree: usize, rng: &mut R) -> MilnorClass<FiniteField> {
    if degree == 0 {
        return MilnorClass::integer(k, rng.gen_range(-6i64..=6));
    }
    let mut c = MilnorClass::zero(k, degree);
    for _ in 0..rng.gen_range(1..=2) {
        let e = (0..degree)
            .map(|_| k.from_exponent(rng.gen_range(0..(k.order() - 1) as i64)))
            .collect();
        c.add_term(BigInt::from(rng.gen_range(-2i64..=2)), e);
    }
    c
}

fn random_entry<R: Rng>(ctx: &LocalFieldCtx, with_pi: bool, rng: &mut R) -> LocalElement {
    let u = ctx.random_unit(rng);
    if !with_pi {
        return u;
    }
    let k = rng.gen_range(-1i64..=2);
    ctx.mul(&u, &ctx.pi_power(k))
}

fn random_symbol<R: Rng>(ctx: &LocalFieldCtx, n: usize, units_only: bool, rng: &mut R) -> CliResult<MilnorClass<LocalFieldCtx>> {
    let e = (0..n).map(|_| random_entry(ctx, !units_only, rng)).collect();
    Ok(MilnorClass::symbol(ctx, e)?)
}

fn is_pi_term(ctx: &LocalFieldCtx, e: &[LocalElement]) -> bool {
    e.first().is_some_and(|x| !ctx.is_unit(x))
}

pub fn gersten_check<R: Rng>(
    report: &mut Report,
    ctx: &LocalFieldCtx,
    n: usize,
    m: u64,
    samples: usize,
    rng: &mut R,
) -> CliResult<()> {
    if !ctx.is_equicharacteristic() {
        return Err(CliError::MixedCharRejected);
    }
    if m == 0 || m.is_multiple_of(ctx.p()) {
        return Err(Error::BadModulus { m, p: ctx.p() }.into());
    }
    if n == 0 || n > MAX_GERSTEN_DEGREE {
        return Err(Error::DegreeTooLarge(n).into());
    }
    let k = ctx.residue_field();
    let lift = |c: &_| ctx.teichmuller_of(c);
    for _ in 0..samples {
        // ∂ is onto: the section through π hits b
        let b = random_residue_class(k, n - 1, rng);
        let s = tame_section(ctx, &b, lift);
        let d = tame(ctx, &s)?;
        report.push(
            "tame_surjective",
            b.to_text(),
            d.to_text(),
            zero_mod_m(k, &d.sub(&b), m),
        );

        // ∂ kills classes with unit entries
        let u = random_symbol(ctx, n, true, rng)?;
        let d = tame(ctx, &u)?;
        report.push("tame_kills_units", u.to_text(), d.to_text(), zero_mod_m(k, &d, m));

        // ∂a' ≡ 0 leaves only unit symbols up to m-th multiples
        let mut a = random_symbol(ctx, n, false, rng)?;
        if rng.gen_bool(0.5) {
            a.add_assign(&random_symbol(ctx, n, false, rng)?);
        }
        let a2 = a.sub(&tame_section(ctx, &tame(ctx, &a)?, lift));
        let g = generator_form(ctx, &a2)?;
        let mut pi_part = MilnorClass::zero(ctx, n);
        let mut unit_part = MilnorClass::zero(ctx, n);
        for t in g.terms() {
            let target = if is_pi_term(ctx, &t.entries) { &mut pi_part } else { &mut unit_part };
            target.add_term(t.coeff.clone(), t.entries.clone());
        }
        let units_ok = unit_part.terms().all(|t| t.entries.iter().all(|x| ctx.is_unit(x)));
        let d_pi = tame(ctx, &pi_part)?;
        let d_all = tame(ctx, &a2)?;
        let pass = units_ok && zero_mod_m(k, &d_pi, m) && zero_mod_m(k, &d_all, m);
        report.push(
            "kernel_is_unit_part",
            a.to_text(),
            format!("∂ = {}; unit part {} terms", d_all.to_text(), unit_part.len()),
            pass,
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_mod_m_in_each_degree() {
        let f = FiniteField::of_order(7).unwrap();
        assert!(zero_mod_m(&f, &MilnorClass::integer(&f, 6), 3));
        assert!(!zero_mod_m(&f, &MilnorClass::integer(&f, 4), 3));
        // 3 generates F_7^×; {3} is not a square but {3}^2 is
        let g = MilnorClass::symbol(&f, vec![f.from_int(3)]).unwrap();
        assert!(!zero_mod_m(&f, &g, 2));
        assert!(zero_mod_m(&f, &g.scale(&BigInt::from(2)), 2));
        assert!(zero_mod_m(&f, &g, 5));
        let s = MilnorClass::symbol(&f, vec![f.from_int(3), f.from_int(3)]).unwrap();
        assert!(zero_mod_m(&f, &s, 2));
    }

    #[test]
    fn unfixed_classes_fail_the_kernel_check() {
        let ctx = LocalFieldCtx::laurent(3, 6).unwrap();
        let k = ctx.residue_field();
        let a = MilnorClass::symbol(&ctx, vec![ctx.pi_power(1), ctx.from_int(2)]).unwrap();
        assert!(!zero_mod_m(k, &tame(&ctx, &a).unwrap(), 2));
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut r = Report::new("gersten-check", "", 0, "");
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let q5 = LocalFieldCtx::padic(5, 6).unwrap();
        assert!(matches!(gersten_check(&mut r, &q5, 2, 2, 1, &mut rng), Err(CliError::MixedCharRejected)));
        let f3 = LocalFieldCtx::laurent(3, 6).unwrap();
        assert!(matches!(
            gersten_check(&mut r, &f3, 2, 6, 1, &mut rng),
            Err(CliError::Core(Error::BadModulus { m: 6, p: 3 }))
        ));
        gersten_check(&mut r, &f3, 2, 2, 5, &mut rng).unwrap();
        assert_eq!(r.checks.len(), 15);
        assert!(r.all_pass());
    }
}
