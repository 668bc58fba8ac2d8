//! Named invariant suites run by `milnor-forge suite NAME`.

use milnor_core::arith::{Field, FiniteField, LocalFieldCtx, RationalFunctionField};
use milnor_core::bass_tate::{bt_section_full, random_class, random_ratfunc, reciprocity_check, residue_vector, Fqt};
use milnor_core::localk::{divisibility_witness, hilbert, k1_value, qf_oracle, tame, verify_certificate, HilbertValue};
use milnor_core::symbols::ffk::{class_exponent, ff_kgroup_bounded, kgroup_rows};
use milnor_core::symbols::{AbGroupPresentation, MilnorClass};
use num_bigint::BigInt;
use rand::Rng;

use crate::config::Bounds;
use crate::error::{CliError, CliResult};
use crate::report::Report;

pub const SUITES: [&str; 5] = ["STEINBERG", "HILBERT_TABLE", "RECIPROCITY", "CERTIFICATES", "FF_KGROUPS"];

pub const FF_KGROUP_ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Representatives of `Q_2^× / (Q_2^×)^2`.
pub const SQUARE_CLASSES: [i64; 8] = [1, -1, 2, -2, 5, -5, 10, -10];

pub fn run_suite<R: Rng>(report: &mut Report, name: &str, bounds: &Bounds, samples: usize, rng: &mut R) -> CliResult<()> {
    match name.to_ascii_uppercase().as_str() {
        "STEINBERG" => steinberg(report, bounds, samples, rng),
        "HILBERT_TABLE" => hilbert_table(report, bounds),
        "RECIPROCITY" => reciprocity(report, samples, rng),
        "CERTIFICATES" => certificates(report, samples, rng),
        "FF_KGROUPS" => ff_kgroups(report, bounds),
        _ => Err(CliError::UnknownSuite(name.to_string())),
    }
}

fn ff_k2_zero(f: &FiniteField, c: &MilnorClass<FiniteField>) -> bool {
    let (rows, _, _) = kgroup_rows(f, c.degree(), None);
    let rows = rows.into_iter().map(|r| vec![BigInt::from(r)]).collect();
    AbGroupPresentation::new(1, rows).is_zero(&[class_exponent(f, c)])
}

fn steinberg<R: Rng>(report: &mut Report, bounds: &Bounds, samples: usize, rng: &mut R) -> CliResult<()> {
    for q in [3u64, 4, 5, 7, 9].into_iter().filter(|&q| q <= bounds.max_q) {
        let f = FiniteField::of_order(q)?;
        for _ in 0..samples {
            let a = f.from_exponent(rng.gen_range(0..(q - 1) as i64));
            let b = f.sub(&f.one(), &a);
            if f.is_zero(&b) {
                continue;
            }
            let c = MilnorClass::symbol(&f, vec![a, b])?;
            report.push("steinberg_ff", c.to_text(), format!("exponent {}", class_exponent(&f, &c)), ff_k2_zero(&f, &c));
        }
    }
    let ctx = LocalFieldCtx::padic(5, 8)?;
    for _ in 0..samples {
        let v = rng.gen_range(-2i64..=2);
        let a = ctx.mul(&ctx.random_unit(rng), &ctx.pi_power(v));
        let b = ctx.sub(&ctx.one(), &a);
        if ctx.is_zero(&b) || ctx.valuation(&b).is_none() {
            continue;
        }
        let c = MilnorClass::symbol(&ctx, vec![a, b])?;
        let d = tame(&ctx, &c)?;
        let k = ctx.residue_field();
        let ok = k.is_one(&k1_value(&d)?);
        report.push("steinberg_tame", c.to_text(), d.to_text(), ok);
    }
    let k: Fqt = RationalFunctionField::new(FiniteField::of_order(3)?);
    for _ in 0..samples {
        let a = random_ratfunc(&k, 3, rng);
        let b = k.sub(&k.one(), &a);
        if k.is_zero(&a) || k.is_zero(&b) {
            continue;
        }
        let c = MilnorClass::symbol(&k, vec![a, b])?;
        let v = residue_vector(&k, &c)?;
        report.push("steinberg_residues", c.to_text(), v.to_string(), v.is_zero());
    }
    Ok(())
}

/// `(a, b)` over `Q_2` as `0` (trivial) or `1`.
fn sign(ctx: &LocalFieldCtx, a: i64, b: i64) -> CliResult<u8> {
    match hilbert(ctx, &ctx.from_int(a), &ctx.from_int(b))? {
        HilbertValue::Sign(s) => Ok(s),
        HilbertValue::Tame(_) => unreachable!("Q_2 symbols are signs"),
    }
}

fn hilbert_table(report: &mut Report, bounds: &Bounds) -> CliResult<()> {
    let digits = bounds.oracle_digits(2);
    let ctx = LocalFieldCtx::padic(2, digits + 8)?;
    let mut image = std::collections::BTreeSet::new();
    for &a in &SQUARE_CLASSES {
        for &b in &SQUARE_CLASSES {
            let s = sign(&ctx, a, b)?;
            image.insert(s);
            let solvable = qf_oracle(&ctx, &ctx.from_int(a), &ctx.from_int(b), digits)?;
            report.push(
                "hilbert_vs_oracle",
                format!("({a}, {b})"),
                format!("{s}; oracle {}", if solvable { "solvable" } else { "not solvable" }),
                (s == 0) == solvable,
            );
        }
    }
    let mut symmetric = true;
    let mut bilinear = true;
    for &a in &SQUARE_CLASSES {
        for &b in &SQUARE_CLASSES {
            symmetric &= sign(&ctx, a, b)? == sign(&ctx, b, a)?;
            for &c in &SQUARE_CLASSES {
                bilinear &= sign(&ctx, a * b, c)? == sign(&ctx, a, c)? ^ sign(&ctx, b, c)?;
            }
        }
    }
    report.push("hilbert_symmetric", "64 pairs", symmetric.to_string(), symmetric);
    report.push("hilbert_bilinear", "512 triples", bilinear.to_string(), bilinear);
    let mut steinberg = true;
    for &a in SQUARE_CLASSES.iter().filter(|&&a| a != 1) {
        steinberg &= sign(&ctx, a, 1 - a)? == 0;
    }
    report.push("hilbert_steinberg", "(a, 1 - a)", steinberg.to_string(), steinberg);
    let image: Vec<String> = image.iter().map(u8::to_string).collect();
    report.push("hilbert_image", "Q_2", format!("{{{}}}", image.join(", ")), image.len() == 2);
    Ok(())
}

fn reciprocity<R: Rng>(report: &mut Report, samples: usize, rng: &mut R) -> CliResult<()> {
    for q in [3u64, 5] {
        let k: Fqt = RationalFunctionField::new(FiniteField::of_order(q)?);
        for _ in 0..samples {
            let a = random_class(&k, 2, 2, 2, rng);
            let v = residue_vector(&k, &a)?;
            report.push("reciprocity", a.to_text(), v.to_string(), reciprocity_check(&v));
            let s = bt_section_full(&k, &v)?;
            let back = residue_vector(&k, &s)?;
            report.push("bt_section", v.to_string(), s.to_text(), back == v);
        }
    }
    Ok(())
}

fn certificates<R: Rng>(report: &mut Report, samples: usize, rng: &mut R) -> CliResult<()> {
    let fields = [("padic:5:8", [2u64, 3, 7]), ("padic:2:8", [3, 5, 7]), ("laurent:3:8", [2, 5, 7])];
    for (spec, ells) in fields {
        let ctx = LocalFieldCtx::from_spec(spec)?;
        for ell in ells {
            for i in 0..samples {
                let degree = 2 + i % 2;
                let e = (0..degree).map(|_| ctx.random_unit(rng)).collect();
                let a = MilnorClass::symbol(&ctx, e)?;
                let cert = divisibility_witness(&ctx, &a, ell)?;
                let v = verify_certificate(&cert);
                let out = v.failure.clone().unwrap_or_else(|| format!("witness {}", cert.witness));
                report.push("divisibility_witness", format!("{spec}: {a} / {ell}"), out, v.ok);
            }
        }
    }
    Ok(())
}

fn ff_kgroups(report: &mut Report, bounds: &Bounds) -> CliResult<()> {
    for q in FF_KGROUP_ORDERS.into_iter().filter(|&q| q <= bounds.max_q.min(16)) {
        for n in 1..=bounds.max_deg.min(3) {
            let g = ff_kgroup_bounded(q, n, bounds.max_q)?;
            let inv = g.invariant_factors();
            let expected: Vec<u64> = if n == 1 && q > 2 { vec![q - 1] } else { vec![] };
            let ok = inv.iter().map(|d| d.to_string()).eq(expected.iter().map(|d| d.to_string()));
            let out = if inv.is_empty() {
                "0".to_string()
            } else {
                inv.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
            };
            report.push("ff_kgroup", format!("K_{n}(F_{q})"), out, ok);
        }
    }
    Ok(())
}
