//! `ff-kgroup`, `residues`, `section`, `norm`, `check-projection`,
//! `check-tower`, `check-reciprocity`.

use milnor_core::arith::{Field, PolyRing, SimpleExtension};
use milnor_core::bass_tate::{
    bt_section_full, functoriality_check, norm, projection_formula_check, random_class, reciprocity_check,
    residue_vector, Fqt, KCompare,
};
use milnor_core::symbols::ffk::ff_kgroup_bounded;
use milnor_core::Error;
use rand::Rng;

use crate::config::Bounds;
use crate::error::CliResult;
use crate::input::{base_class, base_poly, ext_class, fqt_class, poly_in, residue_vector as parse_vector, BaseNames};
use crate::report::Report;

pub fn ff_kgroup_cmd(report: &mut Report, bounds: &Bounds, q: u64, n: usize) -> CliResult<()> {
    if q > bounds.max_q {
        return Err(Error::FieldTooLarge { order: q as u128, bound: bounds.max_q }.into());
    }
    if n > bounds.max_deg {
        return Err(Error::DegreeTooLarge(n).into());
    }
    let g = ff_kgroup_bounded(q, n, bounds.max_q)?;
    let inv = g.invariant_factors();
    let out = if inv.is_empty() {
        "0".to_string()
    } else {
        inv.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
    };
    report.push("ff_kgroup", format!("K_{n}(F_{q})"), out, true);
    Ok(())
}

pub fn residues_cmd(report: &mut Report, k: &Fqt, class: &str) -> CliResult<()> {
    let a = fqt_class(k, class)?;
    let v = residue_vector(k, &a)?;
    report.push("residue_vector", a.to_text(), v.to_string(), true);
    report.push("reciprocity", v.to_string(), v.norm_product().to_string(), reciprocity_check(&v));
    Ok(())
}

pub fn section_cmd(report: &mut Report, k: &Fqt, vector: &str) -> CliResult<()> {
    let v = parse_vector(k.base(), vector)?;
    let s = bt_section_full(k, &v)?;
    let back = residue_vector(k, &s)?;
    report.push("bt_section", v.to_string(), s.to_text(), back == v);
    Ok(())
}

fn check_degree(bounds: &Bounds, d: Option<usize>) -> CliResult<()> {
    match d {
        Some(d) if d > bounds.max_deg => Err(Error::DegreeTooLarge(d).into()),
        _ => Ok(()),
    }
}

pub fn norm_cmd<F: KCompare + BaseNames>(
    report: &mut Report,
    bounds: &Bounds,
    base: &F,
    pi: &str,
    xi: &str,
) -> CliResult<()> {
    let pi = base_poly(base, pi)?;
    check_degree(bounds, pi.degree())?;
    if !PolyRing::new(base.clone()).is_monic(&pi) {
        return Err(Error::NotMonic.into());
    }
    let ext = SimpleExtension::new(base.clone(), pi.clone());
    let x = ext_class(&ext, xi)?;
    let n = norm(base, &pi, &x)?;
    let var = PolyRing::new(base.clone()).fmt_var(&pi, "X");
    report.push("norm", format!("N along {var}: {x}"), n.to_text(), true);
    Ok(())
}

pub fn projection_cmd<F: KCompare + BaseNames>(
    report: &mut Report,
    bounds: &Bounds,
    base: &F,
    pi: &str,
    x: &str,
    y: &str,
) -> CliResult<()> {
    let pi = base_poly(base, pi)?;
    check_degree(bounds, pi.degree())?;
    if !PolyRing::new(base.clone()).is_monic(&pi) {
        return Err(Error::NotMonic.into());
    }
    let ext = SimpleExtension::new(base.clone(), pi.clone());
    let (x, y) = (base_class(base, x)?, ext_class(&ext, y)?);
    if x.degree() + y.degree() > 2 {
        return Err(Error::Unsupported("projection formula is checked for deg x + deg y ≤ 2".into()).into());
    }
    let ok = projection_formula_check(base, &pi, &x, &y)?;
    report.push("projection_formula", format!("x = {x}, y = {y}"), if ok { "equal" } else { "differ" }, ok);
    Ok(())
}

pub fn tower_cmd(report: &mut Report, bounds: &Bounds, k: &Fqt, pi1: &str, pi2: &str, h: &str) -> CliResult<()> {
    let p1 = base_poly(k, pi1)?;
    if !PolyRing::new(k.clone()).is_monic(&p1) {
        return Err(Error::NotMonic.into());
    }
    let ext1 = SimpleExtension::new(k.clone(), p1.clone());
    let theta = ext1.theta();
    let p2 = poly_in(&ext1, pi2, "Y", &|n| match n {
        "X" | "theta" => Some(theta.clone()),
        other => k.resolve(other).map(|c| ext1.embed(&c)),
    })?;
    if !PolyRing::new(ext1.clone()).is_monic(&p2) {
        return Err(Error::NotMonic.into());
    }
    let total = p1.degree().unwrap_or(0) * p2.degree().unwrap_or(0);
    check_degree(bounds, Some(total))?;
    let hp = poly_in(k, h, "Y", &|n| k.resolve(n))?;
    let r = functoriality_check(k, &p1, &p2, &hp)?;
    let ring = PolyRing::new(k.clone());
    report.push(
        "functoriality",
        format!(
            "π₁ = {}, π₂ = {}, ξ = {}",
            ring.fmt_var(&p1, "X"),
            PolyRing::new(ext1.clone()).fmt_var(&p2, "Y"),
            ring.fmt_var(&hp, "θ₂")
        ),
        format!(
            "eliminated {}; tower {}; direct {}",
            ring.fmt_var(&r.eliminated, "Y"),
            k.fmt_elem(&r.through_tower),
            k.fmt_elem(&r.direct)
        ),
        r.holds,
    );
    Ok(())
}

pub fn reciprocity_cmd<R: Rng>(
    report: &mut Report,
    k: &Fqt,
    class: Option<&str>,
    samples: usize,
    rng: &mut R,
) -> CliResult<()> {
    if let Some(c) = class {
        let a = fqt_class(k, c)?;
        let v = residue_vector(k, &a)?;
        report.push("reciprocity", a.to_text(), v.to_string(), reciprocity_check(&v));
        return Ok(());
    }
    for _ in 0..samples {
        let a = random_class(k, 2, 2, 2, rng);
        let v = residue_vector(k, &a)?;
        report.push("reciprocity", a.to_text(), v.to_string(), reciprocity_check(&v));
    }
    Ok(())
}

