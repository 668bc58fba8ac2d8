//! `s-member`, `ratring-unit`, `ratring-residue`, `delta-check`,
//! `base-change-check`.

use milnor_core::arith::{LocalFieldCtx, PolyRing};
use milnor_core::rational_ring::{base_change_roundtrip, delta_kernel_report, RationalRing};
use milnor_core::Error;
use rand::Rng;

use crate::error::CliResult;
use crate::input::{base_poly, class_with};
use crate::report::Report;

fn ring_for(ctx: &LocalFieldCtx, text: &str) -> CliResult<RationalRing> {
    let nvars = if text.contains("t2") { 2 } else { 1 };
    Ok(RationalRing::new(ctx, nvars)?)
}

pub fn s_member_cmd(report: &mut Report, ctx: &LocalFieldCtx, poly: &str) -> CliResult<()> {
    let ring = ring_for(ctx, poly)?;
    let f = ring.polys().parse(poly)?;
    report.push("s_member", f.to_string(), ring.polys().s_member(&f).to_string(), true);
    Ok(())
}

pub fn unit_cmd(report: &mut Report, ctx: &LocalFieldCtx, elem: &str) -> CliResult<()> {
    let ring = ring_for(ctx, elem)?;
    let x = ring.parse(elem)?;
    report.push("is_unit", x.to_string(), ring.is_unit(&x).to_string(), true);
    Ok(())
}

pub fn residue_cmd(report: &mut Report, ctx: &LocalFieldCtx, elem: &str) -> CliResult<()> {
    let ring = ring_for(ctx, elem)?;
    let x = ring.parse(elem)?;
    let r = ring.residue_map(&x)?;
    report.push("residue_map", x.to_string(), ring.fmt_residue(&r), true);
    Ok(())
}

pub fn delta_cmd(report: &mut Report, ctx: &LocalFieldCtx, class: &str, points: usize) -> CliResult<()> {
    let ring = RationalRing::new(ctx, 1)?;
    let s = class_with(&ring, class, |e| Ok(ring.parse(e)?))?;
    let r = delta_kernel_report(&ring, &s, points)?;
    let out = match r.witness {
        _ if r.formally_zero => "δ = 0 formally".to_string(),
        None => format!("vanishes at {} points of F_{}", r.points_tested, r.specialization_field),
        Some(w) => format!("nonzero at t2 = {w} in F_{}", r.specialization_field),
    };
    report.push("delta_kernel", s.to_text(), out, r.in_kernel());
    Ok(())
}

pub fn base_change_cmd<R: Rng>(
    report: &mut Report,
    ctx: &LocalFieldCtx,
    pi: &str,
    samples: usize,
    rng: &mut R,
) -> CliResult<()> {
    let p = base_poly(ctx, pi)?;
    if !PolyRing::new(ctx.clone()).is_monic(&p) {
        return Err(Error::NotMonic.into());
    }
    let ok = base_change_roundtrip(ctx, &p, samples, rng)?;
    let var = PolyRing::new(ctx.clone()).fmt_var(&p, "X");
    report.push(
        "base_change_roundtrip",
        format!("π = {var}, {samples} samples"),
        if ok { "round trips exact" } else { "mismatch" },
        ok,
    );
    Ok(())
}
