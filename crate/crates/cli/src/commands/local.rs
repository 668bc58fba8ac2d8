//! `tame`, `reduce`, `lift`, `divide`, `verify-cert`, `hilbert`, `qf-oracle`.

use std::path::Path;

use milnor_core::arith::{Field, LocalFieldCtx};
use milnor_core::localk::{
    divisibility_witness, hilbert, lift_mod_m, parse_certificate, qf_oracle, reduce_mod_m, tame, verify_certificate,
    HilbertValue,
};

use crate::error::{CliError, CliResult};
use crate::input::{ff_class, local_class, local_elem};
use crate::report::Report;

pub fn tame_cmd(report: &mut Report, ctx: &LocalFieldCtx, class: &str, pi: Option<&str>) -> CliResult<()> {
    let ctx = match pi {
        Some(s) => ctx.clone().with_uniformizer(local_elem(ctx, s)?)?,
        None => ctx.clone(),
    };
    let a = local_class(&ctx, class)?;
    let d = tame(&ctx, &a)?;
    report.push("tame", format!("∂_{} {}", ctx.uniformizer(), a), d.to_text(), true);
    Ok(())
}

pub fn reduce_cmd(report: &mut Report, ctx: &LocalFieldCtx, class: &str, m: u64) -> CliResult<()> {
    let a = local_class(ctx, class)?;
    let r = reduce_mod_m(ctx, &a, m)?;
    report.push("reduce_mod_m", a.to_text(), r.to_text(), true);
    Ok(())
}

pub fn lift_cmd(report: &mut Report, ctx: &LocalFieldCtx, class: &str, m: u64) -> CliResult<()> {
    let b = ff_class(ctx.residue_field(), class)?;
    let l = lift_mod_m(ctx, &b, m)?;
    let back = reduce_mod_m(ctx, &l, m)?;
    report.push("lift_mod_m", b.to_text(), l.to_text(), true);
    report.push("reduce_after_lift", l.to_text(), back.to_text(), back.sub(&b).is_formally_zero());
    Ok(())
}

pub fn divide_cmd(
    report: &mut Report,
    ctx: &LocalFieldCtx,
    class: &str,
    ell: u64,
    cert_path: Option<&Path>,
) -> CliResult<()> {
    let a = local_class(ctx, class)?;
    let cert = divisibility_witness(ctx, &a, ell)?;
    let verdict = verify_certificate(&cert);
    let out = match &verdict.failure {
        None => format!("witness {}; {} steps", cert.witness, cert.steps.len()),
        Some(f) => f.clone(),
    };
    report.push("divisibility_witness", format!("{} / {ell}", a), out, verdict.ok);
    match cert_path {
        Some(path) => {
            std::fs::write(path, cert.to_string()).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            report.certificates.push(path.display().to_string());
        }
        None => report.appendix = Some(cert.to_string()),
    }
    Ok(())
}

pub fn verify_cert_cmd(report: &mut Report, path: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let cert = parse_certificate(&text)?;
    let v = verify_certificate(&cert);
    let out = v.failure.clone().unwrap_or_else(|| "verified".to_string());
    report.certificates.push(path.display().to_string());
    report.push("verify_certificate", format!("{} = {}·β", cert.target, cert.divisor), out, v.ok);
    Ok(())
}

fn describe(h: &HilbertValue) -> String {
    match h {
        HilbertValue::Sign(s) => s.to_string(),
        HilbertValue::Tame(x) => format!("{x} (trivial mod p: {})", h.is_trivial_mod_p()),
    }
}

pub fn hilbert_cmd(report: &mut Report, ctx: &LocalFieldCtx, a: &str, b: &str) -> CliResult<()> {
    let (x, y) = (local_elem(ctx, a)?, local_elem(ctx, b)?);
    let h = hilbert(ctx, &x, &y)?;
    report.push("hilbert", format!("({x}, {y})"), describe(&h), true);
    Ok(())
}

pub fn qf_oracle_cmd(report: &mut Report, ctx: &LocalFieldCtx, a: &str, b: &str, digits: u32) -> CliResult<()> {
    let (x, y) = (local_elem(ctx, a)?, local_elem(ctx, b)?);
    if ctx.is_zero(&x) || ctx.is_zero(&y) {
        return Err(milnor_core::Error::ZeroInput.into());
    }
    let s = qf_oracle(ctx, &x, &y, digits)?;
    let out = if s { "solvable" } else { "not solvable" };
    report.push(
        "qf_oracle",
        format!("z² = {x}·x² + {y}·y² (mod p^{digits})"),
        out,
        true,
    );
    Ok(())
}
