//! Divisibility certificates: `α = ℓ·β + Σ c_k R_k` with every relator
//! `R_k` checkable on its own.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::modm::{check_modulus, check_unit_entries};
use crate::arith::ff::is_prime;
use crate::arith::field::Field;
use crate::arith::hensel::principal_root;
use crate::arith::local::{LocalElement, LocalFieldCtx};
use crate::error::{Error, Result};
use crate::symbols::class::{parse_class, split_top_level};
use crate::symbols::ffk::{kgroup_rows, RelationSource};
use crate::symbols::presentation::AbGroupPresentation;
use crate::symbols::rewrite::relator;
use crate::symbols::{MilnorClass, Rewriter, Step};

#[derive(Clone, Debug)]
pub struct DivisibilityCertificate {
    pub ctx: LocalFieldCtx,
    pub target: MilnorClass<LocalFieldCtx>,
    pub divisor: u64,
    pub witness: MilnorClass<LocalFieldCtx>,
    pub steps: Vec<(BigInt, Step<LocalElement>)>,
}

/// Outcome of replaying a certificate; `failure` names the first bad step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub failure: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { ok: true, failure: None }
    }

    fn fail(msg: String) -> Self {
        Verdict {
            ok: false,
            failure: Some(msg),
        }
    }
}

/// The rewrite that brings one term closer to `c·{ω_g, …, ω_g}` plus
/// multiples of `m`, or `None` if the term is already `{ω_g, …, ω_g}`.
fn next_step(
    ctx: &LocalFieldCtx,
    omega_g: &LocalElement,
    m: u64,
    entries: &[LocalElement],
) -> Result<Option<Step<LocalElement>>> {
    let target = ctx.precision() as i64;
    if let Some(i) = entries.iter().position(|x| ctx.is_one(x)) {
        let one = ctx.one();
        return Ok(Some(Step::BilinearExpand {
            entries: entries.to_vec(),
            pos: i,
            y: one.clone(),
            z: one,
        }));
    }
    for (i, x) in entries.iter().enumerate() {
        let e = entries.to_vec();
        if ctx.is_principal_unit(x) {
            let root = principal_root(ctx, x, m, target)?;
            return Ok(Some(Step::HenselRoot {
                entries: e,
                pos: i,
                root,
                exponent: m as i64,
            }));
        }
        let w = ctx.teichmuller(x)?;
        if !ctx.equal(x, &w) {
            let x1 = ctx.div(x, &w).ok_or(Error::ZeroEntry)?;
            return Ok(Some(Step::BilinearExpand {
                entries: e,
                pos: i,
                y: w,
                z: x1,
            }));
        }
        if !ctx.equal(x, omega_g) {
            let d = ctx.residue(x)?.exponent().ok_or(Error::ZeroEntry)?;
            return Ok(Some(Step::HenselRoot {
                entries: e,
                pos: i,
                root: omega_g.clone(),
                exponent: d as i64,
            }));
        }
    }
    Ok(None)
}

/// Rewrites until every coefficient is a multiple of `m`, except possibly
/// that of `{ω_g, …, ω_g}`, and no entry is 1.
fn normalize(rw: &mut Rewriter<LocalFieldCtx>, ctx: &LocalFieldCtx, omega_g: &LocalElement, m: u64) -> Result<()> {
    let mb = BigInt::from(m);
    'outer: loop {
        let pending: Vec<Vec<LocalElement>> = rw
            .class
            .terms()
            .filter(|t| !t.coeff.is_multiple_of(&mb) || t.entries.iter().any(|x| ctx.is_one(x)))
            .map(|t| t.entries.clone())
            .collect();
        for e in pending {
            let Some(step) = next_step(ctx, omega_g, m, &e)? else {
                continue;
            };
            match &step {
                // x is its own m-th root: R = (1 - m)·{x, …}, and c - c(1 - m) = c·m
                Step::HenselRoot { entries, pos, root, .. } if ctx.equal(root, &entries[*pos]) => {
                    let key = rw.class.key(entries);
                    let c = rw.coeff_of(&key).unwrap_or_default();
                    rw.apply_with(c, step)?;
                }
                _ => rw.apply(&step)?,
            }
            continue 'outer;
        }
        return Ok(());
    }
}

/// Certificate that `a` (unit entries, degree ≥ 1) is divisible by `m`
/// in `(K_n O)`, for `m` prime to the residue characteristic.
pub fn certify_divisible(ctx: &LocalFieldCtx, a: &MilnorClass<LocalFieldCtx>, m: u64) -> Result<DivisibilityCertificate> {
    check_modulus(ctx, m)?;
    if m < 2 {
        return Err(Error::BadModulus { m, p: ctx.p() });
    }
    check_unit_entries(ctx, a)?;
    let n = a.degree();
    let kappa = ctx.residue_field().clone();
    let omega_g = ctx.teichmuller_of(&kappa.generator());
    let mut rw = Rewriter::new(a.clone());
    normalize(&mut rw, ctx, &omega_g, m)?;

    let s_entries = vec![omega_g.clone(); n];
    let s_key = rw.class.key(&s_entries);
    let mb = BigInt::from(m);
    let s_coeff = |rw: &Rewriter<LocalFieldCtx>| rw.coeff_of(&s_key).unwrap_or_default();
    let e = s_coeff(&rw);
    if n > 0 && !e.is_multiple_of(&mb) {
        let not_divisible = || Error::NotDivisible(format!("{{ω_g,…}} in degree {n} with coefficient {e} modulo {m}"));
        let (rows, sources, _) = kgroup_rows(&kappa, n, Some(m));
        let pres = AbGroupPresentation::new(1, rows.iter().map(|&r| vec![BigInt::from(r)]).collect());
        let coeffs = pres.express_in_relators(std::slice::from_ref(&e)).ok_or_else(not_divisible)?;
        // Steinberg relators lifted through u = ω_i + ω_j ∈ U_1:
        // {u⁻¹ω_i, u⁻¹ω_j, ω_g, …} = 0 contributes i·j·{ω_g, …}
        for (c, src) in coeffs.into_iter().zip(&sources) {
            let RelationSource::Steinberg { i, j } = src else {
                continue;
            };
            if c.is_zero() {
                continue;
            }
            let wi = ctx.teichmuller_of(&kappa.from_exponent(*i as i64));
            let wj = ctx.teichmuller_of(&kappa.from_exponent(*j as i64));
            let u = ctx.add(&wi, &wj);
            let ui = ctx.inv(&u).ok_or(Error::ZeroEntry)?;
            let mut ent = s_entries.clone();
            ent[0] = ctx.mul(&ui, &wi);
            ent[1] = ctx.mul(&ui, &wj);
            rw.apply_with(c, Step::SteinbergZero { entries: ent, i: 0, j: 1 })?;
        }
        normalize(&mut rw, ctx, &omega_g, m)?;

        // what is left is a(q-1) + b·m; (q-1)·{ω_g, …} = {ω_g^{q-1}, …} = {1, …}
        let e = s_coeff(&rw);
        let order = kappa.order() - 1;
        let rest = AbGroupPresentation::new(1, vec![vec![BigInt::from(order)], vec![mb.clone()]]);
        let ab = rest.express_in_relators(&[e]).ok_or_else(not_divisible)?;
        if !ab[0].is_zero() {
            let mut ent = s_entries.clone();
            ent[0] = ctx.one();
            let step = Step::HenselRoot {
                entries: ent,
                pos: 0,
                root: omega_g.clone(),
                exponent: order as i64,
            };
            rw.apply_with(-ab[0].clone(), step)?;
            normalize(&mut rw, ctx, &omega_g, m)?;
        }
    }

    let mut witness = MilnorClass::zero(ctx, n);
    for t in rw.class.terms() {
        let (q, r) = t.coeff.div_rem(&mb);
        if !r.is_zero() {
            return Err(Error::NotDivisible(format!("term {} keeps coefficient {}", rw.class.key(&t.entries), t.coeff)));
        }
        witness.add_term(q, t.entries.clone());
    }
    let cert = DivisibilityCertificate {
        ctx: ctx.clone(),
        target: a.clone(),
        divisor: m,
        witness,
        steps: rw.log,
    };
    let v = verify_certificate(&cert);
    if !v.ok {
        return Err(Error::PrecisionExhausted(v.failure.unwrap_or_default()));
    }
    Ok(cert)
}

/// Certificate that `a` is `ℓ`-divisible, `ℓ` a prime other than the
/// residue characteristic and `a` of degree at least 2 with unit entries.
pub fn divisibility_witness(ctx: &LocalFieldCtx, a: &MilnorClass<LocalFieldCtx>, ell: u64) -> Result<DivisibilityCertificate> {
    if !is_prime(ell) || ell == ctx.p() {
        return Err(Error::BadPrime(ell));
    }
    if a.degree() < 2 {
        return Err(Error::Unsupported(format!("divisibility witness needs degree ≥ 2, got {}", a.degree())));
    }
    if a.terms().any(|t| t.entries.iter().any(|x| !ctx.is_unit(x))) {
        return Err(Error::PiEntryPresent);
    }
    certify_divisible(ctx, a, ell)
}

pub fn verify_certificate(c: &DivisibilityCertificate) -> Verdict {
    if c.divisor < 2 {
        return Verdict::fail(format!("divisor {} is below 2", c.divisor));
    }
    let mut acc = c.target.clone();
    for (k, (coeff, step)) in c.steps.iter().enumerate() {
        match relator(&c.ctx, step) {
            Ok(r) => acc.add_scaled(&-coeff.clone(), &r),
            Err(e) => return Verdict::fail(format!("step {} ({}): {e}", k + 1, step.kind())),
        }
    }
    acc.add_scaled(&-BigInt::from(c.divisor), &c.witness);
    if !acc.is_formally_zero() {
        return Verdict::fail(format!("final sum: residual {acc}"));
    }
    Verdict::pass()
}

fn entries_text(e: &[LocalElement]) -> String {
    let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for DivisibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate")?;
        writeln!(f, "field {}", self.ctx.spec())?;
        writeln!(f, "divisor {}", self.divisor)?;
        writeln!(f, "target {}", self.target)?;
        writeln!(f, "witness {}", self.witness)?;
        for (c, step) in &self.steps {
            write!(f, "{} coeff={} entries={}", step.kind(), c, entries_text(step.entries()))?;
            match step {
                Step::BilinearExpand { pos, y, z, .. } => write!(f, " pos={pos} y={y} z={z}")?,
                Step::Swap { i, j, .. } | Step::SteinbergZero { i, j, .. } => write!(f, " i={i} j={j}")?,
                Step::MinusSelf { pos, .. } | Step::SelfToMinusOne { pos, .. } => write!(f, " pos={pos}")?,
                Step::HenselRoot { pos, root, exponent, .. } => {
                    write!(f, " pos={pos} root={root} exponent={exponent}")?
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_step(ctx: &LocalFieldCtx, line: &str) -> Result<(BigInt, Step<LocalElement>)> {
    let bad = |what: &str| Error::Parse(format!("{what} in step `{line}`"));
    let mut words = line.split_whitespace();
    let kind = words.next().ok_or_else(|| bad("missing kind"))?;
    let mut fields = std::collections::HashMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        fields.insert(k, v);
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(&format!("missing `{k}`")));
    let num = |k: &str| -> Result<usize> { get(k)?.parse().map_err(|_| bad(&format!("bad `{k}`"))) };
    let elem = |k: &str| -> Result<LocalElement> { ctx.parse(get(k)?) };
    let coeff: BigInt = get("coeff")?.parse().map_err(|_| bad("bad coeff"))?;
    let ent = get("entries")?;
    let inner = ent
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| bad("entries must be braced"))?;
    let entries = split_top_level(inner, ',')
        .into_iter()
        .map(|s| ctx.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let step = match kind {
        "BILINEAR_EXPAND" => Step::BilinearExpand {
            entries,
            pos: num("pos")?,
            y: elem("y")?,
            z: elem("z")?,
        },
        "SWAP" => Step::Swap {
            entries,
            i: num("i")?,
            j: num("j")?,
        },
        "STEINBERG_ZERO" => Step::SteinbergZero {
            entries,
            i: num("i")?,
            j: num("j")?,
        },
        "MINUS_SELF" => Step::MinusSelf { entries, pos: num("pos")? },
        "SELF_TO_MINUS_ONE" => Step::SelfToMinusOne { entries, pos: num("pos")? },
        "HENSEL_ROOT" => Step::HenselRoot {
            entries,
            pos: num("pos")?,
            root: elem("root")?,
            exponent: get("exponent")?.parse().map_err(|_| bad("bad exponent"))?,
        },
        other => return Err(Error::Parse(format!("unknown step kind `{other}`"))),
    };
    Ok((coeff, step))
}

/// Reads the text form written by `Display`.
pub fn parse_certificate(text: &str) -> Result<DivisibilityCertificate> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut header = |name: &str| -> Result<String> {
        let l = lines.next().ok_or_else(|| Error::Parse(format!("missing `{name}` line")))?;
        if name == "certificate" {
            return if l == "certificate" {
                Ok(String::new())
            } else {
                Err(Error::Parse(format!("expected `certificate`, found `{l}`")))
            };
        }
        l.strip_prefix(name)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| Error::Parse(format!("expected `{name} …`, found `{l}`")))
    };
    header("certificate")?;
    let ctx = LocalFieldCtx::from_spec(&header("field")?)?;
    let divisor: u64 = header("divisor")?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("bad divisor".into()))?;
    let parse_entry = |s: &str| ctx.parse(s);
    let target = parse_class(&ctx, &header("target")?, &parse_entry)?;
    let witness = parse_class(&ctx, &header("witness")?, &parse_entry)?;
    let steps = lines.map(|l| parse_step(&ctx, l)).collect::<Result<Vec<_>>>()?;
    Ok(DivisibilityCertificate {
        ctx,
        target,
        divisor,
        witness,
        steps,
    })
}

impl DivisibilityCertificate {
    pub fn hensel_roots(&self) -> impl Iterator<Item = (&LocalElement, i64)> {
        self.steps.iter().filter_map(|(_, s)| match s {
            Step::HenselRoot { root, exponent, .. } => Some((root, *exponent)),
            _ => None,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.is_empty()
    }
}
