//! Text inputs: field specs, elements, classes, polynomials and residue
//! vectors.

use milnor_core::arith::ff::parse_ff_elem;
use milnor_core::arith::factor::is_irreducible;
use milnor_core::arith::local::parse_local;
use milnor_core::arith::parse::{eval_in, parse_expr, parse_ratfunc};
use milnor_core::arith::{
    ExtElem, FfElem, Field, FiniteField, LocalElement, LocalFieldCtx, LocalModel, Poly, PolyRing, RatFunc,
    RationalFunctionField, SimpleExtension,
};
use milnor_core::bass_tate::{Fqt, Place, ResidueVector};
use milnor_core::symbols::{parse_class, MilnorClass};
use milnor_core::Error;

use crate::error::{CliError, CliResult};

/// The field a command works over.
#[derive(Clone, Debug)]
pub enum FieldSpec {
    Local(LocalFieldCtx),
    Finite(FiniteField),
    RatFunc(Fqt),
}

impl FieldSpec {
    /// `padic:p:N`, `laurent:q:N`, `ff:q` or `ratfunc:q`; `precision`
    /// replaces `N`.
    pub fn parse(s: &str, precision: Option<u32>, max_q: u64) -> CliResult<FieldSpec> {
        let s = s.trim();
        let bad = || CliError::Usage(format!("unknown field `{s}`; expected padic:p:N, laurent:q:N, ff:q or ratfunc:q"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        let spec = match parts.as_slice() {
            ["padic", p, n] | ["laurent", p, n] => {
                let n = match precision {
                    Some(n) => n,
                    None => n.parse().map_err(|_| bad())?,
                };
                FieldSpec::Local(LocalFieldCtx::from_spec(&format!("{}:{}:{}", parts[0], num(p)?, n))?)
            }
            ["padic", p] | ["laurent", p] => {
                let n = precision.unwrap_or(milnor_core::localk::DEFAULT_CERT_PRECISION);
                FieldSpec::Local(LocalFieldCtx::from_spec(&format!("{}:{}:{}", parts[0], num(p)?, n))?)
            }
            ["ff", q] => FieldSpec::Finite(FiniteField::of_order(num(q)?)?),
            ["ratfunc", q] => FieldSpec::RatFunc(RationalFunctionField::new(FiniteField::of_order(num(q)?)?)),
            _ => return Err(bad()),
        };
        let q = match &spec {
            FieldSpec::Local(c) => c.q(),
            FieldSpec::Finite(f) => f.order(),
            FieldSpec::RatFunc(k) => k.base().order(),
        };
        if q > max_q {
            return Err(CliError::Core(Error::FieldTooLarge { order: q as u128, bound: max_q }));
        }
        Ok(spec)
    }

    pub fn spec(&self) -> String {
        match self {
            FieldSpec::Local(c) => c.spec(),
            FieldSpec::Finite(f) => format!("ff:{}", f.order()),
            FieldSpec::RatFunc(k) => format!("ratfunc:{}", k.base().order()),
        }
    }

    pub fn local(&self) -> CliResult<&LocalFieldCtx> {
        match self {
            FieldSpec::Local(c) => Ok(c),
            _ => Err(CliError::Usage(format!("command needs a local field, got {}", self.spec()))),
        }
    }

    pub fn ratfunc(&self) -> CliResult<&Fqt> {
        match self {
            FieldSpec::RatFunc(k) => Ok(k),
            _ => Err(CliError::Usage(format!("command needs ratfunc:q, got {}", self.spec()))),
        }
    }
}

/// A local element: the exact serialized form, or an expression in
/// integers, `pi` and the variable `p` (p-adic) or `t` (Laurent).
pub fn local_elem(ctx: &LocalFieldCtx, s: &str) -> CliResult<LocalElement> {
    let s = s.trim();
    if s.starts_with("padic(") || s.starts_with("laurent(") {
        let x = parse_local(s)?;
        return Ok(ctx.coerce(&ctx.parse(&x.to_string())?));
    }
    let e = parse_expr(s)?;
    let var = match ctx.model() {
        LocalModel::Padic => "p",
        LocalModel::Laurent => "t",
    };
    let x = eval_in(ctx, &e, &|name| match name {
        "pi" => Some(ctx.uniformizer().clone()),
        v if v == var => Some(ctx.pi_power(1)),
        _ => None,
    })?;
    Ok(x)
}

/// A finite-field element: `ff(p,f):g^e`, or an expression in integers
/// and the generator `g`.
pub fn ff_elem(f: &FiniteField, s: &str) -> CliResult<FfElem> {
    let s = s.trim();
    if s.starts_with("ff(") {
        let x = parse_ff_elem(s)?;
        if !x.field().same_field(f) {
            return Err(CliError::Core(Error::ContextMismatch));
        }
        return Ok(x);
    }
    let g = f.generator();
    Ok(eval_in(f, &parse_expr(s)?, &|name| (name == "g").then(|| g.clone()))?)
}

/// A rational function in `t` over `F_q`; `g` is the generator of `F_q`.
pub fn fqt_elem(k: &Fqt, s: &str) -> CliResult<RatFunc<FfElem>> {
    let g = k.base().generator();
    Ok(parse_ratfunc(k, s, "t", &|name| (name == "g").then(|| g.clone()))?)
}

pub fn local_class(ctx: &LocalFieldCtx, s: &str) -> CliResult<MilnorClass<LocalFieldCtx>> {
    class_with(ctx, s, |e| local_elem(ctx, e))
}

pub fn ff_class(f: &FiniteField, s: &str) -> CliResult<MilnorClass<FiniteField>> {
    class_with(f, s, |e| ff_elem(f, e))
}

pub fn fqt_class(k: &Fqt, s: &str) -> CliResult<MilnorClass<Fqt>> {
    class_with(k, s, |e| fqt_elem(k, e))
}

/// Parses a class, keeping the first entry error rather than a generic one.
pub fn class_with<F: Field>(field: &F, s: &str, entry: impl Fn(&str) -> CliResult<F::Elem>) -> CliResult<MilnorClass<F>> {
    let first = std::cell::RefCell::new(None);
    let parsed = parse_class(field, s, &|e| {
        entry(e).map_err(|err| {
            let msg = err.to_string();
            first.borrow_mut().get_or_insert(err);
            Error::Parse(msg)
        })
    });
    match (parsed, first.into_inner()) {
        (Ok(c), _) => Ok(c),
        (Err(_), Some(err)) => Err(err),
        (Err(e), None) => Err(e.into()),
    }
}

/// A polynomial in `X` over `base`, coefficients read by `consts`.
pub fn poly_in<F: Field>(
    base: &F,
    s: &str,
    var: &str,
    consts: &dyn Fn(&str) -> Option<F::Elem>,
) -> CliResult<Poly<F::Elem>> {
    let kx = RationalFunctionField::new(base.clone());
    let r = parse_ratfunc(&kx, s, var, consts)?;
    if !kx.is_polynomial(&r) {
        return Err(CliError::Core(Error::Parse(format!("`{s}` is not a polynomial in {var}"))));
    }
    Ok(r.num)
}

/// Names usable inside polynomials over a base field.
pub trait BaseNames: Field {
    fn resolve(&self, name: &str) -> Option<Self::Elem>;
}

impl BaseNames for FiniteField {
    fn resolve(&self, name: &str) -> Option<FfElem> {
        (name == "g").then(|| self.generator())
    }
}

impl BaseNames for Fqt {
    fn resolve(&self, name: &str) -> Option<RatFunc<FfElem>> {
        match name {
            "t" => Some(self.var()),
            "g" => Some(self.constant(&self.base().generator())),
            _ => None,
        }
    }
}

impl BaseNames for LocalFieldCtx {
    fn resolve(&self, name: &str) -> Option<LocalElement> {
        match (name, self.model()) {
            ("pi", _) => Some(self.uniformizer().clone()),
            ("p", LocalModel::Padic) | ("t", LocalModel::Laurent) => Some(self.pi_power(1)),
            _ => None,
        }
    }
}

pub fn base_poly<F: BaseNames>(base: &F, s: &str) -> CliResult<Poly<F::Elem>> {
    poly_in(base, s, "X", &|n| base.resolve(n))
}

/// An element of `F[X]/(π)` written in `X` (or `theta`); division allowed.
pub fn ext_elem<F: BaseNames>(ext: &SimpleExtension<F>, s: &str) -> CliResult<ExtElem<F::Elem>> {
    let base = ext.base();
    let kx = RationalFunctionField::new(base.clone());
    let text = s.replace("theta", "X").replace('θ', "X");
    let r = parse_ratfunc(&kx, &text, "X", &|n| base.resolve(n))?;
    ext.div(&ext.reduce(&r.num), &ext.reduce(&r.den))
        .ok_or(CliError::Core(Error::ZeroElement))
}

pub fn ext_class<F: BaseNames>(ext: &SimpleExtension<F>, s: &str) -> CliResult<MilnorClass<SimpleExtension<F>>> {
    class_with(ext, s, |e| ext_elem(ext, e))
}

pub fn base_class<F: BaseNames>(base: &F, s: &str) -> CliResult<MilnorClass<F>> {
    class_with(base, s, |e| {
        let g = |n: &str| base.resolve(n);
        Ok(eval_in(base, &parse_expr(e)?, &g)?)
    })
}

/// `PLACE -> VALUE; …` with places `inf` or a monic irreducible
/// polynomial in `t`, values polynomials in `θ`; `0` is the empty vector.
pub fn residue_vector(f: &FiniteField, s: &str) -> CliResult<ResidueVector> {
    let mut v = ResidueVector::zero(f);
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(v);
    }
    let ring = PolyRing::new(f.clone());
    let g = f.generator();
    let names = |n: &str| (n == "g").then(|| g.clone());
    for part in s.split(';') {
        let (place, value) = part
            .split_once("->")
            .ok_or_else(|| CliError::Core(Error::Parse(format!("expected `place -> value`, got `{part}`"))))?;
        let place = match place.trim() {
            "inf" => Place::Infinity,
            p => {
                let key = poly_in(f, p, "t", &names)?;
                if !ring.is_monic(&key) {
                    return Err(Error::NotMonic.into());
                }
                if !is_irreducible(&ring, &key) {
                    return Err(Error::NotIrreducible.into());
                }
                Place::Finite(key)
            }
        };
        let text = value.replace("theta", "θ");
        let val = poly_in(f, &text, "θ", &names)?;
        let k = v.residue_field(&place);
        let val = k.reduce(&val);
        if k.is_zero(&val) {
            return Err(Error::ZeroEntry.into());
        }
        let cur = v.get(&place).cloned().unwrap_or_else(|| k.one());
        v.set(place, k.mul(&cur, &val));
    }
    Ok(v)
}
