//! Discrete valuations, the uniformizer normal form and the tame symbol.

use crate::arith::field::Field;
use crate::arith::local::{LocalElement, LocalFieldCtx};
use crate::arith::ff::FiniteField;
use crate::error::{Error, Result};
use crate::symbols::{MilnorClass, Rewriter, Step};

/// A field with a discrete valuation and a chosen uniformizer.
pub trait Valuation {
    type Base: Field;
    type Residue: Field;

    fn base(&self) -> &Self::Base;
    fn residue_field(&self) -> &Self::Residue;
    fn uniformizer(&self) -> <Self::Base as Field>::Elem;
    /// `x = u·π^k` with `u` a unit.
    fn split(&self, x: &<Self::Base as Field>::Elem) -> Result<(i64, <Self::Base as Field>::Elem)>;
    /// Residue class of a unit.
    fn reduce(&self, u: &<Self::Base as Field>::Elem) -> Result<<Self::Residue as Field>::Elem>;
}

impl Valuation for LocalFieldCtx {
    type Base = LocalFieldCtx;
    type Residue = FiniteField;

    fn base(&self) -> &LocalFieldCtx {
        self
    }

    fn residue_field(&self) -> &FiniteField {
        LocalFieldCtx::residue_field(self)
    }

    fn uniformizer(&self) -> LocalElement {
        LocalFieldCtx::uniformizer(self).clone()
    }

    fn split(&self, x: &LocalElement) -> Result<(i64, LocalElement)> {
        self.unit_decompose(x).map_err(|_| Error::ZeroEntry)
    }

    fn reduce(&self, u: &LocalElement) -> Result<crate::arith::FfElem> {
        if u.abs_precision().is_some_and(|a| a <= 0) {
            return Err(Error::PrecisionTooLowToReduce);
        }
        self.residue(u)
    }
}

fn is_pi<V: Valuation>(val: &V, x: &<V::Base as Field>::Elem) -> bool {
    val.base().equal(x, &val.uniformizer())
}

/// The first rewrite that moves a term towards generator form, if any.
fn next_step<V: Valuation>(
    val: &V,
    entries: &[<V::Base as Field>::Elem],
) -> Result<Option<Step<<V::Base as Field>::Elem>>> {
    let f = val.base();
    let pi = val.uniformizer();
    let mut pis = Vec::new();
    for (i, x) in entries.iter().enumerate() {
        if is_pi(val, x) {
            pis.push(i);
            continue;
        }
        let (k, u) = val.split(x)?;
        if k == 0 {
            continue;
        }
        let step = if f.is_one(&u) {
            Step::HenselRoot {
                entries: entries.to_vec(),
                pos: i,
                root: pi,
                exponent: k,
            }
        } else {
            Step::BilinearExpand {
                entries: entries.to_vec(),
                pos: i,
                y: u,
                z: f.pow_signed(&pi, k).ok_or(Error::ZeroEntry)?,
            }
        };
        return Ok(Some(step));
    }
    let step = match pis.as_slice() {
        [i, j, ..] if *j == i + 1 => Step::SelfToMinusOne {
            entries: entries.to_vec(),
            pos: *i,
        },
        [_, j, ..] => Step::Swap {
            entries: entries.to_vec(),
            i: j - 1,
            j: *j,
        },
        [i] if *i > 0 => Step::Swap {
            entries: entries.to_vec(),
            i: i - 1,
            j: *i,
        },
        _ => return Ok(None),
    };
    Ok(Some(step))
}

/// Rewrites `a` so every term is `{π, u_2, …}` or `{u_1, …}` with units
/// `u_i`. The returned rewriter holds the result and the relators used.
pub fn generator_form_logged<V: Valuation>(val: &V, a: &MilnorClass<V::Base>) -> Result<Rewriter<V::Base>> {
    let f = val.base();
    if a.terms().any(|t| t.entries.iter().any(|x| f.is_zero(x))) {
        return Err(Error::ZeroEntry);
    }
    let mut rw = Rewriter::new(a.clone());
    // each step strictly lowers (non-unit entries, π count, π offset)
    'outer: loop {
        let terms: Vec<Vec<_>> = rw.class.terms().map(|t| t.entries.clone()).collect();
        for e in terms {
            if let Some(step) = next_step(val, &e)? {
                rw.apply(&step)?;
                continue 'outer;
            }
        }
        return Ok(rw);
    }
}

pub fn generator_form<V: Valuation>(val: &V, a: &MilnorClass<V::Base>) -> Result<MilnorClass<V::Base>> {
    Ok(generator_form_logged(val, a)?.class)
}

/// The tame symbol `∂_π : K_n F → K_{n-1} κ`.
pub fn tame<V: Valuation>(val: &V, a: &MilnorClass<V::Base>) -> Result<MilnorClass<V::Residue>> {
    if a.degree() == 0 {
        return Err(Error::Unsupported("tame symbol of a degree-0 class".into()));
    }
    let g = generator_form(val, a)?;
    let k = val.residue_field();
    let mut out = MilnorClass::zero(k, a.degree() - 1);
    for t in g.terms() {
        if !is_pi(val, &t.entries[0]) {
            continue;
        }
        let e = t.entries[1..].iter().map(|u| val.reduce(u)).collect::<Result<Vec<_>>>()?;
        out.add_term(t.coeff.clone(), e);
    }
    Ok(out)
}

/// `{π, u_2, …, u_n} ↦ {ū_2, …, ū_n}` lifted back: the section of the
/// tame symbol determined by `π`, on a class over the residue field.
pub fn tame_section<V: Valuation>(
    val: &V,
    b: &MilnorClass<V::Residue>,
    lift: impl Fn(&<V::Residue as Field>::Elem) -> <V::Base as Field>::Elem,
) -> MilnorClass<V::Base> {
    let mut out = MilnorClass::zero(val.base(), b.degree() + 1);
    for t in b.terms() {
        let mut e = vec![val.uniformizer()];
        e.extend(t.entries.iter().map(&lift));
        out.add_term(t.coeff.clone(), e);
    }
    out
}

/// Whether every term is already in generator form.
pub fn is_generator_form<V: Valuation>(val: &V, a: &MilnorClass<V::Base>) -> Result<bool> {
    for t in a.terms() {
        if next_step(val, &t.entries)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product of `c`-th powers over a degree-1 class: its value in `K^×`.
pub fn k1_value<F: Field>(c: &MilnorClass<F>) -> Result<F::Elem> {
    if c.degree() != 1 {
        return Err(Error::Unsupported(format!("degree {} class is not a unit", c.degree())));
    }
    let f = c.field();
    let mut acc = f.one();
    for t in c.terms() {
        let e: i64 = i64::try_from(t.coeff.clone())
            .map_err(|_| Error::Unsupported("coefficient too large".into()))?;
        acc = f.mul(&acc, &f.pow_signed(&t.entries[0], e).ok_or(Error::ZeroEntry)?);
    }
    Ok(acc)
}

/// `{x}` as a degree-1 class, or the zero class for `x = 1`.
pub fn k1_class<F: Field>(field: &F, x: F::Elem) -> Result<MilnorClass<F>> {
    if field.is_one(&x) {
        return Ok(MilnorClass::zero(field, 1));
    }
    MilnorClass::symbol(field, vec![x])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q5() -> LocalFieldCtx {
        LocalFieldCtx::padic(5, 6).unwrap()
    }

    fn sym(k: &LocalFieldCtx, xs: &[i64]) -> MilnorClass<LocalFieldCtx> {
        MilnorClass::symbol(k, xs.iter().map(|&x| k.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn tame_of_five_two() {
        let k = q5();
        let t = tame(&k, &sym(&k, &[5, 2])).unwrap();
        let f = k.residue_field();
        assert_eq!(k1_value(&t).unwrap(), f.from_code(2).unwrap());
    }

    #[test]
    fn tame_of_fifty_three() {
        let k = q5();
        let t = tame(&k, &sym(&k, &[50, 3])).unwrap();
        let f = k.residue_field();
        assert_eq!(k1_value(&t).unwrap(), f.from_code(4).unwrap());
    }

    #[test]
    fn tame_kills_units() {
        let k = q5();
        assert!(tame(&k, &sym(&k, &[2, 3])).unwrap().is_formally_zero());
    }

    #[test]
    fn t_t_is_t_minus_one() {
        let k = LocalFieldCtx::laurent(3, 6).unwrap();
        let t = k.pi_power(1);
        let a = MilnorClass::symbol(&k, vec![t.clone(), t.clone()]).unwrap();
        let g = generator_form(&k, &a).unwrap();
        let expect = MilnorClass::symbol(&k, vec![t, k.from_int(-1)]).unwrap();
        assert!(g.sub(&expect).is_formally_zero());
        let d = tame(&k, &a).unwrap();
        assert_eq!(k1_value(&d).unwrap(), k.residue_field().from_code(2).unwrap());
    }

    #[test]
    fn twenty_five_u() {
        let k = q5();
        let a = sym(&k, &[50, 3]);
        let rw = generator_form_logged(&k, &a).unwrap();
        let mut expect = sym(&k, &[5, 3]).scale(&BigInt::from(2));
        expect.add_assign(&sym(&k, &[2, 3]));
        assert!(rw.class.sub(&expect).is_formally_zero());
        let replay = Rewriter::replay(&a, &rw.log).unwrap();
        assert!(replay.sub(&rw.class).is_formally_zero());
    }

    #[test]
    fn pi_moves_to_front_with_sign() {
        let k = q5();
        let a = sym(&k, &[2, 3, 5]);
        let g = generator_form(&k, &a).unwrap();
        assert!(is_generator_form(&k, &g).unwrap());
        assert!(g.sub(&sym(&k, &[5, 2, 3])).is_formally_zero());
    }
}
