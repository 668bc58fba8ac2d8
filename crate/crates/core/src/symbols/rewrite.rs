//! Rewriting moves on symbols and the relators they stand for.
//!
//! Every move `s ↦ s'` is recorded as a relator `R = s - s'` that is zero in
//! Milnor K-theory, so a replayed list of moves can be checked as a formal sum.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::class::MilnorClass;
use crate::arith::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `{…, x, -x, …} = 0`
    MinusSelf,
    /// `{…, x, x, …} = {…, x, -1, …}`
    SelfToMinusOne,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::MinusSelf => write!(f, "MINUS_SELF"),
            Identity::SelfToMinusOne => write!(f, "SELF_TO_MINUS_ONE"),
        }
    }
}

/// One relator application, applied to the symbol with the given entries.
#[derive(Clone, Debug, PartialEq)]
pub enum Step<E> {
    /// `{…, y·z, …} - {…, y, …} - {…, z, …}`
    BilinearExpand { entries: Vec<E>, pos: usize, y: E, z: E },
    /// `{e} + {e with positions i, j exchanged}`
    Swap { entries: Vec<E>, i: usize, j: usize },
    /// `{e}` where `e_i + e_j = 1`
    SteinbergZero { entries: Vec<E>, i: usize, j: usize },
    /// `{e}` where `e_{pos+1} = -e_pos`
    MinusSelf { entries: Vec<E>, pos: usize },
    /// `{…, x, x, …} - {…, x, -1, …}`
    SelfToMinusOne { entries: Vec<E>, pos: usize },
    /// `{…, r^k, …} - k·{…, r, …}`; `k` may be negative.
    HenselRoot { entries: Vec<E>, pos: usize, root: E, exponent: i64 },
}

impl<E> Step<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            Step::BilinearExpand { .. } => "BILINEAR_EXPAND",
            Step::Swap { .. } => "SWAP",
            Step::SteinbergZero { .. } => "STEINBERG_ZERO",
            Step::MinusSelf { .. } => "MINUS_SELF",
            Step::SelfToMinusOne { .. } => "SELF_TO_MINUS_ONE",
            Step::HenselRoot { .. } => "HENSEL_ROOT",
        }
    }

    pub fn entries(&self) -> &[E] {
        match self {
            Step::BilinearExpand { entries, .. }
            | Step::Swap { entries, .. }
            | Step::SteinbergZero { entries, .. }
            | Step::MinusSelf { entries, .. }
            | Step::SelfToMinusOne { entries, .. }
            | Step::HenselRoot { entries, .. } => entries,
        }
    }
}

fn check_pos(n: usize, pos: usize) -> Result<()> {
    if pos >= n {
        Err(Error::BadPosition)
    } else {
        Ok(())
    }
}

fn replaced<E: Clone>(entries: &[E], pos: usize, x: E) -> Vec<E> {
    let mut e = entries.to_vec();
    e[pos] = x;
    e
}

/// The relator of a step, after checking its side condition.
pub fn relator<F: Field>(field: &F, step: &Step<F::Elem>) -> Result<MilnorClass<F>> {
    let n = step.entries().len();
    let one = BigInt::one();
    let mut r = MilnorClass::zero(field, n);
    let mut push = |k: BigInt, e: Vec<F::Elem>| -> Result<()> {
        if e.iter().any(|x| field.is_zero(x)) {
            return Err(Error::ZeroEntry);
        }
        r.add_term(k, e);
        Ok(())
    };
    match step {
        Step::BilinearExpand { entries, pos, y, z } => {
            check_pos(n, *pos)?;
            if !field.equal(&field.mul(y, z), &entries[*pos]) {
                return Err(Error::FactorizationMismatch);
            }
            push(one.clone(), entries.clone())?;
            push(-one.clone(), replaced(entries, *pos, y.clone()))?;
            push(-one, replaced(entries, *pos, z.clone()))?;
        }
        Step::Swap { entries, i, j } => {
            check_pos(n, *i)?;
            check_pos(n, *j)?;
            if i == j {
                return Err(Error::BadPosition);
            }
            let mut e = entries.clone();
            e.swap(*i, *j);
            push(one.clone(), entries.clone())?;
            push(one, e)?;
        }
        Step::SteinbergZero { entries, i, j } => {
            check_pos(n, *i)?;
            check_pos(n, *j)?;
            if i == j || !field.is_one(&field.add(&entries[*i], &entries[*j])) {
                return Err(Error::PatternMismatch);
            }
            push(one, entries.clone())?;
        }
        Step::MinusSelf { entries, pos } => {
            check_pos(n, pos + 1)?;
            if !field.equal(&entries[pos + 1], &field.neg(&entries[*pos])) {
                return Err(Error::PatternMismatch);
            }
            push(one, entries.clone())?;
        }
        Step::SelfToMinusOne { entries, pos } => {
            check_pos(n, pos + 1)?;
            if !field.equal(&entries[pos + 1], &entries[*pos]) {
                return Err(Error::PatternMismatch);
            }
            push(one.clone(), entries.clone())?;
            push(-one, replaced(entries, pos + 1, field.from_int(-1)))?;
        }
        Step::HenselRoot { entries, pos, root, exponent } => {
            check_pos(n, *pos)?;
            let power = field.pow_signed(root, *exponent).ok_or(Error::ZeroEntry)?;
            if !field.equal(&power, &entries[*pos]) {
                return Err(Error::FactorizationMismatch);
            }
            push(one, entries.clone())?;
            push(-BigInt::from(*exponent), replaced(entries, *pos, root.clone()))?;
        }
    }
    Ok(r)
}

/// Splits the entry at `position` as `y·z`.
pub fn expand_entry<F: Field>(
    a: &MilnorClass<F>,
    position: usize,
    y: &F::Elem,
    z: &F::Elem,
) -> Result<MilnorClass<F>> {
    let t = a.single_term()?;
    let step = Step::BilinearExpand {
        entries: t.entries.clone(),
        pos: position,
        y: y.clone(),
        z: z.clone(),
    };
    apply(a, &step)
}

/// Exchanges the entries at `i` and `j`; any transposition is odd, so the
/// coefficient changes sign.
pub fn swap<F: Field>(a: &MilnorClass<F>, i: usize, j: usize) -> Result<MilnorClass<F>> {
    let t = a.single_term()?;
    apply(
        a,
        &Step::Swap {
            entries: t.entries.clone(),
            i,
            j,
        },
    )
}

pub fn apply_identity<F: Field>(
    a: &MilnorClass<F>,
    rule: Identity,
    position: usize,
) -> Result<MilnorClass<F>> {
    let t = a.single_term()?;
    let entries = t.entries.clone();
    let step = match rule {
        Identity::MinusSelf => Step::MinusSelf { entries, pos: position },
        Identity::SelfToMinusOne => Step::SelfToMinusOne { entries, pos: position },
    };
    apply(a, &step)
}

/// Rewrites `a` by one step: subtracts the multiple of the step's relator
/// that removes the step's leading symbol from `a`.
pub fn apply<F: Field>(a: &MilnorClass<F>, step: &Step<F::Elem>) -> Result<MilnorClass<F>> {
    let mut rw = Rewriter::new(a.clone());
    rw.apply(step)?;
    Ok(rw.class)
}

/// A class together with the relators subtracted from it so far:
/// `start = class + Σ coeff_k · R_k`.
#[derive(Clone, Debug)]
pub struct Rewriter<F: Field> {
    pub class: MilnorClass<F>,
    pub log: Vec<(BigInt, Step<F::Elem>)>,
}

impl<F: Field> Rewriter<F> {
    pub fn new(class: MilnorClass<F>) -> Self {
        Rewriter { class, log: Vec::new() }
    }

    /// `class -= coeff · R(step)`.
    pub fn apply_with(&mut self, coeff: BigInt, step: Step<F::Elem>) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        let r = relator(self.class.field(), &step)?;
        self.class.add_scaled(&-coeff.clone(), &r);
        self.log.push((coeff, step));
        Ok(())
    }

    /// Removes the step's leading symbol from the class.
    pub fn apply(&mut self, step: &Step<F::Elem>) -> Result<()> {
        let field = self.class.field().clone();
        let r = relator(&field, step)?;
        let key = self.class.key(step.entries());
        let have = self.coeff_of(&key).ok_or(Error::PatternMismatch)?;
        let unit = r
            .terms()
            .find(|t| r.key(&t.entries) == key)
            .map(|t| t.coeff.clone())
            .ok_or(Error::PatternMismatch)?;
        if !unit.abs().is_one() {
            return Err(Error::PatternMismatch);
        }
        self.apply_with(have * unit, step.clone())
    }

    pub fn coeff_of(&self, key: &str) -> Option<BigInt> {
        self.class
            .terms()
            .find(|t| self.class.key(&t.entries) == key)
            .map(|t| t.coeff.clone())
    }

    /// `start - Σ coeff_k R_k`, recomputed from the log.
    pub fn replay(start: &MilnorClass<F>, log: &[(BigInt, Step<F::Elem>)]) -> Result<MilnorClass<F>> {
        let mut acc = start.clone();
        for (c, step) in log {
            acc.add_scaled(&-c.clone(), &relator(start.field(), step)?);
        }
        Ok(acc)
    }
}

/// True iff two distinct entries sum to 1.
pub fn is_steinberg_relator<F: Field>(field: &F, entries: &[F::Elem]) -> bool {
    (0..entries.len()).any(|i| {
        (0..entries.len()).any(|j| i != j && field.is_one(&field.add(&entries[i], &entries[j])))
    })
}
