//! `(K_n O)/m ≅ (K_n κ)/m` for `m` prime to the residue characteristic.

use crate::arith::ff::FiniteField;
use crate::arith::local::LocalFieldCtx;
use crate::error::{Error, Result};
use crate::symbols::MilnorClass;

pub(crate) fn check_modulus(ctx: &LocalFieldCtx, m: u64) -> Result<()> {
    if m == 0 || m.is_multiple_of(ctx.p()) {
        return Err(Error::BadModulus { m, p: ctx.p() });
    }
    Ok(())
}

pub(crate) fn check_unit_entries(ctx: &LocalFieldCtx, a: &MilnorClass<LocalFieldCtx>) -> Result<()> {
    if a.terms().any(|t| t.entries.iter().any(|x| !ctx.is_unit(x))) {
        return Err(Error::NonUnitEntry);
    }
    Ok(())
}

/// Entrywise residue of a class with unit entries.
pub fn reduce_mod_m(ctx: &LocalFieldCtx, a: &MilnorClass<LocalFieldCtx>, m: u64) -> Result<MilnorClass<FiniteField>> {
    check_modulus(ctx, m)?;
    check_unit_entries(ctx, a)?;
    a.map_entries(ctx.residue_field(), |x| ctx.residue(x))
}

/// Entrywise Teichmüller lift.
pub fn lift_mod_m(ctx: &LocalFieldCtx, b: &MilnorClass<FiniteField>, m: u64) -> Result<MilnorClass<LocalFieldCtx>> {
    check_modulus(ctx, m)?;
    if !b.field().same_field(ctx.residue_field()) {
        return Err(Error::ContextMismatch);
    }
    b.map_entries(ctx, |c| Ok(ctx.teichmuller_of(c)))
}
