//! The Bass–Tate sequence for `F_q(t)` and norms along finite extensions.

pub mod checks;
pub mod norm;
pub mod place;
pub mod residues;

pub use checks::{eliminate, functoriality_check, linear_norm_check, projection_formula_check, KCompare, TowerCheck};
pub use norm::{fqt_is_irreducible, norm, norm_lift, norm_unchecked, PolyIrreducible, NORM_SIGN};
pub use place::{coprime_base, poly_valuation, FinitePlace, InfinitePlace, Place};
pub use residues::{
    bt_section, bt_section_full, normalize_infinity, random_class, random_poly, random_ratfunc, reciprocity_check,
    reference_class, residue_vector, Fqt, ResidueVector, MAX_CORRECTION_DEGREE,
};
