//! Rational functions `A(t1, t2)` over the valuation ring `A` of a local
//! field: membership in `S`, units, residues, the δ-kernel test and base
//! change along unramified-style extensions `A[X]/π`.

pub mod base_change;
pub mod delta;
pub mod mpoly;
pub mod ring;

pub use base_change::{base_change_roundtrip, BFrac, BaseChange};
pub use delta::{delta, delta_kernel_check, delta_kernel_report, DeltaReport, DEFAULT_SPECIALIZATIONS};
pub use mpoly::{Exponent, MPoly, MPolyRing};
pub use ring::{RationalRing, RationalRingElem, ResidueValue};
