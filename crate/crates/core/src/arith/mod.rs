//! Exact arithmetic: finite fields, local fields at finite precision,
//! polynomials, factorization and Hensel lifting.

pub mod ext;
pub mod factor;
pub mod ff;
pub mod field;
pub mod hensel;
pub mod laurent;
pub mod local;
pub mod padic;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use ext::{ExtElem, SimpleExtension};
pub use factor::{poly_factor, Factorization};
pub use ff::{FfElem, FiniteField};
pub use field::Field;
pub use hensel::hensel_lift;
pub use laurent::LaurentSeries;
pub use local::{LocalElement, LocalFieldCtx, LocalModel};
pub use padic::PadicNumber;
pub use poly::{Poly, PolyRing};
pub use ratfunc::{RatFunc, RationalFunctionField};
