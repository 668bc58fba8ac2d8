//! Symbol calculus for Milnor K-groups over finite fields, local fields at
//! finite precision and rational function fields.

pub mod arith;
pub mod bass_tate;
pub mod error;
pub mod localk;
pub mod rational_ring;
pub mod symbols;

pub use error::{Error, Result};
