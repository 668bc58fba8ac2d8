//! Formal symbol algebra, rewriting moves, Smith normal form and the
//! brute-force K-groups of finite fields.

pub mod class;
pub mod ffk;
pub mod presentation;
pub mod rewrite;
pub mod snf;

pub use class::{parse_class, MilnorClass, SymbolTerm};
pub use ffk::{ff_kgroup, FfKGroup};
pub use presentation::AbGroupPresentation;
pub use rewrite::{apply_identity, expand_entry, is_steinberg_relator, swap, Identity, Rewriter, Step};
pub use snf::{snf, Matrix, Snf};
