//! K-theory of local fields: tame symbols, the mod-`m` comparison with the
//! residue field, divisibility certificates and the Hilbert symbol.

pub mod certificate;
pub mod hilbert;
pub mod modm;
pub mod valuation;

pub use certificate::{
    certify_divisible, divisibility_witness, parse_certificate, verify_certificate, DivisibilityCertificate, Verdict,
};
pub use hilbert::{default_search_precision, hilbert, qf_oracle, HilbertValue};
pub use modm::{lift_mod_m, reduce_mod_m};
pub use valuation::{
    generator_form, generator_form_logged, is_generator_form, k1_class, k1_value, tame, tame_section, Valuation,
};

/// Digits used for certificates unless the caller asks otherwise.
pub const DEFAULT_CERT_PRECISION: u32 = 8;
