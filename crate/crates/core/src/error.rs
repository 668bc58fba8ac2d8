use thiserror::Error;

/// Errors raised by the symbol engine.
///
/// Variants mirror the failure modes of the individual operations; callers
/// usually only match on a handful of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {order} exceeds the configured bound {bound}")]
    FieldTooLarge { order: u128, bound: u64 },
    #[error("p^N = {p}^{precision} does not fit the 63-bit unit representation")]
    PrecisionTooHigh { p: u64, precision: u32 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero element")]
    ZeroElement,
    #[error("symbol entries must be nonzero")]
    ZeroEntry,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("Newton condition |f(x0)| < |f'(x0)|^2 fails")]
    NewtonConditionFails,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("residue of an entry is indeterminate at the available precision")]
    PrecisionTooLowToReduce,
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("operands live over different fields")]
    ContextMismatch,
    #[error("factorization does not multiply back to the entry")]
    FactorizationMismatch,
    #[error("bad symbol position")]
    BadPosition,
    #[error("entries do not match the identity pattern")]
    PatternMismatch,
    #[error("degree {0} exceeds the supported bound")]
    DegreeTooLarge(usize),
    #[error("entry is not a unit of the valuation ring")]
    NonUnitEntry,
    #[error("modulus {m} is not coprime to the residue characteristic {p}")]
    BadModulus { m: u64, p: u64 },
    #[error("a uniformizer entry is present; certificates cover unit symbols only")]
    PiEntryPresent,
    #[error("{0} is not a prime different from the residue characteristic")]
    BadPrime(u64),
    #[error("class is not divisible: {0}")]
    NotDivisible(String),
    #[error("zero input")]
    ZeroInput,
    #[error("reciprocity fails for the residue vector")]
    ReciprocityFails,
    #[error("residue at infinity is nonzero")]
    InfinityEntryNonzero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("elimination failed: {0}")]
    EliminationFailed(String),
    #[error("reduction of the modulus factors over the residue field")]
    ResidueReducible,
    #[error("denominator has no unit coefficient")]
    NotInS,
    #[error("correction loop exceeded its termination bound")]
    TerminationBound,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
