use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] milnor_core::Error),
    #[error("gersten-check needs an equicharacteristic field F_q((t)); mixed characteristic is rejected")]
    MixedCharRejected,
    #[error("unknown suite `{0}`; expected STEINBERG, HILBERT_TABLE, RECIPROCITY, CERTIFICATES or FF_KGROUPS")]
    UnknownSuite(String),
    #[error("bad bounds `{0}`; expected maxq=...,maxdeg=...,oracleprec=... with positive values")]
    Bounds(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;
