use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

pub const BOUNDS_ENV: &str = "MILNOR_FORGE_BOUNDS";

/// Search bounds; every field is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest field order accepted.
    pub max_q: u64,
    /// Largest symbol degree for K-group computations and extension degree
    /// for norms.
    pub max_deg: usize,
    /// Digits searched by the quadratic form oracle, capped per prime by the
    /// search-space limit.
    pub oracle_prec: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_q: 1024,
            max_deg: 4,
            oracle_prec: 8,
        }
    }
}

impl Bounds {
    /// Parses `maxq=...,maxdeg=...,oracleprec=...`; missing keys keep their
    /// defaults.
    pub fn parse(s: &str) -> CliResult<Bounds> {
        let mut b = Bounds::default();
        let bad = || CliError::Bounds(s.to_string());
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            match k.trim() {
                "maxq" => b.max_q = v,
                "maxdeg" => b.max_deg = usize::try_from(v).map_err(|_| bad())?,
                "oracleprec" => b.oracle_prec = u32::try_from(v).map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        Ok(b)
    }

    pub fn from_env() -> CliResult<Bounds> {
        match std::env::var(BOUNDS_ENV) {
            Ok(s) => Bounds::parse(&s),
            Err(_) => Ok(Bounds::default()),
        }
    }

    pub fn describe(&self) -> String {
        format!("maxq={},maxdeg={},oracleprec={}", self.max_q, self.max_deg, self.oracle_prec)
    }

    /// Digits the oracle searches over `Q_p`: the configured precision,
    /// lowered until `p^(2k)` fits the search limit.
    pub fn oracle_digits(&self, p: u64) -> u32 {
        let mut k = self.oracle_prec;
        while k > 1 && (p as u128).pow(2 * k) > 1 << 26 {
            k -= 1;
        }
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Option<String>,
    pub precision: Option<u32>,
    pub seed: u64,
    pub format: Format,
    pub bounds: Bounds,
}

impl RunConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}
