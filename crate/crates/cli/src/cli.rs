use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{function_field as ffc, local, ratring};
use crate::config::{Bounds, Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::gersten::gersten_check;
use crate::input::FieldSpec;
use crate::report::Report;
use crate::suites::run_suite;

#[derive(Debug, Parser)]
#[command(name = "milnor-forge", version, about = "Exact symbol computations in Milnor K-theory")]
pub struct Cli {
    /// padic:p[:N], laurent:q[:N], ff:q or ratfunc:q
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Working precision of local fields (overrides N in --field)
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tame symbol ∂_π of a class over a local field
    Tame {
        class: String,
        /// Uniformizer (default p or t)
        #[arg(long)]
        pi: Option<String>,
    },
    /// Residue of a unit class, read in (K_n κ)/m
    Reduce {
        class: String,
        #[arg(long)]
        m: u64,
    },
    /// Teichmüller lift of a residue-field class
    Lift {
        class: String,
        #[arg(long)]
        m: u64,
    },
    /// Divisibility witness of a unit class by ℓ
    Divide {
        class: String,
        #[arg(long)]
        ell: u64,
        /// Write the certificate to this file
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Replay a certificate file
    VerifyCert { file: PathBuf },
    /// Hilbert symbol (a, b) over Q_p
    #[command(allow_negative_numbers = true)]
    Hilbert { a: String, b: String },
    /// Brute-force solvability of z² = a·x² + b·y²
    #[command(allow_negative_numbers = true)]
    QfOracle {
        a: String,
        b: String,
        /// Digits searched (default from the bounds)
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Invariant factors of K_n(F_q)
    FfKgroup {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// Residue vector of a class over F_q(t)
    Residues { class: String },
    /// Bass–Tate section of a residue vector `place -> value; …`
    Section { vector: String },
    /// Norm of a class along F[X]/π
    Norm {
        #[arg(long)]
        pi: String,
        xi: String,
    },
    /// Projection formula N{x, y} = {x, N y}
    CheckProjection {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Norms through a tower F ⊂ F[X]/π₁ ⊂ (F[X]/π₁)[Y]/π₂
    CheckTower {
        #[arg(long)]
        pi1: String,
        #[arg(long)]
        pi2: String,
        /// Polynomial in Y giving the element ξ = h(θ₂)
        #[arg(long, default_value = "Y")]
        h: String,
    },
    /// Weil reciprocity on a class or on random samples
    CheckReciprocity {
        class: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Whether a polynomial over A has a unit coefficient
    #[command(allow_negative_numbers = true)]
    SMember { poly: String },
    /// Whether an element of A(t) or A(t1, t2) is a unit
    #[command(allow_negative_numbers = true)]
    RatringUnit { elem: String },
    /// Residue of an element of A(t) or A(t1, t2)
    #[command(allow_negative_numbers = true)]
    RatringResidue { elem: String },
    /// Sampled test of δ(s) = 0 for a class over A(t)
    DeltaCheck {
        class: String,
        #[arg(long, default_value_t = milnor_core::rational_ring::DEFAULT_SPECIALIZATIONS)]
        points: usize,
    },
    /// Round trips of B ⊗ A(t) ≅ B(t) for B = A[X]/π
    BaseChangeCheck {
        #[arg(long)]
        pi: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Sampled Gersten exactness mod m over F_q((t))
    GerstenCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Run a named suite
    Suite {
        name: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tame { .. } => "tame",
            Command::Reduce { .. } => "reduce",
            Command::Lift { .. } => "lift",
            Command::Divide { .. } => "divide",
            Command::VerifyCert { .. } => "verify-cert",
            Command::Hilbert { .. } => "hilbert",
            Command::QfOracle { .. } => "qf-oracle",
            Command::FfKgroup { .. } => "ff-kgroup",
            Command::Residues { .. } => "residues",
            Command::Section { .. } => "section",
            Command::Norm { .. } => "norm",
            Command::CheckProjection { .. } => "check-projection",
            Command::CheckTower { .. } => "check-tower",
            Command::CheckReciprocity { .. } => "check-reciprocity",
            Command::SMember { .. } => "s-member",
            Command::RatringUnit { .. } => "ratring-unit",
            Command::RatringResidue { .. } => "ratring-residue",
            Command::DeltaCheck { .. } => "delta-check",
            Command::BaseChangeCheck { .. } => "base-change-check",
            Command::GerstenCheck { .. } => "gersten-check",
            Command::Suite { .. } => "suite",
        }
    }

    fn default_field(&self) -> Option<&'static str> {
        use Command::*;
        match self {
            FfKgroup { .. } | VerifyCert { .. } | Suite { .. } => None,
            Residues { .. } | Section { .. } | Norm { .. } | CheckProjection { .. } | CheckTower { .. }
            | CheckReciprocity { .. } => Some("ratfunc:3"),
            GerstenCheck { .. } => Some("laurent:3"),
            _ => Some("padic:5"),
        }
    }
}

impl Cli {
    pub fn config(&self, bounds: Bounds) -> RunConfig {
        RunConfig {
            field: self.field.clone(),
            precision: self.precision,
            seed: self.seed,
            format: self.format,
            bounds,
        }
    }
}

fn field_for(cmd: &Command, cfg: &RunConfig) -> CliResult<Option<FieldSpec>> {
    let spec = match (&cfg.field, cmd.default_field()) {
        (Some(f), _) => f.as_str(),
        (None, Some(d)) => d,
        (None, None) => return Ok(None),
    };
    FieldSpec::parse(spec, cfg.precision, cfg.bounds.max_q).map(Some)
}

fn need(field: &Option<FieldSpec>) -> CliResult<&FieldSpec> {
    field.as_ref().ok_or_else(|| CliError::Usage("command needs --field".into()))
}

/// Runs one command and returns its report.
pub fn run(cmd: &Command, cfg: &RunConfig) -> CliResult<Report> {
    use Command::*;
    let field = field_for(cmd, cfg)?;
    let bounds = &cfg.bounds;
    let label = match (cmd, &field) {
        (FfKgroup { q, .. }, _) => format!("ff:{q}"),
        (_, Some(f)) => f.spec(),
        (_, None) => "-".to_string(),
    };
    let mut report = Report::new(cmd.name(), &label, cfg.seed, &bounds.describe());
    let start = std::time::Instant::now();
    let mut rng = cfg.rng();
    let r = &mut report;
    match cmd {
        Tame { class, pi } => local::tame_cmd(r, need(&field)?.local()?, class, pi.as_deref())?,
        Reduce { class, m } => local::reduce_cmd(r, need(&field)?.local()?, class, *m)?,
        Lift { class, m } => local::lift_cmd(r, need(&field)?.local()?, class, *m)?,
        Divide { class, ell, cert } => local::divide_cmd(r, need(&field)?.local()?, class, *ell, cert.as_deref())?,
        VerifyCert { file } => local::verify_cert_cmd(r, file)?,
        Hilbert { a, b } => local::hilbert_cmd(r, need(&field)?.local()?, a, b)?,
        QfOracle { a, b, digits } => {
            let ctx = need(&field)?.local()?;
            let k = digits.unwrap_or_else(|| bounds.oracle_digits(ctx.p()));
            local::qf_oracle_cmd(r, ctx, a, b, k)?
        }
        FfKgroup { q, n } => ffc::ff_kgroup_cmd(r, bounds, *q, *n)?,
        Residues { class } => ffc::residues_cmd(r, need(&field)?.ratfunc()?, class)?,
        Section { vector } => ffc::section_cmd(r, need(&field)?.ratfunc()?, vector)?,
        Norm { pi, xi } => match need(&field)? {
            FieldSpec::Finite(f) => ffc::norm_cmd(r, bounds, f, pi, xi)?,
            FieldSpec::RatFunc(k) => ffc::norm_cmd(r, bounds, k, pi, xi)?,
            FieldSpec::Local(_) => return Err(CliError::Usage("norm needs ff:q or ratfunc:q".into())),
        },
        CheckProjection { pi, x, y } => match need(&field)? {
            FieldSpec::Finite(f) => ffc::projection_cmd(r, bounds, f, pi, x, y)?,
            FieldSpec::RatFunc(k) => ffc::projection_cmd(r, bounds, k, pi, x, y)?,
            FieldSpec::Local(_) => return Err(CliError::Usage("check-projection needs ff:q or ratfunc:q".into())),
        },
        CheckTower { pi1, pi2, h } => ffc::tower_cmd(r, bounds, need(&field)?.ratfunc()?, pi1, pi2, h)?,
        CheckReciprocity { class, samples } => {
            ffc::reciprocity_cmd(r, need(&field)?.ratfunc()?, class.as_deref(), *samples, &mut rng)?
        }
        SMember { poly } => ratring::s_member_cmd(r, need(&field)?.local()?, poly)?,
        RatringUnit { elem } => ratring::unit_cmd(r, need(&field)?.local()?, elem)?,
        RatringResidue { elem } => ratring::residue_cmd(r, need(&field)?.local()?, elem)?,
        DeltaCheck { class, points } => ratring::delta_cmd(r, need(&field)?.local()?, class, *points)?,
        BaseChangeCheck { pi, samples } => {
            ratring::base_change_cmd(r, need(&field)?.local()?, pi, *samples, &mut rng)?
        }
        GerstenCheck { n, m, samples } => gersten_check(r, need(&field)?.local()?, *n, *m, *samples, &mut rng)?,
        Suite { name, samples } => run_suite(r, name, bounds, *samples, &mut rng)?,
    }
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("milnor-forge").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn globals_after_subcommand() {
        let cli = parse(&["hilbert", "2", "5", "--field", "padic:2", "--format", "records", "--seed", "9"]);
        assert_eq!(cli.field.as_deref(), Some("padic:2"));
        assert_eq!(cli.format, Format::Records);
        assert_eq!(cli.seed, 9);
        assert_eq!(cli.command.name(), "hilbert");
    }

    #[test]
    fn default_fields() {
        let cfg = parse(&["residues", "{t, 2}"]).config(Bounds::default());
        let r = run(&parse(&["residues", "{t, 2}"]).command, &cfg).unwrap();
        assert_eq!(r.field, "ratfunc:3");
        let cli = parse(&["tame", "{p, 2}"]);
        assert_eq!(run(&cli.command, &cli.config(Bounds::default())).unwrap().field, "padic:5:8");
    }

    #[test]
    fn field_bound_applies() {
        let cli = parse(&["tame", "{p, 2}", "--field", "padic:5"]);
        let b = Bounds { max_q: 3, ..Bounds::default() };
        assert!(run(&cli.command, &cli.config(b)).is_err());
    }
}
