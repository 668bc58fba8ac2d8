use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use milnor_forge::{run, Bounds, Cli, CliError, CliResult};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("milnor-forge: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> CliResult<bool> {
    let cfg = cli.config(Bounds::from_env()?);
    let report = run(&cli.command, &cfg)?;
    let text = report.render(cfg.format);
    match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    for c in report.failures() {
        eprintln!("FAIL {} #{}: {} -> {}", c.property, c.index, c.input, c.output);
    }
    Ok(report.all_pass())
}
