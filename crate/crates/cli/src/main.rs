use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use vdw_cli::{parse_config, run, selftest, CliError, Command};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Freespace,
    Bulk,
    Halfspace,
    Sphere,
    Sweep,
    Selftest,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Freespace => Command::Freespace,
            Cmd::Bulk => Command::Bulk,
            Cmd::Halfspace => Command::Halfspace,
            Cmd::Sphere => Command::Sphere,
            Cmd::Sweep => Command::Sweep,
            Cmd::Selftest => Command::Selftest,
        }
    }
}

/// Van der Waals potentials of polarizable and magnetizable atoms.
#[derive(Parser, Debug)]
#[command(name = "vdw", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Scene configuration (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Relative quadrature tolerance; overrides `quad.rel_tol`.
    #[arg(long)]
    tol: Option<f64>,
    /// Starting truncation order of the sphere series; overrides `sphere.n_max`.
    #[arg(long)]
    nmax: Option<usize>,
    /// CSV destination; overrides `output`. Standard output by default.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long)]
    threads: Option<usize>,
}

fn cli_error(key: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        line: 0,
        key: key.to_string(),
        message: message.into(),
    }
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let command: Command = cli.command.into();
    if command == Command::Selftest {
        let results = selftest::run_selftest();
        for r in &results {
            println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.group, r.detail);
        }
        return Ok(results.iter().all(|r| r.passed));
    }
    let path = cli.config.ok_or_else(|| cli_error("--config", "required for this command"))?;
    let text = std::fs::read_to_string(&path).map_err(|e| cli_error("--config", format!("{}: {e}", path.display())))?;
    let mut config = parse_config(&text, Some(command))?;
    if let Some(tol) = cli.tol {
        config.quadrature.rel_tol = tol;
        config.quadrature.validate().map_err(|e| cli_error("--tol", e.to_string()))?;
    }
    if let Some(n) = cli.nmax {
        if n < 1 {
            return Err(cli_error("--nmax", "must be at least 1"));
        }
        config.n_max = Some(n);
    }
    if cli.threads == Some(0) {
        return Err(cli_error("--threads", "must be at least 1"));
    }
    let table = run(&config, cli.threads)?;
    if table.coincident > 0 {
        eprintln!("warning kind=coincident rows={} message=\"atoms coincide; potentials reported as NaN\"", table.coincident);
    }
    let csv = table.to_csv();
    match cli.out.or(config.output) {
        Some(p) => std::fs::write(&p, csv).map_err(|e| CliError::Internal(format!("writing {}: {e}", p.display())))?,
        None => std::io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| CliError::Internal(format!("writing output: {e}")))?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
