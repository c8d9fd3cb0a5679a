//! Command-line front end for the `hypercoh` library.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hypercoh::ErrorKind;

use config::{CommonArgs, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Lib(hypercoh::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Domain => 3,
                ErrorKind::Convergence => 4,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Io(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "hypercoh", version, about = "Hypergeometric coherent states: series, statistics, moments, geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// F, C and S on a grid of x = |z|^2, with the residual F - C - S
    Eval(CommonArgs),
    /// Mandel Q and mean photon number of the even and odd states
    MandelScan(CommonArgs),
    /// Quadrature moments of the resolution weight against rho(n)
    VerifyMoments(CommonArgs),
    /// Monte-Carlo photon counts and their sample statistics
    Sample(CommonArgs),
    /// Factorial moments of the thermal state (--beta, --omega)
    Thermal(CommonArgs),
    /// Metric density of the even and odd 1F0 states with a finite-difference check
    Metric(CommonArgs),
}

type Handler = fn(&RunConfig) -> Result<commands::Outcome, CliError>;

fn run(cli: Cli) -> Result<i32, CliError> {
    let (args, handler): (CommonArgs, Handler) = match cli.command {
        Command::Eval(a) => (a, commands::eval),
        Command::MandelScan(a) => (a, commands::mandel_scan),
        Command::VerifyMoments(a) => (a, commands::verify),
        Command::Sample(a) => (a, commands::sample),
        Command::Thermal(a) => (a, commands::thermal),
        Command::Metric(a) => (a, commands::metric),
    };
    let cfg = RunConfig::resolve(args)?;
    let outcome = handler(&cfg)?;
    let text = outcome.report.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    for row in outcome.report.rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("row error: {}", row.error.as_deref().unwrap_or_default());
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
