use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use hypercoh::{Execution, ParamSet, Parity};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Full,
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Full => Parity::Full,
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

/// Flags shared by every subcommand. Everything is optional so that a
/// `--config` file can supply values; flags win over the file.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Parameter lists as "a1,a2/b1,b2"; either side may be empty
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Linear grid "start:stop:steps" (inclusive)
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Explicit x values; repeat the flag or separate with commas
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of Monte-Carlo draws (sample)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Write the raw draws here, one per line (sample)
    #[arg(long)]
    pub samples_out: Option<PathBuf>,
    /// Inverse temperature (thermal)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Mode frequency (thermal)
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Run sweeps on one thread
    #[arg(long)]
    pub sequential: bool,
    /// JSON file with any of the keys above
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    params: Option<String>,
    parity: Option<ParityArg>,
    grid: Option<String>,
    x: Option<Vec<f64>>,
    tol: Option<f64>,
    nmax: Option<u32>,
    seed: Option<u64>,
    samples: Option<usize>,
    samples_out: Option<PathBuf>,
    beta: Option<f64>,
    omega: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    sequential: Option<bool>,
}

/// Fully merged configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Option<String>,
    pub parity: Option<Parity>,
    pub grid: Option<String>,
    pub x: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub nmax: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub samples_out: Option<PathBuf>,
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub exec: Execution,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(args: CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let sequential = args.sequential || file.sequential.unwrap_or(false);
        Ok(RunConfig {
            params: args.params.or(file.params),
            parity: args.parity.or(file.parity).map(Parity::from),
            grid: args.grid.or(file.grid),
            x: args.x.or(file.x),
            tol: args.tol.or(file.tol),
            nmax: args.nmax.or(file.nmax),
            seed: args.seed.or(file.seed),
            samples: args.samples.or(file.samples),
            samples_out: args.samples_out.or(file.samples_out),
            beta: args.beta.or(file.beta),
            omega: args.omega.or(file.omega),
            out: args.out.or(file.out),
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            exec: if sequential { Execution::Sequential } else { Execution::default() },
        })
    }

    pub fn param_set(&self) -> Result<ParamSet, CliError> {
        let spec = self.params.as_deref().unwrap_or("/");
        ParamSet::parse(spec).map_err(|e| CliError::Config(format!("--params '{spec}': {e}")))
    }

    pub fn parity_or(&self, default: Parity) -> Parity {
        self.parity.unwrap_or(default)
    }

    /// Explicit `--x` values, else the `--grid`; an empty result is a
    /// configuration error.
    pub fn xs(&self) -> Result<Vec<f64>, CliError> {
        let xs = match (&self.x, &self.grid) {
            (Some(x), _) => x.clone(),
            (None, Some(g)) => parse_grid(g)?,
            (None, None) => return Err(CliError::Config("no x values: pass --x or --grid".into())),
        };
        if xs.is_empty() {
            return Err(CliError::Config("the x grid is empty".into()));
        }
        if let Some(bad) = xs.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("grid value {bad} is not finite")));
        }
        Ok(xs)
    }

    pub fn tol_or(&self, default: f64) -> Result<f64, CliError> {
        let tol = self.tol.unwrap_or(default);
        if !(tol > 0.0) {
            return Err(CliError::Config(format!("--tol must be positive, got {tol}")));
        }
        Ok(tol)
    }
}

/// `start:stop:steps` with `steps` points including both ends.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Config(format!("--grid expects start:stop:steps, got '{spec}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..steps).map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64).collect(),
    })
}
