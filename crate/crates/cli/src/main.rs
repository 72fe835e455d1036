//! Command-line front end: scalar axiom checking, convolutions, theorem
//! verification, parameter sweeps, and plot-data export.
//!
//! Exit codes: 0 all checks pass; 1 an axiom failure was detected (the
//! expected outcome for broken operations); 2 configuration error;
//! 3 harness inconsistency (a scalar failure with no lifted counterpart,
//! or a forward run contradicting the theorems).

mod commands;
mod specs;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_AXIOM_FAILURE: u8 = 1;
pub const EXIT_CONFIG_ERROR: u8 = 2;
pub const EXIT_HARNESS_DEFECT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "t2fuzz",
    version,
    about = "Algebra of type-2 fuzzy truth values: operation checking, sup-convolutions, and the t-norm axiom harness"
)]
struct Cli {
    /// JSON config file mirroring a subcommand and its flags
    /// (e.g. {"command":"check-op","op":"mean"}).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Deserialize, Serialize, Clone)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Check the t-norm axioms T1-T4 (and T4') of a scalar operation.
    CheckOp(CheckOpArgs),
    /// Convolve two membership functions under a configured operator.
    Convolve(ConvolveArgs),
    /// Run the theorem round-trips: full matrix or a single slice.
    VerifyTheorems(VerifyArgs),
    /// Sweep a parametric family or the grid resolution.
    Sweep(SweepArgs),
    /// Sample a membership function to CSV and JSON.
    ExportFunction(ExportArgs),
    /// Print the machine-readable catalog manifest.
    Catalog(CatalogArgs),
}

#[derive(Args, Deserialize, Serialize, Clone)]
#[serde(default)]
pub struct CheckOpArgs {
    /// Catalog name of the operation (or a label for --op-table).
    #[arg(long)]
    pub op: String,
    /// Family parameter, repeatable (e.g. --param 2.0 for hamacher).
    #[arg(long = "param")]
    pub params: Vec<f64>,
    /// CSV grid table (`x,y,value`) defining a user-supplied operation.
    #[arg(long)]
    pub op_table: Option<PathBuf>,
    /// Pair-grid resolution for T1/T3/T4.
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,
    /// Triple-grid resolution for T2.
    #[arg(long, default_value_t = 64)]
    pub assoc_grid_n: usize,
    /// Comparison tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Output directory (default: $T2FUZZ_OUT or the working directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for CheckOpArgs {
    fn default() -> Self {
        CheckOpArgs {
            op: String::new(),
            params: Vec::new(),
            op_table: None,
            grid_n: 256,
            assoc_grid_n: 64,
            eps: 1e-12,
            out: None,
        }
    }
}

#[derive(Args, Deserialize, Serialize, Clone)]
#[serde(default)]
pub struct ConvolveArgs {
    /// Star operation name.
    #[arg(long, default_value = "minimum")]
    pub star: String,
    #[arg(long = "star-param")]
    pub star_params: Vec<f64>,
    /// Combiner operation name.
    #[arg(long, default_value = "minimum")]
    pub combiner: String,
    #[arg(long = "combiner-param")]
    pub combiner_params: Vec<f64>,
    /// meet (neutral chi{1}) or join (neutral chi{0}).
    #[arg(long, default_value = "meet")]
    pub kind: String,
    /// auto, exact, or grid.
    #[arg(long, default_value = "auto")]
    pub engine: String,
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,
    /// First operand, e.g. chi:0.5, v:0.3, tent:0.3,0.1,0.2, @file.json.
    #[arg(long)]
    pub f: String,
    /// Second operand.
    #[arg(long)]
    pub g: String,
    /// Sampling resolution for the CSV outputs.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Succeed even when grid buckets stay unfilled.
    #[arg(long, default_value_t = false)]
    pub allow_partial: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for ConvolveArgs {
    fn default() -> Self {
        ConvolveArgs {
            star: "minimum".to_string(),
            star_params: Vec::new(),
            combiner: "minimum".to_string(),
            combiner_params: Vec::new(),
            kind: "meet".to_string(),
            engine: "auto".to_string(),
            grid_n: 256,
            f: String::new(),
            g: String::new(),
            resolution: None,
            allow_partial: false,
            out: None,
        }
    }
}

#[derive(Args, Deserialize, Serialize, Clone)]
#[serde(default)]
pub struct VerifyArgs {
    /// star: vary the star against a fixed combiner; combiner: vary the
    /// combiner against a fixed star; full: the whole matrix.
    #[arg(long, default_value = "full")]
    pub mode: String,
    #[arg(long)]
    pub star: Option<String>,
    #[arg(long = "star-param")]
    pub star_params: Vec<f64>,
    #[arg(long)]
    pub combiner: Option<String>,
    #[arg(long = "combiner-param")]
    pub combiner_params: Vec<f64>,
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        VerifyArgs {
            mode: "full".to_string(),
            star: None,
            star_params: Vec::new(),
            combiner: None,
            combiner_params: Vec::new(),
            grid_n: 256,
            eps: 1e-6,
            seed: 42,
            out: None,
        }
    }
}

#[derive(Args, Deserialize, Serialize, Clone)]
#[serde(default)]
pub struct SweepArgs {
    /// Parametric family to sweep (hamacher or convex-min-mean).
    #[arg(long)]
    pub family: Option<String>,
    /// Comma-separated parameter values for --family.
    #[arg(long)]
    pub values: Option<String>,
    /// Comma-separated grid resolutions for the associativity-residual
    /// study (e.g. 64,128,256,512).
    #[arg(long)]
    pub grid_values: Option<String>,
    /// Fixed star for the residual study.
    #[arg(long, default_value = "product")]
    pub star: String,
    /// Fixed combiner.
    #[arg(long, default_value = "minimum")]
    pub combiner: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for SweepArgs {
    fn default() -> Self {
        SweepArgs {
            family: None,
            values: None,
            grid_values: None,
            star: "product".to_string(),
            combiner: "minimum".to_string(),
            seed: 42,
            out: None,
        }
    }
}

#[derive(Args, Deserialize, Serialize, Clone)]
#[serde(default)]
pub struct ExportArgs {
    /// Function spec (chi:0.5, v:0.3, w:0.7, tent:0.3,0.1,0.2, @file.json).
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value_t = 256)]
    pub resolution: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for ExportArgs {
    fn default() -> Self {
        ExportArgs {
            f: String::new(),
            resolution: 256,
            out: None,
        }
    }
}

#[derive(Args, Deserialize, Serialize, Clone, Default)]
#[serde(default)]
pub struct CatalogArgs {
    /// Also write the manifest to <out>/catalog.json.
    #[arg(long, default_value_t = false)]
    pub write: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Resolve the output directory: flag, then $T2FUZZ_OUT, then cwd.
pub fn out_dir(flag: &Option<PathBuf>) -> Result<PathBuf> {
    let dir = flag
        .clone()
        .or_else(|| std::env::var_os("T2FUZZ_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match (cli.config, cli.command) {
        (Some(path), None) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: reading config {}: {e}", path.display());
                    return ExitCode::from(EXIT_CONFIG_ERROR);
                }
            };
            match serde_json::from_str::<Command>(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: parsing config {}: {e}", path.display());
                    return ExitCode::from(EXIT_CONFIG_ERROR);
                }
            }
        }
        (None, Some(c)) => c,
        (Some(_), Some(_)) => {
            eprintln!("error: pass either --config or a subcommand, not both");
            return ExitCode::from(EXIT_CONFIG_ERROR);
        }
        (None, None) => {
            eprintln!("error: no subcommand; try `t2fuzz --help`");
            return ExitCode::from(EXIT_CONFIG_ERROR);
        }
    };

    let result = match command {
        Command::CheckOp(args) => commands::check_op(&args),
        Command::Convolve(args) => commands::convolve(&args),
        Command::VerifyTheorems(args) => commands::verify_theorems(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::ExportFunction(args) => commands::export_function(&args),
        Command::Catalog(args) => commands::catalog(&args),
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG_ERROR)
        }
    }
}
