use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod settings;

use settings::Settings;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl From<qfi_mzi::Error> for CliError {
    fn from(e: qfi_mzi::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "qfi-mzi", version, about = "Fisher information of an unbalanced Mach-Zehnder interferometer")]
pub struct Cli {
    /// key=value file supplying defaults for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Read angle inputs in degrees (output stays in radians)
    #[arg(long, global = true)]
    pub degrees: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep one variable and write CSV
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Compare closed forms with the Fock oracle on seeded random draws
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Closed-form optimum for one free variable
    #[command(allow_negative_numbers = true)]
    Optimum(OptimumArgs),
    /// Emit a figure preset as CSV
    Preset(PresetArgs),
}

#[derive(Args, Debug, Default)]
pub struct ParamArgs {
    /// 1 | dual-coherent, 2 | coherent-squeezed, 3 | squeezed-coherent-squeezed
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta_alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub theta_beta: Option<f64>,
    /// Port-0 squeezing factor
    #[arg(long)]
    pub r: Option<f64>,
    /// Port-0 squeezing angle
    #[arg(long)]
    pub theta: Option<f64>,
    /// Port-1 squeezing factor
    #[arg(long)]
    pub z: Option<f64>,
    /// Port-1 squeezing angle
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub t_squared: Option<f64>,
    /// Sets the mismatch directly, overriding theta_alpha (scenario 1) or theta (2, 3)
    #[arg(long)]
    pub delta_theta: Option<f64>,
    /// fixed:<phi> | optimal | optimal-at:<t_squared>
    #[arg(long)]
    pub detection: Option<String>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// t_squared | delta_theta | theta | phi_internal
    #[arg(long)]
    pub var: Option<String>,
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// LABEL:key=value[,key=value...], repeatable
    #[arg(long)]
    pub overlay: Vec<String>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub draws: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub varpi_max: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub z_max: Option<f64>,
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OptimumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Free variable: t_squared | delta_theta | phi_internal | theta | phases
    #[arg(long)]
    pub free: Option<String>,
}

#[derive(Args, Debug)]
pub struct PresetArgs {
    /// fig2 | fig3 | fig4 | fig5 | fig6 | fig7
    pub name: String,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("QFI_MZI_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("QFI_MZI_THREADS: '{v}' is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("QFI_MZI_THREADS: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let settings = Settings::load(cli.config.as_deref(), cli.degrees)?;
    match cli.command {
        Command::Sweep(a) => commands::sweep(&settings, a),
        Command::Verify(a) => commands::verify(&settings, a),
        Command::Optimum(a) => commands::optimum(&settings, a),
        Command::Preset(a) => commands::preset(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
    }
}
