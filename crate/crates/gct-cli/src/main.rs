use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Relative Drinfeld centers of graded unitary fusion categories.
#[derive(Parser, Debug)]
#[command(name = "gct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a category file: fusion rules, F-symbols, pentagons, actions.
    Verify(Common),
    /// Build the tube algebra and print its block structure.
    Tube(Common),
    /// Extract the simples of the relative center and check them.
    Center(Common),
    /// G-center of a category with a strict action.
    Gcenter(Common),
    /// Check user-supplied G-braiding data against recomputed simples.
    BraidCheck(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Category file (JSON).
    pub file: PathBuf,
    /// Subcategory braided against: `all`, `degree0` or a list of labels.
    #[arg(long)]
    pub subcat: Option<String>,
    /// Only report this grade (group element name).
    #[arg(long)]
    pub grade: Option<String>,
    /// Name of the action to use.
    #[arg(long)]
    pub action: Option<String>,
    /// Pass/fail tolerance on residuals.
    #[arg(long)]
    pub tol: Option<f64>,
    /// RNG seed; falls back to GCT_SEED, then 1.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON report to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// G-braiding file: written by center/gcenter, read by braid-check.
    #[arg(long)]
    pub braiding: Option<PathBuf>,
}

/// Failure with its exit code: 1 I/O, 2 validation or schema, 3 internal.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn io(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }
}

impl Common {
    pub fn seed(&self) -> Result<u64, Failure> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var("GCT_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| Failure::invalid(format!("GCT_SEED is not an integer: '{v}'"))),
            Err(_) => Ok(1),
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Verify(c) => commands::verify(c),
        Command::Tube(c) => commands::tube(c),
        Command::Center(c) => commands::center(c),
        Command::Gcenter(c) => commands::gcenter(c),
        Command::BraidCheck(c) => commands::braid_check(c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
