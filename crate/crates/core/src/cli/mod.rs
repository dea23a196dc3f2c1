//! Command-line front end.
//!
//! ```text
//! chsh-lhv reproduce-paper
//! chsh-lhv chsh <file> [--conditioned]
//! chsh-lhv lhv-verify <file> [--mc-samples N --seed S]
//! chsh-lhv scan <file> --step R [--refine --shrink F --iters N] [--csv PATH]
//! ```
//!
//! Reports go to stdout as JSON. Exit codes: 0 ok, 1 usage or parse error,
//! 2 invalid scenario, 3 degenerate post-selection, 4 `reproduce-paper`
//! check failed.

mod commands;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_chsh, cmd_lhv_verify, cmd_reproduce_paper, cmd_scan, reproduce_report, CommandError, CommandOutput,
    CommandResult, LhvReport, ReproduceReport, ScanOptions, ScanReport, DEFAULT_SEED, EXIT_CHECK_FAILED,
    EXIT_DEGENERATE, EXIT_INVALID, EXIT_OK, EXIT_USAGE, REPRODUCE_TOL,
};
pub use scenario::{Scenario, ScenarioError, ScenarioSpec};

#[derive(Debug, Parser)]
#[command(
    name = "chsh-lhv",
    version,
    about = "Post-selected CHSH values and local hidden variable models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spin-1 product mixture whose post-selected CHSH value is 16 sqrt(2) / 9.
    ReproducePaper,
    /// CHSH report for a scenario file.
    Chsh {
        /// Scenario JSON.
        file: PathBuf,
        /// Fail with exit 3 if any pair has a degenerate pass probability.
        #[arg(long)]
        conditioned: bool,
    },
    /// Build the hidden-variable model of a product-mixture scenario and compare.
    LhvVerify {
        /// Scenario JSON; the state must be a product mixture.
        file: PathBuf,
        /// Also draw this many atoms and report empirical statistics.
        #[arg(long)]
        mc_samples: Option<u64>,
        /// ChaCha8 seed for the Monte Carlo run (default 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Grid scan (plus optional pattern search) over spin-1 measurement angles.
    Scan {
        /// Scenario JSON with local dimensions 3 x 3; its observables are ignored.
        file: PathBuf,
        /// Grid spacing in radians; each angle runs over [-pi/2, pi/2].
        #[arg(long, allow_negative_numbers = true)]
        step: f64,
        /// Run a pattern search from the best grid cell.
        #[arg(long)]
        refine: bool,
        /// Step shrink factor of the pattern search.
        #[arg(long, default_value_t = 0.5)]
        shrink: f64,
        /// Maximum pattern-search iterations.
        #[arg(long, default_value_t = 30)]
        iters: u32,
        /// Write every grid cell to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn dispatch(command: Command) -> CommandResult {
    match command {
        Command::ReproducePaper => cmd_reproduce_paper(),
        Command::Chsh { file, conditioned } => cmd_chsh(&file, conditioned),
        Command::LhvVerify { file, mc_samples, seed } => cmd_lhv_verify(&file, mc_samples, seed),
        Command::Scan {
            file,
            step,
            refine,
            shrink,
            iters,
            csv,
        } => cmd_scan(
            &file,
            &ScanOptions {
                step,
                refine,
                shrink,
                iters,
                csv,
            },
        ),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code, writing the report to `stdout` and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", out.json);
            out.exit_code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            if e.exit_code == EXIT_USAGE {
                let _ = writeln!(stderr, "\n{}", <Cli as clap::CommandFactory>::command().render_usage());
            }
            e.exit_code
        }
    }
}
