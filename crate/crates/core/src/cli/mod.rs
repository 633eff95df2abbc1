//! Command-line front end. The binary in `src/bin/blowup.rs` only forwards
//! to [`run`]; everything else lives here so it can be tested in-process.
//!
//! Exit codes: 0 when every comparison agrees, 1 on an exact mismatch,
//! 2 on usage, parse or precondition errors.

pub mod commands;
pub mod instance;
pub mod report;
pub mod sample;
pub mod script;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_kf, cmd_resist, cmd_tau, PairSelection};
pub use instance::{Instance, InstanceSpec};
pub use report::{Format, Record, Report};
pub use script::{cmd_transform, Script, Step};
pub use verify::{cmd_verify, VerifyOptions};

use crate::netcore::{NetworkFile, WeightedNetwork};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] crate::Error),
    #[error("step {index}: {message}")]
    Step { index: usize, message: String },
}

pub const EXIT_AGREE: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "blowup",
    version,
    about = "Exact closed forms vs. oracles on blow-up graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spanning-tree count: closed form vs. matrix-tree oracle.
    Tau {
        #[arg(long)]
        spec: PathBuf,
        /// Evaluate the product formula even on a non-complete host.
        #[arg(long)]
        diagnostic: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Resistance distances: closed form vs. Laplacian solve.
    Resist {
        #[arg(long)]
        spec: PathBuf,
        /// `all`, `classes`, or a pair `u,v`.
        #[arg(long, default_value = "all")]
        pairs: PairSelection,
        #[command(flatten)]
        out: Output,
    },
    /// Kirchhoff index: closed form vs. pair sum (and spectrum on complete hosts).
    Kf {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded random sweep over every check.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 3)]
        max_t: u64,
        #[arg(long, default_value_t = 2)]
        max_part: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Apply a rewrite script to a network and compare terminal resistances.
    Transform {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<InstanceSpec, CliError> {
    InstanceSpec::parse(&read(path)?)
}

pub fn load_network(path: &Path) -> Result<WeightedNetwork, CliError> {
    let file: NetworkFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Usage(format!("network file: {e}")))?;
    WeightedNetwork::try_from(file).map_err(|e| CliError::Usage(format!("network file: {e}")))
}

/// Runs one parsed command and returns the report with its output settings.
pub fn execute(command: &Command) -> Result<(Report, &Output), CliError> {
    Ok(match command {
        Command::Tau {
            spec,
            diagnostic,
            out,
        } => (cmd_tau(&load_spec(spec)?, *diagnostic)?, out),
        Command::Resist { spec, pairs, out } => (cmd_resist(&load_spec(spec)?, *pairs)?, out),
        Command::Kf { spec, out } => (cmd_kf(&load_spec(spec)?)?, out),
        Command::Verify {
            seed,
            count,
            max_k,
            max_t,
            max_part,
            out,
        } => (
            cmd_verify(&VerifyOptions {
                seed: *seed,
                count: *count,
                max_k: *max_k,
                max_t: *max_t,
                max_part: *max_part,
            })?,
            out,
        ),
        Command::Transform { net, script, out } => {
            let network = load_network(net)?;
            let script: Script = serde_json::from_str(&read(script)?)
                .map_err(|e| CliError::Usage(format!("script: {e}")))?;
            (cmd_transform(&network, &script)?, out)
        }
    })
}

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_AGREE
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((report, out)) => match report.write(out.format, out.output.as_deref()) {
            Ok(()) if report.all_equal() => EXIT_AGREE,
            Ok(()) => EXIT_MISMATCH,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
