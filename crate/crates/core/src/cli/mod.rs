//! Front end of the `slidevar` binary.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O failure while reading data or writing output |
//! | 2 | usage: bad arguments, missing config file, missing seed or data |
//! | 3 | parse: malformed config, price file or configuration values |
//! | 4 | numerical domain failure during evaluation |
//! | 5 | `check` found a failing property |

pub mod commands;
pub mod config;
pub mod ingest;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_backtest, cmd_check, cmd_compute, cmd_simulate, emit, BacktestInput};
pub use config::{OutputFormat, RunConfig};
pub use ingest::{ingest, IngestError};
pub use output::{Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(#[source] crate::Error),
    #[error("input: {0}")]
    Input(String),
    #[error("numerical: {0}")]
    Domain(#[source] crate::Error),
    #[error("{0} propert(y/ies) failed")]
    CheckFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) | CliError::Config(_) | CliError::Input(_) => 3,
            CliError::Domain(_) => 4,
            CliError::CheckFailed(_) => 5,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        match e {
            IngestError::Io { .. } => CliError::Io(e.to_string()),
            IngestError::Row { .. } | IngestError::Structure(_) => CliError::Parse(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "slidevar", version, about = "SlideVaR and classical tail risk measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every measure on one loss distribution (requires --data).
    Compute,
    /// Gaussian-mixture parameter sweeps with histograms.
    Simulate,
    /// Rolling-window backtest on --data, or on a seeded regime-switching series.
    Backtest,
    /// Randomized property checks.
    Check,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Price (`date,price`) or loss (`loss`, `date,loss`) CSV.
    #[arg(long, global = true, value_name = "PATH")]
    pub data: Option<PathBuf>,
    /// Output directory; overrides the configured one.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed; overrides the configured one.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Table format; overrides the configured one.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

/// What a successful run produced.
#[derive(Debug, Clone, Default)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub tables: Vec<Table>,
}

pub fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(CliError::Usage(format!(
                "config file {} does not exist",
                path.display()
            )))
        }
        Err(e) => return Err(CliError::Io(format!("{}: {e}", path.display()))),
    };
    RunConfig::from_toml(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Result<RunSummary, CliError> {
    let args = &cli.common;
    let config = load_config(args.config.as_deref())?;
    let format = args.format.unwrap_or(config.output.format);
    let dir = config.output_dir(args.out.as_deref());

    let tables = match cli.command {
        Command::Compute => {
            let path = args
                .data
                .as_deref()
                .ok_or_else(|| CliError::Usage("compute needs --data".into()))?;
            vec![cmd_compute(&config, &commands::load(path)?)?]
        }
        Command::Simulate => {
            let seed = args
                .seed
                .or(config.sweep.seed)
                .ok_or_else(|| CliError::Usage("simulate needs --seed or sweep.seed".into()))?;
            cmd_simulate(&config, seed)?
        }
        Command::Backtest => {
            let input = match args.data.as_deref() {
                Some(path) => BacktestInput::Series(commands::load(path)?),
                None => BacktestInput::Synthetic {
                    seed: args.seed.or(config.synthetic.seed).ok_or_else(|| {
                        CliError::Usage("backtest without --data needs --seed or synthetic.seed".into())
                    })?,
                },
            };
            cmd_backtest(&config, input)?
        }
        Command::Check => {
            let (table, outcomes) = cmd_check(&config, args.seed);
            let files = emit(std::slice::from_ref(&table), &dir, format)?;
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            for o in &outcomes {
                println!(
                    "{:<10} {:<4} {}/{} {}",
                    o.id,
                    if o.passed() { "ok" } else { "FAIL" },
                    o.cases - o.failures,
                    o.cases,
                    o.name
                );
                if let Some(c) = &o.counterexample {
                    println!("  counterexample: {c}");
                }
            }
            if failed > 0 {
                return Err(CliError::CheckFailed(failed));
            }
            return Ok(RunSummary {
                files,
                tables: vec![table],
            });
        }
    };
    let files = emit(&tables, &dir, format)?;
    Ok(RunSummary { files, tables })
}

/// Parses `args` (including the program name), runs, reports and maps the
/// outcome to an exit status.
pub fn main_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(summary) => {
            if let Command::Compute = cli.command {
                for t in &summary.tables {
                    print!("{}", String::from_utf8_lossy(&t.render(OutputFormat::Csv)));
                }
            }
            for f in &summary.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("slidevar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
