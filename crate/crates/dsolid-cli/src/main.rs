use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use dsolid::bitangent::bitangent_report;
use dsolid::cycle::{CycleConfig, CycleType, DEFAULT_BOUND};
use dsolid::divisor::DSequence;
use dsolid::exec::Exec;
use dsolid::quartic::analyze_quartic;
use dsolid::report::{
    analyze_config, analyze_sequence, component_table, divisor_table, greedy_table, ErrorKind, Report, ReportError,
    ReportFormat,
};

#[derive(Debug, Parser)]
#[command(
    name = "dsolid",
    version,
    about = "Tables and invariants of real anti-canonical cycles on blown-up quadrics"
)]
struct Cli {
    /// Output format: markdown, csv or json.
    #[arg(long, global = true, default_value = "markdown")]
    format: ReportFormat,

    /// Largest n accepted by enumerating commands.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Blow up the ridge surfaces at the first fiber (default).
    #[arg(long, global = true, overrides_with = "no_ridge1")]
    ridge1: bool,
    #[arg(long = "no-ridge1", global = true, action = ArgAction::SetTrue, overrides_with = "ridge1")]
    no_ridge1: bool,

    /// Blow up the ridge surfaces at the last fiber (default).
    #[arg(long = "ridge-k", global = true, overrides_with = "no_ridge_k")]
    ridge_k: bool,
    #[arg(long = "no-ridge-k", global = true, action = ArgAction::SetTrue, overrides_with = "ridge_k")]
    no_ridge_k: bool,

    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    /// Sequences and multiplicities of D for every configuration.
    Divisor,
    /// Number of cycle components by type.
    Components,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate configurations with n pairs of blown-up points.
    Tables {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "divisor")]
        which: Which,
    },
    /// Invariants e, mu and m of a multiplicity sequence or a stored configuration.
    Analyze {
        /// Multiplicities such as "(1,3,8,13,5,2)".
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        d: Option<String>,
        /// Configuration JSON file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cycle type, used to recover n from the length of the sequence.
        #[arg(long = "type")]
        cycle_type: Option<CycleType>,
    },
    /// Greedy blow-ups at the node with the largest adjacent multiplicities.
    Fibonacci {
        #[arg(long)]
        n: usize,
        /// Also search every configuration for the largest e (n up to the bound).
        #[arg(long)]
        exhaustive: bool,
    },
    /// (-1)-classes, bitangent pairs and real bitangents.
    Bitangents {
        #[arg(long = "type")]
        cycle_type: CycleType,
    },
    /// Build a quartic model and check it on sample planes.
    Quartic {
        #[arg(long = "type")]
        cycle_type: CycleType,
        #[arg(long)]
        m: usize,
        /// Number of generic planes to sample.
        #[arg(long, default_value_t = 5)]
        planes: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Report(e) => match e.kind() {
                ErrorKind::Validation => 1,
                ErrorKind::ResourceBound => 2,
                ErrorKind::Invariant => 3,
            },
            CliError::Read { .. } => 1,
            CliError::Write { .. } => 1,
        }
    }
}

fn render<R: Report>(report: &R, format: ReportFormat) -> Result<String, CliError> {
    Ok(report.render(format)?)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let ridge_first = cli.ridge1 || !cli.no_ridge1;
    let ridge_last = cli.ridge_k || !cli.no_ridge_k;
    match &cli.command {
        Command::Tables { n, which } => match which {
            Which::Divisor => render(&divisor_table(*n, cli.bound, exec)?, cli.format),
            Which::Components => render(&component_table(*n, cli.bound, exec)?, cli.format),
        },
        Command::Analyze { d, config, cycle_type } => {
            let report = match (d, config) {
                (Some(text), _) => {
                    let seq = DSequence::parse(text).map_err(ReportError::from)?;
                    analyze_sequence(&seq, *cycle_type, ridge_first, ridge_last)?
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                        path: path.clone(),
                        source,
                    })?;
                    let cfg = CycleConfig::from_json(&text).map_err(ReportError::from)?;
                    analyze_config(&cfg, ridge_first, ridge_last)?
                }
                (None, None) => unreachable!("clap requires --d or --config"),
            };
            render(&report, cli.format)
        }
        Command::Fibonacci { n, exhaustive } => {
            let top = exhaustive.then_some(cli.bound);
            render(&greedy_table(*n, top, cli.bound, exec)?, cli.format)
        }
        Command::Bitangents { cycle_type } => {
            let report = bitangent_report(*cycle_type).map_err(ReportError::from)?;
            render(&report, cli.format)
        }
        Command::Quartic { cycle_type, m, planes } => {
            let report = analyze_quartic(*cycle_type, *m, cli.seed, *planes).map_err(ReportError::from)?;
            render(&report, cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = e.exit_code();
            if code == 3 {
                eprintln!("invariant violated: {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
