mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hetec_core::tradeoff::TradeoffError;
use thiserror::Error;

use config::{load_input, resolve_arch, ArchArgs, InputArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error in {0}")]
    Parse(String),
    #[error(transparent)]
    Pipeline(#[from] TradeoffError),
    #[error("{} already exists with different contents", .0.display())]
    Conflict(PathBuf),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}

impl From<hetec_core::schedule::ScheduleError> for CliError {
    fn from(e: hetec_core::schedule::ScheduleError) -> Self {
        CliError::Pipeline(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hetec", version, about = "Compile, schedule and cost circuits on surface-code + gross-code machines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    arch: ArchArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower to Pauli-based form and prune; writes the program and a summary
    Transpile {
        #[command(flatten)]
        common: Common,
    },
    /// Full pipeline report for one architecture
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also write the event list
        #[arg(long)]
        emit_schedule: bool,
    },
    /// Estimates over a grid of tile counts and error rates
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_delimiter = ',', required = true)]
        s_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
    },
    /// Heterogeneous versus all-surface comparison at matched error
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Regenerate benchmark fixtures
    Bench {
        /// `kind:n` specs, e.g. adder:18 qft:8
        #[arg(required = true)]
        specs: Vec<String>,
        #[arg(long, default_value_t = hetec_core::circuit::DEFAULT_RZ_WORD_LEN)]
        rz_word_len: usize,
        #[arg(long, default_value = "benchmarks")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    let prepare = |c: &Common| -> Result<_, CliError> { Ok((load_input(&c.input)?, resolve_arch(&c.arch)?)) };
    match cli.command {
        Command::Transpile { common } => {
            let (input, arch) = prepare(&common)?;
            commands::transpile(input, arch, common.seed, &common.out)
        }
        Command::Estimate { common, format, emit_schedule } => {
            let (input, arch) = prepare(&common)?;
            commands::estimate(input, arch, common.seed, &common.out, format, emit_schedule)
        }
        Command::Sweep { common, format, s_list, p_list } => {
            let (input, arch) = prepare(&common)?;
            Ok(vec![commands::sweep(input, arch, common.seed, &common.out, format, &s_list, &p_list)?])
        }
        Command::Compare { common, format } => {
            let (input, arch) = prepare(&common)?;
            Ok(vec![commands::compare_cmd(input, arch, common.seed, &common.out, format)?])
        }
        Command::Bench { specs, rz_word_len, out } => commands::bench(&specs, rz_word_len, &out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
