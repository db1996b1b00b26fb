use std::path::{Path, PathBuf};

use clap::Args;
use hetec_core::circuit::{gen_benchmark, parse_qasm, print_qasm, BenchmarkKind, DEFAULT_RZ_WORD_LEN};
use hetec_core::cost::{ArchitectureConfig, BusVariant, CostTable};
use hetec_core::pbc::MaxWeight;
use hetec_core::LogicalCircuit;
use serde::Serialize;

use crate::CliError;

pub const COST_TABLE_ENV: &str = "HETEC_COST_TABLE";

/// Architecture flags; each one overrides the matching field of `--arch`.
#[derive(Debug, Clone, Default, Args)]
pub struct ArchArgs {
    /// JSON architecture file
    #[arg(long, value_name = "FILE")]
    pub arch: Option<PathBuf>,
    #[arg(long)]
    pub surface_tiles: Option<usize>,
    #[arg(long)]
    pub distance: Option<usize>,
    /// Physical error rate
    #[arg(long)]
    pub p: Option<f64>,
    /// Fixed number of gross-code blocks
    #[arg(long)]
    pub gross_blocks: Option<usize>,
    /// Pruning weight cap: a positive integer or `inf`
    #[arg(long)]
    pub max_weight: Option<MaxWeight>,
    #[arg(long, value_parser = ["mono", "ssip", "ckbb"])]
    pub bus: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// OpenQASM 2 circuit
    #[arg(long, value_name = "FILE", conflicts_with = "bench", required_unless_present = "bench")]
    pub input: Option<PathBuf>,
    /// Generated benchmark, `kind:n` with kind one of adder, qft, ising
    #[arg(long, value_name = "KIND:N")]
    pub bench: Option<String>,
    #[arg(long, default_value_t = DEFAULT_RZ_WORD_LEN)]
    pub rz_word_len: usize,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Defaults, then `--arch`, then the cost-table override from the
/// environment, then individual flags.
pub fn resolve_arch(args: &ArchArgs) -> Result<ArchitectureConfig, CliError> {
    let mut arch = match &args.arch {
        Some(path) => {
            serde_json::from_str(&read_file(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => ArchitectureConfig::default(),
    };
    if let Some(path) = std::env::var_os(COST_TABLE_ENV) {
        let path = PathBuf::from(path);
        arch.cost_table = CostTable::from_json(&read_file(&path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    if let Some(s) = args.surface_tiles {
        arch.surface_tiles = s;
    }
    if let Some(d) = args.distance {
        arch.distance = d;
    }
    if let Some(p) = args.p {
        arch.p = p;
    }
    if let Some(b) = args.gross_blocks {
        arch.gross_blocks = Some(b);
    }
    if let Some(w) = args.max_weight {
        arch.max_weight = Some(w);
    }
    if let Some(bus) = &args.bus {
        arch.bus = bus.parse::<BusVariant>().map_err(|e| CliError::Config(e.to_string()))?;
    }
    arch.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(arch)
}

/// Where a circuit came from, as recorded in reports.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InputSource {
    File { path: String },
    Bench { kind: BenchmarkKind, n: usize, rz_word_len: usize },
}

pub struct Input {
    pub circuit: LogicalCircuit,
    pub source: InputSource,
    /// Canonical QASM text, hashed into report names.
    pub text: String,
}

pub fn parse_bench_spec(spec: &str) -> Result<(BenchmarkKind, usize), CliError> {
    let bad = || CliError::Config(format!("benchmark `{spec}` is not of the form kind:n"));
    let (kind, n) = spec.split_once(':').ok_or_else(bad)?;
    let kind = kind.parse::<BenchmarkKind>().map_err(|e| CliError::Config(e.to_string()))?;
    let n = n.trim().parse::<usize>().map_err(|_| bad())?;
    Ok((kind, n))
}

pub fn load_input(args: &InputArgs) -> Result<Input, CliError> {
    if let Some(path) = &args.input {
        let text = read_file(path)?;
        let circuit = parse_qasm(&text).map_err(|e| CliError::Parse(format!("{}:{e}", path.display())))?;
        let source = InputSource::File { path: path.display().to_string() };
        return Ok(Input { circuit, source, text });
    }
    let spec = args.bench.as_deref().ok_or_else(|| CliError::Config("no input circuit given".into()))?;
    let (kind, n) = parse_bench_spec(spec)?;
    let circuit = gen_benchmark(kind, n, args.rz_word_len).map_err(|e| CliError::Config(e.to_string()))?;
    let text = print_qasm(&circuit);
    Ok(Input { circuit, source: InputSource::Bench { kind, n, rz_word_len: args.rz_word_len }, text })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bench_specs() {
        assert_eq!(parse_bench_spec("adder:18").unwrap(), (BenchmarkKind::Adder, 18));
        assert_eq!(parse_bench_spec("QFT:8").unwrap(), (BenchmarkKind::Qft, 8));
        assert!(parse_bench_spec("adder").is_err());
        assert!(parse_bench_spec("toffoli:3").is_err());
        assert!(parse_bench_spec("ising:x").is_err());
    }

    #[test]
    fn flags_override_defaults() {
        let args = ArchArgs {
            surface_tiles: Some(4),
            p: Some(1e-4),
            max_weight: Some(MaxWeight::Unlimited),
            bus: Some("ckbb".into()),
            ..ArchArgs::default()
        };
        let arch = resolve_arch(&args).unwrap();
        assert_eq!(arch.surface_tiles, 4);
        assert_eq!(arch.p, 1e-4);
        assert_eq!(arch.max_weight(), MaxWeight::Unlimited);
        assert_eq!(arch.bus, BusVariant::Ckbb);
        assert_eq!(arch.distance, ArchitectureConfig::default().distance);
    }

    #[test]
    fn invalid_flags_are_config_errors() {
        let args = ArchArgs { distance: Some(4), ..ArchArgs::default() };
        assert!(matches!(resolve_arch(&args), Err(CliError::Config(_))));
    }
}
