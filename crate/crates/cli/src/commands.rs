use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hetec_core::circuit::{gen_benchmark, print_qasm};
use hetec_core::cost::ErrorBreakdown;
use hetec_core::pbc::{lower, print_pbc, prune};
use hetec_core::schedule::{schedule_stats, ScheduleStats};
use hetec_core::tradeoff::{compare, heterogeneous_run, Run, TradeoffReport};
use hetec_core::{ArchitectureConfig, LogicalCircuit, PbcCircuit};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{parse_bench_spec, Input};
use crate::report::{write_atomic, Header};
use crate::{CliError, Format};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProgramSummary {
    pub width: usize,
    pub t_count: usize,
    pub residual_cliffords: usize,
    pub measurements: usize,
    pub max_weight: usize,
    pub mean_non_clifford_weight: f64,
}

impl ProgramSummary {
    pub fn of(p: &PbcCircuit) -> Self {
        ProgramSummary {
            width: p.width,
            t_count: p.t_count(),
            residual_cliffords: p.clifford_count(),
            measurements: p.measurement_count(),
            max_weight: p.max_weight(),
            mean_non_clifford_weight: p.mean_non_clifford_weight(),
        }
    }
}

/// One point of the estimate pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub surface_tiles: usize,
    pub p: f64,
    pub distance: usize,
    pub blocks: usize,
    pub physical_qubits: usize,
    pub cycles: u64,
    pub io_count: usize,
    pub breakdown: ErrorBreakdown,
    pub program: ProgramSummary,
    pub stats: ScheduleStats,
}

const ESTIMATE_COLUMNS: &str = "surface_tiles,p,distance,blocks,physical_qubits,cycles,io_count,\
io_error,clifford_error,non_clifford_error,idle_error,total_error,t_count,residual_cliffords,max_weight";

impl Estimate {
    fn csv_row(&self) -> String {
        let b = &self.breakdown;
        format!(
            "{},{:e},{},{},{},{},{},{:e},{:e},{:e},{:e},{:e},{},{},{}",
            self.surface_tiles,
            self.p,
            self.distance,
            self.blocks,
            self.physical_qubits,
            self.cycles,
            self.io_count,
            b.io,
            b.clifford,
            b.non_clifford,
            b.idle,
            b.total,
            self.program.t_count,
            self.program.residual_cliffords,
            self.program.max_weight,
        )
    }
}

fn estimate_csv(rows: &[Estimate]) -> String {
    let mut out = String::from(ESTIMATE_COLUMNS);
    out.push('\n');
    for r in rows {
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    out
}

pub fn run_estimate(circuit: &LogicalCircuit, arch: &ArchitectureConfig, seed: u64) -> Result<Estimate, CliError> {
    Ok(summarize(&heterogeneous_run(circuit, arch, seed)?, arch))
}

fn summarize(run: &Run, arch: &ArchitectureConfig) -> Estimate {
    Estimate {
        surface_tiles: arch.surface_tiles,
        p: arch.p,
        distance: arch.distance,
        blocks: run.blocks,
        physical_qubits: run.physical_qubits,
        cycles: run.schedule.total_cycles,
        io_count: run.schedule.io_count,
        breakdown: run.breakdown,
        program: ProgramSummary::of(&run.program),
        stats: schedule_stats(&run.schedule),
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    header: &'a Header,
    #[serde(flatten)]
    body: T,
}

fn json_report<T: Serialize>(header: &Header, body: T) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(&Report { header, body }).expect("report serializes");
    text.push('\n');
    text.into_bytes()
}

/// Header as `#`-prefixed JSON lines above a CSV table.
fn csv_report(header: &Header, table: &str) -> Vec<u8> {
    let mut out = String::new();
    for line in serde_json::to_string_pretty(header).expect("header serializes").lines() {
        writeln!(out, "# {line}").unwrap();
    }
    out.push_str(table);
    out.into_bytes()
}

fn emit(
    out: &Path,
    header: &Header,
    extra: &str,
    format: Format,
    json: Vec<u8>,
    csv: impl FnOnce() -> String,
) -> Result<PathBuf, CliError> {
    let (ext, bytes) = match format {
        Format::Json => ("json", json),
        Format::Csv => ("csv", csv_report(header, &csv())),
    };
    write_atomic(out, &header.file_name(extra, ext), &bytes, false)
}

pub fn transpile(input: Input, arch: ArchitectureConfig, seed: u64, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let program = prune(&lower(&input.circuit), arch.max_weight());
    let summary = ProgramSummary::of(&program);
    let header = Header::new("transpile", seed, input.source, &input.text, arch);
    let pbc = write_atomic(out, &header.file_name("", "pbc"), print_pbc(&program).as_bytes(), false)?;
    #[derive(Serialize)]
    struct Body<'a> {
        summary: ProgramSummary,
        program_file: &'a str,
    }
    let name = pbc.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    let json = json_report(&header, Body { summary, program_file: name });
    let summary = write_atomic(out, &header.file_name("", "json"), &json, false)?;
    Ok(vec![pbc, summary])
}

pub fn estimate(
    input: Input,
    arch: ArchitectureConfig,
    seed: u64,
    out: &Path,
    format: Format,
    emit_schedule: bool,
) -> Result<Vec<PathBuf>, CliError> {
    let run = heterogeneous_run(&input.circuit, &arch, seed)?;
    let result = summarize(&run, &arch);
    let header = Header::new("estimate", seed, input.source, &input.text, arch);
    let mut written = Vec::new();
    if emit_schedule {
        let (ext, body) = match format {
            Format::Json => ("schedule.json", run.schedule.to_json()),
            Format::Csv => ("schedule.csv", run.schedule.to_csv()),
        };
        written.push(write_atomic(out, &header.file_name("", ext), body.as_bytes(), false)?);
    }
    let csv = || estimate_csv(std::slice::from_ref(&result));
    written.insert(0, emit(out, &header, "", format, json_report(&header, &result), csv)?);
    Ok(written)
}

pub fn sweep(
    input: Input,
    arch: ArchitectureConfig,
    seed: u64,
    out: &Path,
    format: Format,
    s_list: &[usize],
    p_list: &[f64],
) -> Result<PathBuf, CliError> {
    let grid: Vec<(usize, f64)> = s_list.iter().flat_map(|&s| p_list.iter().map(move |&p| (s, p))).collect();
    let rows = grid
        .par_iter()
        .map(|&(s, p)| {
            let point = ArchitectureConfig { surface_tiles: s, p, ..arch.clone() };
            point.validate().map_err(|e| CliError::Config(format!("S={s}, p={p}: {e}")))?;
            run_estimate(&input.circuit, &point, seed)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let extra = format!("s={s_list:?};p={p_list:?}");
    let header = Header::new("sweep", seed, input.source, &input.text, arch);
    #[derive(Serialize)]
    struct Body<'a> {
        surface_tiles: &'a [usize],
        p: &'a [f64],
        rows: &'a [Estimate],
    }
    let json = json_report(&header, Body { surface_tiles: s_list, p: p_list, rows: &rows });
    emit(out, &header, &extra, format, json, || estimate_csv(&rows))
}

pub fn compare_cmd(
    input: Input,
    arch: ArchitectureConfig,
    seed: u64,
    out: &Path,
    format: Format,
) -> Result<PathBuf, CliError> {
    let report: TradeoffReport = compare(&input.circuit, &arch, seed)?;
    let header = Header::new("compare", seed, input.source, &input.text, arch);
    let csv = || {
        let r = &report;
        format!(
            "e_target,e_homog,d_surf,q_het,q_homog,t_het,t_homog,r_qub_improvement,r_qub,r_time,slowdown\n\
             {:e},{:e},{},{},{},{},{},{},{},{},{}\n",
            r.e_target,
            r.e_homog,
            r.d_surf,
            r.q_het,
            r.q_homog,
            r.t_het,
            r.t_homog,
            r.r_qub_improvement,
            r.r_qub,
            r.r_time,
            r.slowdown
        )
    };
    #[derive(Serialize)]
    struct Body<'a> {
        report: &'a TradeoffReport,
    }
    emit(out, &header, "", format, json_report(&header, Body { report: &report }), csv)
}

/// Regenerates benchmark fixtures as `<kind>_<n>.qasm`, replacing old copies.
pub fn bench(specs: &[String], rz_word_len: usize, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    specs
        .iter()
        .map(|spec| {
            let (kind, n) = parse_bench_spec(spec)?;
            let circuit = gen_benchmark(kind, n, rz_word_len).map_err(|e| CliError::Config(e.to_string()))?;
            write_atomic(out, &format!("{kind}_{n}.qasm"), print_qasm(&circuit).as_bytes(), true)
        })
        .collect()
}
