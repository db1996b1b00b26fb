//! Heterogeneous versus all-surface comparisons at matched logical error.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::LogicalCircuit;
use crate::cost::{estimate_circuit, homogeneous_qubits, physical_qubits, ArchitectureConfig, ErrorBreakdown};
use crate::pbc::{lower, prune, MaxWeight, PbcCircuit};
use crate::schedule::{schedule, Schedule, ScheduleError};

/// Largest distance tried before giving up on a target.
pub const MAX_DISTANCE: usize = 199;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TradeoffError {
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("p = {p} is at or above the surface-code threshold {threshold}; no distance reaches the target")]
    AboveThreshold { p: f64, threshold: f64 },
    #[error("no odd distance up to {max} reaches error {target:e}")]
    DistanceLimit { target: f64, max: usize },
    #[error("target error {0} is not in (0, 1]")]
    InvalidTarget(f64),
}

/// One pipeline run: the pruned program, its schedule and its costs.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub program: PbcCircuit,
    pub schedule: Schedule,
    pub breakdown: ErrorBreakdown,
    pub physical_qubits: usize,
    pub blocks: usize,
}

/// Lowers, prunes with the architecture's weight cap, schedules and estimates.
pub fn heterogeneous_run(circuit: &LogicalCircuit, arch: &ArchitectureConfig, seed: u64) -> Result<Run, TradeoffError> {
    let program = prune(&lower(circuit), arch.max_weight());
    run_program(program, arch, seed)
}

fn run_program(program: PbcCircuit, arch: &ArchitectureConfig, seed: u64) -> Result<Run, TradeoffError> {
    let schedule = schedule(&program, arch, seed)?;
    let breakdown = estimate_circuit(&schedule, &arch.estimator);
    let blocks = schedule.blocks;
    Ok(Run { physical_qubits: physical_qubits(arch, blocks), blocks, program, schedule, breakdown })
}

/// `base` with one tile per qubit, no memory and no weight cap beyond `n`.
pub fn homogeneous_arch(n: usize, d: usize, p: f64, base: &ArchitectureConfig) -> ArchitectureConfig {
    ArchitectureConfig {
        surface_tiles: n.max(1),
        distance: d,
        gross_blocks: Some(0),
        p,
        max_weight: Some(MaxWeight::Limited(n.max(1))),
        ..base.clone()
    }
}

fn homogeneous_program(program: PbcCircuit, d: usize, p: f64, base: &ArchitectureConfig) -> Result<Run, TradeoffError> {
    let n = program.width;
    let arch = homogeneous_arch(n, d, p, base);
    let mut run = run_program(program, &arch, 0)?;
    run.physical_qubits = homogeneous_qubits(&arch.accounting, n, d);
    Ok(run)
}

/// All-surface run: one tile per qubit, distance `d`, full pruning.
pub fn homogeneous_run(
    circuit: &LogicalCircuit,
    d: usize,
    p: f64,
    base: &ArchitectureConfig,
) -> Result<Run, TradeoffError> {
    let n = circuit.width();
    let program = prune(&lower(circuit), MaxWeight::Limited(n.max(1)));
    homogeneous_program(program, d, p, base)
}

fn min_distance_program(
    program: &PbcCircuit,
    p: f64,
    e_target: f64,
    base: &ArchitectureConfig,
) -> Result<(usize, Run), TradeoffError> {
    if !(e_target > 0.0 && e_target <= 1.0) {
        return Err(TradeoffError::InvalidTarget(e_target));
    }
    let mut d = 3;
    loop {
        let run = homogeneous_program(program.clone(), d, p, base)?;
        if run.breakdown.total <= e_target {
            return Ok((d, run));
        }
        let threshold = base.cost_table.surface.p0;
        if p >= threshold {
            return Err(TradeoffError::AboveThreshold { p, threshold });
        }
        d += 2;
        if d > MAX_DISTANCE {
            return Err(TradeoffError::DistanceLimit { target: e_target, max: MAX_DISTANCE });
        }
    }
}

/// Smallest odd `d ≥ 3` whose all-surface run has total error at most `e_target`.
pub fn min_distance_for_target(
    circuit: &LogicalCircuit,
    p: f64,
    e_target: f64,
    base: &ArchitectureConfig,
) -> Result<usize, TradeoffError> {
    let program = prune(&lower(circuit), MaxWeight::Limited(circuit.width().max(1)));
    Ok(min_distance_program(&program, p, e_target, base)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffReport {
    pub e_target: f64,
    pub e_homog: f64,
    pub d_surf: usize,
    pub q_het: usize,
    pub q_homog: usize,
    pub t_het: u64,
    pub t_homog: u64,
    /// `q_homog / q_het`; above 1 favours the heterogeneous machine.
    pub r_qub_improvement: f64,
    /// `q_het / q_homog`
    pub r_qub: f64,
    /// `t_homog / t_het`; below 1 means the heterogeneous machine is slower.
    pub r_time: f64,
    /// `t_het / t_homog`
    pub slowdown: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if a == b {
        1.0
    } else {
        a / b
    }
}

impl TradeoffReport {
    pub fn from_counts(e_target: f64, d_surf: usize, q_het: usize, q_homog: usize, t_het: u64, t_homog: u64) -> Self {
        TradeoffReport {
            e_target,
            e_homog: e_target,
            d_surf,
            q_het,
            q_homog,
            t_het,
            t_homog,
            r_qub_improvement: ratio(q_homog as f64, q_het as f64),
            r_qub: ratio(q_het as f64, q_homog as f64),
            r_time: ratio(t_homog as f64, t_het as f64),
            slowdown: ratio(t_het as f64, t_homog as f64),
        }
    }
}

/// Ratios between two finished runs, the second playing the all-surface role.
pub fn compare_runs(het: &Run, homog: &Run, d_surf: usize) -> TradeoffReport {
    let mut report = TradeoffReport::from_counts(
        het.breakdown.total,
        d_surf,
        het.physical_qubits,
        homog.physical_qubits,
        het.schedule.total_cycles,
        homog.schedule.total_cycles,
    );
    report.e_homog = homog.breakdown.total;
    report
}

/// Runs the heterogeneous pipeline, then finds the all-surface distance that
/// matches its total error and reports both machines' qubits and cycles.
pub fn compare(
    circuit: &LogicalCircuit,
    arch: &ArchitectureConfig,
    seed: u64,
) -> Result<TradeoffReport, TradeoffError> {
    let het = heterogeneous_run(circuit, arch, seed)?;
    let program = prune(&lower(circuit), MaxWeight::Limited(circuit.width().max(1)));
    let target = het.breakdown.total.clamp(f64::MIN_POSITIVE, 1.0);
    let (d, homog) = min_distance_program(&program, arch.p, target, arch)?;
    Ok(compare_runs(&het, &homog, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    fn circuit(gates: Vec<Gate>, width: usize) -> LogicalCircuit {
        LogicalCircuit::new("t", width, gates).unwrap()
    }

    #[test]
    fn single_t_cycles() {
        let c = circuit(vec![Gate::t(0), Gate::measure(0)], 1);
        let run = homogeneous_run(&c, 13, 1e-3, &ArchitectureConfig::default()).unwrap();
        assert_eq!(run.schedule.total_cycles, 2 * 13 + 13);
        assert_eq!(run.schedule.io_count, 0);
    }

    #[test]
    fn empty_circuit_has_zero_error() {
        let c = circuit(vec![], 2);
        let run = homogeneous_run(&c, 5, 1e-3, &ArchitectureConfig::default()).unwrap();
        assert_eq!(run.breakdown.total, 0.0);
    }

    #[test]
    fn distance_for_single_clifford() {
        // one S gate: a single surface Clifford with error 3e-9 at d = 13
        let c = circuit(vec![Gate::s(0)], 1);
        let arch = ArchitectureConfig::default();
        let at13 = homogeneous_run(&c, 13, 1e-3, &arch).unwrap().breakdown.total;
        assert!((at13 - 3e-9).abs() / 3e-9 < 1e-15);
        assert_eq!(min_distance_for_target(&c, 1e-3, at13, &arch).unwrap(), 13);
        assert_eq!(min_distance_for_target(&c, 1e-3, 1.0, &arch).unwrap(), 3);
    }

    #[test]
    fn above_threshold() {
        let c = circuit(vec![Gate::t(0)], 1);
        let arch = ArchitectureConfig::default();
        assert!(matches!(min_distance_for_target(&c, 0.02, 1e-9, &arch), Err(TradeoffError::AboveThreshold { .. })));
    }

    #[test]
    fn ratios() {
        let r = TradeoffReport::from_counts(1e-3, 13, 1355, 8243, 1596, 4060);
        assert!((r.r_qub_improvement - 6.0834).abs() < 1e-3);
        assert!((r.r_qub * r.r_qub_improvement - 1.0).abs() < 1e-15);
        let same = TradeoffReport::from_counts(1e-3, 13, 100, 100, 7, 7);
        assert_eq!((same.r_qub_improvement, same.r_time), (1.0, 1.0));
    }
}
