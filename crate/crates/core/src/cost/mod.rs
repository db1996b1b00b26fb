//! Instruction costs, physical-qubit accounting and error estimation.

mod estimate;
mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::memory::{MemoryConfig, MemoryError, MoveCosts};
use crate::pbc::MaxWeight;

pub use estimate::{estimate_circuit, ErrorBreakdown};
pub use table::{
    gross_op_error, surface_clifford_error, surface_nonclifford_error, CostTable, GrossOp, GrossRow, SurfaceModel,
    DEFAULT_COST_TABLE_JSON,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CostError {
    #[error("physical error rate {0} is not in (0, 1)")]
    InvalidP(f64),
    #[error("physical error rate {p:e} is above the largest tabulated rate {max:e}")]
    AboveTable { p: f64, max: f64 },
    #[error("invalid code distance {0}")]
    InvalidDistance(usize),
    #[error("Pauli weight must be at least 1")]
    ZeroWeight,
    #[error("invalid cost table: {0}")]
    InvalidTable(String),
    #[error("cannot parse cost table: {0}")]
    Parse(String),
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error(transparent)]
    Memory(#[from] MemoryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCategory {
    Io,
    Clifford,
    NonClifford,
}

/// Ancilla-bus construction between a gross block and the surface tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BusVariant {
    #[default]
    Mono,
    Ssip,
    Ckbb,
}

impl BusVariant {
    pub fn ancilla_qubits(self) -> usize {
        match self {
            BusVariant::Mono => 103,
            BusVariant::Ssip => 180,
            BusVariant::Ckbb => 1380,
        }
    }

    /// Syndrome rounds per logical measurement through the bus.
    pub fn measurement_rounds(self) -> u64 {
        match self {
            BusVariant::Mono => 7,
            BusVariant::Ssip | BusVariant::Ckbb => 12,
        }
    }

    /// Scales a tabulated duration (given for the mono-layer bus).
    fn scale(self, cycles: u64) -> u64 {
        let mono = BusVariant::Mono.measurement_rounds();
        (cycles * self.measurement_rounds()).div_ceil(mono)
    }
}

impl std::str::FromStr for BusVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mono" => Ok(BusVariant::Mono),
            "ssip" => Ok(BusVariant::Ssip),
            "ckbb" => Ok(BusVariant::Ckbb),
            _ => Err(format!("unknown bus variant `{s}` (expected mono, ssip or ckbb)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Accounting {
    /// Data plus check qubits of one gross-code block.
    pub qubits_per_block: usize,
    /// Overrides the bus variant's ancilla count.
    pub bus_qubits: Option<usize>,
    /// Physical qubits per surface tile before routing overhead, at the
    /// reference distance.
    pub c_tile: f64,
    pub routing_factor: f64,
    pub reference_distance: usize,
    /// Physical qubits per logical qubit of an all-surface machine at the
    /// reference distance.
    pub homogeneous_per_qubit: f64,
}

impl Default for Accounting {
    fn default() -> Self {
        Accounting {
            qubits_per_block: 288,
            bus_qubits: None,
            c_tile: 191.0,
            routing_factor: 1.5,
            reference_distance: 13,
            homogeneous_per_qubit: 463.0,
        }
    }
}

impl Accounting {
    fn distance_scale(&self, d: usize) -> f64 {
        let r = d as f64 / self.reference_distance as f64;
        r * r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    #[default]
    Sum,
    /// `1 - ∏(1 - eᵢ)`
    Product,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimatorOptions {
    pub mode: CombineMode,
    /// Charge surface non-Clifford rotations twice the weighted rate.
    pub double_non_clifford: bool,
    /// Native rotations per in-memory Clifford, applied to both duration
    /// and error.
    pub in_memory_clifford_multiplier: f64,
    /// Error per idle logical qubit per cycle.
    pub idle_error_per_cycle: f64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        EstimatorOptions {
            mode: CombineMode::Sum,
            double_non_clifford: false,
            in_memory_clifford_multiplier: 1.0,
            idle_error_per_cycle: 0.0,
        }
    }
}

fn default_tiles() -> usize {
    2
}

fn default_distance() -> usize {
    13
}

fn default_p() -> f64 {
    1e-3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchitectureConfig {
    #[serde(default = "default_tiles")]
    pub surface_tiles: usize,
    #[serde(default = "default_distance")]
    pub distance: usize,
    /// Fixed block count; when absent, just enough blocks to hold every
    /// qubit that does not fit on the tiles.
    #[serde(default)]
    pub gross_blocks: Option<usize>,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default)]
    pub bus: BusVariant,
    /// Pruning cap; defaults to the number of surface tiles.
    #[serde(default)]
    pub max_weight: Option<MaxWeight>,
    #[serde(default)]
    pub memory: MemoryConfig,
    #[serde(default)]
    pub accounting: Accounting,
    #[serde(default)]
    pub estimator: EstimatorOptions,
    #[serde(default)]
    pub cost_table: CostTable,
}

impl Default for ArchitectureConfig {
    fn default() -> Self {
        ArchitectureConfig {
            surface_tiles: default_tiles(),
            distance: default_distance(),
            gross_blocks: None,
            p: default_p(),
            bus: BusVariant::default(),
            max_weight: None,
            memory: MemoryConfig::default(),
            accounting: Accounting::default(),
            estimator: EstimatorOptions::default(),
            cost_table: CostTable::default(),
        }
    }
}

/// Duration and error of one instruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cost {
    pub cycles: u64,
    pub error: f64,
}

/// Gross-side instruction costs at a given `p` and bus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrossInstructions {
    pub in_memory_clifford: Cost,
    pub measure: Cost,
    pub moves: MoveCosts,
}

/// Every instruction cost the scheduler needs, resolved for one architecture.
#[derive(Debug, Clone, PartialEq)]
pub struct Instructions {
    pub surface_clifford: Cost,
    pub surface_measure: Cost,
    non_clifford_cycles: u64,
    p: f64,
    d: usize,
    doubled: bool,
    table: CostTable,
    /// Absent when the architecture has no memory blocks.
    pub gross: Option<GrossInstructions>,
}

impl Instructions {
    pub fn surface_non_clifford(&self, weight: usize) -> Cost {
        let error = surface_nonclifford_error(&self.table, self.p, self.d, weight, self.doubled)
            .expect("inputs validated when resolving instructions");
        Cost { cycles: self.non_clifford_cycles, error }
    }
}

impl ArchitectureConfig {
    pub fn validate(&self) -> Result<(), CostError> {
        let bad = |why: String| Err(CostError::InvalidArchitecture(why));
        if self.surface_tiles == 0 {
            return bad("need at least one surface tile".into());
        }
        if self.distance < 3 || self.distance.is_multiple_of(2) {
            return bad(format!("distance must be odd and at least 3, got {}", self.distance));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(CostError::InvalidP(self.p));
        }
        let m = self.estimator.in_memory_clifford_multiplier;
        if !(m.is_finite() && m > 0.0) {
            return bad(format!("in-memory Clifford multiplier must be positive, got {m}"));
        }
        let idle = self.estimator.idle_error_per_cycle;
        if !(0.0..1.0).contains(&idle) {
            return bad(format!("idle error must lie in [0, 1), got {idle}"));
        }
        let a = &self.accounting;
        if a.reference_distance == 0 || !(a.c_tile >= 0.0 && a.routing_factor >= 0.0 && a.homogeneous_per_qubit >= 0.0)
        {
            return bad("accounting constants must be non-negative with a positive reference distance".into());
        }
        self.memory.validate()?;
        self.cost_table.validate()
    }

    pub fn max_weight(&self) -> MaxWeight {
        self.max_weight.unwrap_or(MaxWeight::Limited(self.surface_tiles))
    }

    pub fn bus_qubits(&self) -> usize {
        self.accounting.bus_qubits.unwrap_or_else(|| self.bus.ancilla_qubits())
    }

    /// Blocks used for an `n`-qubit program.
    pub fn blocks_for(&self, n: usize) -> usize {
        self.gross_blocks.unwrap_or_else(|| block_count(n, self.surface_tiles, self.memory.capacity))
    }

    /// Gross-side costs are only resolved when `with_memory` is set, so an
    /// all-surface machine may use error rates beyond the gross table.
    pub fn instructions(&self, with_memory: bool) -> Result<Instructions, CostError> {
        self.validate()?;
        let (p, d) = (self.p, self.distance as u64);
        let t = &self.cost_table;
        let clifford_error = surface_clifford_error(t, p, self.distance)?;
        let gross = if with_memory {
            let err = |op| gross_op_error(t, op, p);
            let mult = self.estimator.in_memory_clifford_multiplier;
            let clifford_cycles = self.bus.scale(t.clifford_rotation.cycles);
            Some(GrossInstructions {
                in_memory_clifford: Cost {
                    cycles: (clifford_cycles as f64 * mult).round().max(1.0) as u64,
                    error: err(GrossOp::CliffordRotation)? * mult,
                },
                measure: Cost { cycles: self.bus.scale(t.measurement.cycles), error: err(GrossOp::Measurement)? },
                moves: MoveCosts {
                    t_auto: t.automorphism.cycles,
                    t_xx: self.bus.scale(t.joint_xx.cycles),
                    t_zmeas: self.bus.scale(t.measurement.cycles),
                    e_auto: err(GrossOp::Automorphism)?,
                    e_xx: err(GrossOp::JointXX)?,
                    e_zmeas: err(GrossOp::Measurement)?,
                },
            })
        } else {
            None
        };
        Ok(Instructions {
            surface_clifford: Cost { cycles: t.surface.clifford_cycles_per_d * d, error: clifford_error },
            surface_measure: Cost { cycles: t.surface.measurement_cycles_per_d * d, error: clifford_error },
            non_clifford_cycles: t.surface.non_clifford_cycles_per_d * d,
            p,
            d: self.distance,
            doubled: self.estimator.double_non_clifford,
            table: t.clone(),
            gross,
        })
    }
}

/// `ceil(max(0, n - S) / capacity)`
pub fn block_count(n: usize, surface_tiles: usize, capacity: usize) -> usize {
    let overflow = n.saturating_sub(surface_tiles);
    if overflow == 0 {
        return 0;
    }
    assert!(capacity > 0, "blocks with zero capacity cannot hold {overflow} qubits");
    overflow.div_ceil(capacity)
}

/// Surface tiles plus routing overhead, scaled with the code area.
pub fn surface_portion(arch: &ArchitectureConfig) -> usize {
    let a = &arch.accounting;
    (arch.surface_tiles as f64 * a.c_tile * a.routing_factor * a.distance_scale(arch.distance)).round() as usize
}

/// Physical qubits of a heterogeneous machine with `blocks` gross blocks
/// (each with its own bus) and the configured surface tiles. Magic-state
/// factories are not counted.
pub fn physical_qubits(arch: &ArchitectureConfig, blocks: usize) -> usize {
    blocks * (arch.accounting.qubits_per_block + arch.bus_qubits()) + surface_portion(arch)
}

/// Physical qubits of an all-surface machine holding `n` logical qubits at distance `d`.
pub fn homogeneous_qubits(accounting: &Accounting, n: usize, d: usize) -> usize {
    (n as f64 * accounting.homogeneous_per_qubit * accounting.distance_scale(d)).round() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_counts() {
        assert_eq!(block_count(18, 2, 11), 2);
        assert_eq!(block_count(98, 2, 11), 9);
        assert_eq!(block_count(2, 2, 11), 0);
        assert_eq!(block_count(1, 4, 11), 0);
        assert_eq!(block_count(13, 2, 11), 1);
        assert_eq!(block_count(14, 2, 11), 2);
    }

    #[test]
    fn qubit_accounting() {
        let arch = ArchitectureConfig::default();
        assert_eq!(arch.bus_qubits() + arch.accounting.qubits_per_block, 391);
        assert_eq!(surface_portion(&arch), 573);
        assert_eq!(physical_qubits(&arch, 3), 1746);
        assert_eq!(physical_qubits(&arch, 9), 4092);
        let single = ArchitectureConfig { surface_tiles: 1, ..ArchitectureConfig::default() };
        assert_eq!(physical_qubits(&single, 0), (191.0f64 * 1.5).round() as usize);
        let ckbb = ArchitectureConfig { bus: BusVariant::Ckbb, ..ArchitectureConfig::default() };
        assert_eq!(physical_qubits(&ckbb, 1), 288 + 1380 + 573);
    }

    #[test]
    fn homogeneous_scales_with_area() {
        let a = Accounting::default();
        assert_eq!(homogeneous_qubits(&a, 18, 13), 18 * 463);
        assert_eq!(homogeneous_qubits(&a, 1, 26), 4 * 463);
    }

    #[test]
    fn instruction_durations() {
        let arch = ArchitectureConfig::default();
        let ins = arch.instructions(true).unwrap();
        assert_eq!(ins.surface_clifford.cycles, 13);
        assert_eq!(ins.surface_non_clifford(1).cycles, 26);
        assert_eq!(ins.surface_measure.cycles, 13);
        let g = ins.gross.unwrap();
        assert_eq!(g.in_memory_clifford, Cost { cycles: 14, error: 4e-5 });
        assert_eq!(g.measure.cycles, 7);
        assert_eq!((g.moves.t_auto, g.moves.t_xx, g.moves.t_zmeas), (1, 7, 7));
    }

    #[test]
    fn bus_variant_changes_rounds() {
        let arch = ArchitectureConfig { bus: BusVariant::Ssip, ..ArchitectureConfig::default() };
        let g = arch.instructions(true).unwrap().gross.unwrap();
        assert_eq!(g.measure.cycles, 12);
        assert_eq!(g.in_memory_clifford.cycles, 24);
        assert_eq!(g.moves.t_auto, 1);
    }

    #[test]
    fn surface_only_allows_high_p() {
        let arch = ArchitectureConfig { p: 5e-3, ..ArchitectureConfig::default() };
        assert!(arch.instructions(false).is_ok());
        assert!(matches!(arch.instructions(true), Err(CostError::AboveTable { .. })));
    }

    #[test]
    fn config_defaults_from_empty_json() {
        let arch: ArchitectureConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(arch, ArchitectureConfig::default());
        let arch: ArchitectureConfig = serde_json::from_str(r#"{"surface_tiles": 4, "bus": "ssip"}"#).unwrap();
        assert_eq!(arch.surface_tiles, 4);
        assert_eq!(arch.max_weight(), MaxWeight::Limited(4));
    }

    #[test]
    fn validation() {
        for bad in [
            ArchitectureConfig { surface_tiles: 0, ..ArchitectureConfig::default() },
            ArchitectureConfig { distance: 12, ..ArchitectureConfig::default() },
            ArchitectureConfig { distance: 1, ..ArchitectureConfig::default() },
            ArchitectureConfig { p: 0.0, ..ArchitectureConfig::default() },
        ] {
            assert!(bad.validate().is_err());
        }
    }
}
