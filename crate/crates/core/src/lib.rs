//! Compilation and resource estimation for heterogeneous error-correction
//! architectures that pair distance-`d` surface-code compute tiles with
//! gross-code ([[144,12,12]] bivariate bicycle) memory blocks.
//!
//! The pipeline is:
//!
//! 1. [`circuit`]: parse or generate a Clifford+T circuit and build its
//!    dependency DAG.
//! 2. [`pbc`]: lower gates to Pauli-product rotations and measurements, then
//!    push Clifford rotations towards the measurements subject to a cap on
//!    the weight of the operators that this creates.
//! 3. [`schedule`]: place logical qubits on surface tiles and gross-code
//!    slots, insert fetch/store traffic greedily and assign start cycles on
//!    a single logical clock.
//! 4. [`cost`]: attach per-instruction error rates and physical-qubit
//!    counts, and sum them into an error breakdown.
//! 5. [`tradeoff`]: compare against an all-surface-code machine tuned to
//!    the same logical error rate.

pub mod circuit;
pub mod cost;
pub mod memory;
pub mod pbc;
pub mod schedule;
pub mod tradeoff;

pub use circuit::{Gate, GateKind, LogicalCircuit, OpDag};
pub use cost::{ArchitectureConfig, CostTable, ErrorBreakdown};
pub use pbc::{PauliProduct, PbcCircuit, PbcOp};
pub use schedule::Schedule;
pub use tradeoff::TradeoffReport;
