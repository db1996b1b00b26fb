use serde::{Deserialize, Serialize};

use super::{CombineMode, ErrorCategory, EstimatorOptions};
use crate::schedule::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ErrorBreakdown {
    pub io: f64,
    pub clifford: f64,
    pub non_clifford: f64,
    /// Zero unless an idle error rate is configured.
    pub idle: f64,
    pub total: f64,
    pub cycles: u64,
}

/// Sums event errors per category and combines them into a total.
pub fn estimate_circuit(schedule: &Schedule, options: &EstimatorOptions) -> ErrorBreakdown {
    let mut b = ErrorBreakdown { cycles: schedule.total_cycles, ..ErrorBreakdown::default() };
    let mut survival = 1.0;
    for e in &schedule.events {
        match e.category {
            ErrorCategory::Io => b.io += e.error_contribution,
            ErrorCategory::Clifford => b.clifford += e.error_contribution,
            ErrorCategory::NonClifford => b.non_clifford += e.error_contribution,
        }
        survival *= 1.0 - e.error_contribution;
    }
    b.idle = options.idle_error_per_cycle * schedule.idle_qubit_cycles as f64;
    b.total = match options.mode {
        CombineMode::Sum => b.io + b.clifford + b.non_clifford + b.idle,
        CombineMode::Product => 1.0 - survival * (1.0 - b.idle.min(1.0)),
    };
    b
}
