//! Clifford+T circuits: gate types, validation, OpenQASM 2.0 I/O, the
//! dependency DAG and synthetic benchmark generators.

mod bench;
mod dag;
mod qasm;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bench::{gen_benchmark, BenchmarkKind, DEFAULT_RZ_WORD_LEN};
pub use dag::{build_dag, OpDag};
pub use qasm::{parse_qasm, print_qasm, QasmError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Y,
    Z,
    CX,
    MeasureZ,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::CX => 2,
            _ => 1,
        }
    }

    /// Lower-case OpenQASM mnemonic.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::CX => "cx",
            GateKind::MeasureZ => "measure",
        }
    }

    pub fn from_mnemonic(name: &str) -> Option<GateKind> {
        Some(match name {
            "h" => GateKind::H,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "t" => GateKind::T,
            "tdg" => GateKind::Tdg,
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "cx" | "CX" => GateKind::CX,
            "measure" => GateKind::MeasureZ,
            _ => return None,
        })
    }

    pub fn is_non_clifford(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate { kind, qubits }
    }

    pub fn single(kind: GateKind, qubit: usize) -> Self {
        Gate { kind, qubits: vec![qubit] }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::CX, qubits: vec![control, target] }
    }

    pub fn h(q: usize) -> Self {
        Gate::single(GateKind::H, q)
    }
    pub fn s(q: usize) -> Self {
        Gate::single(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Self {
        Gate::single(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Self {
        Gate::single(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Self {
        Gate::single(GateKind::Tdg, q)
    }
    pub fn measure(q: usize) -> Self {
        Gate::single(GateKind::MeasureZ, q)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (i, q) in self.qubits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate {index} ({kind}) expects {expected} qubit(s), got {got}")]
    Arity { index: usize, kind: GateKind, expected: usize, got: usize },
    #[error("gate {index} acts twice on qubit {qubit}")]
    RepeatedQubit { index: usize, qubit: usize },
    #[error("gate {index} references qubit {qubit} but the circuit has width {width}")]
    QubitOutOfRange { index: usize, qubit: usize, width: usize },
    #[error("gate {index} acts on qubit {qubit} after it was measured")]
    MidCircuitMeasurement { index: usize, qubit: usize },
}

/// A validated Clifford+T circuit on `width` qubits.
///
/// Measurements are terminal: once a qubit is measured no later gate may
/// touch it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalCircuit {
    pub name: String,
    width: usize,
    gates: Vec<Gate>,
}

impl LogicalCircuit {
    pub fn new(name: impl Into<String>, width: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let circuit = LogicalCircuit { name: name.into(), width, gates };
        circuit.validate()?;
        Ok(circuit)
    }

    fn validate(&self) -> Result<(), CircuitError> {
        let mut measured = vec![false; self.width];
        for (index, gate) in self.gates.iter().enumerate() {
            let expected = gate.kind.arity();
            if gate.qubits.len() != expected {
                return Err(CircuitError::Arity { index, kind: gate.kind, expected, got: gate.qubits.len() });
            }
            for (k, &qubit) in gate.qubits.iter().enumerate() {
                if qubit >= self.width {
                    return Err(CircuitError::QubitOutOfRange { index, qubit, width: self.width });
                }
                if gate.qubits[..k].contains(&qubit) {
                    return Err(CircuitError::RepeatedQubit { index, qubit });
                }
                if measured[qubit] {
                    return Err(CircuitError::MidCircuitMeasurement { index, qubit });
                }
            }
            if gate.kind == GateKind::MeasureZ {
                measured[gate.qubits[0]] = true;
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// Number of `T` and `Tdg` gates.
    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_non_clifford()).count()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cx_on_one_qubit() {
        let err = LogicalCircuit::new("c", 2, vec![Gate::cx(1, 1)]).unwrap_err();
        assert_eq!(err, CircuitError::RepeatedQubit { index: 0, qubit: 1 });
    }

    #[test]
    fn rejects_out_of_range() {
        let err = LogicalCircuit::new("c", 2, vec![Gate::h(2)]).unwrap_err();
        assert!(matches!(err, CircuitError::QubitOutOfRange { qubit: 2, .. }));
    }

    #[test]
    fn rejects_gate_after_measurement() {
        let err = LogicalCircuit::new("c", 2, vec![Gate::measure(0), Gate::cx(1, 0)]).unwrap_err();
        assert_eq!(err, CircuitError::MidCircuitMeasurement { index: 1, qubit: 0 });
    }

    #[test]
    fn rejects_wrong_arity() {
        let err = LogicalCircuit::new("c", 2, vec![Gate::new(GateKind::CX, vec![0])]).unwrap_err();
        assert!(matches!(err, CircuitError::Arity { expected: 2, got: 1, .. }));
    }

    #[test]
    fn counts() {
        let c = LogicalCircuit::new("c", 2, vec![Gate::t(0), Gate::tdg(1), Gate::h(0), Gate::cx(0, 1)]).unwrap();
        assert_eq!(c.t_count(), 2);
        assert_eq!(c.count(GateKind::CX), 1);
    }
}
