//! Pauli-based computation.
//!
//! Every operation is either a rotation `P(θ) = exp(-iθP)` with
//! `θ ∈ {±π/4, ±π/8}` or a Pauli-product measurement. With this sign
//! convention `T = Z(π/8)` and `S = Z(π/4)` hold up to global phase.
//! Pauli gates (`X`, `Y`, `Z`, and `π/2` rotations produced by merging two
//! `π/4` rotations) are pushed to a classical Pauli frame that is applied
//! after the last operation.

mod pauli;
mod prune;
mod text;

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateKind, LogicalCircuit};

pub use pauli::{pauli_mul, Axis, PauliProduct, Phase};
pub use prune::{prune, MaxWeight};
pub use text::{parse_pbc, print_pbc, PbcParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn from_real_phase(phase: Phase) -> Sign {
        match phase {
            Phase::ONE => Sign::Plus,
            Phase::MINUS_ONE => Sign::Minus,
            other => panic!("phase {other} is not real"),
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn as_phase(self) -> Phase {
        match self {
            Sign::Plus => Phase::ONE,
            Sign::Minus => Phase::MINUS_ONE,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Rotation angle. `±π/4` rotations are Clifford, `±π/8` are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Angle {
    PiOver4(Sign),
    PiOver8(Sign),
}

impl Angle {
    pub const CLIFFORD: Angle = Angle::PiOver4(Sign::Plus);
    pub const CLIFFORD_DG: Angle = Angle::PiOver4(Sign::Minus);
    pub const T: Angle = Angle::PiOver8(Sign::Plus);
    pub const T_DG: Angle = Angle::PiOver8(Sign::Minus);

    pub fn is_clifford(self) -> bool {
        matches!(self, Angle::PiOver4(_))
    }

    pub fn sign(self) -> Sign {
        match self {
            Angle::PiOver4(s) | Angle::PiOver8(s) => s,
        }
    }

    fn with_sign(self, sign: Sign) -> Angle {
        match self {
            Angle::PiOver4(_) => Angle::PiOver4(sign),
            Angle::PiOver8(_) => Angle::PiOver8(sign),
        }
    }

    pub fn radians(self) -> f64 {
        let magnitude = match self {
            Angle::PiOver4(_) => std::f64::consts::FRAC_PI_4,
            Angle::PiOver8(_) => std::f64::consts::FRAC_PI_8,
        };
        match self.sign() {
            Sign::Plus => magnitude,
            Sign::Minus => -magnitude,
        }
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        self.with_sign(-self.sign())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let denominator = if self.is_clifford() { 4 } else { 8 };
        write!(f, "{}pi/{}", self.sign().symbol(), denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliRotation {
    pub pauli: PauliProduct,
    pub angle: Angle,
}

impl PauliRotation {
    pub fn new(pauli: PauliProduct, angle: Angle) -> Self {
        debug_assert!(!pauli.is_identity());
        PauliRotation { pauli, angle }
    }

    pub fn is_clifford(&self) -> bool {
        self.angle.is_clifford()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliMeasurement {
    pub pauli: PauliProduct,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PbcOp {
    Rotate(PauliRotation),
    Measure(PauliMeasurement),
}

impl PbcOp {
    pub fn rotation(pauli: PauliProduct, angle: Angle) -> PbcOp {
        PbcOp::Rotate(PauliRotation::new(pauli, angle))
    }

    pub fn measurement(pauli: PauliProduct, sign: Sign) -> PbcOp {
        PbcOp::Measure(PauliMeasurement { pauli, sign })
    }

    pub fn pauli(&self) -> &PauliProduct {
        match self {
            PbcOp::Rotate(r) => &r.pauli,
            PbcOp::Measure(m) => &m.pauli,
        }
    }

    pub fn is_clifford_rotation(&self) -> bool {
        matches!(self, PbcOp::Rotate(r) if r.is_clifford())
    }

    pub fn is_non_clifford(&self) -> bool {
        matches!(self, PbcOp::Rotate(r) if !r.is_clifford())
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, PbcOp::Measure(_))
    }

    fn sign(&self) -> Sign {
        match self {
            PbcOp::Rotate(r) => r.angle.sign(),
            PbcOp::Measure(m) => m.sign,
        }
    }

    fn with_pauli_and_sign(&self, pauli: PauliProduct, sign: Sign) -> PbcOp {
        match self {
            PbcOp::Rotate(r) => PbcOp::Rotate(PauliRotation { pauli, angle: r.angle.with_sign(sign) }),
            PbcOp::Measure(_) => PbcOp::Measure(PauliMeasurement { pauli, sign }),
        }
    }

    /// Conjugation by a Pauli: flips the sign when the operator anticommutes.
    fn conjugated_by_pauli(&mut self, pauli: &PauliProduct) {
        if self.pauli().anticommutes(pauli) {
            match self {
                PbcOp::Rotate(r) => r.angle = -r.angle,
                PbcOp::Measure(m) => m.sign = -m.sign,
            }
        }
    }
}

impl fmt::Display for PbcOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbcOp::Rotate(r) => write!(f, "ROT {} {}", r.angle, r.pauli),
            PbcOp::Measure(m) => write!(f, "MEAS {} {}", m.sign.symbol(), m.pauli),
        }
    }
}

/// Weight of the operator's Pauli product.
pub fn op_weight(op: &PbcOp) -> usize {
    op.pauli().weight()
}

/// Result of lowering a single gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lowering {
    Ops(Vec<PbcOp>),
    /// A Pauli gate, tracked in the frame rather than executed.
    Frame(PauliProduct),
}

pub fn decompose_gate(gate: &Gate) -> Lowering {
    let z = |q: usize| PauliProduct::single(q, Axis::Z);
    let x = |q: usize| PauliProduct::single(q, Axis::X);
    let q = gate.qubits[0];
    let ops = match gate.kind {
        GateKind::H => vec![
            PbcOp::rotation(z(q), Angle::CLIFFORD),
            PbcOp::rotation(x(q), Angle::CLIFFORD),
            PbcOp::rotation(z(q), Angle::CLIFFORD),
        ],
        GateKind::S => vec![PbcOp::rotation(z(q), Angle::CLIFFORD)],
        GateKind::Sdg => vec![PbcOp::rotation(z(q), Angle::CLIFFORD_DG)],
        GateKind::T => vec![PbcOp::rotation(z(q), Angle::T)],
        GateKind::Tdg => vec![PbcOp::rotation(z(q), Angle::T_DG)],
        GateKind::CX => {
            let t = gate.qubits[1];
            let zx = PauliProduct::from_factors([(q, Axis::Z), (t, Axis::X)]).expect("distinct qubits");
            vec![
                PbcOp::rotation(zx, Angle::CLIFFORD),
                PbcOp::rotation(z(q), Angle::CLIFFORD_DG),
                PbcOp::rotation(x(t), Angle::CLIFFORD_DG),
            ]
        }
        GateKind::X => return Lowering::Frame(x(q)),
        GateKind::Y => return Lowering::Frame(PauliProduct::single(q, Axis::Y)),
        GateKind::Z => return Lowering::Frame(z(q)),
        GateKind::MeasureZ => vec![PbcOp::measurement(z(q), Sign::Plus)],
    };
    Lowering::Ops(ops)
}

/// Moves `op` from just after the Clifford rotation `clifford` to just
/// before it, returning the transformed operator.
///
/// For `C = P(±π/4)` and an operator on `P'` anticommuting with `P`, the
/// operator's Pauli becomes `±i·P·P'`, whose phase is always real and is
/// folded into the rotation angle or measurement sign.
///
/// # Panics
///
/// If `clifford` is not a `±π/4` rotation.
pub fn commute_past(clifford: &PauliRotation, op: &PbcOp) -> PbcOp {
    assert!(clifford.is_clifford(), "commute_past needs a ±π/4 rotation");
    if clifford.pauli.commutes(op.pauli()) {
        return op.clone();
    }
    let (phase, product) = pauli_mul(&clifford.pauli, op.pauli());
    let factor = Phase::I * clifford.angle.sign().as_phase() * phase;
    let sign = Sign::from_real_phase(factor).times(op.sign());
    op.with_pauli_and_sign(product, sign)
}

/// A Pauli-based program: operations in execution order followed by a
/// Pauli frame correction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbcCircuit {
    pub width: usize,
    pub ops: Vec<PbcOp>,
    pub frame: PauliProduct,
}

impl PbcCircuit {
    pub fn new(width: usize) -> Self {
        PbcCircuit { width, ops: Vec::new(), frame: PauliProduct::identity() }
    }

    /// Number of `±π/8` rotations.
    pub fn t_count(&self) -> usize {
        self.ops.iter().filter(|o| o.is_non_clifford()).count()
    }

    pub fn clifford_count(&self) -> usize {
        self.ops.iter().filter(|o| o.is_clifford_rotation()).count()
    }

    pub fn measurement_count(&self) -> usize {
        self.ops.iter().filter(|o| o.is_measurement()).count()
    }

    /// Largest weight among non-Clifford rotations and measurements.
    pub fn max_weight(&self) -> usize {
        self.ops.iter().filter(|o| !o.is_clifford_rotation()).map(op_weight).max().unwrap_or(0)
    }

    /// Mean weight of the non-Clifford rotations, zero if there are none.
    pub fn mean_non_clifford_weight(&self) -> f64 {
        let weights: Vec<usize> = self.ops.iter().filter(|o| o.is_non_clifford()).map(op_weight).collect();
        if weights.is_empty() {
            0.0
        } else {
            weights.iter().sum::<usize>() as f64 / weights.len() as f64
        }
    }

    /// Qubits touched by any measurement.
    pub fn measured_qubits(&self) -> Vec<bool> {
        let mut measured = vec![false; self.width];
        for op in self.ops.iter().filter(|o| o.is_measurement()) {
            for q in op.pauli().qubits() {
                measured[q] = true;
            }
        }
        measured
    }

    /// Applies a Pauli at position `at` by pushing it through every later
    /// operation into the frame.
    pub(crate) fn push_pauli_to_frame(&mut self, at: usize, pauli: &PauliProduct) {
        for op in &mut self.ops[at..] {
            op.conjugated_by_pauli(pauli);
        }
        self.frame = pauli_mul(&self.frame, pauli).1;
    }
}

/// Lowers every gate with [`decompose_gate`], pushing Pauli gates into the
/// frame as they are met.
pub fn lower(circuit: &LogicalCircuit) -> PbcCircuit {
    let mut out = PbcCircuit::new(circuit.width());
    for gate in circuit.gates() {
        match decompose_gate(gate) {
            Lowering::Ops(ops) => {
                for mut op in ops {
                    op.conjugated_by_pauli(&out.frame);
                    out.ops.push(op);
                }
            }
            Lowering::Frame(p) => out.frame = pauli_mul(&out.frame, &p).1,
        }
    }
    out
}
