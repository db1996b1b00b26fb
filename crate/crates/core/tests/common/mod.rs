#![allow(dead_code)]

pub mod dense;
pub mod invariants;

use hetec_core::circuit::{Gate, GateKind, LogicalCircuit};
use hetec_core::pbc::{Angle, Axis, PauliProduct, PbcCircuit, PbcOp, Sign};
use proptest::prelude::*;
use rand::Rng;

const UNITARY_KINDS: [GateKind; 9] = [
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::CX,
];

fn make_gate(kind: usize, a: usize, b: usize, n: usize) -> Gate {
    let kind = UNITARY_KINDS[kind % UNITARY_KINDS.len()];
    if kind == GateKind::CX && n >= 2 {
        let c = a % n;
        let t = (c + 1 + b % (n - 1)) % n;
        Gate::cx(c, t)
    } else if kind == GateKind::CX {
        Gate::h(a % n)
    } else {
        Gate::single(kind, a % n)
    }
}

/// Unitary Clifford+T circuit on `1..=max_width` qubits.
pub fn arb_circuit(max_width: usize, max_gates: usize) -> impl Strategy<Value = LogicalCircuit> {
    (1..=max_width).prop_flat_map(move |n| {
        prop::collection::vec((0..UNITARY_KINDS.len(), 0..n, 0..n.max(2)), 0..=max_gates).prop_map(move |gs| {
            let gates = gs.into_iter().map(|(k, a, b)| make_gate(k, a, b, n)).collect();
            LogicalCircuit::new("random", n, gates).unwrap()
        })
    })
}

/// Same as [`arb_circuit`] with every qubit measured at the end.
pub fn arb_measured_circuit(max_width: usize, max_gates: usize) -> impl Strategy<Value = LogicalCircuit> {
    arb_circuit(max_width, max_gates).prop_map(measured)
}

pub fn measured(c: LogicalCircuit) -> LogicalCircuit {
    let n = c.width();
    let mut gates = c.gates().to_vec();
    gates.extend((0..n).map(Gate::measure));
    LogicalCircuit::new(c.name.clone(), n, gates).unwrap()
}

pub fn random_circuit(rng: &mut impl Rng, max_width: usize, max_gates: usize) -> LogicalCircuit {
    let n = rng.gen_range(1..=max_width);
    let len = rng.gen_range(0..=max_gates);
    let gates = (0..len)
        .map(|_| make_gate(rng.gen_range(0..UNITARY_KINDS.len()), rng.gen_range(0..n), rng.gen_range(0..n.max(2)), n))
        .collect();
    LogicalCircuit::new("random", n, gates).unwrap()
}

pub fn arb_pauli(width: usize, max_weight: usize) -> impl Strategy<Value = PauliProduct> {
    prop::collection::btree_map(0..width, 0..3usize, 1..=max_weight.min(width)).prop_map(|m| {
        PauliProduct::from_factors(m.into_iter().map(|(q, a)| (q, [Axis::X, Axis::Y, Axis::Z][a]))).unwrap()
    })
}

pub fn arb_angle() -> impl Strategy<Value = Angle> {
    prop_oneof![Just(Angle::CLIFFORD), Just(Angle::CLIFFORD_DG), Just(Angle::T), Just(Angle::T_DG)]
}

pub fn arb_op(width: usize, max_weight: usize) -> impl Strategy<Value = PbcOp> {
    prop_oneof![
        3 => (arb_pauli(width, max_weight), arb_angle()).prop_map(|(p, a)| PbcOp::rotation(p, a)),
        1 => (arb_pauli(width, max_weight), any::<bool>())
            .prop_map(|(p, s)| PbcOp::measurement(p, if s { Sign::Plus } else { Sign::Minus })),
    ]
}

/// Arbitrary PBC program, including measurements anywhere and a frame.
pub fn arb_program(max_width: usize, max_ops: usize) -> impl Strategy<Value = PbcCircuit> {
    (1..=max_width).prop_flat_map(move |n| {
        (prop::collection::vec(arb_op(n, n), 0..=max_ops), prop::option::of(arb_pauli(n, n)))
            .prop_map(move |(ops, frame)| PbcCircuit { width: n, ops, frame: frame.unwrap_or_default() })
    })
}
