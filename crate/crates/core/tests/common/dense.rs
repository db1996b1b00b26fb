//! Dense state-vector and unitary simulation for small test circuits.
//! Qubit 0 is the least significant bit of a basis index.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use hetec_core::circuit::{GateKind, LogicalCircuit};
use hetec_core::pbc::{Axis, PauliProduct, PbcCircuit, PbcOp, Sign};
use num_complex::Complex64 as C;

pub type Matrix = Vec<Vec<C>>;

fn zero() -> C {
    C::new(0.0, 0.0)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim).map(|r| (0..dim).map(|c| if r == c { C::new(1.0, 0.0) } else { zero() }).collect()).collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Action of a single-qubit Pauli on basis bit `bit`: (new bit, phase).
fn pauli_on_bit(axis: Axis, bit: bool) -> (bool, C) {
    match axis {
        Axis::X => (!bit, C::new(1.0, 0.0)),
        Axis::Y => (!bit, if bit { C::new(0.0, -1.0) } else { C::new(0.0, 1.0) }),
        Axis::Z => (bit, if bit { C::new(-1.0, 0.0) } else { C::new(1.0, 0.0) }),
    }
}

/// `P|b⟩ = phase·|b'⟩`
fn pauli_on_basis(p: &PauliProduct, b: usize) -> (usize, C) {
    let mut out = b;
    let mut phase = C::new(1.0, 0.0);
    for &(q, axis) in p.factors() {
        let (bit, ph) = pauli_on_bit(axis, b >> q & 1 == 1);
        out = if bit { out | 1 << q } else { out & !(1 << q) };
        phase *= ph;
    }
    (out, phase)
}

pub fn pauli_matrix(p: &PauliProduct, n: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = vec![vec![zero(); dim]; dim];
    for b in 0..dim {
        let (b2, ph) = pauli_on_basis(p, b);
        m[b2][b] = ph;
    }
    m
}

/// `exp(-iθP) = cos θ · I - i sin θ · P`
pub fn rotation_matrix(p: &PauliProduct, theta: f64, n: usize) -> Matrix {
    let dim = 1 << n;
    let pm = pauli_matrix(p, n);
    let (c, s) = (theta.cos(), theta.sin());
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|col| {
                    let id = if r == col { C::new(c, 0.0) } else { zero() };
                    id + C::new(0.0, -s) * pm[r][col]
                })
                .collect()
        })
        .collect()
}

fn single_qubit(kind: GateKind) -> [[C; 2]; 2] {
    let o = zero();
    let one = C::new(1.0, 0.0);
    let h = C::new(FRAC_1_SQRT_2, 0.0);
    let t = C::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    match kind {
        GateKind::H => [[h, h], [h, -h]],
        GateKind::S => [[one, o], [o, C::new(0.0, 1.0)]],
        GateKind::Sdg => [[one, o], [o, C::new(0.0, -1.0)]],
        GateKind::T => [[one, o], [o, t]],
        GateKind::Tdg => [[one, o], [o, t.conj()]],
        GateKind::X => [[o, one], [one, o]],
        GateKind::Y => [[o, C::new(0.0, -1.0)], [C::new(0.0, 1.0), o]],
        GateKind::Z => [[one, o], [o, -one]],
        GateKind::CX | GateKind::MeasureZ => unreachable!("not a single-qubit unitary"),
    }
}

pub fn gate_matrix(kind: GateKind, qubits: &[usize], n: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = vec![vec![zero(); dim]; dim];
    if kind == GateKind::CX {
        let (c, t) = (qubits[0], qubits[1]);
        for b in 0..dim {
            let out = if b >> c & 1 == 1 { b ^ 1 << t } else { b };
            m[out][b] = C::new(1.0, 0.0);
        }
        return m;
    }
    let u = single_qubit(kind);
    let q = qubits[0];
    for b in 0..dim {
        let bit = b >> q & 1;
        for out_bit in 0..2 {
            let out = (b & !(1 << q)) | out_bit << q;
            m[out][b] = u[out_bit][bit];
        }
    }
    m
}

/// Unitary of a measurement-free circuit.
pub fn circuit_unitary(c: &LogicalCircuit) -> Matrix {
    let mut u = identity(1 << c.width());
    for g in c.gates() {
        assert_ne!(g.kind, GateKind::MeasureZ, "circuit_unitary needs a unitary circuit");
        u = matmul(&gate_matrix(g.kind, &g.qubits, c.width()), &u);
    }
    u
}

/// Unitary of a measurement-free program, frame included.
pub fn pbc_unitary(c: &PbcCircuit) -> Matrix {
    let n = c.width;
    let mut u = identity(1 << n);
    for op in &c.ops {
        match op {
            PbcOp::Rotate(r) => u = matmul(&rotation_matrix(&r.pauli, r.angle.radians(), n), &u),
            PbcOp::Measure(_) => panic!("pbc_unitary needs a measurement-free program"),
        }
    }
    matmul(&pauli_matrix(&c.frame, n), &u)
}

/// Largest entrywise difference after removing the global phase.
pub fn phase_distance(a: &Matrix, b: &Matrix) -> f64 {
    let (mut pivot, mut best) = ((0, 0), -1.0);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.norm() > best {
                best = x.norm();
                pivot = (i, j);
            }
        }
    }
    let (i, j) = pivot;
    if b[i][j].norm() < 1e-12 {
        return f64::INFINITY;
    }
    let phase = b[i][j] / a[i][j];
    let phase = phase / phase.norm();
    let mut worst: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            worst = worst.max((x * phase - y).norm());
        }
    }
    worst
}

pub type State = Vec<C>;

fn apply(m: &Matrix, s: &State) -> State {
    m.iter().map(|row| row.iter().zip(s).map(|(a, b)| a * b).sum()).collect()
}

fn norm_sq(s: &State) -> f64 {
    s.iter().map(|x| x.norm_sqr()).sum()
}

/// `(I + λP)/2 · s` for eigenvalue `λ = ±1`.
fn project(p: &PauliProduct, eigen: f64, s: &State) -> State {
    let mut out: State = s.iter().map(|x| x * 0.5).collect();
    for (b, amp) in s.iter().enumerate() {
        let (b2, ph) = pauli_on_basis(p, b);
        out[b2] += amp * ph * (0.5 * eigen);
    }
    out
}

/// Joint distribution of the measurement outcomes, in program order,
/// starting from |0…0⟩. Outcome `true` means eigenvalue -1.
pub type Distribution = BTreeMap<Vec<bool>, f64>;

fn branch_pbc(ops: &[PbcOp], n: usize, state: State, outcomes: Vec<bool>, out: &mut Distribution) {
    let prob = norm_sq(&state);
    if prob < 1e-14 {
        return;
    }
    let Some((first, rest)) = ops.split_first() else {
        *out.entry(outcomes).or_default() += prob;
        return;
    };
    match first {
        PbcOp::Rotate(r) => {
            let next = apply(&rotation_matrix(&r.pauli, r.angle.radians(), n), &state);
            branch_pbc(rest, n, next, outcomes, out);
        }
        PbcOp::Measure(m) => {
            let sign = if m.sign == Sign::Plus { 1.0 } else { -1.0 };
            for bit in [false, true] {
                let eigen = if bit { -1.0 } else { 1.0 };
                let next = project(&m.pauli, eigen * sign, &state);
                let mut o = outcomes.clone();
                o.push(bit);
                branch_pbc(rest, n, next, o, out);
            }
        }
    }
}

pub fn pbc_distribution(c: &PbcCircuit) -> Distribution {
    let mut state = vec![zero(); 1 << c.width];
    state[0] = C::new(1.0, 0.0);
    let mut out = Distribution::new();
    branch_pbc(&c.ops, c.width, state, Vec::new(), &mut out);
    out
}

pub fn circuit_distribution(c: &LogicalCircuit) -> Distribution {
    let n = c.width();
    let mut branches: Vec<(State, Vec<bool>)> = {
        let mut s = vec![zero(); 1 << n];
        s[0] = C::new(1.0, 0.0);
        vec![(s, Vec::new())]
    };
    for g in c.gates() {
        if g.kind == GateKind::MeasureZ {
            let z = PauliProduct::single(g.qubits[0], Axis::Z);
            branches = branches
                .into_iter()
                .flat_map(|(s, o)| {
                    [false, true].into_iter().filter_map({
                        let z = z.clone();
                        move |bit| {
                            let next = project(&z, if bit { -1.0 } else { 1.0 }, &s);
                            let mut o = o.clone();
                            o.push(bit);
                            (norm_sq(&next) > 1e-14).then_some((next, o))
                        }
                    })
                })
                .collect();
        } else {
            let m = gate_matrix(g.kind, &g.qubits, n);
            for (s, _) in &mut branches {
                *s = apply(&m, s);
            }
        }
    }
    let mut out = Distribution::new();
    for (s, o) in branches {
        *out.entry(o).or_default() += norm_sq(&s);
    }
    out
}

/// Largest probability difference over all outcome strings.
pub fn distribution_distance(a: &Distribution, b: &Distribution) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}
