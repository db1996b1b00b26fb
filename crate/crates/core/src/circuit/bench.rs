use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Gate, LogicalCircuit};

/// Default number of T syllables used in place of each arbitrary-angle `Rz`.
pub const DEFAULT_RZ_WORD_LEN: usize = 30;

/// Coupling and field angle for the single Trotter layer of the Ising
/// benchmark (`J = h = 1`, `dt = 0.1`).
const ISING_ANGLE: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkKind {
    Adder,
    Qft,
    Ising,
}

impl BenchmarkKind {
    fn tag(self) -> u64 {
        match self {
            BenchmarkKind::Adder => 1,
            BenchmarkKind::Qft => 2,
            BenchmarkKind::Ising => 3,
        }
    }

    fn min_width(self) -> usize {
        match self {
            BenchmarkKind::Adder => 4,
            BenchmarkKind::Qft | BenchmarkKind::Ising => 2,
        }
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchmarkKind::Adder => "adder",
            BenchmarkKind::Qft => "qft",
            BenchmarkKind::Ising => "ising",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchmarkError {
    #[error("unsupported benchmark kind `{0}` (expected adder, qft or ising)")]
    UnsupportedKind(String),
    #[error("{kind} needs at least {min} qubits, got {n}")]
    TooSmall { kind: BenchmarkKind, n: usize, min: usize },
    #[error("rz word length must be at least 1")]
    EmptyWord,
}

impl FromStr for BenchmarkKind {
    type Err = BenchmarkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "adder" => Ok(BenchmarkKind::Adder),
            "qft" => Ok(BenchmarkKind::Qft),
            "ising" => Ok(BenchmarkKind::Ising),
            _ => Err(BenchmarkError::UnsupportedKind(s.to_string())),
        }
    }
}

/// A phase rotation `diag(1, e^{iθ})` to be emitted on one qubit.
#[derive(Debug, Clone, Copy)]
enum Phase {
    /// `θ = k·π/4`, realised exactly with S/T/Z gates.
    Eighths(i64),
    /// Anything else, replaced by a pseudo-random H/S/T word.
    Arbitrary,
}

impl Phase {
    fn of(theta: f64) -> Phase {
        let k = theta / (PI / 4.0);
        if (k - k.round()).abs() < 1e-12 {
            Phase::Eighths(k.round() as i64)
        } else {
            Phase::Arbitrary
        }
    }
}

struct Builder {
    kind: BenchmarkKind,
    word_len: usize,
    gates: Vec<Gate>,
}

impl Builder {
    fn phase(&mut self, q: usize, theta: f64) {
        match Phase::of(theta) {
            Phase::Eighths(k) => {
                let k = k.rem_euclid(8);
                let seq: &[fn(usize) -> Gate] = match k {
                    0 => &[],
                    1 => &[Gate::t],
                    2 => &[Gate::s],
                    3 => &[Gate::s, Gate::t],
                    4 => &[Gate::s, Gate::s],
                    5 => &[Gate::s, Gate::s, Gate::t],
                    6 => &[Gate::sdg],
                    _ => &[Gate::tdg],
                };
                self.gates.extend(seq.iter().map(|g| g(q)));
            }
            Phase::Arbitrary => self.word(q),
        }
    }

    /// `word_len` syllables, each `H T` or `S H T`, so every word carries
    /// exactly `word_len` T gates. Seeded by benchmark and gate position.
    fn word(&mut self, q: usize) {
        let seed = (self.kind.tag() << 48) ^ self.gates.len() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..self.word_len {
            if rng.gen_bool(0.5) {
                self.gates.push(Gate::s(q));
            }
            self.gates.push(Gate::h(q));
            self.gates.push(Gate::t(q));
        }
    }

    fn cx(&mut self, c: usize, t: usize) {
        self.gates.push(Gate::cx(c, t));
    }

    fn h(&mut self, q: usize) {
        self.gates.push(Gate::h(q));
    }

    fn ccx(&mut self, a: usize, b: usize, c: usize) {
        let g = &mut self.gates;
        g.extend([
            Gate::h(c),
            Gate::cx(b, c),
            Gate::tdg(c),
            Gate::cx(a, c),
            Gate::t(c),
            Gate::cx(b, c),
            Gate::tdg(c),
            Gate::cx(a, c),
            Gate::t(b),
            Gate::t(c),
            Gate::h(c),
            Gate::cx(a, b),
            Gate::t(a),
            Gate::tdg(b),
            Gate::cx(a, b),
        ]);
    }

    fn controlled_phase(&mut self, c: usize, t: usize, theta: f64) {
        self.phase(c, theta / 2.0);
        self.cx(c, t);
        self.phase(t, -theta / 2.0);
        self.cx(c, t);
        self.phase(t, theta / 2.0);
    }
}

/// Generates a benchmark circuit ending with a Z measurement on every qubit.
///
/// * `adder`: Cuccaro ripple-carry adder on `k = (n-2)/2` bit pairs plus
///   carry-in and carry-out; Toffolis use the exact 7-T decomposition, so
///   the T-count is `14k` whatever `rz_word_len` is.
/// * `qft`: swap-free QFT; each controlled phase is
///   `P(θ/2)_c · CX · P(-θ/2)_t · CX · P(θ/2)_t`.
/// * `ising`: one Trotter layer of the transverse-field chain: `n-1`
///   blocks `CX · Rz · CX` followed by `H · Rz · H` on every qubit.
pub fn gen_benchmark(kind: BenchmarkKind, n: usize, rz_word_len: usize) -> Result<LogicalCircuit, BenchmarkError> {
    if n < kind.min_width() {
        return Err(BenchmarkError::TooSmall { kind, n, min: kind.min_width() });
    }
    if rz_word_len == 0 {
        return Err(BenchmarkError::EmptyWord);
    }
    let mut b = Builder { kind, word_len: rz_word_len, gates: Vec::new() };
    match kind {
        BenchmarkKind::Adder => {
            // c0, b0, a0, b1, a1, ..., carry-out
            let k = (n - 2) / 2;
            let bq = |i: usize| 1 + 2 * i;
            let aq = |i: usize| 2 + 2 * i;
            let z = 2 * k + 1;
            let maj = |b: &mut Builder, x: usize, y: usize, w: usize| {
                b.cx(w, y);
                b.cx(w, x);
                b.ccx(x, y, w);
            };
            let uma = |b: &mut Builder, x: usize, y: usize, w: usize| {
                b.ccx(x, y, w);
                b.cx(w, x);
                b.cx(x, y);
            };
            maj(&mut b, 0, bq(0), aq(0));
            for i in 1..k {
                maj(&mut b, aq(i - 1), bq(i), aq(i));
            }
            b.cx(aq(k - 1), z);
            for i in (1..k).rev() {
                uma(&mut b, aq(i - 1), bq(i), aq(i));
            }
            uma(&mut b, 0, bq(0), aq(0));
        }
        BenchmarkKind::Qft => {
            for i in 0..n {
                b.h(i);
                for j in (i + 1)..n {
                    b.controlled_phase(j, i, PI / f64::powi(2.0, (j - i) as i32));
                }
            }
        }
        BenchmarkKind::Ising => {
            for i in 0..n - 1 {
                b.cx(i, i + 1);
                b.phase(i + 1, ISING_ANGLE);
                b.cx(i, i + 1);
            }
            for i in 0..n {
                b.h(i);
                b.phase(i, ISING_ANGLE);
                b.h(i);
            }
        }
    }
    for q in 0..n {
        b.gates.push(Gate::measure(q));
    }
    Ok(LogicalCircuit::new(format!("{kind}_{n}"), n, b.gates).expect("generated benchmark is well formed"))
}
