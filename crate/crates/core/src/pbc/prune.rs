use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{commute_past, PauliRotation, PbcCircuit, PbcOp};

/// Cap on the weight of operators created while commuting Cliffords.
///
/// Serialized as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightRepr", into = "WeightRepr")]
pub enum MaxWeight {
    Limited(usize),
    Unlimited,
}

impl MaxWeight {
    pub fn allows(self, weight: usize) -> bool {
        match self {
            MaxWeight::Limited(w) => weight <= w,
            MaxWeight::Unlimited => true,
        }
    }
}

impl From<Option<usize>> for MaxWeight {
    fn from(w: Option<usize>) -> Self {
        w.map_or(MaxWeight::Unlimited, MaxWeight::Limited)
    }
}

impl fmt::Display for MaxWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxWeight::Limited(w) => write!(f, "{w}"),
            MaxWeight::Unlimited => f.write_str("inf"),
        }
    }
}

impl FromStr for MaxWeight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "unlimited" => Ok(MaxWeight::Unlimited),
            n => match n.parse::<usize>() {
                Ok(0) => Err("maximum weight must be at least 1".to_string()),
                Ok(w) => Ok(MaxWeight::Limited(w)),
                Err(_) => Err(format!("expected a positive integer or `inf`, got `{s}`")),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightRepr {
    Number(usize),
    Text(String),
}

impl TryFrom<WeightRepr> for MaxWeight {
    type Error = String;

    fn try_from(r: WeightRepr) -> Result<Self, Self::Error> {
        match r {
            WeightRepr::Number(n) => n.to_string().parse(),
            WeightRepr::Text(s) => s.parse(),
        }
    }
}

impl From<MaxWeight> for WeightRepr {
    fn from(w: MaxWeight) -> Self {
        match w {
            MaxWeight::Limited(n) => WeightRepr::Number(n),
            MaxWeight::Unlimited => WeightRepr::Text("inf".to_string()),
        }
    }
}

enum Outcome {
    /// Stopped in front of `ops[at]` (or at the end when `at == len`).
    Parked { at: usize, moved_past_any: bool },
    /// Met a Clifford on the same axis at `ops[at]`.
    Merge { at: usize },
}

/// Commutes Clifford rotations towards the end of the program.
///
/// Cliffords are taken right to left. Each one walks right through
/// non-Clifford rotations and measurements, transforming any operator it
/// anticommutes with. A step that would create an operator heavier than
/// `max_weight` is refused and the Clifford stays put. A Clifford only
/// crosses another Clifford when the two commute; if they share an axis
/// the pair merges into the identity or a Pauli for the frame. A Clifford
/// may cross an anticommuting measurement only if all its qubits are
/// measured, and one that walks off the end acting only on measured qubits
/// is absorbed. Passes repeat until nothing moves.
pub fn prune(circuit: &PbcCircuit, max_weight: MaxWeight) -> PbcCircuit {
    let mut out = circuit.clone();
    let measured = circuit.measured_qubits();
    loop {
        let mut changed = false;
        let mut i = out.ops.len();
        while i > 0 {
            i -= 1;
            if i >= out.ops.len() || !out.ops[i].is_clifford_rotation() {
                continue;
            }
            let clifford = match out.ops.remove(i) {
                PbcOp::Rotate(r) => r,
                PbcOp::Measure(_) => unreachable!(),
            };
            let fully_measured = clifford.pauli.qubits().all(|q| measured[q]);
            match walk(&mut out.ops, i, &clifford, fully_measured, max_weight) {
                Outcome::Parked { at, moved_past_any } => {
                    changed |= moved_past_any;
                    if at == out.ops.len() && fully_measured {
                        changed = true;
                    } else if moved_past_any {
                        out.ops.insert(at, PbcOp::Rotate(clifford));
                    } else {
                        // only hopped over commuting Cliffords; keep the order
                        out.ops.insert(i, PbcOp::Rotate(clifford));
                    }
                }
                Outcome::Merge { at } => {
                    changed = true;
                    let other = match out.ops.remove(at) {
                        PbcOp::Rotate(r) => r,
                        PbcOp::Measure(_) => unreachable!(),
                    };
                    if other.angle.sign() == clifford.angle.sign() {
                        // P(π/4)·P(π/4) = P(π/2) ∝ P
                        out.push_pauli_to_frame(at, &clifford.pauli);
                    }
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

fn walk(ops: &mut [PbcOp], from: usize, clifford: &PauliRotation, fully_measured: bool, cap: MaxWeight) -> Outcome {
    let mut moved_past_any = false;
    let mut j = from;
    while j < ops.len() {
        let next = &ops[j];
        let commutes = clifford.pauli.commutes(next.pauli());
        match next {
            PbcOp::Rotate(r) if r.is_clifford() => {
                if r.pauli == clifford.pauli {
                    return Outcome::Merge { at: j };
                }
                if !commutes {
                    break;
                }
            }
            _ if commutes => moved_past_any = true,
            _ => {
                if next.is_measurement() && !fully_measured {
                    break;
                }
                let moved = commute_past(clifford, next);
                if !cap.allows(moved.pauli().weight()) {
                    break;
                }
                ops[j] = moved;
                moved_past_any = true;
            }
        }
        j += 1;
    }
    Outcome::Parked { at: j, moved_past_any }
}
