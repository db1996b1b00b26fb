//! Line-oriented text form of a [`PbcCircuit`]:
//!
//! ```text
//! QUBITS 3
//! ROT -pi/8 Y0 X1
//! MEAS + Z0 Z2
//! FRAME X1
//! ```
//!
//! `#` starts a comment line. `FRAME` is optional and must come last.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Angle, Axis, PauliProduct, PbcCircuit, PbcOp, Sign};

const MAX_WIDTH: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbcParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { line: usize, qubit: usize, width: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> PbcParseError {
    PbcParseError::Syntax { line, message: message.into() }
}

fn parse_angle(tok: &str, line: usize) -> Result<Angle, PbcParseError> {
    Ok(match tok {
        "+pi/4" | "pi/4" => Angle::PiOver4(Sign::Plus),
        "-pi/4" => Angle::PiOver4(Sign::Minus),
        "+pi/8" | "pi/8" => Angle::PiOver8(Sign::Plus),
        "-pi/8" => Angle::PiOver8(Sign::Minus),
        _ => return Err(syntax(line, format!("bad angle `{tok}`"))),
    })
}

fn parse_product<'a>(
    toks: impl Iterator<Item = &'a str>,
    width: usize,
    line: usize,
) -> Result<PauliProduct, PbcParseError> {
    let mut factors = Vec::new();
    for tok in toks {
        let mut chars = tok.chars();
        let axis = chars
            .next()
            .and_then(Axis::from_letter)
            .ok_or_else(|| syntax(line, format!("bad Pauli factor `{tok}`")))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(line, format!("bad Pauli factor `{tok}`")));
        }
        let qubit: usize = digits.parse().map_err(|_| syntax(line, format!("bad qubit index in `{tok}`")))?;
        if qubit >= width {
            return Err(PbcParseError::QubitOutOfRange { line, qubit, width });
        }
        factors.push((qubit, axis));
    }
    if factors.is_empty() {
        return Err(syntax(line, "empty Pauli product"));
    }
    PauliProduct::from_factors(factors).ok_or_else(|| syntax(line, "qubit repeated in Pauli product"))
}

pub fn parse_pbc(text: &str) -> Result<PbcCircuit, PbcParseError> {
    let mut circuit: Option<PbcCircuit> = None;
    let mut frame_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().expect("non-empty line");
        if frame_seen {
            return Err(syntax(line, "nothing may follow FRAME"));
        }
        let Some(c) = circuit.as_mut() else {
            if keyword != "QUBITS" {
                return Err(syntax(line, "expected `QUBITS <n>` header"));
            }
            let n = toks.next().ok_or_else(|| syntax(line, "missing qubit count"))?;
            let width: usize = n.parse().map_err(|_| syntax(line, format!("bad qubit count `{n}`")))?;
            if width > MAX_WIDTH {
                return Err(syntax(line, format!("qubit count {width} exceeds {MAX_WIDTH}")));
            }
            if toks.next().is_some() {
                return Err(syntax(line, "trailing tokens after qubit count"));
            }
            circuit = Some(PbcCircuit::new(width));
            continue;
        };
        match keyword {
            "ROT" => {
                let angle = parse_angle(toks.next().ok_or_else(|| syntax(line, "missing angle"))?, line)?;
                let pauli = parse_product(toks, c.width, line)?;
                c.ops.push(PbcOp::rotation(pauli, angle));
            }
            "MEAS" => {
                let sign = match toks.next() {
                    Some("+") => Sign::Plus,
                    Some("-") => Sign::Minus,
                    other => return Err(syntax(line, format!("bad measurement sign {other:?}"))),
                };
                let pauli = parse_product(toks, c.width, line)?;
                c.ops.push(PbcOp::measurement(pauli, sign));
            }
            "FRAME" => {
                c.frame = parse_product(toks, c.width, line)?;
                frame_seen = true;
            }
            "QUBITS" => return Err(syntax(line, "duplicate QUBITS header")),
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    circuit.ok_or_else(|| syntax(1, "expected `QUBITS <n>` header"))
}

pub fn print_pbc(circuit: &PbcCircuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "QUBITS {}", circuit.width);
    for op in &circuit.ops {
        let _ = writeln!(out, "{op}");
    }
    if !circuit.frame.is_identity() {
        let _ = writeln!(out, "FRAME {}", circuit.frame);
    }
    out
}
