use std::fmt::Write as _;

use thiserror::Error;

use super::{CircuitError, Gate, GateKind, LogicalCircuit};

/// Registers wider than this are rejected before any allocation happens.
const MAX_WIDTH: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unsupported gate `{name}`")]
    UnsupportedGate { name: String, line: usize, col: usize },
    #[error("{line}:{col}: qubit index {index} out of range for register of size {size}")]
    QubitOutOfRange { index: usize, size: usize, line: usize, col: usize },
    #[error("{line}:{col}: {source}")]
    Invalid { line: usize, col: usize, source: CircuitError },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Real(String),
    Str(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> QasmError {
    QasmError::Syntax { line, col, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Token>, QasmError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let advance = |n: usize, i: &mut usize, line: &mut usize, col: &mut usize| {
            for _ in 0..n {
                if chars[*i] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
                *i += 1;
            }
        };
        if c.is_whitespace() {
            advance(1, &mut i, &mut line, &mut col);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(1, &mut i, &mut line, &mut col);
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance(2, &mut i, &mut line, &mut col);
            loop {
                if i >= chars.len() {
                    return Err(syntax(start_line, start_col, "unterminated block comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    advance(2, &mut i, &mut line, &mut col);
                    break;
                }
                advance(1, &mut i, &mut line, &mut col);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                advance(1, &mut i, &mut line, &mut col);
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            let mut real = false;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                real |= chars[i] == '.';
                s.push(chars[i]);
                advance(1, &mut i, &mut line, &mut col);
            }
            if real {
                Tok::Real(s)
            } else {
                Tok::Int(s)
            }
        } else if c == '"' {
            advance(1, &mut i, &mut line, &mut col);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(syntax(start_line, start_col, "unterminated string")),
                    Some('"') => {
                        advance(1, &mut i, &mut line, &mut col);
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(1, &mut i, &mut line, &mut col);
                    }
                }
            }
            Tok::Str(s)
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            advance(2, &mut i, &mut line, &mut col);
            Tok::Sym("->")
        } else {
            let sym = match c {
                ';' => ";",
                '[' => "[",
                ']' => "]",
                ',' => ",",
                '(' => "(",
                ')' => ")",
                '{' => "{",
                '}' => "}",
                '-' => "-",
                '+' => "+",
                '*' => "*",
                '/' => "/",
                _ => return Err(syntax(line, col, format!("unexpected character `{c}`"))),
            };
            advance(1, &mut i, &mut line, &mut col);
            Tok::Sym(sym)
        };
        tokens.push(Token { tok, line: start_line, col: start_col });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
    qreg: Option<(String, usize)>,
    cregs: Vec<(String, usize)>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.col))
    }

    fn next(&mut self) -> Result<Token, QasmError> {
        let (line, col) = self.eof;
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| syntax(line, col, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_sym(&mut self, sym: &'static str) -> Result<Token, QasmError> {
        let t = self.next()?;
        if t.tok == Tok::Sym(sym) {
            Ok(t)
        } else {
            Err(syntax(t.line, t.col, format!("expected `{sym}`, found {}", describe(&t.tok))))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), QasmError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            other => Err(syntax(t.line, t.col, format!("expected identifier, found {}", describe(other)))),
        }
    }

    fn expect_int(&mut self) -> Result<(usize, Token), QasmError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Int(s) => s
                .parse::<usize>()
                .map(|v| (v, t.clone()))
                .map_err(|_| syntax(t.line, t.col, "integer literal too large")),
            other => Err(syntax(t.line, t.col, format!("expected integer, found {}", describe(other)))),
        }
    }

    fn at_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == sym)
    }

    /// `name[index]` on the quantum register.
    fn qubit_arg(&mut self) -> Result<(usize, usize, usize), QasmError> {
        let (name, tok) = self.expect_ident()?;
        let (reg, size) = match &self.qreg {
            Some((reg, size)) => (reg.clone(), *size),
            None => return Err(syntax(tok.line, tok.col, "qubit used before `qreg` declaration")),
        };
        if name != reg {
            return Err(syntax(tok.line, tok.col, format!("unknown quantum register `{name}`")));
        }
        if !self.at_sym("[") {
            let (line, col) = self.here();
            return Err(syntax(line, col, "register broadcasting is not supported; expected `[`"));
        }
        self.expect_sym("[")?;
        let (index, itok) = self.expect_int()?;
        self.expect_sym("]")?;
        if index >= size {
            return Err(QasmError::QubitOutOfRange { index, size, line: itok.line, col: itok.col });
        }
        Ok((index, tok.line, tok.col))
    }

    fn clbit_arg(&mut self) -> Result<(), QasmError> {
        let (name, tok) = self.expect_ident()?;
        let size = match self.cregs.iter().find(|(n, _)| *n == name) {
            Some((_, size)) => *size,
            None => return Err(syntax(tok.line, tok.col, format!("unknown classical register `{name}`"))),
        };
        self.expect_sym("[")?;
        let (index, itok) = self.expect_int()?;
        self.expect_sym("]")?;
        if index >= size {
            return Err(syntax(itok.line, itok.col, format!("bit index {index} out of range for `{name}`")));
        }
        Ok(())
    }

    fn register_decl(&mut self) -> Result<(String, usize, Token), QasmError> {
        let (name, tok) = self.expect_ident()?;
        self.expect_sym("[")?;
        let (size, stok) = self.expect_int()?;
        self.expect_sym("]")?;
        self.expect_sym(";")?;
        if size == 0 || size > MAX_WIDTH {
            return Err(syntax(stok.line, stok.col, format!("register size {size} outside 1..={MAX_WIDTH}")));
        }
        Ok((name, size, tok))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(s) | Tok::Real(s) => format!("number `{s}`"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Sym(s) => format!("`{s}`"),
    }
}

/// Parses the OpenQASM 2.0 subset: a single `qreg`, any number of `creg`s,
/// the gates `h s sdg t tdg x y z cx`, terminal `measure`, and `barrier`
/// (ignored). The returned circuit is named `"qasm"`.
pub fn parse_qasm(text: &str) -> Result<LogicalCircuit, QasmError> {
    let tokens = tokenize(text)?;
    let eof = match tokens.last() {
        Some(t) => (t.line, t.col + 1),
        None => (1, 1),
    };
    let mut p = Parser { tokens, pos: 0, eof, qreg: None, cregs: Vec::new() };
    let mut gates = Vec::new();
    let mut positions = Vec::new();

    if matches!(p.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == "OPENQASM") {
        p.next()?;
        let t = p.next()?;
        match &t.tok {
            Tok::Real(v) if v == "2.0" => {}
            Tok::Real(v) | Tok::Int(v) => {
                return Err(syntax(t.line, t.col, format!("unsupported OpenQASM version {v}")))
            }
            other => return Err(syntax(t.line, t.col, format!("expected version, found {}", describe(other)))),
        }
        p.expect_sym(";")?;
    }

    while let Some(tok) = p.peek().cloned() {
        let name = match &tok.tok {
            Tok::Ident(s) => s.clone(),
            other => return Err(syntax(tok.line, tok.col, format!("expected statement, found {}", describe(other)))),
        };
        match name.as_str() {
            "include" => {
                p.next()?;
                let t = p.next()?;
                if !matches!(t.tok, Tok::Str(_)) {
                    return Err(syntax(t.line, t.col, "expected file name string after `include`"));
                }
                p.expect_sym(";")?;
            }
            "qreg" => {
                p.next()?;
                let (reg, size, t) = p.register_decl()?;
                if p.qreg.is_some() {
                    return Err(syntax(t.line, t.col, "only one `qreg` is supported"));
                }
                p.qreg = Some((reg, size));
            }
            "creg" => {
                p.next()?;
                let (reg, size, t) = p.register_decl()?;
                if p.cregs.iter().any(|(n, _)| *n == reg) {
                    return Err(syntax(t.line, t.col, format!("duplicate register `{reg}`")));
                }
                p.cregs.push((reg, size));
            }
            "barrier" => {
                p.next()?;
                loop {
                    p.qubit_arg()?;
                    if p.at_sym(",") {
                        p.next()?;
                    } else {
                        break;
                    }
                }
                p.expect_sym(";")?;
            }
            "measure" => {
                p.next()?;
                let (q, _, _) = p.qubit_arg()?;
                p.expect_sym("->")?;
                p.clbit_arg()?;
                p.expect_sym(";")?;
                gates.push(Gate::measure(q));
                positions.push((tok.line, tok.col));
            }
            "if" | "gate" | "opaque" | "reset" => {
                return Err(syntax(tok.line, tok.col, format!("`{name}` statements are not supported")));
            }
            _ => {
                let kind = match GateKind::from_mnemonic(&name) {
                    Some(kind) if kind != GateKind::MeasureZ => kind,
                    _ => return Err(QasmError::UnsupportedGate { name, line: tok.line, col: tok.col }),
                };
                p.next()?;
                if p.at_sym("(") {
                    return Err(QasmError::UnsupportedGate { name, line: tok.line, col: tok.col });
                }
                let mut qubits = vec![p.qubit_arg()?.0];
                while p.at_sym(",") {
                    p.next()?;
                    qubits.push(p.qubit_arg()?.0);
                }
                p.expect_sym(";")?;
                gates.push(Gate::new(kind, qubits));
                positions.push((tok.line, tok.col));
            }
        }
    }

    let width = match &p.qreg {
        Some((_, size)) => *size,
        None => return Err(syntax(eof.0, eof.1, "missing `qreg` declaration")),
    };
    LogicalCircuit::new("qasm", width, gates).map_err(|source| {
        let index = match &source {
            CircuitError::Arity { index, .. }
            | CircuitError::RepeatedQubit { index, .. }
            | CircuitError::QubitOutOfRange { index, .. }
            | CircuitError::MidCircuitMeasurement { index, .. } => *index,
        };
        let (line, col) = positions[index];
        QasmError::Invalid { line, col, source }
    })
}

/// Prints a circuit in the same subset [`parse_qasm`] accepts. Measurement
/// of `q[i]` always targets `c[i]`.
pub fn print_qasm(circuit: &LogicalCircuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.width());
    if circuit.gates().iter().any(|g| g.kind == GateKind::MeasureZ) {
        let _ = writeln!(out, "creg c[{}];", circuit.width());
    }
    for gate in circuit.gates() {
        match gate.kind {
            GateKind::MeasureZ => {
                let q = gate.qubits[0];
                let _ = writeln!(out, "measure q[{q}] -> c[{q}];");
            }
            kind => {
                let args: Vec<String> = gate.qubits.iter().map(|q| format!("q[{q}]")).collect();
                let _ = writeln!(out, "{} {};", kind.mnemonic(), args.join(","));
            }
        }
    }
    out
}
