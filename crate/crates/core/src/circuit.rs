//! Gate-level Clifford+T circuits, their text formats, and rotation decomposition.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliAxis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cx(usize, usize),
    T(usize),
    Tdg(usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
            Gate::Cx(..) => "cx",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cx(c, t) => vec![c, t],
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::T(q)
            | Gate::Tdg(q) => vec![q],
        }
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            g => g,
        }
    }

    /// Build from a lowercase QASM name and operand list.
    pub fn from_name(name: &str, qubits: &[usize]) -> Option<Gate> {
        let one = |f: fn(usize) -> Gate| match qubits {
            [q] => Some(f(*q)),
            _ => None,
        };
        match name {
            "h" => one(Gate::H),
            "s" => one(Gate::S),
            "sdg" => one(Gate::Sdg),
            "x" => one(Gate::X),
            "y" => one(Gate::Y),
            "z" => one(Gate::Z),
            "t" => one(Gate::T),
            "tdg" => one(Gate::Tdg),
            "cx" => match qubits {
                [c, t] => Some(Gate::Cx(*c, *t)),
                _ => None,
            },
            _ => None,
        }
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, n });
            }
        }
        if let Gate::Cx(c, t) = *self {
            if c == t {
                return Err(Error::DuplicateOperand(c));
            }
        }
        Ok(())
    }
}

/// A time-ordered gate list on `n` qubits; index 0 is applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(n: usize) -> Self {
        GateCircuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
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

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, other: &GateCircuit) -> Result<()> {
        crate::error::check_qubits(self.n, other.n)?;
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// The inverse circuit: reversed order, each gate inverted.
    pub fn inverse(&self) -> GateCircuit {
        GateCircuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn t_count(&self) -> usize {
        t_count(self)
    }
}

/// Number of `t` plus `tdg` gates.
pub fn t_count(c: &GateCircuit) -> usize {
    c.gates.iter().filter(|g| !g.is_clifford()).count()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Split `name[idx]` into its parts.
fn parse_indexed(s: &str, line: usize) -> Result<(&str, usize)> {
    let s = s.trim();
    let open = s
        .find('[')
        .ok_or_else(|| parse_err(line, format!("expected `reg[index]`, found `{s}`")))?;
    let close = s
        .strip_suffix(']')
        .ok_or_else(|| parse_err(line, format!("missing `]` in `{s}`")))?;
    let name = s[..open].trim();
    let idx = close[open + 1..]
        .trim()
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad index in `{s}`")))?;
    if name.is_empty() {
        return Err(parse_err(line, format!("missing register name in `{s}`")));
    }
    Ok((name, idx))
}

/// Parse the supported OpenQASM 2.0 subset.
pub fn parse_qasm(text: &str) -> Result<GateCircuit> {
    // Collect `;`-terminated statements with the line each one starts on.
    let mut statements = Vec::new();
    let mut pending = String::new();
    let mut start_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let code = raw.split("//").next().unwrap_or("");
        for piece in code.split_inclusive(';') {
            if pending.trim().is_empty() {
                start_line = line_no;
            }
            if let Some(stmt) = piece.strip_suffix(';') {
                pending.push_str(stmt);
                statements.push((start_line, pending.trim().to_string()));
                pending.clear();
            } else {
                pending.push_str(piece);
                pending.push(' ');
            }
        }
    }
    if !pending.trim().is_empty() {
        return Err(parse_err(start_line, "statement is missing its `;`"));
    }

    let mut iter = statements.into_iter().peekable();
    match iter.next() {
        Some((_, s)) if s.split_whitespace().collect::<Vec<_>>() == ["OPENQASM", "2.0"] => {}
        Some((line, s)) => return Err(parse_err(line, format!("expected `OPENQASM 2.0;`, found `{s}`"))),
        None => return Err(parse_err(1, "empty input")),
    }
    if matches!(iter.peek(), Some((_, s)) if s.starts_with("include")) {
        iter.next();
    }
    let (reg, n) = match iter.next() {
        Some((line, s)) if s.starts_with("qreg") => {
            let (name, size) = parse_indexed(&s["qreg".len()..], line)?;
            (name.to_string(), size)
        }
        Some((line, _)) => return Err(parse_err(line, "missing qreg declaration")),
        None => return Err(parse_err(1, "missing qreg declaration")),
    };

    let mut circuit = GateCircuit::new(n);
    for (line, s) in iter {
        let (name, args) = match s.find(char::is_whitespace) {
            Some(pos) => (&s[..pos], s[pos..].trim()),
            None => (s.as_str(), ""),
        };
        if name == "qreg" {
            return Err(parse_err(line, "only a single qreg is supported"));
        }
        let mut qubits = Vec::new();
        for arg in args.split(',') {
            let (r, idx) = parse_indexed(arg, line)?;
            if r != reg {
                return Err(parse_err(line, format!("unknown register `{r}`")));
            }
            qubits.push(idx);
        }
        let gate = Gate::from_name(name, &qubits).ok_or_else(|| {
            if ["h", "s", "sdg", "x", "y", "z", "t", "tdg", "cx"].contains(&name) {
                parse_err(line, format!("wrong operand count for `{name}`"))
            } else {
                Error::UnsupportedGate {
                    line,
                    name: name.to_string(),
                }
            }
        })?;
        circuit.push(gate).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(circuit)
}

/// Canonical OpenQASM 2.0 text, one statement per line.
pub fn emit_qasm(c: &GateCircuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", c.n).unwrap();
    for g in &c.gates {
        match *g {
            Gate::Cx(a, b) => writeln!(out, "cx q[{a}],q[{b}];").unwrap(),
            _ => writeln!(out, "{} q[{}];", g.name(), g.qubits()[0]).unwrap(),
        }
    }
    out
}

/// The `.qc` reversible-benchmark dialect.
pub fn emit_qc(c: &GateCircuit) -> String {
    let vars: Vec<String> = (0..c.n).map(|q| format!("q{q}")).collect();
    let vars = vars.join(" ");
    let mut out = format!(".v {vars}\n.i {vars}\n.o {vars}\n\nBEGIN\n");
    for g in &c.gates {
        let token = match g {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "S*",
            Gate::T(_) => "T",
            Gate::Tdg(_) => "T*",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Cx(..) => "tof",
        };
        let operands: Vec<String> = g.qubits().iter().map(|q| format!("q{q}")).collect();
        writeln!(out, "{token} {}", operands.join(" ")).unwrap();
    }
    out.push_str("END\n");
    out
}

/// Fold the axis sign into `k` and reduce it to `(-4, 4]`.
pub(crate) fn canonical_angle(axis_negative: bool, k: i32) -> i32 {
    let k = if axis_negative { -k } else { k };
    let r = k.rem_euclid(8);
    if r > 4 {
        r - 8
    } else {
        r
    }
}

/// Gates implementing `R_axis(k·π/4)` up to global phase.
///
/// Basis change into Z on every support qubit, a CNOT chain collecting the
/// parity onto the highest support qubit, a single central Z-rotation, and
/// the mirror image. Odd `k` costs exactly one T gate.
pub fn decompose_rotation(axis: &PauliAxis, k: i32) -> Result<GateCircuit> {
    let k = canonical_angle(axis.is_negative(), k);
    if k == 0 {
        return Err(Error::Precondition("rotation angle is a multiple of 2π".into()));
    }
    let n = axis.num_qubits();
    let support = axis.word().support();
    let target = *support.last().ok_or(Error::IdentityAxis)?;

    let mut basis_in = Vec::new();
    for &q in &support {
        match axis.word().get(q) {
            Pauli::X => basis_in.push(Gate::H(q)),
            Pauli::Y => basis_in.extend([Gate::Sdg(q), Gate::H(q)]),
            _ => {}
        }
    }
    let ladder: Vec<Gate> = support.windows(2).map(|w| Gate::Cx(w[0], w[1])).collect();
    let central: Vec<Gate> = match k {
        1 => vec![Gate::T(target)],
        -1 => vec![Gate::Tdg(target)],
        2 => vec![Gate::S(target)],
        -2 => vec![Gate::Sdg(target)],
        3 => vec![Gate::Z(target), Gate::Tdg(target)],
        -3 => vec![Gate::Z(target), Gate::T(target)],
        4 => vec![Gate::Z(target)],
        _ => unreachable!("angle index reduced to (-4, 4]"),
    };

    let mut gates = basis_in.clone();
    gates.extend(&ladder);
    gates.extend(central);
    gates.extend(ladder.iter().rev());
    gates.extend(basis_in.iter().rev().map(Gate::inverse));
    GateCircuit::from_gates(n, gates)
}
