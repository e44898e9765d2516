//! Sequential Pauli-based computation: a Clifford prefix followed by
//! multi-Pauli rotations in angle units of π/4.

use serde::{Deserialize, Serialize};

use crate::circuit::{canonical_angle, decompose_rotation, Gate, GateCircuit};
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{Pauli, PauliAxis, PauliWord};
use crate::tableau::CliffordTableau;

/// `R_axis(k·π/4) = exp(-i·k·π/8·axis)` with a positive axis and `k` in `(-4, 4]`, `k ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rotation {
    axis: PauliAxis,
    k: i32,
}

impl Rotation {
    /// Folds a negative axis sign into the angle; `None` when the angle is a multiple of 2π.
    pub fn new(axis: &PauliAxis, k: i32) -> Option<Rotation> {
        let k = canonical_angle(axis.is_negative(), k);
        (k != 0).then(|| Rotation { axis: axis.abs(), k })
    }

    /// `R_axis(π/4)` on a signed axis.
    pub fn pi4(axis: &PauliAxis) -> Rotation {
        Rotation::new(axis, 1).expect("k = ±1 is never dropped")
    }

    /// `R_axis(-π/4)`, the inverse of [`Rotation::pi4`].
    pub fn pi4_inverse(axis: &PauliAxis) -> Rotation {
        Rotation::new(axis, -1).expect("k = ±1 is never dropped")
    }

    pub fn axis(&self) -> &PauliAxis {
        &self.axis
    }

    pub fn word(&self) -> &PauliWord {
        self.axis.word()
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn num_qubits(&self) -> usize {
        self.axis.num_qubits()
    }

    pub fn is_non_clifford(&self) -> bool {
        self.k % 2 != 0
    }

    /// For `k = ±1`, the axis `P` with this rotation equal to `R_P(+π/4)`.
    pub fn signed_axis(&self) -> Option<PauliAxis> {
        match self.k {
            1 => Some(self.axis.clone()),
            -1 => Some(-&self.axis),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Rotation {
        Rotation::new(&self.axis, -self.k).expect("negation keeps k nonzero")
    }

    pub fn commutes_with(&self, other: &Rotation) -> bool {
        self.axis.commutes_with(&other.axis)
    }

    /// Angle in radians.
    pub fn angle(&self) -> f64 {
        self.k as f64 * std::f64::consts::FRAC_PI_4
    }
}

/// Clifford prefix (applied first) followed by the rotations in time order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbcCircuit {
    n: usize,
    prefix: CliffordTableau,
    rotations: Vec<Rotation>,
}

impl PbcCircuit {
    pub fn new(prefix: CliffordTableau, rotations: Vec<Rotation>) -> Result<Self> {
        let n = prefix.num_qubits();
        for r in &rotations {
            check_qubits(n, r.num_qubits())?;
        }
        Ok(PbcCircuit { n, prefix, rotations })
    }

    pub fn from_rotations(n: usize, rotations: Vec<Rotation>) -> Result<Self> {
        Self::new(CliffordTableau::identity(n), rotations)
    }

    /// The single rotation `R_{Z…Z}(π/4)`: T-count one, already optimal.
    pub fn default_input(n: usize) -> Self {
        let mut w = PauliWord::identity(n);
        for q in 0..n {
            w.set(q, Pauli::Z);
        }
        let axis = PauliAxis::positive(w).expect("n ≥ 1");
        Self::from_rotations(n, vec![Rotation::pi4(&axis)]).unwrap()
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn prefix(&self) -> &CliffordTableau {
        &self.prefix
    }

    pub fn rotations(&self) -> &[Rotation] {
        &self.rotations
    }

    pub(crate) fn rotations_mut(&mut self) -> &mut Vec<Rotation> {
        &mut self.rotations
    }

    pub fn into_parts(self) -> (CliffordTableau, Vec<Rotation>) {
        (self.prefix, self.rotations)
    }

    pub fn t_count(&self) -> usize {
        t_count_pbc(self)
    }

    pub fn to_json(&self) -> String {
        let doc = PbcDocument {
            n: self.n,
            prefix: self.prefix.images().iter().map(|a| a.to_string()).collect(),
            rotations: self
                .rotations
                .iter()
                .map(|r| RotationEntry {
                    axis: r.axis.to_string(),
                    k: r.k,
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("document is plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PbcDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let images = doc
            .prefix
            .iter()
            .map(|s| s.parse::<PauliAxis>())
            .collect::<Result<Vec<_>>>()?;
        let prefix = if images.is_empty() {
            CliffordTableau::identity(doc.n)
        } else {
            CliffordTableau::from_images(images)?
        };
        if prefix.num_qubits() != doc.n {
            return Err(Error::Format(format!(
                "prefix describes {} qubits but n = {}",
                prefix.num_qubits(),
                doc.n
            )));
        }
        let mut rotations = Vec::new();
        for entry in &doc.rotations {
            let axis: PauliAxis = entry.axis.parse()?;
            if let Some(r) = Rotation::new(&axis, entry.k) {
                rotations.push(r);
            }
        }
        Self::new(prefix, rotations)
    }
}

#[derive(Serialize, Deserialize)]
struct PbcDocument {
    n: usize,
    prefix: Vec<String>,
    rotations: Vec<RotationEntry>,
}

#[derive(Serialize, Deserialize)]
struct RotationEntry {
    axis: String,
    k: i32,
}

/// Push every T gate to the end of the circuit.
///
/// The `i`-th T on qubit `q` becomes a rotation about `D Z_q D†`, where `D`
/// is the Clifford part occurring after it.
pub fn gates_to_pbc(c: &GateCircuit) -> PbcCircuit {
    let n = c.num_qubits();
    let mut prefix = CliffordTableau::identity(n);
    for g in c.gates().iter().filter(|g| g.is_clifford()) {
        prefix.apply(g).expect("circuit gates are validated");
    }

    let mut suffix = CliffordTableau::identity(n);
    let mut rotations = Vec::new();
    for g in c.gates().iter().rev() {
        match *g {
            Gate::T(q) | Gate::Tdg(q) => {
                let z = PauliAxis::positive(PauliWord::single(n, q, Pauli::Z)).unwrap();
                let axis = suffix.conjugate_unchecked(&z);
                let k = if matches!(g, Gate::T(_)) { 1 } else { -1 };
                rotations.push(Rotation::new(&axis, k).unwrap());
            }
            _ => {
                let single = CliffordTableau::identity(n).then(g).expect("validated gate");
                suffix = single.compose(&suffix).unwrap();
            }
        }
    }
    rotations.reverse();
    PbcCircuit { n, prefix, rotations }
}

/// Synthesized prefix followed by each rotation's gate decomposition.
pub fn pbc_to_gates(p: &PbcCircuit) -> GateCircuit {
    let mut out = p.prefix.synthesize();
    for r in &p.rotations {
        let block = decompose_rotation(&r.axis, r.k).expect("stored rotations are nonzero");
        out.extend(&block).unwrap();
    }
    out
}

/// Number of rotations with odd `k`.
pub fn t_count_pbc(p: &PbcCircuit) -> usize {
    p.rotations.iter().filter(|r| r.is_non_clifford()).count()
}

/// Partition rotation indices into T layers.
///
/// Each rotation moves left past every layer whose members all commute with
/// it and joins the layer right after the first one that blocks it.
pub fn t_layers(p: &PbcCircuit) -> Vec<Vec<usize>> {
    layers_of(&p.rotations)
}

pub(crate) fn layers_of(rotations: &[Rotation]) -> Vec<Vec<usize>> {
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for (i, r) in rotations.iter().enumerate() {
        let blocked = layers
            .iter()
            .rposition(|layer| layer.iter().any(|&j| !rotations[j].commutes_with(r)));
        let target = blocked.map_or(0, |b| b + 1);
        if target == layers.len() {
            layers.push(vec![i]);
        } else {
            layers[target].push(i);
        }
    }
    layers
}
