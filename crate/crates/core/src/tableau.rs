//! Clifford unitaries as the signed images of the X and Z generators.

use std::fmt;

use crate::circuit::{Gate, GateCircuit};
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{Pauli, PauliAxis, PauliWord, PhasedPauli};

/// Row `q` holds `C X_q C†`, row `n + q` holds `C Z_q C†`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    rows: Vec<PauliAxis>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        let rows = [Pauli::X, Pauli::Z]
            .iter()
            .flat_map(|&p| (0..n).map(move |q| PauliAxis::positive(PauliWord::single(n, q, p)).unwrap()))
            .collect();
        CliffordTableau { n, rows }
    }

    /// Build from the `2n` generator images; rejects non-symplectic input.
    pub fn from_images(images: Vec<PauliAxis>) -> Result<Self> {
        if !images.len().is_multiple_of(2) {
            return Err(Error::Format("a tableau needs an even number of rows".into()));
        }
        let n = images.len() / 2;
        for row in &images {
            check_qubits(n, row.num_qubits())?;
        }
        let t = CliffordTableau { n, rows: images };
        if !t.is_symplectic() {
            return Err(Error::Format("generator images violate the symplectic condition".into()));
        }
        Ok(t)
    }

    pub fn from_circuit(c: &GateCircuit) -> Result<Self> {
        let mut t = Self::identity(c.num_qubits());
        for g in c.gates() {
            t.apply(g)?;
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, q: usize) -> &PauliAxis {
        &self.rows[q]
    }

    pub fn z_image(&self, q: usize) -> &PauliAxis {
        &self.rows[self.n + q]
    }

    pub fn images(&self) -> &[PauliAxis] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// X_q images anticommute with Z_q images; every other pair commutes.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        (0..2 * n).all(|i| {
            (i + 1..2 * n).all(|j| {
                let partner = i < n && j == i + n;
                self.rows[i].commutes_with(&self.rows[j]) != partner
            })
        })
    }

    /// Append a Clifford gate in time order: the result implements `g ∘ self`.
    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        g.validate(self.n)?;
        for row in &mut self.rows {
            conjugate_by_gate(row, g)?;
        }
        Ok(())
    }

    pub fn then(mut self, g: &Gate) -> Result<Self> {
        self.apply(g)?;
        Ok(self)
    }

    /// `C P C†` with the sign tracked exactly.
    pub fn conjugate(&self, p: &PauliAxis) -> Result<PauliAxis> {
        check_qubits(self.n, p.num_qubits())?;
        Ok(self.conjugate_unchecked(p))
    }

    pub(crate) fn conjugate_unchecked(&self, p: &PauliAxis) -> PauliAxis {
        // p = sign · i^{#Y} · Π X_q^{x_q} Z_q^{z_q}
        let w = p.word();
        let mut acc = PhasedPauli::new(PauliWord::identity(self.n), if p.is_negative() { 2 } else { 0 });
        let mut ys = 0u8;
        for q in 0..self.n {
            let (x, z) = (w.x_bit(q), w.z_bit(q));
            if x {
                acc = acc.mul(&self.rows[q].to_phased());
            }
            if z {
                acc = acc.mul(&self.rows[self.n + q].to_phased());
            }
            if x && z {
                ys += 1;
            }
        }
        acc.times_i_pow(ys % 4)
            .to_axis()
            .expect("Clifford conjugation maps Hermitian Paulis to Hermitian Paulis")
    }

    /// Tableau of `other` applied after `self`.
    pub fn compose(&self, other: &CliffordTableau) -> Result<CliffordTableau> {
        check_qubits(self.n, other.n)?;
        Ok(CliffordTableau {
            n: self.n,
            rows: self.rows.iter().map(|r| other.conjugate_unchecked(r)).collect(),
        })
    }

    /// Append the Clifford rotation `R_axis(k·π/4)` for even `k`.
    pub fn apply_rotation(&mut self, axis: &PauliAxis, k: i32) -> Result<()> {
        check_qubits(self.n, axis.num_qubits())?;
        for row in &mut self.rows {
            *row = conjugate_by_rotation(axis, k, row)?;
        }
        Ok(())
    }

    /// A gate circuit over {h, s, sdg, cx, x, z} with exactly this tableau.
    pub fn synthesize(&self) -> GateCircuit {
        synthesize(self)
    }
}

impl fmt::Display for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            writeln!(f, "X{q} -> {}", self.rows[q])?;
        }
        for q in 0..self.n {
            writeln!(f, "Z{q} -> {}", self.rows[self.n + q])?;
        }
        Ok(())
    }
}

fn conjugate_by_gate(row: &mut PauliAxis, g: &Gate) -> Result<()> {
    let bits = |row: &PauliAxis, q: usize| (row.word().x_bit(q), row.word().z_bit(q));
    match *g {
        Gate::H(q) => {
            let (x, z) = bits(row, q);
            if x && z {
                row.flip_sign();
            }
            row.word_mut().swap_xz(q);
        }
        Gate::S(q) => {
            let (x, z) = bits(row, q);
            if x && z {
                row.flip_sign();
            }
            if x {
                row.word_mut().flip_z(q);
            }
        }
        Gate::Sdg(q) => {
            let (x, z) = bits(row, q);
            if x && !z {
                row.flip_sign();
            }
            if x {
                row.word_mut().flip_z(q);
            }
        }
        Gate::X(q) => {
            if bits(row, q).1 {
                row.flip_sign();
            }
        }
        Gate::Z(q) => {
            if bits(row, q).0 {
                row.flip_sign();
            }
        }
        Gate::Y(q) => {
            let (x, z) = bits(row, q);
            if x != z {
                row.flip_sign();
            }
        }
        Gate::Cx(c, t) => {
            let (xc, zc) = bits(row, c);
            let (xt, zt) = bits(row, t);
            if xc && zt && (xt == zc) {
                row.flip_sign();
            }
            if xc {
                row.word_mut().flip_x(t);
            }
            if zt {
                row.word_mut().flip_z(c);
            }
        }
        Gate::T(_) | Gate::Tdg(_) => {
            return Err(Error::Precondition(format!("{} is not a Clifford gate", g.name())));
        }
    }
    Ok(())
}

/// `R P R†` for the Clifford rotation `R = R_axis(k·π/4)`, `k` even.
pub fn conjugate_by_rotation(axis: &PauliAxis, k: i32, p: &PauliAxis) -> Result<PauliAxis> {
    check_qubits(axis.num_qubits(), p.num_qubits())?;
    let k = crate::circuit::canonical_angle(axis.is_negative(), k);
    if k % 2 != 0 {
        return Err(Error::Precondition(format!("R(k·π/4) with odd k = {k} is not Clifford")));
    }
    if k == 0 || axis.commutes_with(p) {
        return Ok(p.clone());
    }
    let q = axis.abs().to_phased();
    Ok(match k {
        4 => Some(-p.clone()),
        // exp(-iπ/4 Q) P exp(iπ/4 Q) = P exp(iπ/2 Q) = i·P·Q when {P,Q} = 0
        2 => p.to_phased().mul(&q).times_i_pow(1).to_axis(),
        -2 => p.to_phased().mul(&q).times_i_pow(3).to_axis(),
        _ => unreachable!(),
    }
    .unwrap_or_else(|| unreachable!("anticommuting product is Hermitian after the i factor")))
}

/// Reduce the tableau to the identity with output-side gates, then invert.
pub fn synthesize(t: &CliffordTableau) -> GateCircuit {
    let n = t.n;
    let mut work = t.clone();
    let mut ops: Vec<Gate> = Vec::new();
    let mut apply = |work: &mut CliffordTableau, g: Gate| {
        work.apply(&g).expect("synthesis emits valid gates");
        ops.push(g);
    };

    for i in 0..n {
        // X_i image -> X_i
        for j in i..n {
            let row = work.x_image(i).word();
            match (row.x_bit(j), row.z_bit(j)) {
                (true, true) => apply(&mut work, Gate::S(j)),
                (false, true) => apply(&mut work, Gate::H(j)),
                _ => {}
            }
        }
        if !work.x_image(i).word().x_bit(i) {
            let j = (i + 1..n)
                .find(|&j| work.x_image(i).word().x_bit(j))
                .expect("image of X_i has support at or beyond qubit i");
            apply(&mut work, Gate::Cx(j, i));
        }
        for j in i + 1..n {
            if work.x_image(i).word().x_bit(j) {
                apply(&mut work, Gate::Cx(i, j));
            }
        }

        // Z_i image -> Z_i, keeping X_i fixed
        for j in i + 1..n {
            let row = work.z_image(i).word();
            match (row.x_bit(j), row.z_bit(j)) {
                (true, false) => apply(&mut work, Gate::H(j)),
                (true, true) => {
                    apply(&mut work, Gate::S(j));
                    apply(&mut work, Gate::H(j));
                }
                _ => {}
            }
        }
        for j in i + 1..n {
            if work.z_image(i).word().z_bit(j) {
                apply(&mut work, Gate::Cx(j, i));
            }
        }
        if work.z_image(i).word().x_bit(i) {
            // H S H fixes X and sends Y to Z
            apply(&mut work, Gate::H(i));
            apply(&mut work, Gate::S(i));
            apply(&mut work, Gate::H(i));
        }
    }
    for i in 0..n {
        if work.x_image(i).is_negative() {
            apply(&mut work, Gate::Z(i));
        }
        if work.z_image(i).is_negative() {
            apply(&mut work, Gate::X(i));
        }
    }
    debug_assert!(work.is_identity(), "synthesis sweep left\n{work}");

    let gates = ops.iter().rev().map(Gate::inverse).collect();
    GateCircuit::from_gates(n, gates).expect("synthesized gates are in range")
}
