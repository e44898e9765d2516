//! Dense-unitary and statevector equivalence checks up to global phase.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateCircuit};
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{PauliAxis, PauliWord};
use crate::pbc::{PbcCircuit, Rotation};

pub const DEFAULT_DENSE_CAP: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_STATE_SAMPLES: usize = 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Anything that can act on an `n`-qubit statevector (basis bit `q` is qubit `q`).
pub trait Simulate {
    fn num_qubits(&self) -> usize;
    fn apply_to(&self, state: &mut [Complex64]);
}

impl Simulate for GateCircuit {
    fn num_qubits(&self) -> usize {
        GateCircuit::num_qubits(self)
    }

    fn apply_to(&self, state: &mut [Complex64]) {
        for g in self.gates() {
            apply_gate(state, g);
        }
    }
}

impl Simulate for PbcCircuit {
    fn num_qubits(&self) -> usize {
        PbcCircuit::num_qubits(self)
    }

    fn apply_to(&self, state: &mut [Complex64]) {
        self.prefix().synthesize().apply_to(state);
        for r in self.rotations() {
            apply_rotation(state, r.axis(), r.angle());
        }
    }
}

/// Rotations alone, with no prefix.
impl Simulate for [Rotation] {
    fn num_qubits(&self) -> usize {
        self.first().map_or(0, Rotation::num_qubits)
    }

    fn apply_to(&self, state: &mut [Complex64]) {
        for r in self {
            apply_rotation(state, r.axis(), r.angle());
        }
    }
}

pub fn apply_gate(state: &mut [Complex64], g: &Gate) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    match *g {
        Gate::H(q) => single_qubit(state, q, [[ONE * h, ONE * h], [ONE * h, -ONE * h]]),
        Gate::S(q) => diagonal(state, q, I),
        Gate::Sdg(q) => diagonal(state, q, -I),
        Gate::T(q) => diagonal(state, q, t),
        Gate::Tdg(q) => diagonal(state, q, t.conj()),
        Gate::Z(q) => diagonal(state, q, -ONE),
        Gate::X(q) => single_qubit(state, q, [[ZERO, ONE], [ONE, ZERO]]),
        Gate::Y(q) => single_qubit(state, q, [[ZERO, -I], [I, ZERO]]),
        Gate::Cx(c, tq) => {
            let (cm, tm) = (1usize << c, 1usize << tq);
            for b in 0..state.len() {
                if b & cm != 0 && b & tm == 0 {
                    state.swap(b, b | tm);
                }
            }
        }
    }
}

fn diagonal(state: &mut [Complex64], q: usize, phase: Complex64) {
    let m = 1usize << q;
    for (b, amp) in state.iter_mut().enumerate() {
        if b & m != 0 {
            *amp *= phase;
        }
    }
}

fn single_qubit(state: &mut [Complex64], q: usize, u: [[Complex64; 2]; 2]) {
    let m = 1usize << q;
    for b in 0..state.len() {
        if b & m == 0 {
            let (a0, a1) = (state[b], state[b | m]);
            state[b] = u[0][0] * a0 + u[0][1] * a1;
            state[b | m] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
}

fn masks(w: &PauliWord) -> (usize, usize, u32) {
    let (mut x, mut z, mut ys) = (0usize, 0usize, 0u32);
    for q in 0..w.num_qubits() {
        if w.x_bit(q) {
            x |= 1 << q;
        }
        if w.z_bit(q) {
            z |= 1 << q;
        }
        if w.x_bit(q) && w.z_bit(q) {
            ys += 1;
        }
    }
    (x, z, ys)
}

/// `P|ψ⟩` for a signed Pauli axis.
pub fn apply_pauli(state: &[Complex64], p: &PauliAxis) -> Vec<Complex64> {
    let (x, z, ys) = masks(p.word());
    let base = I.powu(ys) * p.sign() as f64;
    let mut out = vec![ZERO; state.len()];
    for (b, &amp) in state.iter().enumerate() {
        let parity = (b & z).count_ones() % 2;
        let phase = if parity == 1 { -base } else { base };
        out[b ^ x] += phase * amp;
    }
    out
}

/// `R_P(θ)|ψ⟩ = cos(θ/2)|ψ⟩ - i sin(θ/2) P|ψ⟩`.
pub fn apply_rotation(state: &mut [Complex64], p: &PauliAxis, theta: f64) {
    let pv = apply_pauli(state, p);
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    for (amp, pa) in state.iter_mut().zip(pv) {
        *amp = *amp * c - I * s * pa;
    }
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    /// `self† · other`
    pub fn adjoint_mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[k * d + r].conj();
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        Matrix { dim: d, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        Matrix { dim: d, data }
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `(φ, max |self - e^{iφ} I|)` with φ read from the largest diagonal entry.
    pub fn distance_from_phased_identity(&self) -> (f64, f64) {
        let d = self.dim;
        let pivot = (0..d)
            .map(|i| self.get(i, i))
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(ONE);
        let phase = pivot.arg();
        let target = Complex64::from_polar(1.0, phase);
        let mut dev = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let want = if r == c { target } else { ZERO };
                dev = dev.max((self.get(r, c) - want).norm());
            }
        }
        (phase, dev)
    }
}

pub fn dense_unitary<C: Simulate + ?Sized>(c: &C) -> Result<Matrix> {
    dense_unitary_capped(c, DEFAULT_DENSE_CAP)
}

pub fn dense_unitary_capped<C: Simulate + ?Sized>(c: &C, cap: usize) -> Result<Matrix> {
    let n = c.num_qubits();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let d = 1usize << n;
    let mut m = Matrix {
        dim: d,
        data: vec![ZERO; d * d],
    };
    let mut col = vec![ZERO; d];
    for j in 0..d {
        col.iter_mut().for_each(|a| *a = ZERO);
        col[j] = ONE;
        c.apply_to(&mut col);
        for (r, &a) in col.iter().enumerate() {
            m.data[r * d + j] = a;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Statevector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub method: Method,
    pub equivalent: bool,
    pub max_deviation: f64,
    /// Global phase φ with `V†U ≈ e^{iφ} I`; only set when equivalent.
    pub phase: Option<f64>,
}

/// Dense `V†U` comparison against a phased identity.
pub fn check_equiv<U, V>(u: &U, v: &V, tol: f64) -> Result<EquivalenceReport>
where
    U: Simulate + ?Sized,
    V: Simulate + ?Sized,
{
    check_qubits(u.num_qubits(), v.num_qubits())?;
    let w = dense_unitary(v)?.adjoint_mul(&dense_unitary(u)?);
    let (phase, dev) = w.distance_from_phased_identity();
    let equivalent = dev < tol;
    Ok(EquivalenceReport {
        method: Method::Dense,
        equivalent,
        max_deviation: dev,
        phase: equivalent.then_some(phase),
    })
}

/// Random product states through both circuits; deviation is `1 - min fidelity`.
pub fn check_equiv_statevector<U, V>(u: &U, v: &V, samples: usize, seed: u64, tol: f64) -> Result<EquivalenceReport>
where
    U: Simulate + ?Sized,
    V: Simulate + ?Sized,
{
    let n = u.num_qubits();
    check_qubits(n, v.num_qubits())?;
    if n > 30 {
        return Err(Error::TooLarge { n, cap: 30 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_fidelity = 1.0f64;
    let mut phase = 0.0;
    for _ in 0..samples {
        let psi = random_product_state(n, &mut rng);
        let (mut a, mut b) = (psi.clone(), psi);
        u.apply_to(&mut a);
        v.apply_to(&mut b);
        let overlap: Complex64 = b.iter().zip(&a).map(|(x, y)| x.conj() * y).sum();
        let f = overlap.norm_sqr();
        if f < min_fidelity {
            min_fidelity = f;
        }
        phase = overlap.arg();
    }
    let dev = (1.0 - min_fidelity).max(0.0);
    let equivalent = dev < tol;
    Ok(EquivalenceReport {
        method: Method::Statevector,
        equivalent,
        max_deviation: dev,
        phase: equivalent.then_some(phase),
    })
}

fn random_product_state<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let mut state = vec![ONE];
    for _ in 0..n {
        // uniform on the Bloch sphere
        let cos_t: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let a = Complex64::new(((1.0 + cos_t) / 2.0).sqrt(), 0.0);
        let b = Complex64::from_polar(((1.0 - cos_t) / 2.0).sqrt(), phi);
        let mut next = Vec::with_capacity(state.len() * 2);
        next.extend(state.iter().map(|s| s * a));
        next.extend(state.iter().map(|s| s * b));
        state = next;
    }
    state
}
