#![allow(dead_code)]

use mcrkit::verify::{apply_rotation, Matrix};
use mcrkit::{Gate, GateCircuit, PauliAxis};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ax(s: &str) -> PauliAxis {
    s.parse().unwrap()
}

pub fn random_gate(n: usize, rng: &mut ChaCha8Rng, with_t: bool) -> Gate {
    let q = rng.gen_range(0..n);
    let kinds = if with_t { 9 } else { 7 };
    match rng.gen_range(0..kinds) {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::Sdg(q),
        3 => Gate::X(q),
        4 => Gate::Y(q),
        5 => Gate::Z(q),
        6 if n > 1 => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            Gate::Cx(q, t)
        }
        6 => Gate::H(q),
        7 => Gate::T(q),
        _ => Gate::Tdg(q),
    }
}

pub fn random_circuit(n: usize, len: usize, rng: &mut ChaCha8Rng, with_t: bool) -> GateCircuit {
    let mut c = GateCircuit::new(n);
    for _ in 0..len {
        c.push(random_gate(n, rng, with_t)).unwrap();
    }
    c
}

/// Dense product of `R_axis(θ)` in time order, built column by column.
pub fn dense_rotations(n: usize, seq: &[(PauliAxis, f64)]) -> Vec<Vec<Complex64>> {
    let d = 1usize << n;
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[j] = Complex64::new(1.0, 0.0);
        for (a, t) in seq {
            apply_rotation(&mut v, a, *t);
        }
        cols.push(v);
    }
    cols
}

pub fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_identity(m: &Matrix, tol: f64) -> bool {
    m.max_abs_diff(&Matrix::identity(m.dim())) < tol
}
