mod common;

use common::random_circuit;
use mcrkit::circuit::{decompose_rotation, emit_qasm, parse_qasm};
use mcrkit::pbc::{gates_to_pbc, pbc_to_gates};
use mcrkit::verify::{apply_pauli, check_equiv, check_equiv_statevector, dense_unitary, Simulate};
use mcrkit::{CliffordTableau, Gate, GateCircuit, PauliAxis, PbcCircuit, Rotation};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn assert_equiv<U: Simulate + ?Sized, V: Simulate + ?Sized>(u: &U, v: &V) {
    let r = check_equiv(u, v, TOL).unwrap();
    assert!(r.equivalent, "deviation {}", r.max_deviation);
}

/// Columns of `U P U†` against the dense action of the tableau image.
fn assert_conjugation(u: &GateCircuit, t: &CliffordTableau, p: &PauliAxis) {
    let n = u.num_qubits();
    let image = t.conjugate(p).unwrap();
    let inv = u.inverse();
    for b in 0..1usize << n {
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
        v[b] = Complex64::new(1.0, 0.0);
        inv.apply_to(&mut v);
        let mut lhs = apply_pauli(&v, p);
        u.apply_to(&mut lhs);
        let mut e = vec![Complex64::new(0.0, 0.0); 1 << n];
        e[b] = Complex64::new(1.0, 0.0);
        let rhs = apply_pauli(&e, &image);
        for (a, c) in lhs.iter().zip(&rhs) {
            assert!((a - c).norm() < 1e-10, "{p} -> {image}");
        }
    }
}

#[test]
fn tableau_conjugation_matches_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        for _ in 0..15 {
            let u = random_circuit(n, 12, &mut rng, false);
            let t = CliffordTableau::from_circuit(&u).unwrap();
            for p in PauliAxis::enumerate(n).iter().take(4usize.pow(n as u32) - 1) {
                assert_conjugation(&u, &t, p);
            }
        }
    }
}

#[test]
fn synthesis_matches_tableau_up_to_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=4 {
        for _ in 0..10 {
            let u = random_circuit(n, 20, &mut rng, false);
            let t = CliffordTableau::from_circuit(&u).unwrap();
            assert_equiv(&u, &t.synthesize());
        }
    }
}

#[test]
fn rotation_decomposition_exhaustive_small() {
    for n in 1..=3 {
        for axis in PauliAxis::enumerate(n) {
            for k in (-3..=4).filter(|&k| k != 0) {
                let gates = decompose_rotation(&axis, k).unwrap();
                let rot = [Rotation::new(&axis, k).unwrap()];
                assert_equiv(&gates, &rot[..]);
            }
        }
    }
}

#[test]
fn gates_to_pbc_preserves_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=4 {
        for _ in 0..10 {
            let c = random_circuit(n, 30, &mut rng, true);
            let p = gates_to_pbc(&c);
            assert_eq!(p.t_count(), c.t_count());
            assert_equiv(&c, &p);
            assert_equiv(&p, &pbc_to_gates(&p));
        }
    }
}

#[test]
fn statevector_agrees_with_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let c = random_circuit(5, 60, &mut rng, true);
    let p = gates_to_pbc(&c);
    let sv = check_equiv_statevector(&c, &p, 20, 3, TOL).unwrap();
    assert!(sv.equivalent, "{}", sv.max_deviation);
    let mut other = c.clone();
    other.push(Gate::T(2)).unwrap();
    assert!(!check_equiv_statevector(&other, &p, 20, 3, TOL).unwrap().equivalent);
    assert!(!check_equiv(&other, &p, TOL).unwrap().equivalent);
}

#[test]
fn pbc_json_round_trip_is_same_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let c = random_circuit(3, 40, &mut rng, true);
    let p = gates_to_pbc(&c);
    let q = PbcCircuit::from_json(&p.to_json()).unwrap();
    assert_eq!(p, q);
    assert_equiv(&p, &q);
}

#[test]
fn qasm_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let c = random_circuit(4, 50, &mut rng, true);
    let back = parse_qasm(&emit_qasm(&c)).unwrap();
    assert_eq!(back, c);
    assert_eq!(dense_unitary(&back).unwrap(), dense_unitary(&c).unwrap());
}
