use mcrkit::mcr::{complete_quadruple, is_mcr};
use mcrkit::{CliffordTableau, Gate, GateCircuit, PauliAxis};
use proptest::prelude::*;

fn axis(n: usize) -> impl Strategy<Value = PauliAxis> {
    (prop::collection::vec(0usize..4, n), any::<bool>())
        .prop_filter_map("identity word", |(letters, neg)| {
            let w: String = letters.iter().map(|&i| ['I', 'X', 'Y', 'Z'][i]).collect();
            format!("{}{w}", if neg { "-" } else { "+" }).parse().ok()
        })
}

fn clifford(n: usize) -> impl Strategy<Value = GateCircuit> {
    prop::collection::vec((0usize..6, 0usize..n, 1usize..n), 0..40).prop_map(move |ops| {
        let gates = ops
            .into_iter()
            .map(|(kind, q, off)| match kind {
                0 => Gate::H(q),
                1 => Gate::S(q),
                2 => Gate::Sdg(q),
                3 => Gate::X(q),
                4 => Gate::Z(q),
                _ => Gate::Cx(q, (q + off) % n),
            })
            .collect();
        GateCircuit::from_gates(n, gates).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { max_global_rejects: 20_000, ..ProptestConfig::default() })]

    #[test]
    fn commutation_is_symmetric(a in axis(5), b in axis(5)) {
        prop_assert_eq!(a.commutes_with(&b), b.commutes_with(&a));
    }

    #[test]
    fn products_commute_or_anticommute(a in axis(4), b in axis(4)) {
        let ab = a.to_phased().mul(&b.to_phased());
        let ba = b.to_phased().mul(&a.to_phased());
        let expected = if a.commutes_with(&b) { ba } else { ba.negate() };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn tableau_preserves_commutation(c in clifford(4), a in axis(4), b in axis(4)) {
        let t = CliffordTableau::from_circuit(&c).unwrap();
        let (ta, tb) = (t.conjugate(&a).unwrap(), t.conjugate(&b).unwrap());
        prop_assert_eq!(ta.commutes_with(&tb), a.commutes_with(&b));
        prop_assert_eq!(t.conjugate(&-&a).unwrap(), -ta);
    }

    #[test]
    fn tableau_inverse_round_trip(c in clifford(3), a in axis(3)) {
        let t = CliffordTableau::from_circuit(&c).unwrap();
        let back = CliffordTableau::from_circuit(&c.inverse()).unwrap();
        prop_assert_eq!(back.conjugate(&t.conjugate(&a).unwrap()).unwrap(), a);
        prop_assert!(t.compose(&back).unwrap().is_identity());
    }

    #[test]
    fn completion_closes_a_quadruple(a in axis(4), b in axis(4), c in axis(4)) {
        prop_assume!(!a.same_word(&b) && a.commutes_with(&b));
        prop_assume!(!a.commutes_with(&c) && !b.commutes_with(&c));
        let d = complete_quadruple(&a, &b, &c).unwrap();
        prop_assert!(is_mcr(&a, &b, &c, &d));
        prop_assert!(!is_mcr(&a, &b, &c, &-&d));
    }
}
