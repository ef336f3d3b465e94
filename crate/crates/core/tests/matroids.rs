mod common;

use common::tol;
use lapint::fuzz::{fuzz_conjecture, FuzzConfig};
use lapint::matroid::Matroid;
use lapint::poly::spectrum_polynomial;
use lapint::recursion::satisfies_recursion;
use lapint::{Face, Interval};
use proptest::prelude::*;

fn named() -> Vec<(&'static str, Matroid)> {
    vec![
        ("U(2,4)", Matroid::uniform(2, 4).unwrap()),
        ("U(3,5)", Matroid::uniform(3, 5).unwrap()),
        ("M(K4)", Matroid::complete_graph(4).unwrap()),
        ("Fano", Matroid::fano()),
    ]
}

#[test]
fn minor_pairs_satisfy_the_recursion() {
    for (name, m) in named() {
        for e in 1..=m.ground_size() {
            let pair = m.minor_pair(e).unwrap();
            assert_eq!(satisfies_recursion(&pair.interval, &tol()).unwrap(), (true, true), "{name} at {e}");
        }
    }
}

#[test]
fn independence_complexes_satisfy_the_recursion() {
    for (name, m) in named() {
        let complex = m.independence_complex().into_interval();
        assert_eq!(satisfies_recursion(&complex, &tol()).unwrap(), (true, true), "{name}");
    }
}

#[test]
fn decomposition_spectra_add() {
    for (name, m) in named() {
        for e in 1..=m.ground_size() {
            let dec = m.circuit_decomposition(e).unwrap();
            let mut total = spectrum_polynomial(&Interval::empty(dec.pair.ground_size()), &tol()).unwrap();
            for s in &dec.summands {
                assert!(s.circuit.contains(e));
                total = total.add(&spectrum_polynomial(&s.interval, &tol()).unwrap());
            }
            assert_eq!(spectrum_polynomial(&dec.pair, &tol()).unwrap(), total, "{name} at {e}");
        }
    }
}

#[test]
fn minor_pair_of_u24_by_hand() {
    // IN(U(2,4) - 4) - IN(U(2,4) / 4): the two-subsets of {1,2,3}
    let pair = Matroid::uniform(2, 4).unwrap().minor_pair(4).unwrap();
    assert_eq!(pair.labels, vec![1, 2, 3]);
    assert_eq!(pair.interval, Interval::from_digit_strs(3, &["12", "13", "23"]).unwrap());
}

#[test]
fn unit_rank_drop_campaign_passes() {
    let config = FuzzConfig { n_max: 6, rank_gap: 1, trials: 40, seed: 21, ..FuzzConfig::default() };
    let report = fuzz_conjecture(&config, &tol()).unwrap();
    assert_eq!(report.passed(), 40);
    assert_eq!(report.rigorous(), 40);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_binary_minor_pairs(columns in prop::collection::vec(prop::collection::vec(0u64..2, 3), 2..7), k in any::<usize>()) {
        let m = Matroid::linear(columns, 2).unwrap();
        let e = k % m.ground_size() + 1;
        let pair = m.minor_pair(e).unwrap();
        prop_assert_eq!(satisfies_recursion(&pair.interval, &tol()).unwrap(), (true, true));
        if !m.is_loop(e) {
            let dec = m.circuit_decomposition(e).unwrap();
            prop_assert_eq!(&dec.pair, &pair.interval);
        }
    }

    #[test]
    fn strong_map_pairs_are_nested(columns in prop::collection::vec(prop::collection::vec(0u64..3, 3), 3..7), k in any::<u64>()) {
        let m = Matroid::linear(columns, 3).unwrap();
        let a = m.basis_of(Face::from_bits(k & Face::full(m.ground_size()).bits()));
        let pair = m.strong_map_interval(a).unwrap();
        prop_assert_eq!(pair.interval.ground_size() + a.len(), m.ground_size());
        // every face of the pair is independent in M - A and dependent with A added
        for f in pair.interval.faces() {
            let original = Face::from_vertices(f.vertices().map(|v| pair.labels[v - 1])).unwrap();
            prop_assert!(m.is_independent(original));
            prop_assert!(a.is_empty() || !m.is_independent(original.union(a)));
        }
    }
}
