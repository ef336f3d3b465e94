mod common;

use common::{disjoint_pair, interval, unrelated_pair};
use lapint::{Face, Interval};
use proptest::prelude::*;

/// Betweenness over families of subsets of [4], encoded as 16-bit masks.
fn brute_force_is_interval(family: u32) -> bool {
    let has = |f: u32| family >> f & 1 == 1;
    (0..16).all(|f| {
        (0..16).all(|h| !(has(f) && has(h) && f & h == f) || (0..16).all(|g| f & g != f || g & h != g || has(g)))
    })
}

#[test]
fn validation_matches_triple_scan_on_four_vertices() {
    let mut intervals = 0;
    for family in 0u32..1 << 16 {
        let faces = (0..16).filter(|&k| family >> k & 1 == 1).map(|k| Face::from_bits(k as u64));
        let valid = Interval::new(4, faces).is_ok();
        assert_eq!(valid, brute_force_is_interval(family), "{family:#x}");
        intervals += valid as usize;
    }
    assert!(intervals > 1000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn direct_sum_commutes_with_minors((phi, theta) in unrelated_pair(6), k in any::<usize>()) {
        let sum = phi.direct_sum(&theta).unwrap();
        let e = k % sum.ground_size() + 1;
        prop_assert_eq!(sum.delete(e), phi.delete(e).direct_sum(&theta.delete(e)).unwrap());
        prop_assert_eq!(sum.contract(e), phi.contract(e).direct_sum(&theta.contract(e)).unwrap());
        prop_assert_eq!(sum.star(e), phi.star(e).direct_sum(&theta.star(e)).unwrap());
        prop_assert_eq!(sum.reduce(e), phi.reduce(e).direct_sum(&theta.reduce(e)).unwrap());
    }

    #[test]
    fn join_commutes_with_star_and_reduction((phi, theta) in disjoint_pair(6), k in any::<usize>()) {
        let join = phi.join(&theta).unwrap();
        let n = join.ground_size();
        // e outside the support of Θ
        if let Some(e) = (1..=n).map(|j| (j + k) % n + 1).find(|&e| !theta.support().contains(e)) {
            prop_assert_eq!(join.star(e), phi.star(e).join(&theta).unwrap());
            prop_assert_eq!(join.reduce(e), phi.reduce(e).join(&theta).unwrap());
        }
    }

    #[test]
    fn reduction_splits_into_unrelated_parts(phi in interval(6), k in any::<usize>()) {
        let e = k % phi.ground_size() + 1;
        let (without, with) = phi.reduction_components(e);
        prop_assert!(without.is_totally_unrelated(&with));
        prop_assert_eq!(without.direct_sum(&with).unwrap(), phi.reduce(e));
        prop_assert!(Interval::new(phi.ground_size(), phi.reduce(e).faces()).is_ok());
    }

    #[test]
    fn dual_is_an_involution_commuting_with_star(phi in interval(6), k in any::<usize>()) {
        let e = k % phi.ground_size() + 1;
        prop_assert_eq!(phi.dual().dual(), phi.clone());
        prop_assert_eq!(phi.dual().star(e), phi.star(e).dual());
        prop_assert_eq!(phi.dual().reduce(e), phi.reduce(e).dual());
    }

    #[test]
    fn f_recursion(phi in interval(6), k in any::<usize>()) {
        let e = k % phi.ground_size() + 1;
        let (del, con) = (phi.delete(e), phi.contract(e));
        for i in -1..phi.ground_size() as i32 {
            prop_assert_eq!(phi.f(i), del.f(i) + con.f(i - 1));
        }
        prop_assert!(del.is_loop(e) && con.is_loop(e));
    }

    #[test]
    fn skeleta_commute_with_deletion_and_contraction(phi in interval(6), k in any::<usize>(), i in -1i32..5, w in 0i32..3) {
        let e = k % phi.ground_size() + 1;
        let j = i + w;
        prop_assert_eq!(phi.skeleton(i, j).unwrap().delete(e), phi.delete(e).skeleton(i, j).unwrap());
        prop_assert_eq!(phi.skeleton(i, j).unwrap().contract(e), phi.contract(e).skeleton(i - 1, j - 1).unwrap());
    }

    #[test]
    fn canonical_pair_recovers_the_interval(phi in interval(6)) {
        let (delta, sub) = phi.canonical_pair();
        prop_assert_eq!(delta.relative(&sub).unwrap(), phi);
    }
}
