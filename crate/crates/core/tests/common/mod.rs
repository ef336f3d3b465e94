#![allow(dead_code)]

use lapint::laplacian::SpectrumReport;
use lapint::random::random_interval;
use lapint::shifted::random_shifted_interval;
use lapint::{Face, Interval, Tolerances};
use proptest::prelude::*;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn interval(max_n: usize) -> impl Strategy<Value = Interval> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_interval(n, seed))
}

pub fn shifted(max_n: usize) -> impl Strategy<Value = Interval> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_shifted_interval(n, seed))
}

/// Faces of `phi` inside `keep`.
pub fn restrict(phi: &Interval, keep: Face) -> Interval {
    (1..=phi.ground_size()).filter(|&v| !keep.contains(v)).fold(phi.clone(), |acc, v| acc.delete(v))
}

/// Two intervals with disjoint supports on a common ground set.
pub fn disjoint_pair(max_n: usize) -> impl Strategy<Value = (Interval, Interval)> {
    (2..=max_n, any::<u64>(), any::<u64>(), any::<u64>()).prop_map(|(n, a, b, mask)| {
        let left = Face::from_bits(mask & Face::full(n).bits());
        let right = left.complement(n);
        (restrict(&random_interval(n, a), left), restrict(&random_interval(n, b), right))
    })
}

/// Two totally unrelated intervals: the components of a reduction.
pub fn unrelated_pair(max_n: usize) -> impl Strategy<Value = (Interval, Interval)> {
    (interval(max_n), any::<usize>()).prop_map(|(phi, k)| phi.reduction_components(k % phi.ground_size() + 1))
}

/// Sorted nonzero eigenvalues of `L_i`.
pub fn nonzero(report: &SpectrumReport, i: i32) -> Vec<f64> {
    let mut v: Vec<f64> = report.dim(i).map(|d| d.values.nonzero(tol().zero)).unwrap_or_default();
    v.sort_by(f64::total_cmp);
    v
}

pub fn all_values(report: &SpectrumReport, i: i32) -> Vec<f64> {
    let mut v = report.values_f64(i);
    v.sort_by(f64::total_cmp);
    v
}

pub fn same_multiset(a: &[f64], b: &[f64]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-6)
}
