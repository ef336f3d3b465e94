//! Componentwise and shifted partial orders on faces, shifted complexes and
//! intervals, a random generator of shifted intervals, and the
//! `Φ⁻ / 𝒩_Φ / Φ⁺ / Φ′` construction on two-dimensional intervals.
//!
//! `F ≤_S G` holds when `|F| ≤ |G|` and `F` is componentwise below the last
//! `|F|` elements of `G`. Under this order, subsets and componentwise-smaller
//! sets of equal size are both below.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::interval::{Interval, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Componentwise,
    Shifted,
}

/// Result of comparing two faces under one of the orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelationWitness {
    pub relation: Relation,
    pub left: Face,
    pub right: Face,
    pub holds: bool,
    /// 1-based position in the sorted `left` where the comparison fails.
    pub failing_index: Option<usize>,
}

fn componentwise_failure(f: Face, g_tail: &[usize]) -> Option<usize> {
    f.vertices().zip(g_tail).position(|(a, &b)| a > b).map(|p| p + 1)
}

/// `F ≤_C G` for faces of equal size.
pub fn leq_componentwise(f: Face, g: Face) -> Result<bool> {
    Ok(compare_componentwise(f, g)?.holds)
}

pub fn compare_componentwise(f: Face, g: Face) -> Result<OrderRelationWitness> {
    if f.len() != g.len() {
        return Err(Error::UnequalCardinality { left: f, right: g });
    }
    let failing = componentwise_failure(f, &g.to_vec());
    Ok(OrderRelationWitness {
        relation: Relation::Componentwise,
        left: f,
        right: g,
        holds: failing.is_none(),
        failing_index: failing,
    })
}

/// `F ≤_S G`.
pub fn leq_shifted(f: Face, g: Face) -> bool {
    compare_shifted(f, g).holds
}

pub fn compare_shifted(f: Face, g: Face) -> OrderRelationWitness {
    let (k, m) = (f.len(), g.len());
    let failing = if k > m {
        Some(k)
    } else {
        let g = g.to_vec();
        componentwise_failure(f, &g[m - k..])
    };
    OrderRelationWitness {
        relation: Relation::Shifted,
        left: f,
        right: g,
        holds: failing.is_none(),
        failing_index: failing,
    }
}

/// Faces covered from below by `g` under the moves generating `≤_S`:
/// dropping a vertex, or replacing `v` by `v - 1` when that is free.
fn lower_moves(g: Face) -> impl Iterator<Item = Face> {
    let drops = g.vertices().map(move |v| g.without(v));
    let shifts = g.vertices().filter(move |&v| v >= 2 && !g.contains(v - 1)).map(move |v| g.without(v).with(v - 1));
    drops.chain(shifts)
}

/// Inverse of [`lower_moves`] within the ground set `1..=n`.
fn upper_moves(g: Face, n: usize) -> impl Iterator<Item = Face> {
    let adds = (1..=n).filter(move |&w| !g.contains(w)).map(move |w| g.with(w));
    let shifts = g.vertices().filter(move |&v| v < n && !g.contains(v + 1)).map(move |v| g.without(v).with(v + 1));
    adds.chain(shifts)
}

/// Whether a family is closed downward under `≤_S`.
fn is_shifted_down_closed(faces: &BTreeSet<Face>) -> Option<(Face, Face)> {
    for &g in faces {
        if let Some(f) = lower_moves(g).find(|f| !faces.contains(f)) {
            return Some((f, g));
        }
    }
    None
}

/// A simplicial complex is shifted when `F ≤_S H ∈ Δ` implies `F ∈ Δ`.
pub fn is_shifted_complex(delta: &SimplicialComplex) -> bool {
    is_shifted_down_closed(delta.as_interval().face_set()).is_none()
}

/// `≤_S`-downward closure of a family.
fn shifted_closure(faces: impl IntoIterator<Item = Face>) -> BTreeSet<Face> {
    let mut seen: BTreeSet<Face> = BTreeSet::new();
    let mut stack: Vec<Face> = faces.into_iter().collect();
    while let Some(g) = stack.pop() {
        if seen.insert(g) {
            stack.extend(lower_moves(g).filter(|f| !seen.contains(f)));
        }
    }
    seen
}

/// A triple `F ≤_S G ≤_S H` with `F, H ∈ Φ` and `G ∉ Φ`, if one exists.
pub fn shifted_violation(phi: &Interval) -> Option<(Face, Face, Face)> {
    let closure = shifted_closure(phi.faces());
    let rest: BTreeSet<Face> = closure.iter().copied().filter(|f| !phi.contains(*f)).collect();
    let (f, g) = is_shifted_down_closed(&rest)?;
    // f ∉ rest yet f is in the closure, so f ∈ Φ; g lies below some face of Φ.
    let h = phi.faces().find(|&h| leq_shifted(g, h)).expect("closure member lies below a face");
    Some((f, g, h))
}

/// An interval is shifted when it is betweenness-closed under `≤_S`.
pub fn is_shifted_interval(phi: &Interval) -> bool {
    shifted_violation(phi).is_none()
}

/// Random shifted interval on `1..=n`.
///
/// Draws a random linear extension of `≤_S` on `2^[n]` lazily (repeatedly
/// taking a uniformly chosen minimal remaining face) and cuts it at two
/// random thresholds; the two prefixes are nested shifted complexes and the
/// interval is their difference. No uniformity over shifted intervals is
/// claimed. Prefix lengths are capped at 4096 faces.
pub fn random_shifted_interval(n: usize, seed: u64) -> Interval {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_shifted_interval_with(n, &mut rng)
}

pub fn random_shifted_interval_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Interval {
    assert!(n <= crate::face::MAX_VERTICES, "ground set too large");
    let total: u64 = if n >= 12 { 4096 } else { 1 << n };
    let upper = rng.gen_range(0..=total) as usize;
    let lower = rng.gen_range(0..=upper);
    let order = linear_extension_prefix(n, upper, rng);
    let faces: BTreeSet<Face> = order[lower..].iter().copied().collect();
    Interval::new(n, faces).expect("difference of nested complexes is an interval")
}

fn linear_extension_prefix<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> Vec<Face> {
    let mut taken: HashSet<Face> = HashSet::new();
    let mut available: Vec<Face> = vec![Face::EMPTY];
    let mut order = Vec::with_capacity(len);
    while order.len() < len && !available.is_empty() {
        let pick = rng.gen_range(0..available.len());
        let g = available.swap_remove(pick);
        taken.insert(g);
        order.push(g);
        for h in upper_moves(g, n) {
            if !taken.contains(&h) && !available.contains(&h) && lower_moves(h).all(|f| taken.contains(&f)) {
                available.push(h);
            }
        }
    }
    order
}

/// `Φ⁻`, `𝒩_Φ`, `Φ⁺` and `Φ′` of an `(i-1, i)`-dimensional interval with
/// respect to vertex 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedDecomposition {
    /// The `i` of `(i-1, i)`.
    pub top: i32,
    pub phi_minus: Interval,
    pub exceptional: BTreeSet<Face>,
    pub phi_plus: Interval,
    pub phi_prime: Interval,
}

/// Decomposes with `i` inferred: the top dimension when two adjacent
/// dimensions are occupied, the only dimension when one is, and 0 for the
/// empty interval.
pub fn phi_minus(phi: &Interval) -> Result<ShiftedDecomposition> {
    let top = match phi.dim_range() {
        None => 0,
        Some((lo, hi)) if hi - lo <= 1 => hi,
        Some((low, high)) => return Err(Error::NotTwoDimensional { low, high }),
    };
    decompose_at(phi, top)
}

/// Decomposes `Φ` viewed as `(top-1, top)`-dimensional.
///
/// `Φ⁺` and `Φ′` are intervals whenever `Φ` is shifted; otherwise this may
/// fail with the betweenness violation found in `Φ′`.
pub fn decompose_at(phi: &Interval, top: i32) -> Result<ShiftedDecomposition> {
    if let Some((low, high)) = phi.dim_range() {
        if low < top - 1 || high > top {
            return Err(Error::NotTwoDimensional { low, high });
        }
    }
    let n = phi.ground_size();
    if n == 0 {
        return Err(Error::VertexOutOfRange { vertex: 1, n });
    }
    let upper: Vec<Face> = phi.faces_of_dim(top);
    let lower: Vec<Face> = phi.faces_of_dim(top - 1);

    let mut exceptional = BTreeSet::new();
    for &f in &upper {
        if f.contains(1) && !phi.contains(f.without(1)) {
            exceptional.insert(f);
        }
    }
    for &f in &lower {
        if !f.contains(1) && !phi.contains(f.with(1)) {
            exceptional.insert(f);
        }
    }
    let minus: BTreeSet<Face> = phi.faces().filter(|f| !exceptional.contains(f)).collect();

    let mut plus = minus.clone();
    plus.extend(upper.iter().filter(|f| !f.contains(1)).map(|f| f.with(1)));
    plus.extend(lower.iter().filter(|f| f.contains(1)).map(|f| f.without(1)));

    // Φ′ = (Φ_i - 1) ⊎ ((Φ_i / 1) ∩ (Φ_{i-1} - 1)) ⊎ (Φ_{i-1} / 1)
    let upper_set: BTreeSet<Face> = upper.iter().copied().collect();
    let lower_set: BTreeSet<Face> = lower.iter().copied().collect();
    let mut prime: BTreeSet<Face> = upper.iter().copied().filter(|f| !f.contains(1)).collect();
    prime.extend(upper_set.iter().filter(|f| f.contains(1)).map(|f| f.without(1)).filter(|g| lower_set.contains(g)));
    prime.extend(lower.iter().filter(|f| f.contains(1)).map(|f| f.without(1)));

    let phi_minus = Interval::new(n, minus)?;
    let phi_prime = Interval::new(n, prime)?;
    let phi_plus = Interval::new(n, plus)?;
    debug_assert_eq!(phi_plus, phi_prime.cone(1).expect("vertex 1 is not in Φ′"));
    Ok(ShiftedDecomposition { top, phi_minus, exceptional, phi_plus, phi_prime })
}
