//! Intervals in the Boolean algebra of a finite ground set, and the
//! operations on them: duality, deletion, contraction, star, reduction,
//! direct sum, join and skeleta.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::face::{subsets_of, Face, MAX_VERTICES};

/// A betweenness-closed family of subsets of `{1, ..., n}`.
///
/// Whenever `F ⊆ G ⊆ H` with `F, H` in the family, `G` is in it as well.
/// The ground-set size `n` is part of the value: vertices that lie in no
/// face are loops and are kept.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    n: usize,
    faces: BTreeSet<Face>,
}

impl Interval {
    /// Validates `faces` as an interval on `n` vertices.
    pub fn new<I: IntoIterator<Item = Face>>(n: usize, faces: I) -> Result<Self> {
        check_ground(n)?;
        let full = Face::full(n);
        let mut set = BTreeSet::new();
        for f in faces {
            if !f.is_subset(full) {
                return Err(Error::FaceOutOfRange { face: f, n });
            }
            set.insert(f);
        }
        if let Some((lower, middle, upper)) = betweenness_witness(&set) {
            return Err(Error::IntervalViolation { lower, middle, upper });
        }
        Ok(Interval { n, faces: set })
    }

    /// Builds from digit-notation strings like `"1245"`.
    pub fn from_digit_strs(n: usize, faces: &[&str]) -> Result<Self> {
        let parsed = faces
            .iter()
            .map(|s| Face::from_digits(s).ok_or_else(|| Error::Malformed(format!("bad face {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Interval::new(n, parsed)
    }

    /// Skips validation. Callers guarantee the family is an interval.
    pub(crate) fn from_set_unchecked(n: usize, faces: BTreeSet<Face>) -> Self {
        debug_assert!(betweenness_witness(&faces).is_none(), "not an interval: {faces:?}");
        Interval { n, faces }
    }

    fn collect_unchecked<I: IntoIterator<Item = Face>>(n: usize, faces: I) -> Self {
        Interval::from_set_unchecked(n, faces.into_iter().collect())
    }

    /// The interval with no faces.
    pub fn empty(n: usize) -> Self {
        Interval { n, faces: BTreeSet::new() }
    }

    /// The interval consisting of the single face `face`.
    pub fn single(n: usize, face: Face) -> Self {
        Interval { n, faces: BTreeSet::from([face]) }
    }

    /// The full Boolean algebra `2^[n]`, i.e. the full simplex.
    pub fn full_simplex(n: usize) -> Self {
        Interval::collect_unchecked(n, crate::face::power_set(n))
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.contains(&face)
    }

    /// Faces in canonical order.
    pub fn faces(&self) -> impl DoubleEndedIterator<Item = Face> + ExactSizeIterator + '_ {
        self.faces.iter().copied()
    }

    pub fn face_set(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    /// Faces of dimension `i`, in canonical order.
    pub fn faces_of_dim(&self, i: i32) -> Vec<Face> {
        self.faces.iter().copied().filter(|f| f.dim() == i).collect()
    }

    pub fn check_vertex(&self, e: usize) -> Result<()> {
        if e == 0 || e > self.n {
            Err(Error::VertexOutOfRange { vertex: e, n: self.n })
        } else {
            Ok(())
        }
    }

    fn assert_vertex(&self, e: usize) {
        if let Err(err) = self.check_vertex(e) {
            panic!("{err}");
        }
    }

    /// Union of all faces.
    pub fn support(&self) -> Face {
        self.faces.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    /// Vertices of the ground set lying in no face.
    pub fn loops(&self) -> Face {
        self.support().complement(self.n)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.loops().contains(e)
    }

    /// `f[k]` is the number of faces of dimension `k - 1`, for `k = 0..=n`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.n + 1];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    /// Number of faces of dimension `i`; zero outside `-1..=n-1`.
    pub fn f(&self, i: i32) -> usize {
        let k = i + 1;
        if k < 0 || k as usize > self.n {
            return 0;
        }
        self.faces.iter().filter(|f| f.len() == k as usize).count()
    }

    /// Smallest and largest face dimension, or `None` for the empty interval.
    pub fn dim_range(&self) -> Option<(i32, i32)> {
        let lo = self.faces.iter().map(|f| f.dim()).min()?;
        let hi = self.faces.iter().map(|f| f.dim()).max()?;
        Some((lo, hi))
    }

    /// Same faces on a larger ground set; the new vertices are loops.
    pub fn extend_ground(&self, n: usize) -> Result<Self> {
        check_ground(n)?;
        if n < self.n && !self.support().is_subset(Face::full(n)) {
            return Err(Error::GroundMismatch { left: self.n, right: n });
        }
        Ok(Interval { n, faces: self.faces.clone() })
    }

    pub fn is_simplicial_complex(&self) -> bool {
        self.faces.is_empty() || self.faces.contains(&Face::EMPTY)
    }

    /// `Φ* = {E - F : F ∈ Φ}`.
    pub fn dual(&self) -> Interval {
        Interval::collect_unchecked(self.n, self.faces.iter().map(|f| f.complement(self.n)))
    }

    /// `Φ - e`: faces avoiding `e`. The ground set is unchanged.
    ///
    /// # Panics
    /// If `e` is not in `1..=n`.
    pub fn delete(&self, e: usize) -> Interval {
        self.assert_vertex(e);
        Interval::collect_unchecked(self.n, self.faces.iter().copied().filter(|f| !f.contains(e)))
    }

    /// Drops the loop `e` from the ground set, renumbering `e+1..=n` down by
    /// one.
    pub fn remove_loop(&self, e: usize) -> Result<Interval> {
        self.check_vertex(e)?;
        if !self.is_loop(e) {
            return Err(Error::NotALoop(e));
        }
        let low = (1u64 << (e - 1)) - 1;
        let squeeze = |f: &Face| Face::from_bits((f.bits() & low) | ((f.bits() >> e) << (e - 1)));
        Ok(Interval::collect_unchecked(self.n - 1, self.faces.iter().map(squeeze)))
    }

    /// `Φ / e`: faces containing `e`, with `e` removed.
    ///
    /// # Panics
    /// If `e` is not in `1..=n`.
    pub fn contract(&self, e: usize) -> Interval {
        self.assert_vertex(e);
        Interval::collect_unchecked(self.n, self.faces.iter().filter(|f| f.contains(e)).map(|f| f.without(e)))
    }

    /// All faces taking part in a pair `{F, F + e}` inside the interval.
    ///
    /// # Panics
    /// If `e` is not in `1..=n`.
    pub fn star(&self, e: usize) -> Interval {
        self.assert_vertex(e);
        let mut out = BTreeSet::new();
        for &f in self.faces.iter().filter(|f| !f.contains(e)) {
            let g = f.with(e);
            if self.faces.contains(&g) {
                out.insert(f);
                out.insert(g);
            }
        }
        Interval::from_set_unchecked(self.n, out)
    }

    /// `Φ || e`: the interval with its star at `e` removed.
    ///
    /// # Panics
    /// If `e` is not in `1..=n`.
    pub fn reduce(&self, e: usize) -> Interval {
        self.assert_vertex(e);
        Interval::collect_unchecked(
            self.n,
            self.faces.iter().copied().filter(|&f| {
                let partner = if f.contains(e) { f.without(e) } else { f.with(e) };
                !self.faces.contains(&partner)
            }),
        )
    }

    /// Splits `Φ || e` into its faces without `e` and its faces with `e`.
    /// The two parts are totally unrelated and their direct sum is the
    /// reduction.
    pub fn reduction_components(&self, e: usize) -> (Interval, Interval) {
        let reduced = self.reduce(e);
        let (with_e, without_e): (BTreeSet<Face>, BTreeSet<Face>) = reduced.faces.iter().partition(|f| f.contains(e));
        (Interval::from_set_unchecked(self.n, without_e), Interval::from_set_unchecked(self.n, with_e))
    }

    /// `Φ ⊕ Θ`, defined when no face of one is comparable to a face of the
    /// other.
    pub fn direct_sum(&self, other: &Interval) -> Result<Interval> {
        self.same_ground(other)?;
        for &f in &self.faces {
            if other.faces.contains(&f) {
                return Err(Error::OverlappingFaces(f));
            }
        }
        if let Some((left, right)) = related_pair(self, other) {
            return Err(Error::NotTotallyUnrelated { left, right });
        }
        let faces = self.faces.union(&other.faces).copied().collect();
        Ok(Interval::from_set_unchecked(self.n, faces))
    }

    /// Whether every face of `self` is incomparable to every face of `other`.
    pub fn is_totally_unrelated(&self, other: &Interval) -> bool {
        related_pair(self, other).is_none()
    }

    /// `Φ * Θ = {F ⊎ G}`; vertex supports must be disjoint.
    pub fn join(&self, other: &Interval) -> Result<Interval> {
        self.same_ground(other)?;
        let overlap = self.support().intersection(other.support());
        if !overlap.is_empty() {
            return Err(Error::OverlappingSupports(overlap));
        }
        let mut faces = BTreeSet::new();
        for &f in &self.faces {
            for &g in &other.faces {
                faces.insert(f.union(g));
            }
        }
        Ok(Interval::from_set_unchecked(self.n, faces))
    }

    /// `v * Φ = {v, ∅} * Φ`.
    pub fn cone(&self, v: usize) -> Result<Interval> {
        self.check_vertex(v)?;
        let apex = Interval::collect_unchecked(self.n, [Face::EMPTY, Face::vertex(v)]);
        apex.join(self)
    }

    /// `R ∘ Φ = {R} * Φ`.
    pub fn shift_by_set(&self, r: Face) -> Result<Interval> {
        if !r.is_subset(Face::full(self.n)) {
            return Err(Error::FaceOutOfRange { face: r, n: self.n });
        }
        Interval::single(self.n, r).join(self)
    }

    /// Faces of dimension between `low` and `high` inclusive.
    pub fn skeleton(&self, low: i32, high: i32) -> Result<Interval> {
        if low > high {
            return Err(Error::InvalidSkeleton { low, high });
        }
        Ok(Interval::collect_unchecked(self.n, self.faces.iter().copied().filter(|f| (low..=high).contains(&f.dim()))))
    }

    pub fn intersection(&self, other: &Interval) -> Result<Interval> {
        self.same_ground(other)?;
        Ok(Interval::from_set_unchecked(self.n, self.faces.intersection(&other.faces).copied().collect()))
    }

    /// Set difference of face families. The result need not be an interval.
    pub fn faces_minus(&self, other: &Interval) -> BTreeSet<Face> {
        self.faces.difference(&other.faces).copied().collect()
    }

    /// `(Δ, Δ')` with `Δ` the downward closure of the interval and
    /// `Δ' = Δ - Φ`.
    pub fn canonical_pair(&self) -> (SimplicialComplex, SimplicialComplex) {
        let mut closure = BTreeSet::new();
        for &f in &self.faces {
            if closure.contains(&f) {
                continue;
            }
            closure.extend(subsets_of(f));
        }
        let rest: BTreeSet<Face> = closure.difference(&self.faces).copied().collect();
        (
            SimplicialComplex(Interval::from_set_unchecked(self.n, closure)),
            SimplicialComplex(Interval::from_set_unchecked(self.n, rest)),
        )
    }

    fn same_ground(&self, other: &Interval) -> Result<()> {
        if self.n != other.n {
            Err(Error::GroundMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval(n={}, {{", self.n)?;
        for (k, face) in self.faces.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{face}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::GroundSetTooLarge(n))
    } else {
        Ok(())
    }
}

/// A witness `(F, G, H)` against betweenness closure, if any.
///
/// For each comparable pair `F ⊊ H` in the family every one-element
/// extension `F + v` with `v ∈ H - F` must be present; iterating this step
/// reaches every `G` between `F` and `H`, so the test is equivalent to the
/// full definition.
fn betweenness_witness(faces: &BTreeSet<Face>) -> Option<(Face, Face, Face)> {
    let list: Vec<Face> = faces.iter().copied().collect();
    for (k, &f) in list.iter().enumerate() {
        for &h in &list[k + 1..] {
            if h.len() < f.len() + 2 || !f.is_subset(h) {
                continue;
            }
            for v in h.difference(f).vertices() {
                let g = f.with(v);
                if !faces.contains(&g) {
                    return Some((f, g, h));
                }
            }
        }
    }
    None
}

fn related_pair(a: &Interval, b: &Interval) -> Option<(Face, Face)> {
    for &f in &a.faces {
        for &g in &b.faces {
            if f.is_subset(g) || g.is_subset(f) {
                return Some((f, g));
            }
        }
    }
    None
}

/// An interval that is closed under taking subsets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex(Interval);

impl SimplicialComplex {
    pub fn new(interval: Interval) -> Result<Self> {
        for &f in &interval.faces {
            for v in f.vertices() {
                let sub = f.without(v);
                if !interval.faces.contains(&sub) {
                    return Err(Error::NotDownwardClosed { face: f, missing: sub });
                }
            }
        }
        Ok(SimplicialComplex(interval))
    }

    /// Downward closure of the given facets. No facets gives the void
    /// complex (no faces at all).
    pub fn from_facets<I: IntoIterator<Item = Face>>(n: usize, facets: I) -> Result<Self> {
        check_ground(n)?;
        let full = Face::full(n);
        let mut faces = BTreeSet::new();
        for f in facets {
            if !f.is_subset(full) {
                return Err(Error::FaceOutOfRange { face: f, n });
            }
            if !faces.contains(&f) {
                faces.extend(subsets_of(f));
            }
        }
        Ok(SimplicialComplex(Interval::from_set_unchecked(n, faces)))
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex(Interval::empty(n))
    }

    pub fn as_interval(&self) -> &Interval {
        &self.0
    }

    pub fn into_interval(self) -> Interval {
        self.0
    }

    /// Maximal faces in canonical order.
    pub fn facets(&self) -> Vec<Face> {
        let faces = &self.0.faces;
        faces
            .iter()
            .copied()
            .filter(|&f| (1..=self.0.n).all(|v| f.contains(v) || !faces.contains(&f.with(v))))
            .collect()
    }

    /// `Δ - Δ'` for a subcomplex `Δ'`.
    pub fn relative(&self, sub: &SimplicialComplex) -> Result<Interval> {
        self.0.same_ground(&sub.0)?;
        if let Some(&f) = sub.0.faces.iter().find(|f| !self.0.faces.contains(f)) {
            return Err(Error::NotSubcomplex(f));
        }
        Ok(Interval::from_set_unchecked(self.0.n, self.0.faces_minus(&sub.0)))
    }
}

/// The relative pair `(Δ, Δ')`, i.e. the set difference `Δ - Δ'`.
pub fn from_pair(complex: &SimplicialComplex, sub: &SimplicialComplex) -> Result<Interval> {
    complex.relative(sub)
}
