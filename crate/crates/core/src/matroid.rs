//! Matroids given by an independence oracle, their independence complexes,
//! minor pairs `IN(M-e) - IN(M/e)`, strong-map pairs `IN(M-A) - IN(M/A)`,
//! and the decomposition of a minor pair along the circuits through `e`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::interval::{Interval, SimplicialComplex};

/// Largest ground set accepted by the constructors.
pub const MAX_GROUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase", deny_unknown_fields)]
pub enum Backend {
    /// Every independent set listed.
    Explicit {
        n: usize,
        independent: Vec<Vec<usize>>,
    },
    Uniform {
        rank: usize,
        n: usize,
    },
    /// Column `j` represents element `j + 1` over GF(p).
    Linear {
        p: u64,
        columns: Vec<Vec<u64>>,
    },
    /// Edge `j` represents element `j + 1`; vertex labels are arbitrary.
    Graphic {
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    backend: Backend,
    /// Only for the explicit backend.
    independent: BTreeSet<Face>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::GroundSetTooLarge(n))
    } else {
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Matroid {
    /// Validates the independence axioms.
    pub fn explicit<I: IntoIterator<Item = Face>>(n: usize, independent: I) -> Result<Self> {
        check_size(n)?;
        let full = Face::full(n);
        let sets: BTreeSet<Face> = independent.into_iter().collect();
        if !sets.contains(&Face::EMPTY) {
            return Err(Error::InvalidMatroid("the empty set must be independent".into()));
        }
        for &s in &sets {
            if !s.is_subset(full) {
                return Err(Error::FaceOutOfRange { face: s, n });
            }
            if let Some(v) = s.vertices().find(|&v| !sets.contains(&s.without(v))) {
                return Err(Error::InvalidMatroid(format!("{} is independent but {} is not", s, s.without(v))));
            }
        }
        for &a in &sets {
            for &b in &sets {
                if a.len() < b.len() && !b.difference(a).vertices().any(|x| sets.contains(&a.with(x))) {
                    return Err(Error::InvalidMatroid(format!("exchange fails for {a} and {b}")));
                }
            }
        }
        let listed = sets.iter().map(|f| f.to_vec()).collect();
        Ok(Matroid { n, backend: Backend::Explicit { n, independent: listed }, independent: sets })
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        check_size(n)?;
        if rank > n {
            return Err(Error::InvalidRank { rank, n });
        }
        Ok(Matroid { n, backend: Backend::Uniform { rank, n }, independent: BTreeSet::new() })
    }

    /// Columns over GF(p), `p` a prime at most 13. Entries are reduced mod `p`.
    pub fn linear(columns: Vec<Vec<u64>>, p: u64) -> Result<Self> {
        if !is_prime(p) || p > 13 {
            return Err(Error::NonPrimeField(p));
        }
        check_size(columns.len())?;
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.len() != first.len()) {
                return Err(Error::InvalidMatroid("columns of different lengths".into()));
            }
        }
        let columns: Vec<Vec<u64>> = columns.into_iter().map(|c| c.into_iter().map(|x| x % p).collect()).collect();
        Ok(Matroid { n: columns.len(), backend: Backend::Linear { p, columns }, independent: BTreeSet::new() })
    }

    /// Cycle matroid of a multigraph; an edge `(u, u)` is a loop.
    pub fn graphic(edges: Vec<(usize, usize)>) -> Result<Self> {
        check_size(edges.len())?;
        Ok(Matroid { n: edges.len(), backend: Backend::Graphic { edges }, independent: BTreeSet::new() })
    }

    /// The Fano plane: all nonzero vectors of GF(2)^3.
    pub fn fano() -> Self {
        let columns = (1u64..8).map(|v| vec![v & 1, (v >> 1) & 1, (v >> 2) & 1]).collect();
        Matroid::linear(columns, 2).expect("valid representation")
    }

    /// Cycle matroid of the complete graph on `k` vertices.
    pub fn complete_graph(k: usize) -> Result<Self> {
        let edges = (1..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
        Matroid::graphic(edges)
    }

    pub fn from_backend(backend: Backend) -> Result<Self> {
        match backend {
            Backend::Explicit { n, independent } => {
                let faces = independent
                    .iter()
                    .map(|s| {
                        let f = Face::from_vertices(s.iter().copied())
                            .ok_or_else(|| Error::Malformed(format!("bad independent set {s:?}")))?;
                        if f.len() != s.len() {
                            return Err(Error::Malformed(format!("independent set {s:?} repeats an element")));
                        }
                        Ok(f)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matroid::explicit(n, faces)
            }
            Backend::Uniform { rank, n } => Matroid::uniform(rank, n),
            Backend::Linear { p, columns } => Matroid::linear(columns, p),
            Backend::Graphic { edges } => Matroid::graphic(edges),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let backend: Backend =
            serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(format!("matroid JSON: {e}")))?;
        Matroid::from_backend(backend)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.backend).expect("serializable")
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn is_independent(&self, s: Face) -> bool {
        if !s.is_subset(Face::full(self.n)) {
            return false;
        }
        match &self.backend {
            Backend::Explicit { .. } => self.independent.contains(&s),
            Backend::Uniform { rank, .. } => s.len() <= *rank,
            Backend::Linear { p, columns } => gf_rank(s.vertices().map(|v| &columns[v - 1]), *p) == s.len(),
            Backend::Graphic { edges } => is_forest(s.vertices().map(|v| edges[v - 1])),
        }
    }

    /// Size of a largest independent subset of `s`.
    pub fn rank_of(&self, s: Face) -> usize {
        self.basis_of(s).len()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(Face::full(self.n))
    }

    /// A maximal independent subset of `s`, built greedily.
    pub fn basis_of(&self, s: Face) -> Face {
        s.vertices().fold(Face::EMPTY, |b, v| if self.is_independent(b.with(v)) { b.with(v) } else { b })
    }

    pub fn is_loop(&self, e: usize) -> bool {
        !self.is_independent(Face::vertex(e))
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e == 0 || e > self.n {
            Err(Error::VertexOutOfRange { vertex: e, n: self.n })
        } else {
            Ok(())
        }
    }

    /// All independent sets, by extending independent sets with larger
    /// elements only.
    pub fn independent_sets(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        let mut stack = vec![Face::EMPTY];
        while let Some(s) = stack.pop() {
            out.insert(s);
            for v in s.max_vertex() + 1..=self.n {
                if self.is_independent(s.with(v)) {
                    stack.push(s.with(v));
                }
            }
        }
        out
    }

    pub fn independence_complex(&self) -> SimplicialComplex {
        let interval = Interval::new(self.n, self.independent_sets()).expect("independent sets form a complex");
        SimplicialComplex::new(interval).expect("independent sets are closed under subsets")
    }

    /// Minimal dependent sets. Every circuit is `I + e` for an independent
    /// `I`, so it suffices to extend independent sets by one element.
    pub fn circuits(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for i in self.independent_sets() {
            for e in 1..=self.n {
                let c = i.with(e);
                if c != i
                    && !out.contains(&c)
                    && !self.is_independent(c)
                    && i.vertices().all(|x| self.is_independent(c.without(x)))
                {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// The unique circuit inside `I + e`, for independent `I` with `I + e`
    /// dependent.
    pub fn fundamental_circuit(&self, e: usize, i: Face) -> Result<Face> {
        self.check_element(e)?;
        if !self.is_independent(i) {
            return Err(Error::NotIndependent(i));
        }
        let s = i.with(e);
        if s == i || self.is_independent(s) {
            return Err(Error::NotDependentWithElement { set: i, element: e });
        }
        let c = Face::from_vertices(s.vertices().filter(|&x| self.is_independent(s.without(x)))).expect("in range");
        let minimal_dependent = !self.is_independent(c) && c.vertices().all(|x| self.is_independent(c.without(x)));
        if !minimal_dependent {
            return Err(Error::CircuitNotUnique { set: i, element: e });
        }
        Ok(c)
    }

    /// Faces of `IN(M/A)` on the original ground set: sets `I` avoiding
    /// `A` with `I + B` independent for a basis `B` of `A`.
    fn contraction_faces(&self, a: Face) -> BTreeSet<Face> {
        let b = self.basis_of(a);
        self.independent_sets().into_iter().filter(|i| i.is_disjoint(a) && self.is_independent(i.union(b))).collect()
    }

    fn deletion_faces(&self, a: Face) -> BTreeSet<Face> {
        self.independent_sets().into_iter().filter(|i| i.is_disjoint(a)).collect()
    }

    /// `(IN(M-A), IN(M/A))` on the ground set minus `A`, renumbered, with
    /// `M/A` the matroid contraction. For independent `A` this is
    /// `IN(M)/A`.
    pub fn strong_map_interval(&self, a: Face) -> Result<RelabeledInterval> {
        if !a.is_subset(Face::full(self.n)) {
            return Err(Error::FaceOutOfRange { face: a, n: self.n });
        }
        let del = self.deletion_faces(a);
        let con = self.contraction_faces(a);
        if let Some(&f) = con.iter().find(|f| !del.contains(f)) {
            return Err(Error::ContainmentFailure(f));
        }
        let interval = Interval::new(self.n, del.difference(&con).copied())?;
        RelabeledInterval::remove(interval, a)
    }

    /// `(IN(M-e), IN(M/e))` on the ground set minus `e`, renumbered.
    ///
    /// `IN(M/e)` is read as `IN(M)/e`, which is void when `e` is a loop, so
    /// the pair at a loop is `IN(M)` itself.
    pub fn minor_pair(&self, e: usize) -> Result<RelabeledInterval> {
        self.check_element(e)?;
        if self.is_loop(e) {
            return RelabeledInterval::remove(self.independence_complex().into_interval(), Face::vertex(e));
        }
        self.strong_map_interval(Face::vertex(e))
    }

    /// The minor pair at a non-loop `e` as a direct sum over the circuits
    /// `C` through `e` of `(C - e) ∘ IN(M/C)`, with every step checked.
    pub fn circuit_decomposition(&self, e: usize) -> Result<CircuitDecomposition> {
        self.check_element(e)?;
        if self.is_loop(e) {
            return Err(Error::LoopElement(e));
        }
        let pair = self
            .deletion_faces(Face::vertex(e))
            .difference(&self.contraction_faces(Face::vertex(e)))
            .copied()
            .collect::<BTreeSet<Face>>();

        let mut summands = Vec::new();
        for c in self.circuits().into_iter().filter(|c| c.contains(e)) {
            let base = c.without(e);
            let faces: BTreeSet<Face> = self.contraction_faces(c).into_iter().map(|i| i.union(base)).collect();
            for &j in &faces {
                if self.fundamental_circuit(e, j)? != c {
                    return Err(Error::InvalidMatroid(format!("{j} is filed under {c} but its circuit differs")));
                }
            }
            summands.push((c, Interval::new(self.n, faces)?));
        }

        let mut total = Interval::empty(self.n);
        for (_, s) in &summands {
            // direct_sum rejects overlapping or related summands
            total = total.direct_sum(s)?;
        }
        if total.face_set() != &pair {
            let missing = pair.symmetric_difference(total.face_set()).next().copied().unwrap_or(Face::EMPTY);
            return Err(Error::ContainmentFailure(missing));
        }

        let labels = RelabeledInterval::labels_without(self.n, Face::vertex(e));
        let summands = summands
            .into_iter()
            .map(|(c, s)| Ok(CircuitSummand { circuit: c, interval: s.remove_loop(e)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(CircuitDecomposition { element: e, labels, summands, pair: total.remove_loop(e)? })
    }
}

/// An interval on a renumbered ground set. `labels[k]` is the original
/// label of new vertex `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelabeledInterval {
    pub interval: Interval,
    pub labels: Vec<usize>,
}

impl RelabeledInterval {
    fn labels_without(n: usize, removed: Face) -> Vec<usize> {
        (1..=n).filter(|&v| !removed.contains(v)).collect()
    }

    fn remove(interval: Interval, removed: Face) -> Result<Self> {
        let labels = Self::labels_without(interval.ground_size(), removed);
        let mut out = interval;
        for v in removed.to_vec().into_iter().rev() {
            out = out.remove_loop(v)?;
        }
        Ok(RelabeledInterval { interval: out, labels })
    }

    pub fn to_json(&self) -> Value {
        json!({"interval": crate::json::interval_to_json(&self.interval), "labels": self.labels})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSummand {
    /// In original labels; contains the decomposition element.
    pub circuit: Face,
    /// `(C - e) ∘ IN(M/C)`, renumbered like the minor pair.
    pub interval: Interval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDecomposition {
    pub element: usize,
    pub labels: Vec<usize>,
    pub summands: Vec<CircuitSummand>,
    /// Direct sum of the summands, equal to the minor pair.
    pub pair: Interval,
}

impl CircuitDecomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "element": self.element,
            "labels": self.labels,
            "pair": crate::json::interval_to_json(&self.pair),
            "summands": self.summands.iter().map(|s| json!({
                "circuit": s.circuit.to_vec(),
                "interval": crate::json::interval_to_json(&s.interval),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Rank over GF(p) of the given vectors.
#[allow(clippy::needless_range_loop)]
fn gf_rank<'a>(vectors: impl Iterator<Item = &'a Vec<u64>>, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors.cloned().collect();
    let Some(len) = rows.first().map(Vec::len) else { return 0 };
    let inverse = |x: u64| (1..p).find(|y| x * y % p == 1).expect("nonzero element of a field");
    let mut rank = 0;
    for c in 0..len {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = inverse(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for k in 0..len {
                    rows[r][k] = (rows[r][k] + p * p - factor * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn is_forest(edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    fn root(parent: &mut std::collections::HashMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while let Some(&p) = parent.get(&r) {
            if p == r {
                break;
            }
            r = p;
        }
        parent.insert(x, r);
        r
    }
    for (u, v) in edges {
        parent.entry(u).or_insert(u);
        parent.entry(v).or_insert(v);
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        if a == b {
            return false;
        }
        parent.insert(a, b);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Face {
        Face::from_digits(s).unwrap()
    }

    fn sets(list: &[&str]) -> BTreeSet<Face> {
        list.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn uniform_small() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(u12.independent_sets(), sets(&["", "1", "2"]));
        assert_eq!(u12.fundamental_circuit(2, f("1")).unwrap(), f("12"));
        assert!(matches!(Matroid::uniform(3, 2), Err(Error::InvalidRank { .. })));
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.circuits(), sets(&["123", "124", "134", "234"]));
    }

    #[test]
    fn graphic_triangle() {
        let k3 = Matroid::complete_graph(3).unwrap();
        assert_eq!(k3.circuits(), sets(&["123"]));
        // edges 12, 13, 23; the path 12-23 closed by 13
        assert_eq!(k3.fundamental_circuit(2, f("13")).unwrap(), f("123"));
        assert!(matches!(k3.fundamental_circuit(2, f("123")), Err(Error::NotIndependent(_))));
        assert!(matches!(k3.fundamental_circuit(3, f("1")), Err(Error::NotDependentWithElement { .. })));
        let looped = Matroid::graphic(vec![(1, 1), (1, 2)]).unwrap();
        assert!(looped.is_loop(1) && !looped.is_loop(2));
    }

    #[test]
    fn fano_and_fields() {
        let fano = Matroid::fano();
        assert_eq!((fano.ground_size(), fano.rank()), (7, 3));
        assert_eq!(fano.circuits().iter().filter(|c| c.len() == 3).count(), 7);
        assert!(matches!(Matroid::linear(vec![vec![1]], 4), Err(Error::NonPrimeField(4))));
        assert!(matches!(Matroid::linear(vec![vec![1]], 17), Err(Error::NonPrimeField(17))));
    }

    #[test]
    fn backends_agree_on_u24() {
        let lin = Matroid::linear(vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]], 5).unwrap();
        let uni = Matroid::uniform(2, 4).unwrap();
        let exp = Matroid::explicit(4, uni.independent_sets()).unwrap();
        assert_eq!(lin.independent_sets(), uni.independent_sets());
        assert_eq!(exp.independent_sets(), uni.independent_sets());
        let k4 = Matroid::complete_graph(4).unwrap();
        let k4_explicit = Matroid::explicit(6, k4.independent_sets()).unwrap();
        assert_eq!(k4_explicit.circuits(), k4.circuits());
    }

    #[test]
    fn explicit_axioms() {
        assert!(Matroid::explicit(2, sets(&["", "1", "2", "12"])).is_ok());
        assert!(Matroid::explicit(2, sets(&["1"])).is_err());
        assert!(Matroid::explicit(2, sets(&["", "12"])).is_err());
        // {1,2} and {3}: exchange fails
        assert!(Matroid::explicit(3, sets(&["", "1", "2", "3", "12"])).is_err());
    }

    #[test]
    fn minor_pairs() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        let pair = u12.minor_pair(2).unwrap();
        assert_eq!(pair.interval, Interval::from_digit_strs(1, &["1"]).unwrap());
        assert_eq!(pair.labels, vec![1]);
        let looped = Matroid::graphic(vec![(1, 2), (3, 3), (2, 3)]).unwrap();
        let pair = looped.minor_pair(2).unwrap();
        let renumbered = Matroid::graphic(vec![(1, 2), (2, 3)]).unwrap();
        assert_eq!(pair.interval, renumbered.independence_complex().into_interval());
        let k4 = Matroid::complete_graph(4).unwrap();
        // N = N' when nothing is removed
        assert!(k4.strong_map_interval(Face::EMPTY).unwrap().interval.is_empty());
    }

    #[test]
    fn in_minor_notation() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let complex = k4.independence_complex().into_interval();
        for e in 1..=6 {
            let del = Interval::new(6, k4.deletion_faces(Face::vertex(e))).unwrap();
            let con = Interval::new(6, k4.contraction_faces(Face::vertex(e))).unwrap();
            assert_eq!(del, complex.delete(e));
            assert_eq!(con, complex.contract(e));
        }
    }

    #[test]
    fn decompositions() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        let d = u12.circuit_decomposition(2).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.pair, Interval::from_digit_strs(1, &["1"]).unwrap());
        let k3 = Matroid::complete_graph(3).unwrap();
        assert_eq!(k3.circuit_decomposition(1).unwrap().summands.len(), 1);
        let u24 = Matroid::uniform(2, 4).unwrap();
        let d = u24.circuit_decomposition(4).unwrap();
        assert_eq!(d.summands.len(), 3);
        assert_eq!(d.pair, u24.minor_pair(4).unwrap().interval);
        let looped = Matroid::graphic(vec![(1, 1), (1, 2)]).unwrap();
        assert!(matches!(looped.circuit_decomposition(1), Err(Error::LoopElement(1))));
    }

    #[test]
    fn json_round_trip() {
        for m in [Matroid::fano(), Matroid::uniform(2, 4).unwrap(), Matroid::complete_graph(4).unwrap()] {
            assert_eq!(Matroid::from_json(&m.to_json()).unwrap(), m);
        }
        let v: Value = serde_json::from_str(r#"{"backend":"linear","p":2,"columns":[[1,0],[0,1],[1,1]]}"#).unwrap();
        assert_eq!(Matroid::from_json(&v).unwrap().circuits(), sets(&["123"]));
        let bad: Value = serde_json::from_str(r#"{"backend":"linear","p":6,"columns":[]}"#).unwrap();
        assert!(Matroid::from_json(&bad).is_err());
    }
}
