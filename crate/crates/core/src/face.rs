//! Faces: subsets of a ground set of at most [`MAX_VERTICES`] vertices.
//!
//! A face is stored as a single `u64` bitset with bit `k` standing for the
//! vertex `k + 1`. All public constructors and formatting use 1-based
//! vertices; the bit positions are an implementation detail.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground-set size.
pub const MAX_VERTICES: usize = 63;

/// A subset of the ground set.
///
/// `Ord` is the canonical face ordering: by cardinality first, then
/// lexicographically on the sorted vertex lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a face from 1-based vertex labels. Returns `None` if a label
    /// is zero or exceeds [`MAX_VERTICES`].
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Option<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return None;
            }
            bits |= 1 << (v - 1);
        }
        Some(Face(bits))
    }

    /// Parses the compact digit notation used for small examples, e.g.
    /// `"1245"` for {1,2,4,5}. Only vertices 1..=9 can be written this way;
    /// `""` is the empty face.
    pub fn from_digits(s: &str) -> Option<Self> {
        let mut verts = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = c.to_digit(10)? as usize;
            verts.push(d);
        }
        Face::from_vertices(verts)
    }

    /// The singleton face `{v}` (1-based).
    pub fn vertex(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1 << (v - 1))
    }

    /// The full face `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Dimension `|F| - 1`; the empty face has dimension -1.
    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=64).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, v: usize) -> Face {
        Face(self.0 | (1 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << (v - 1)))
    }

    /// Complement within the ground set `{1, ..., n}`.
    pub fn complement(self, n: usize) -> Face {
        Face(!self.0 & Face::full(n).0)
    }

    /// Number of elements of the face strictly smaller than `v`.
    pub fn rank_of(self, v: usize) -> usize {
        (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize
    }

    /// Largest vertex, or 0 for the empty face.
    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Vertices in increasing order (1-based).
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

/// Iterator over the vertices of a face, smallest first.
#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Same cardinality: the first differing position in the sorted lists
        // is the lowest bit where they differ; whoever owns it is smaller.
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    /// Digit notation when every vertex is a single digit (`1245`, `∅`),
    /// braces otherwise (`{1,10,12}`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.max_vertex() <= 9 {
            for v in self.vertices() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{{")?;
            for (k, v) in self.vertices().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")
        }
    }
}

/// Iterates over all subsets of `{1, ..., n}` (as faces), in bit order.
pub fn power_set(n: usize) -> impl Iterator<Item = Face> {
    assert!(n < 64, "power set of {n} vertices is not enumerable");
    (0..(1u64 << n)).map(Face)
}

/// Iterates over all subsets of `mask`.
pub fn subsets_of(mask: Face) -> impl Iterator<Item = Face> {
    let m = mask.0;
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == m { None } else { Some((out.wrapping_sub(m)) & m) };
        Some(Face(out))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Face {
        Face::from_digits(s).unwrap()
    }

    #[test]
    fn dimension_and_cardinality() {
        assert_eq!(Face::EMPTY.dim(), -1);
        assert_eq!(f("1245").dim(), 3);
        assert_eq!(f("1245").to_vec(), vec![1, 2, 4, 5]);
    }

    #[test]
    fn canonical_order() {
        let mut faces = [f("135"), f("12"), f("124"), f(""), f("3"), f("1")];
        faces.sort();
        let shown: Vec<String> = faces.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["∅", "1", "3", "12", "124", "135"]);
        // lexicographic on sorted lists, not numeric value of the bitset
        assert!(f("16") < f("23"));
        assert!(f("125") < f("134"));
    }

    #[test]
    fn rank_of_counts_smaller_elements() {
        let face = f("1356");
        assert_eq!(face.rank_of(1), 0);
        assert_eq!(face.rank_of(5), 2);
        assert_eq!(face.rank_of(6), 3);
    }

    #[test]
    fn subsets_enumeration() {
        let all: Vec<Face> = subsets_of(f("136")).collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s.is_subset(f("136"))));
        assert_eq!(subsets_of(Face::EMPTY).count(), 1);
    }

    #[test]
    fn complement_and_display() {
        assert_eq!(f("1245").complement(6), f("36"));
        assert_eq!(Face::from_vertices([1, 10, 12]).unwrap().to_string(), "{1,10,12}");
        assert!(Face::from_vertices([0]).is_none());
        assert!(Face::from_vertices([64]).is_none());
    }
}
