use thiserror::Error;

use crate::face::Face;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of {0} vertices exceeds the supported maximum of 63")]
    GroundSetTooLarge(usize),

    #[error("vertex {vertex} is outside the ground set 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("face {face} does not fit in a ground set of {n} vertices")]
    FaceOutOfRange { face: Face, n: usize },

    #[error("not an interval: {lower} ⊆ {middle} ⊆ {upper} with {lower}, {upper} present but {middle} missing")]
    IntervalViolation { lower: Face, middle: Face, upper: Face },

    #[error("not a simplicial complex: {face} is present but its subface {missing} is not")]
    NotDownwardClosed { face: Face, missing: Face },

    #[error("not a subcomplex: {0} lies in the smaller complex but not the larger")]
    NotSubcomplex(Face),

    #[error("ground sets differ ({left} vs {right} vertices)")]
    GroundMismatch { left: usize, right: usize },

    #[error("intervals are not totally unrelated: {left} and {right} are comparable")]
    NotTotallyUnrelated { left: Face, right: Face },

    #[error("face {0} occurs in both summands")]
    OverlappingFaces(Face),

    #[error("vertex supports overlap on {0}")]
    OverlappingSupports(Face),

    #[error("invalid skeleton range [{low}, {high}]")]
    InvalidSkeleton { low: i32, high: i32 },

    #[error("faces {left} and {right} have different cardinalities")]
    UnequalCardinality { left: Face, right: Face },

    #[error("t-degree {degree} exceeds reversal bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },

    #[error("symmetric eigensolver did not converge in dimension {0}")]
    EigensolverFailure(i32),

    #[error("interval occupies dimensions {low}..={high}, not two adjacent ones")]
    NotTwoDimensional { low: i32, high: i32 },

    #[error("invalid rank {rank} for a ground set of {n} elements")]
    InvalidRank { rank: usize, n: usize },

    #[error("field order {0} is not a supported prime (2..=13)")]
    NonPrimeField(u64),

    #[error("{0} is not independent")]
    NotIndependent(Face),

    #[error("adding element {element} to {set} does not create a dependency")]
    NotDependentWithElement { set: Face, element: usize },

    #[error("{set} + {element} contains more than one circuit")]
    CircuitNotUnique { set: Face, element: usize },

    #[error("independent sets of the contraction are not contained in those of the deletion (witness {0})")]
    ContainmentFailure(Face),

    #[error("element {0} is a loop")]
    LoopElement(usize),

    #[error("vertex {0} lies in a face")]
    NotALoop(usize),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
