//! Intervals in the Boolean algebra (relative simplicial pairs), their
//! combinatorial Laplacians, spectrum polynomials, and a verifier for the
//! Laplacian spectral recursion
//!
//! `S_Φ(t,q) = q S_{Φ-e}(t,q) + q t S_{Φ/e}(t,q) + (1-q) S_{Φ||e}(t,q)`.
//!
//! Vertices are 1-based throughout the public API.

pub mod error;
pub mod face;
pub mod fuzz;
pub mod interval;
pub mod json;
pub mod laplacian;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod random;
pub mod recursion;
pub mod shifted;

pub use error::{Error, Result};
pub use face::Face;
pub use interval::{from_pair, Interval, SimplicialComplex};

/// Numeric tolerances used when spectra are not integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues closer than this to zero are reported as zero.
    pub zero: f64,
    /// Eigenvalues closer than this are treated as equal.
    pub group: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero: 1e-9, group: 1e-6 }
    }
}
