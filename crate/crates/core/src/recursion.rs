//! The spectral recursion
//! `S_Φ = q S_{Φ-e} + q t S_{Φ/e} + (1-q) S_{Φ||e}` and its residual
//! `S_Φ - q S_{Φ-e} - q t S_{Φ/e} - (1-q) S_{Φ||e}`.
//!
//! `𝒮_i(Φ, e)` is indexed by dimension like `s_i`: it is the coefficient of
//! `t^{i+1}` in the residual.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::Result;
use crate::interval::Interval;
use crate::laplacian::{betti, euler_characteristic};
use crate::poly::{spectrum_polynomial, ExactPoly, Mode, SpectrumPolynomial};
use crate::Tolerances;

/// The four spectrum polynomials entering the recursion at one vertex.
#[derive(Clone, Debug)]
pub struct RecursionTerms {
    pub whole: SpectrumPolynomial,
    pub deletion: SpectrumPolynomial,
    pub contraction: SpectrumPolynomial,
    pub reduction: SpectrumPolynomial,
}

impl RecursionTerms {
    pub fn compute(phi: &Interval, e: usize, tol: &Tolerances) -> Result<Self> {
        phi.check_vertex(e)?;
        Ok(RecursionTerms {
            whole: spectrum_polynomial(phi, tol)?,
            deletion: spectrum_polynomial(&phi.delete(e), tol)?,
            contraction: spectrum_polynomial(&phi.contract(e), tol)?,
            reduction: spectrum_polynomial(&phi.reduce(e), tol)?,
        })
    }

    /// Signed residual. Exact only if all four inputs are exact; a single
    /// numeric input moves the whole computation to numeric arithmetic.
    pub fn residual(&self) -> SpectrumPolynomial {
        let q_del = self.deletion.scale_q(1);
        let qt_con = self.contraction.scale_q(1).scale_t(1);
        let red = self.reduction.clone();
        let q_red = self.reduction.scale_q(1);
        self.whole.sub(&q_del).sub(&qt_con).sub(&red).add(&q_red)
    }
}

/// Outcome of checking the recursion at one vertex.
#[derive(Clone, Debug)]
pub struct RecursionVerdict {
    pub vertex: usize,
    pub holds: bool,
    pub mode: Mode,
    pub residual: SpectrumPolynomial,
}

impl RecursionVerdict {
    fn from_terms(vertex: usize, terms: &RecursionTerms) -> Self {
        let residual = terms.residual();
        RecursionVerdict { vertex, holds: residual.is_zero(), mode: residual.mode(), residual }
    }

    /// Exact verdicts are proofs for the instance; numeric ones are not.
    pub fn is_rigorous(&self) -> bool {
        self.mode == Mode::Exact
    }

    /// Coefficient of `t^k` for exact residuals: `q exponent → coefficient`.
    pub fn exact_component(&self, k: u32) -> Option<BTreeMap<u64, i64>> {
        self.residual.as_exact().map(|p| p.coefficient_of_t(k))
    }

    /// `𝒮_i(Φ, e)`, the coefficient of `t^{i+1}`, as a polynomial in `q`.
    pub fn component(&self, i: i32) -> SpectrumPolynomial {
        match u32::try_from(i + 1) {
            Ok(k) => self.residual.t_slice(k),
            Err(_) => self.residual.scale(0),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut by_degree = serde_json::Map::new();
        match &self.residual {
            SpectrumPolynomial::Exact(p) => {
                for (t, q, c) in p.terms() {
                    by_degree
                        .entry(t.to_string())
                        .or_insert_with(|| json!([]))
                        .as_array_mut()
                        .expect("array")
                        .push(json!({"q": q, "c": c}));
                }
            }
            SpectrumPolynomial::Numeric(p) => {
                for &(t, q, c) in p.terms() {
                    by_degree
                        .entry(t.to_string())
                        .or_insert_with(|| json!([]))
                        .as_array_mut()
                        .expect("array")
                        .push(json!({"q": q, "c": c}));
                }
            }
        }
        json!({
            "vertex": self.vertex,
            "holds": self.holds,
            "mode": self.mode.as_str(),
            "rigorous": self.is_rigorous(),
            "residual": self.residual.to_string(),
            "residual_by_degree": by_degree,
        })
    }
}

/// Checks the recursion for `Φ` at vertex `e`.
pub fn recursion_residual(phi: &Interval, e: usize, tol: &Tolerances) -> Result<RecursionVerdict> {
    let terms = RecursionTerms::compute(phi, e, tol)?;
    Ok(RecursionVerdict::from_terms(e, &terms))
}

/// Verdicts at every vertex `1..=n`.
pub fn check_recursion_all_vertices(phi: &Interval, tol: &Tolerances) -> Result<BTreeMap<usize, RecursionVerdict>> {
    let whole = spectrum_polynomial(phi, tol)?;
    let mut out = BTreeMap::new();
    for e in 1..=phi.ground_size() {
        let terms = RecursionTerms {
            whole: whole.clone(),
            deletion: spectrum_polynomial(&phi.delete(e), tol)?,
            contraction: spectrum_polynomial(&phi.contract(e), tol)?,
            reduction: spectrum_polynomial(&phi.reduce(e), tol)?,
        };
        out.insert(e, RecursionVerdict::from_terms(e, &terms));
    }
    Ok(out)
}

/// Whether the recursion holds at every vertex, and whether that verdict is
/// exact at all of them.
pub fn satisfies_recursion(phi: &Interval, tol: &Tolerances) -> Result<(bool, bool)> {
    let verdicts = check_recursion_all_vertices(phi, tol)?;
    let holds = verdicts.values().all(|v| v.holds);
    let exact = verdicts.values().all(|v| v.is_rigorous());
    Ok((holds, exact))
}

/// The recursion specialised at `q = 0`, `q = 1`, `t = 0` and `t = -1`,
/// each checked through the combinatorial invariant it reduces to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationReport {
    pub vertex: usize,
    /// `β̃_i(Φ) = β̃_i(Φ||e)` for all `i`.
    pub q_zero: bool,
    /// `f_i(Φ) = f_i(Φ-e) + f_{i-1}(Φ/e)` for all `i`.
    pub q_one: bool,
    /// `S(0,q) = q S_{Φ-e}(0,q) + (1-q) S_{Φ||e}(0,q)` with
    /// `S(0,q) = q^{f_0}` if `∅ ∈ Φ` and `0` otherwise.
    pub t_zero: bool,
    /// `χ(Φ) = χ(Φ||e)` and `χ(Φ) = χ(Φ-e) - χ(Φ/e)`.
    pub t_minus_one: bool,
}

impl SpecializationReport {
    pub fn all_pass(&self) -> bool {
        self.q_zero && self.q_one && self.t_zero && self.t_minus_one
    }
}

/// `S_Φ(0, q)` from the face counts alone.
fn s_at_t_zero(phi: &Interval) -> ExactPoly {
    if phi.contains(crate::Face::EMPTY) {
        ExactPoly::monomial(0, phi.f(0) as u64, 1)
    } else {
        ExactPoly::zero()
    }
}

/// Laplacian-free check of the four specialisations at vertex `e`.
pub fn specialization_checks(phi: &Interval, e: usize) -> Result<SpecializationReport> {
    phi.check_vertex(e)?;
    let del = phi.delete(e);
    let con = phi.contract(e);
    let red = phi.reduce(e);

    let q_zero = betti(phi) == betti(&red);

    let n = phi.ground_size() as i32;
    let q_one = (-1..n).all(|i| phi.f(i) == del.f(i) + con.f(i - 1));

    let rhs = s_at_t_zero(&del).scale_q(1).add(&s_at_t_zero(&red)).sub(&s_at_t_zero(&red).scale_q(1));
    let t_zero = s_at_t_zero(phi) == rhs;

    let chi = euler_characteristic(phi);
    let t_minus_one =
        chi == euler_characteristic(&red) && chi == euler_characteristic(&del) - euler_characteristic(&con);

    Ok(SpecializationReport { vertex: e, q_zero, q_one, t_zero, t_minus_one })
}
