//! Bivariate polynomials in `t` and `q` as sparse term maps, and the
//! spectrum polynomial `S_Φ(t,q) = Σ_i t^i Σ_{λ ∈ s_{i-1}(Φ)} q^λ`.
//!
//! Exact polynomials have integer `q`-exponents and signed integer
//! coefficients. When a spectrum is not integral the `q`-exponents are
//! floating-point eigenvalues; such numeric polynomials merge exponents that
//! agree within a tolerance.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::laplacian::{spectrum, DimSpectrum, SpectrumReport};
use crate::Tolerances;

/// Exact polynomial: `(t exponent, q exponent) → coefficient`, zero terms
/// pruned.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    terms: BTreeMap<(u32, u64), i64>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        ExactPoly::default()
    }

    pub fn monomial(t: u32, q: u64, c: i64) -> Self {
        let mut p = ExactPoly::zero();
        p.add_term(t, q, c);
        p
    }

    pub fn add_term(&mut self, t: u32, q: u64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((t, q)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(t, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64, i64)> + '_ {
        self.terms.iter().map(|(&(t, q), &c)| (t, q, c))
    }

    pub fn coefficient(&self, t: u32, q: u64) -> i64 {
        self.terms.get(&(t, q)).copied().unwrap_or(0)
    }

    /// `[t^i] p` as a map `q exponent → coefficient`.
    pub fn coefficient_of_t(&self, i: u32) -> BTreeMap<u64, i64> {
        self.terms.range((i, 0)..=(i, u64::MAX)).map(|(&(_, q), &c)| (q, c)).collect()
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(t, _)| t).max()
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (t, q, c) in other.terms() {
            out.add_term(t, q, c);
        }
        out
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (t, q, c) in self.terms() {
            out.add_term(t, q, c * k);
        }
        out
    }

    /// Multiply by `q^k`.
    pub fn scale_q(&self, k: u64) -> ExactPoly {
        ExactPoly { terms: self.terms.iter().map(|(&(t, q), &c)| ((t, q + k), c)).collect() }
    }

    /// Multiply by `t^k`.
    pub fn scale_t(&self, k: u32) -> ExactPoly {
        ExactPoly { terms: self.terms.iter().map(|(&(t, q), &c)| ((t + k, q), c)).collect() }
    }

    pub fn multiply(&self, other: &ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (t1, q1, c1) in self.terms() {
            for (t2, q2, c2) in other.terms() {
                out.add_term(t1 + t2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    /// `t^n p(t^{-1}, q)`.
    pub fn t_reversal(&self, n: u32) -> Result<ExactPoly> {
        if let Some(d) = self.max_t_degree().filter(|&d| d > n) {
            return Err(Error::DegreeOverflow { degree: d, bound: n });
        }
        Ok(ExactPoly { terms: self.terms.iter().map(|(&(t, q), &c)| ((n - t, q), c)).collect() })
    }

    /// Evaluate at `q = q0` (as a polynomial in `t`, `t exponent → value`).
    pub fn at_q(&self, q0: i64) -> BTreeMap<u32, i64> {
        let mut out: BTreeMap<u32, i64> = BTreeMap::new();
        for (t, q, c) in self.terms() {
            *out.entry(t).or_default() += c * q0.pow(q as u32);
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Evaluate at `t = t0` (as a polynomial in `q`).
    pub fn at_t(&self, t0: i64) -> BTreeMap<u64, i64> {
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        for (t, q, c) in self.terms() {
            *out.entry(q).or_default() += c * t0.pow(t);
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn to_numeric(&self, group_tol: f64) -> NumericPoly {
        NumericPoly::from_terms(self.terms().map(|(t, q, c)| (t, q as f64, c)).collect(), group_tol)
    }
}

/// Numeric polynomial: `(t exponent, real q exponent, coefficient)` terms,
/// with `q` exponents closer than `group_tol` merged.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoly {
    terms: Vec<(u32, f64, i64)>,
    group_tol: f64,
}

impl NumericPoly {
    pub fn from_terms(terms: Vec<(u32, f64, i64)>, group_tol: f64) -> Self {
        let mut p = NumericPoly { terms, group_tol };
        p.normalize();
        p
    }

    /// Sort, then merge runs whose `q` stays within `group_tol` of the run's
    /// first exponent. Zero coefficients are dropped.
    fn normalize(&mut self) {
        self.terms.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut merged: Vec<(u32, f64, i64)> = Vec::with_capacity(self.terms.len());
        let mut anchor = f64::NAN;
        for &(t, q, c) in &self.terms {
            match merged.last_mut() {
                Some(last) if last.0 == t && (q - anchor).abs() <= self.group_tol => last.2 += c,
                _ => {
                    anchor = q;
                    merged.push((t, q, c));
                }
            }
        }
        merged.retain(|term| term.2 != 0);
        self.terms = merged;
    }

    pub fn terms(&self) -> &[(u32, f64, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of_t(&self, i: u32) -> Vec<(f64, i64)> {
        self.terms.iter().filter(|x| x.0 == i).map(|&(_, q, c)| (q, c)).collect()
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.iter().map(|x| x.0).max()
    }

    /// Terms of `t`-degree `k`, moved to degree 0.
    pub fn t_slice(&self, k: u32) -> NumericPoly {
        let terms = self.terms.iter().filter(|x| x.0 == k).map(|&(_, q, c)| (0, q, c)).collect();
        NumericPoly { terms, group_tol: self.group_tol }
    }

    pub fn add(&self, other: &NumericPoly) -> NumericPoly {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        NumericPoly::from_terms(terms, self.group_tol.max(other.group_tol))
    }

    pub fn scale(&self, k: i64) -> NumericPoly {
        NumericPoly::from_terms(self.terms.iter().map(|&(t, q, c)| (t, q, c * k)).collect(), self.group_tol)
    }

    pub fn scale_q(&self, k: u64) -> NumericPoly {
        NumericPoly::from_terms(self.terms.iter().map(|&(t, q, c)| (t, q + k as f64, c)).collect(), self.group_tol)
    }

    pub fn scale_t(&self, k: u32) -> NumericPoly {
        NumericPoly::from_terms(self.terms.iter().map(|&(t, q, c)| (t + k, q, c)).collect(), self.group_tol)
    }

    pub fn multiply(&self, other: &NumericPoly) -> NumericPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(t1, q1, c1) in &self.terms {
            for &(t2, q2, c2) in &other.terms {
                terms.push((t1 + t2, q1 + q2, c1 * c2));
            }
        }
        NumericPoly::from_terms(terms, self.group_tol.max(other.group_tol))
    }

    pub fn t_reversal(&self, n: u32) -> Result<NumericPoly> {
        if let Some(d) = self.max_t_degree().filter(|&d| d > n) {
            return Err(Error::DegreeOverflow { degree: d, bound: n });
        }
        Ok(NumericPoly::from_terms(self.terms.iter().map(|&(t, q, c)| (n - t, q, c)).collect(), self.group_tol))
    }

    /// Term-by-term comparison: same `t` exponents, `q` within the grouping
    /// tolerance, identical coefficients.
    pub fn approx_eq(&self, other: &NumericPoly) -> bool {
        self.sub(other).is_zero()
    }

    pub fn sub(&self, other: &NumericPoly) -> NumericPoly {
        self.add(&other.scale(-1))
    }
}

/// Whether a polynomial is exact (integral spectra) or numeric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

/// A spectrum polynomial or any signed combination of them.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumPolynomial {
    Exact(ExactPoly),
    Numeric(NumericPoly),
}

impl SpectrumPolynomial {
    /// Builds `S_Φ` from computed spectra; exact iff every dimension is.
    pub fn from_report(report: &SpectrumReport, tol: &Tolerances) -> Self {
        if report.is_integral() {
            let mut p = ExactPoly::zero();
            for d in &report.dims {
                if let DimSpectrum::Exact(values) = &d.values {
                    for &lambda in values {
                        p.add_term((d.dim + 1) as u32, lambda, 1);
                    }
                }
            }
            SpectrumPolynomial::Exact(p)
        } else {
            let mut terms = Vec::new();
            for d in &report.dims {
                for lambda in d.values.as_f64() {
                    terms.push(((d.dim + 1) as u32, lambda, 1));
                }
            }
            SpectrumPolynomial::Numeric(NumericPoly::from_terms(terms, tol.group))
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            SpectrumPolynomial::Exact(_) => Mode::Exact,
            SpectrumPolynomial::Numeric(_) => Mode::Numeric,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactPoly> {
        match self {
            SpectrumPolynomial::Exact(p) => Some(p),
            SpectrumPolynomial::Numeric(_) => None,
        }
    }

    pub fn to_numeric(&self, tol: &Tolerances) -> NumericPoly {
        match self {
            SpectrumPolynomial::Exact(p) => p.to_numeric(tol.group),
            SpectrumPolynomial::Numeric(p) => p.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SpectrumPolynomial::Exact(p) => p.is_zero(),
            SpectrumPolynomial::Numeric(p) => p.is_zero(),
        }
    }

    fn combine(
        &self,
        other: &SpectrumPolynomial,
        exact: impl Fn(&ExactPoly, &ExactPoly) -> ExactPoly,
        numeric: impl Fn(&NumericPoly, &NumericPoly) -> NumericPoly,
    ) -> SpectrumPolynomial {
        match (self, other) {
            (SpectrumPolynomial::Exact(a), SpectrumPolynomial::Exact(b)) => SpectrumPolynomial::Exact(exact(a, b)),
            _ => {
                let tol = Tolerances { group: self.group_tol().max(other.group_tol()), ..Tolerances::default() };
                SpectrumPolynomial::Numeric(numeric(&self.to_numeric(&tol), &other.to_numeric(&tol)))
            }
        }
    }

    fn group_tol(&self) -> f64 {
        match self {
            SpectrumPolynomial::Exact(_) => Tolerances::default().group,
            SpectrumPolynomial::Numeric(p) => p.group_tol,
        }
    }

    pub fn add(&self, other: &SpectrumPolynomial) -> SpectrumPolynomial {
        self.combine(other, ExactPoly::add, NumericPoly::add)
    }

    pub fn sub(&self, other: &SpectrumPolynomial) -> SpectrumPolynomial {
        self.combine(other, ExactPoly::sub, NumericPoly::sub)
    }

    pub fn multiply(&self, other: &SpectrumPolynomial) -> SpectrumPolynomial {
        self.combine(other, ExactPoly::multiply, NumericPoly::multiply)
    }

    pub fn scale(&self, k: i64) -> SpectrumPolynomial {
        match self {
            SpectrumPolynomial::Exact(p) => SpectrumPolynomial::Exact(p.scale(k)),
            SpectrumPolynomial::Numeric(p) => SpectrumPolynomial::Numeric(p.scale(k)),
        }
    }

    pub fn scale_q(&self, k: u64) -> SpectrumPolynomial {
        match self {
            SpectrumPolynomial::Exact(p) => SpectrumPolynomial::Exact(p.scale_q(k)),
            SpectrumPolynomial::Numeric(p) => SpectrumPolynomial::Numeric(p.scale_q(k)),
        }
    }

    pub fn scale_t(&self, k: u32) -> SpectrumPolynomial {
        match self {
            SpectrumPolynomial::Exact(p) => SpectrumPolynomial::Exact(p.scale_t(k)),
            SpectrumPolynomial::Numeric(p) => SpectrumPolynomial::Numeric(p.scale_t(k)),
        }
    }

    /// Coefficient of `t^k` as a polynomial in `q` alone.
    pub fn t_slice(&self, k: u32) -> SpectrumPolynomial {
        match self {
            SpectrumPolynomial::Exact(p) => {
                let mut out = ExactPoly::zero();
                for (q, c) in p.coefficient_of_t(k) {
                    out.add_term(0, q, c);
                }
                SpectrumPolynomial::Exact(out)
            }
            SpectrumPolynomial::Numeric(p) => SpectrumPolynomial::Numeric(p.t_slice(k)),
        }
    }

    pub fn t_reversal(&self, n: u32) -> Result<SpectrumPolynomial> {
        Ok(match self {
            SpectrumPolynomial::Exact(p) => SpectrumPolynomial::Exact(p.t_reversal(n)?),
            SpectrumPolynomial::Numeric(p) => SpectrumPolynomial::Numeric(p.t_reversal(n)?),
        })
    }

    /// Equality that compares numeric exponents up to the grouping tolerance.
    pub fn approx_eq(&self, other: &SpectrumPolynomial) -> bool {
        self.sub(other).is_zero()
    }

    /// `{"terms": [{"t": 1, "q": 2, "c": 2}, ...], "mode": "exact"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = match self {
            SpectrumPolynomial::Exact(p) => p.terms().map(|(t, q, c)| json!({"t": t, "q": q, "c": c})).collect(),
            SpectrumPolynomial::Numeric(p) => {
                p.terms().iter().map(|&(t, q, c)| json!({"t": t, "q": q, "c": c})).collect()
            }
        };
        json!({ "terms": terms, "mode": self.mode().as_str() })
    }
}

/// `S_Φ(t,q)`, exact when every Laplacian of `Φ` has integral spectrum.
pub fn spectrum_polynomial(phi: &Interval, tol: &Tolerances) -> Result<SpectrumPolynomial> {
    Ok(SpectrumPolynomial::from_report(&spectrum(phi, tol)?, tol))
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: i64, t: u32, q: &str, q_is_zero: bool) -> fmt::Result {
    let sign = if c < 0 { "-" } else { "+" };
    if first {
        if c < 0 {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    let mag = c.unsigned_abs();
    let mut parts: Vec<String> = Vec::new();
    if t > 0 {
        parts.push(if t == 1 { "t".into() } else { format!("t^{t}") });
    }
    if !q_is_zero {
        parts.push(format!("q^{q}"));
    }
    if parts.is_empty() {
        write!(f, "{mag}")
    } else if mag == 1 {
        write!(f, "{}", parts.join("·"))
    } else {
        write!(f, "{mag}·{}", parts.join("·"))
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (t, q, c)) in self.terms().enumerate() {
            write_term(f, k == 0, c, t, &q.to_string(), q == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for NumericPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, &(t, q, c)) in self.terms.iter().enumerate() {
            write_term(f, k == 0, c, t, &format!("{q:.6}"), q == 0.0)?;
        }
        Ok(())
    }
}

impl fmt::Display for SpectrumPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumPolynomial::Exact(p) => fmt::Display::fmt(p, f),
            SpectrumPolynomial::Numeric(p) => fmt::Display::fmt(p, f),
        }
    }
}
