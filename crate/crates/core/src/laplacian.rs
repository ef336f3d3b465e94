//! Boundary operators on relative chains, combinatorial Laplacians, their
//! spectra, and reduced Betti numbers.
//!
//! Sign convention: `∂[F] = Σ_{v ∈ F} (-1)^{pos(v, F)} [F - v]` where
//! `pos(v, F)` counts the elements of `F` smaller than `v`. Faces of the
//! boundary that are not in the interval are dropped (they vanish in the
//! quotient of chain groups).
//!
//! Spectra are computed exactly whenever the eigenvalues are integers: a
//! floating-point eigensolve proposes integer candidates and each
//! candidate's multiplicity is then certified as the exact kernel dimension
//! of `L - λI`. A dimension is reported as exact only when the certified
//! multiplicities account for the whole matrix.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::interval::Interval;
use crate::linalg::{rank_i64, ExactMatrix};
use crate::Tolerances;

/// Sparse signed boundary between consecutive dimensions.
struct Boundary {
    rows: usize,
    cols: usize,
    /// `(row, col, sign)` triples.
    entries: Vec<(usize, usize, i64)>,
}

impl Boundary {
    fn dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.rows * self.cols];
        for &(r, c, s) in &self.entries {
            out[r * self.cols + c] = s;
        }
        out
    }
}

fn index_faces(faces: &[Face]) -> HashMap<Face, usize> {
    faces.iter().enumerate().map(|(k, &f)| (f, k)).collect()
}

fn boundary(phi: &Interval, i: i32) -> Boundary {
    let lower = phi.faces_of_dim(i - 1);
    let upper = phi.faces_of_dim(i);
    let index = index_faces(&lower);
    let mut entries = Vec::new();
    for (c, &f) in upper.iter().enumerate() {
        for v in f.vertices() {
            if let Some(&r) = index.get(&f.without(v)) {
                let sign = if f.rank_of(v) % 2 == 0 { 1 } else { -1 };
                entries.push((r, c, sign));
            }
        }
    }
    Boundary { rows: lower.len(), cols: upper.len(), entries }
}

/// Matrix of `∂_i : C_i → C_{i-1}`; rows indexed by the `(i-1)`-faces and
/// columns by the `i`-faces, both in canonical order.
pub fn boundary_matrix(phi: &Interval, i: i32) -> ExactMatrix {
    let b = boundary(phi, i);
    ExactMatrix::from_i64(b.rows, b.cols, &b.dense())
}

/// `L_i` as a dense integer matrix of side `f_i`.
fn laplacian_i64(phi: &Interval, i: i32) -> (usize, Vec<i64>) {
    let down = boundary(phi, i);
    let up = boundary(phi, i + 1);
    let size = down.cols;
    debug_assert!(up.rows == size);
    let mut out = vec![0i64; size * size];

    // ∂_{i+1} ∂_{i+1}^T: rows of ∂_{i+1} indexed by i-faces
    let mut by_col: Vec<Vec<(usize, i64)>> = vec![Vec::new(); up.cols];
    for &(r, c, s) in &up.entries {
        by_col[c].push((r, s));
    }
    for col in &by_col {
        for &(a, sa) in col {
            for &(b, sb) in col {
                out[a * size + b] += sa * sb;
            }
        }
    }

    // ∂_i^T ∂_i: columns of ∂_i indexed by i-faces
    let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); down.rows];
    for &(r, c, s) in &down.entries {
        by_row[r].push((c, s));
    }
    for row in &by_row {
        for &(a, sa) in row {
            for &(b, sb) in row {
                out[a * size + b] += sa * sb;
            }
        }
    }
    (size, out)
}

/// `L_i = ∂_{i+1} ∂_{i+1}^* + ∂_i^* ∂_i`, square of side `f_i`.
pub fn laplacian(phi: &Interval, i: i32) -> ExactMatrix {
    let (size, data) = laplacian_i64(phi, i);
    ExactMatrix::from_i64(size, size, &data)
}

/// Eigenvalues of one Laplacian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DimSpectrum {
    #[serde(rename = "exact")]
    Exact(Vec<u64>),
    #[serde(rename = "numeric")]
    Numeric(Vec<f64>),
}

impl DimSpectrum {
    pub fn len(&self) -> usize {
        match self {
            DimSpectrum::Exact(v) => v.len(),
            DimSpectrum::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DimSpectrum::Exact(_))
    }

    pub fn as_f64(&self) -> Vec<f64> {
        match self {
            DimSpectrum::Exact(v) => v.iter().map(|&x| x as f64).collect(),
            DimSpectrum::Numeric(v) => v.clone(),
        }
    }

    /// Non-zero eigenvalues, sorted. Values within `zero_tol` of zero are
    /// dropped in the numeric case.
    pub fn nonzero(&self, zero_tol: f64) -> Vec<f64> {
        let mut v: Vec<f64> = self.as_f64().into_iter().filter(|x| x.abs() > zero_tol).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Spectrum of `L_i` for one dimension `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DimReport {
    pub dim: i32,
    pub values: DimSpectrum,
    /// Exact multiplicity of the eigenvalue 0, certified by elimination
    /// even when the rest of the spectrum is not integral.
    pub kernel_dim: usize,
}

/// Laplacian spectra of an interval in every dimension `-1..=n-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub ground_size: usize,
    pub dims: Vec<DimReport>,
}

impl SpectrumReport {
    pub fn is_integral(&self) -> bool {
        self.dims.iter().all(|d| d.values.is_exact())
    }

    pub fn dim(&self, i: i32) -> Option<&DimReport> {
        self.dims.iter().find(|d| d.dim == i)
    }

    /// Eigenvalue multiset of `L_i` as floats (empty outside the range).
    pub fn values_f64(&self, i: i32) -> Vec<f64> {
        self.dim(i).map(|d| d.values.as_f64()).unwrap_or_default()
    }

    /// Exact eigenvalue multiset of `L_i`, if integral.
    pub fn exact_values(&self, i: i32) -> Option<Vec<u64>> {
        match self.dim(i) {
            None => Some(Vec::new()),
            Some(DimReport { values: DimSpectrum::Exact(v), .. }) => Some(v.clone()),
            Some(_) => None,
        }
    }

    /// `{"dims": {"-1": {"exact": [..]}, ...}, "integral": bool}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut dims = serde_json::Map::new();
        for d in &self.dims {
            dims.insert(d.dim.to_string(), serde_json::to_value(&d.values).expect("serializable"));
        }
        serde_json::json!({ "dims": dims, "integral": self.is_integral() })
    }
}

fn components(size: usize, data: &[i64]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for r in 0..size {
        for c in r + 1..size {
            if data[r * size + c] != 0 {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..size {
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(k);
    }
    groups.into_values().collect()
}

fn submatrix(size: usize, data: &[i64], idx: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(idx.len() * idx.len());
    for &r in idx {
        for &c in idx {
            out.push(data[r * size + c]);
        }
    }
    out
}

fn symmetric_eigenvalues(size: usize, data: &[i64]) -> Option<Vec<f64>> {
    if size == 0 {
        return Some(Vec::new());
    }
    let m = DMatrix::from_row_slice(size, size, &data.iter().map(|&x| x as f64).collect::<Vec<_>>());
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 100_000)?;
    Some(eig.eigenvalues.iter().copied().collect())
}

fn kernel_dim_shifted(size: usize, data: &[i64], lambda: i64) -> usize {
    let mut m = data.to_vec();
    for k in 0..size {
        m[k * size + k] -= lambda;
    }
    size - rank_i64(size, size, &m)
}

/// Result of analysing one connected block of a Laplacian.
struct BlockSpectrum {
    exact: BTreeMap<u64, usize>,
    numeric: Option<Vec<f64>>,
    kernel: usize,
}

fn analyse_block(size: usize, data: &[i64]) -> BlockSpectrum {
    let numeric = symmetric_eigenvalues(size, data);
    let bound = ExactMatrix::from_i64(size, size, data).gershgorin_bound().to_i64().unwrap_or(i64::MAX);
    let candidates: Vec<i64> = match &numeric {
        Some(vals) => {
            let mut c: Vec<i64> = vals
                .iter()
                .filter_map(|&x| {
                    let k = x.round();
                    ((x - k).abs() < 1e-4 && k >= 0.0 && k <= bound as f64).then_some(k as i64)
                })
                .chain(std::iter::once(0))
                .collect();
            c.sort_unstable();
            c.dedup();
            c
        }
        None => (0..=bound).collect(),
    };
    let mut exact = BTreeMap::new();
    let mut kernel = 0;
    let mut found = 0;
    for lambda in candidates {
        if found == size {
            break;
        }
        let m = kernel_dim_shifted(size, data, lambda);
        if lambda == 0 {
            kernel = m;
        }
        if m > 0 {
            exact.insert(lambda as u64, m);
            found += m;
        }
    }
    BlockSpectrum { exact, numeric, kernel }
}

fn clamp_and_sort(mut values: Vec<f64>, tol: &Tolerances) -> Vec<f64> {
    for x in values.iter_mut() {
        if x.abs() < tol.zero {
            *x = 0.0;
        }
    }
    values.sort_by(f64::total_cmp);
    values
}

fn dim_spectrum(phi: &Interval, i: i32, tol: &Tolerances) -> Result<DimReport> {
    let (size, data) = laplacian_i64(phi, i);
    let mut exact: BTreeMap<u64, usize> = BTreeMap::new();
    let mut numeric: Vec<f64> = Vec::with_capacity(size);
    let mut kernel = 0;
    let mut integral = true;
    let mut numeric_ok = true;
    for block in components(size, &data) {
        let sub = submatrix(size, &data, &block);
        let b = analyse_block(block.len(), &sub);
        kernel += b.kernel;
        let count: usize = b.exact.values().sum();
        if count != block.len() {
            integral = false;
        }
        for (&lambda, &m) in &b.exact {
            *exact.entry(lambda).or_default() += m;
        }
        match b.numeric {
            Some(v) => numeric.extend(v),
            None => numeric_ok = false,
        }
    }
    let values = if integral {
        DimSpectrum::Exact(exact.iter().flat_map(|(&l, &m)| std::iter::repeat_n(l, m)).collect())
    } else if numeric_ok {
        DimSpectrum::Numeric(clamp_and_sort(numeric, tol))
    } else {
        return Err(Error::EigensolverFailure(i));
    };
    Ok(DimReport { dim: i, values, kernel_dim: kernel })
}

fn dims(phi: &Interval) -> impl Iterator<Item = i32> {
    -1..phi.ground_size() as i32
}

/// Spectra of every Laplacian, exact wherever the eigenvalues are integral
/// and floating-point elsewhere.
///
/// Fails only if the floating-point eigensolver does not converge on a
/// dimension whose spectrum is not integral.
pub fn spectrum(phi: &Interval, tol: &Tolerances) -> Result<SpectrumReport> {
    let dims = dims(phi).map(|i| dim_spectrum(phi, i, tol)).collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport { ground_size: phi.ground_size(), dims })
}

/// [`spectrum`] with default tolerances.
pub fn exact_integer_spectrum(phi: &Interval) -> Result<SpectrumReport> {
    spectrum(phi, &Tolerances::default())
}

/// Floating-point spectra in every dimension, zeros clamped.
pub fn numeric_spectrum(phi: &Interval, tol: &Tolerances) -> Result<SpectrumReport> {
    let mut out = Vec::new();
    for i in dims(phi) {
        let (size, data) = laplacian_i64(phi, i);
        let values = symmetric_eigenvalues(size, &data).ok_or(Error::EigensolverFailure(i))?;
        let values = clamp_and_sort(values, tol);
        let kernel = values.iter().filter(|x| **x == 0.0).count();
        out.push(DimReport { dim: i, values: DimSpectrum::Numeric(values), kernel_dim: kernel });
    }
    Ok(SpectrumReport { ground_size: phi.ground_size(), dims: out })
}

fn boundary_rank(phi: &Interval, i: i32) -> usize {
    let b = boundary(phi, i);
    if b.entries.is_empty() {
        return 0;
    }
    rank_i64(b.rows, b.cols, &b.dense())
}

/// Reduced Betti numbers `β̃_i` for `i = -1..=n-1` (index `i + 1`), from
/// exact ranks of boundary matrices.
pub fn betti(phi: &Interval) -> Vec<usize> {
    let n = phi.ground_size() as i32;
    let ranks: Vec<usize> = (-1..=n).map(|i| boundary_rank(phi, i)).collect();
    (-1..n)
        .map(|i| {
            let k = (i + 1) as usize;
            phi.f(i) - ranks[k] - ranks[k + 1]
        })
        .collect()
}

/// `χ(Φ) = Σ_i (-1)^i f_i(Φ)`, the empty face counted at `i = -1`.
pub fn euler_characteristic(phi: &Interval) -> i64 {
    phi.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { -(f as i64) } else { f as i64 }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::tests::{phi_example, theta_example};

    fn square() -> Interval {
        Interval::full_simplex(2)
    }

    #[test]
    fn boundary_small_cases() {
        let phi = Interval::from_digit_strs(1, &["", "1"]).unwrap();
        assert_eq!(boundary_matrix(&phi, 0), ExactMatrix::from_i64(1, 1, &[1]));
        let single = Interval::from_digit_strs(2, &["12"]).unwrap();
        let b = boundary_matrix(&single, 1);
        assert_eq!((b.rows(), b.cols()), (0, 1));
        // ∂[12] = [2] - [1]
        let d1 = boundary_matrix(&square(), 1);
        assert_eq!(d1, ExactMatrix::from_i64(2, 1, &[-1, 1]));
        let d0 = boundary_matrix(&square(), 0);
        assert!((&d0 * &d1).is_zero());
    }

    #[test]
    fn boundary_squares_to_zero_on_examples() {
        for phi in [phi_example(), theta_example(), Interval::full_simplex(4)] {
            for i in 0..=phi.ground_size() as i32 {
                let prod = &boundary_matrix(&phi, i) * &boundary_matrix(&phi, i + 1);
                assert!(prod.is_zero(), "i = {i}");
            }
        }
    }

    #[test]
    fn laplacian_small_cases() {
        let single = Interval::from_digit_strs(3, &["13"]).unwrap();
        assert_eq!(laplacian(&single, 1), ExactMatrix::from_i64(1, 1, &[0]));
        let phi = Interval::from_digit_strs(1, &["", "1"]).unwrap();
        assert_eq!(laplacian(&phi, -1), ExactMatrix::from_i64(1, 1, &[1]));
        assert_eq!(laplacian(&phi, 0), ExactMatrix::from_i64(1, 1, &[1]));
        let l0 = laplacian(&square(), 0);
        assert_eq!(l0, ExactMatrix::from_i64(2, 2, &[2, 0, 0, 2]));
        assert!(l0.is_symmetric());
    }

    #[test]
    fn laplacian_matches_matrix_products() {
        let phi = theta_example();
        for i in -1..6 {
            let up = boundary_matrix(&phi, i + 1);
            let down = boundary_matrix(&phi, i);
            let expected = &(&up * &up.transpose()) + &(&down.transpose() * &down);
            assert_eq!(laplacian(&phi, i), expected, "i = {i}");
        }
    }

    #[test]
    fn full_simplex_spectrum() {
        let report = exact_integer_spectrum(&Interval::full_simplex(3)).unwrap();
        assert!(report.is_integral());
        assert_eq!(report.exact_values(-1).unwrap(), vec![3]);
        assert_eq!(report.exact_values(0).unwrap(), vec![3, 3, 3]);
        assert_eq!(report.exact_values(1).unwrap(), vec![3, 3, 3]);
        assert_eq!(report.exact_values(2).unwrap(), vec![3]);
    }

    #[test]
    fn single_face_and_square() {
        let single = Interval::from_digit_strs(2, &["12"]).unwrap();
        let report = exact_integer_spectrum(&single).unwrap();
        assert_eq!(report.exact_values(1).unwrap(), vec![0]);
        assert_eq!(report.exact_values(0).unwrap(), Vec::<u64>::new());
        let numeric = numeric_spectrum(&square(), &Tolerances::default()).unwrap();
        let s0 = numeric.values_f64(0);
        assert_eq!(s0.len(), 2);
        assert!(s0.iter().all(|x| (x - 2.0).abs() < 1e-9));
    }

    #[test]
    fn empty_interval_has_empty_spectra() {
        let report = numeric_spectrum(&Interval::empty(3), &Tolerances::default()).unwrap();
        assert!(report.dims.iter().all(|d| d.values.is_empty()));
        assert!(exact_integer_spectrum(&Interval::empty(3)).unwrap().is_integral());
    }

    #[test]
    fn non_integral_spectrum_falls_back() {
        // path 1-2-3-4 as a graph: eigenvalues 2 ± √2, 2, 0
        let path = crate::interval::SimplicialComplex::from_facets(
            4,
            ["12", "23", "34"].iter().map(|s| Face::from_digits(s).unwrap()),
        )
        .unwrap();
        let report = exact_integer_spectrum(path.as_interval()).unwrap();
        assert!(!report.is_integral());
        let s1 = report.values_f64(1);
        let expected = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (a, b) in s1.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(report.dim(1).unwrap().kernel_dim, 0);
        assert_eq!(report.dim(0).unwrap().kernel_dim, 0);
    }

    #[test]
    fn betti_of_hollow_triangle() {
        let hollow = crate::interval::SimplicialComplex::from_facets(
            3,
            ["12", "13", "23"].iter().map(|s| Face::from_digits(s).unwrap()),
        )
        .unwrap();
        assert_eq!(betti(hollow.as_interval()), vec![0, 0, 1, 0]);
        assert_eq!(euler_characteristic(hollow.as_interval()), -1 + 3 - 3);
    }

    #[test]
    fn kernel_matches_betti_on_examples() {
        for phi in [phi_example(), theta_example()] {
            let report = exact_integer_spectrum(&phi).unwrap();
            let b = betti(&phi);
            for d in &report.dims {
                assert_eq!(d.kernel_dim, b[(d.dim + 1) as usize]);
            }
        }
    }

    #[test]
    fn json_shape() {
        let report = exact_integer_spectrum(&Interval::full_simplex(1)).unwrap();
        let json = report.to_json();
        assert_eq!(json["dims"]["-1"]["exact"], serde_json::json!([1]));
        assert_eq!(json["dims"]["0"]["exact"], serde_json::json!([1]));
        assert_eq!(json["integral"], serde_json::json!(true));
    }
}
