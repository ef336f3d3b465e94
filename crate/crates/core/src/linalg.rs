//! Exact dense matrices over the rationals and fraction-free (Bareiss)
//! rank computation.
//!
//! Boundary and Laplacian matrices are integral, so ranks are computed by
//! fraction-free elimination: first in checked `i128` arithmetic, falling
//! back to arbitrary-precision integers if an intermediate minor overflows.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense row-major matrix of arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = ExactMatrix::zeros(size, size);
        for k in 0..size {
            m.data[k * size + k] = BigRational::one();
        }
        m
    }

    /// Builds from row-major integer entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match {rows}x{cols}");
        ExactMatrix { rows, cols, data: entries.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// `self - λ I`.
    pub fn shift_diagonal(&self, lambda: &BigRational) -> ExactMatrix {
        assert_eq!(self.rows, self.cols, "diagonal shift of a non-square matrix");
        let mut out = self.clone();
        for k in 0..self.rows {
            out.data[k * self.cols + k] -= lambda;
        }
        out
    }

    /// Integer entries, if every entry is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
    }

    /// Largest absolute row sum; an upper bound on every eigenvalue's
    /// magnitude. Rounded up to an integer.
    pub fn gershgorin_bound(&self) -> BigInt {
        (0..self.rows)
            .map(|r| {
                let sum: BigRational = (0..self.cols).map(|c| self.get(r, c).abs()).sum();
                sum.ceil().to_integer()
            })
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn rank(&self) -> usize {
        if let Some(ints) = self.to_i64() {
            return rank_i64(self.rows, self.cols, &ints);
        }
        // Clear denominators row by row; this does not change the rank.
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(row.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect());
        }
        bareiss_rank_big(rows, self.cols)
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in matrix sum");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:>4} ", self.get(r, c).to_string())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Rank of a row-major integer matrix.
pub fn rank_i64(rows: usize, cols: usize, entries: &[i64]) -> usize {
    debug_assert_eq!(entries.len(), rows * cols);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut work: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    match bareiss_rank_i128(&mut work, rows, cols) {
        Some(r) => r,
        None => {
            let big = (0..rows)
                .map(|r| entries[r * cols..(r + 1) * cols].iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            bareiss_rank_big(big, cols)
        }
    }
}

/// Fraction-free elimination in checked `i128`; `None` on overflow.
fn bareiss_rank_i128(a: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c];
        for i in rank + 1..rows {
            let lead = a[i * cols + c];
            for j in c + 1..cols {
                let x = pivot.checked_mul(a[i * cols + j])?;
                let y = lead.checked_mul(a[rank * cols + j])?;
                a[i * cols + j] = x.checked_sub(y)? / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

#[allow(clippy::needless_range_loop)]
fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = (&pivot * &a[i][j] - &lead * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain Gaussian elimination over the rationals.
    #[allow(clippy::needless_range_loop)]
    fn rational_rank(rows: usize, cols: usize, entries: &[i64]) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| (0..cols).map(|c| BigRational::from_integer(entries[r * cols + c].into())).collect())
            .collect();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(p, rank);
            for i in 0..rows {
                if i != rank && !a[i][c].is_zero() {
                    let factor = &a[i][c] / &a[rank][c];
                    for j in 0..cols {
                        let sub = &factor * &a[rank][j];
                        a[i][j] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_i64(2, 2, &[1, 2, 2, 4]), 1);
        assert_eq!(rank_i64(3, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]), 3);
        assert_eq!(rank_i64(0, 5, &[]), 0);
        assert_eq!(rank_i64(2, 3, &[0, 0, 0, 0, 0, 0]), 0);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 1i64 << 62;
        let m = [big, big - 1, 3, big - 7, big, 5, 11, 13, big];
        assert_eq!(rank_i64(3, 3, &m), rational_rank(3, 3, &m));
        let dependent = [big, big - 1, big - 1, big - 2];
        // det = big*(big-2) - (big-1)^2 = -1
        assert_eq!(rank_i64(2, 2, &dependent), 2);
    }

    #[test]
    fn rational_entries() {
        let mut m = ExactMatrix::zeros(2, 2);
        m.set(0, 0, BigRational::new(1.into(), 2.into()));
        m.set(0, 1, BigRational::new(1.into(), 3.into()));
        m.set(1, 0, BigRational::new(3.into(), 2.into()));
        m.set(1, 1, BigRational::from_integer(1.into()));
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_dim(), 1);
    }

    #[test]
    fn products_and_transpose() {
        let a = ExactMatrix::from_i64(2, 3, &[1, 0, -1, 2, 1, 0]);
        let at = a.transpose();
        let gram = &a * &at;
        assert_eq!(gram, ExactMatrix::from_i64(2, 2, &[2, 2, 2, 5]));
        assert!(gram.is_symmetric());
        assert_eq!(gram.gershgorin_bound(), BigInt::from(7));
        let sum = &gram + &ExactMatrix::identity(2);
        assert_eq!(sum.to_i64().unwrap(), vec![3, 2, 2, 6]);
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_rational_elimination(
            rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-3i64..4, 36)
        ) {
            let entries = &seed[..rows * cols];
            prop_assert_eq!(rank_i64(rows, cols, entries), rational_rank(rows, cols, entries));
        }
    }
}
