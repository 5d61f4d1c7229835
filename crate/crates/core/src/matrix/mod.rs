//! Dense complex matrices, interval matrices, and the non-rigorous numerical
//! ingredients of verification: an approximate eigensolver and an approximate
//! inverse.

mod bounds;
mod eig;
mod lu;

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use thiserror::Error;

use crate::interval::{ComplexInterval, IntervalError};

pub use bounds::identity_residual_row_sums;
pub use eig::{approx_eigendecomposition, approx_eigendecomposition_with, CandidateEigenpair, EigOptions};
pub use lu::{approx_inverse, LuFactors};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has a non-finite entry")]
    NonFinite,
    #[error("exactly singular pivot at column {column}")]
    Singular { column: usize },
    #[error("QR iteration did not converge while deflating eigenvalue {stage} (active block {lo}..={stage}) after {iterations} iterations")]
    NoConvergence {
        stage: usize,
        lo: usize,
        iterations: usize,
    },
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

fn mismatch(expected: impl ToString, found: impl ToString) -> MatrixError {
    MatrixError::DimensionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(mismatch(format!("{rows}x{cols} entries"), data.len()));
        }
        if data.iter().any(|z| !z.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, MatrixError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(mismatch(format!("rows of length {n_cols}"), bad.len()));
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(mismatch(
                format!("{} rows on the right", self.cols),
                rhs.rows,
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                for (o, &b) in out_row.iter_mut().zip(rhs.row(l)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>, MatrixError> {
        if x.len() != self.cols {
            return Err(mismatch(format!("vector of length {}", self.cols), x.len()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense row-major matrix of complex rectangles. Represents every point
/// matrix whose entries lie in the corresponding rectangles.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexInterval>,
}

impl IntervalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ComplexInterval>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(mismatch(format!("{rows}x{cols} entries"), data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Point intervals around each entry of `m`.
    pub fn from_point(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&z| ComplexInterval::point(z)).collect(),
        }
    }

    /// Every entry of `center` inflated by `rad_re` in the real part and
    /// `rad_im` in the imaginary part.
    pub fn from_midrad(center: &ComplexMatrix, rad_re: f64, rad_im: f64) -> Result<Self, MatrixError> {
        let data = center
            .data
            .iter()
            .map(|z| ComplexInterval::from_midrad(z.re, z.im, rad_re, rad_im))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            rows: center.rows,
            cols: center.cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[ComplexInterval] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[ComplexInterval] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Every entry has the point zero as imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(ComplexInterval::is_real)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(ComplexInterval::is_finite)
    }

    /// Entrywise rectangle centers.
    pub fn midpoint(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(ComplexInterval::mid).collect(),
        }
    }

    /// Entrywise upper bounds of `max |w - mid|`.
    pub fn radius_up(&self) -> Vec<f64> {
        self.data.iter().map(ComplexInterval::rad_up).collect()
    }

    pub fn contains(&self, m: &ComplexMatrix) -> bool {
        self.rows == m.rows
            && self.cols == m.cols
            && self.data.iter().zip(&m.data).all(|(a, &z)| a.contains(z))
    }

    /// Interval matrix-vector product.
    pub fn matvec(&self, x: &[ComplexInterval]) -> Result<Vec<ComplexInterval>, MatrixError> {
        if x.len() != self.cols {
            return Err(mismatch(format!("vector of length {}", self.cols), x.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(ComplexInterval::ZERO, |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// Product with a point vector.
    pub fn matvec_point(&self, x: &[Complex64]) -> Result<Vec<ComplexInterval>, MatrixError> {
        if x.len() != self.cols {
            return Err(mismatch(format!("vector of length {}", self.cols), x.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(ComplexInterval::ZERO, |acc, (a, &b)| acc + a.mul_point(b))
            })
            .collect())
    }

    /// Interval enclosure of `lhs * self` for a point matrix `lhs`.
    pub fn left_mul_point(&self, lhs: &ComplexMatrix) -> Result<Self, MatrixError> {
        if lhs.cols != self.rows {
            return Err(mismatch(format!("{} columns on the left", self.rows), lhs.cols));
        }
        let mut data = vec![ComplexInterval::ZERO; lhs.rows * self.cols];
        for i in 0..lhs.rows {
            let out = &mut data[i * self.cols..(i + 1) * self.cols];
            for (l, &a) in lhs.row(i).iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(self.row(l)) {
                    *o = *o + b.mul_point(a);
                }
            }
        }
        Ok(Self {
            rows: lhs.rows,
            cols: self.cols,
            data,
        })
    }
}

impl Index<(usize, usize)> for IntervalMatrix {
    type Output = ComplexInterval;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &ComplexInterval {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntervalMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexInterval {
        &mut self.data[i * self.cols + j]
    }
}

/// Point vector promoted to point intervals.
pub fn point_vector(x: &[Complex64]) -> Vec<ComplexInterval> {
    x.iter().map(|&z| ComplexInterval::point(z)).collect()
}
