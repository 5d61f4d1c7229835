//! Certified enclosures of eigenpairs via the radii-polynomial contraction
//! argument.
//!
//! An eigenpair `(lambda, v)` is pinned by fixing the pivot component of `v`
//! to one. The remaining unknowns `x = (lambda, v without the pivot)` solve
//! `f(x) = A v - lambda v = 0`. With `R` an approximate inverse of the
//! midpoint Jacobian, `T(x) = x - R f(x)` is a contraction on the max-norm
//! ball `B(x_bar, r)` whenever every radii polynomial is negative at `r`.
//! All bounds are uniform over every point matrix in the interval matrix.

mod radii;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{round, ComplexInterval, RealInterval};
use crate::matrix::{
    approx_eigendecomposition_with, approx_inverse, identity_residual_row_sums, CandidateEigenpair,
    ComplexMatrix, EigOptions, IntervalMatrix, MatrixError,
};

pub use radii::{
    NegativeTestFailure, NegativityInterval, RadiiBounds, INTERIOR_OFFSET, MAX_RADIUS_ATTEMPTS,
    UNBOUNDED_RADIUS_CAP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite input")]
    NonFinite,
    #[error("midpoint Jacobian is singular: {0}")]
    SingularJacobian(MatrixError),
    #[error("approximate eigendecomposition failed: {0}")]
    Eigensolver(MatrixError),
}

/// Outcome of a verification attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Verified,
    FailedNegativeTest,
    FailedSingularR,
    FailedNonFinite,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "Verified",
            Status::FailedNegativeTest => "FailedNegativeTest",
            Status::FailedSingularR => "FailedSingularR",
            Status::FailedNonFinite => "FailedNonFinite",
        }
    }
}

/// The data of one verification: the interval matrix, the approximate zero
/// `x_bar`, the pinned pivot and the approximate inverse `R`.
#[derive(Clone, Debug)]
pub struct VerificationProblem<'a> {
    matrix: &'a IntervalMatrix,
    lambda: Complex64,
    /// Full eigenvector; `vector[pivot]` is the fixed parameter.
    vector: Vec<Complex64>,
    pivot: usize,
    inverse: ComplexMatrix,
}

impl<'a> VerificationProblem<'a> {
    /// Normalizes the candidate so its pivot component is one and computes
    /// `R` from the midpoint of the interval Jacobian at `x_bar`.
    pub fn assemble(matrix: &'a IntervalMatrix, cand: &CandidateEigenpair) -> Result<Self, VerifyError> {
        check_dims(matrix, cand.dim(), cand.pivot)?;
        let cand = cand.normalized();
        let mut prob = Self {
            matrix,
            lambda: cand.lambda,
            vector: cand.vector,
            pivot: cand.pivot,
            inverse: ComplexMatrix::zeros(1, 1),
        };
        prob.check_finite()?;
        let center = prob.jacobian().midpoint();
        prob.inverse = approx_inverse(&center).map_err(VerifyError::SingularJacobian)?;
        Ok(prob)
    }

    /// A problem with a caller-supplied `R`. The vector is taken as is.
    pub fn with_inverse(
        matrix: &'a IntervalMatrix,
        lambda: Complex64,
        vector: Vec<Complex64>,
        pivot: usize,
        inverse: ComplexMatrix,
    ) -> Result<Self, VerifyError> {
        let n = vector.len();
        check_dims(matrix, n, pivot)?;
        if inverse.rows() != n || inverse.cols() != n {
            return Err(VerifyError::Dimension(format!(
                "R is {}x{}, expected {n}x{n}",
                inverse.rows(),
                inverse.cols()
            )));
        }
        let prob = Self {
            matrix,
            lambda,
            vector,
            pivot,
            inverse,
        };
        prob.check_finite()?;
        Ok(prob)
    }

    fn check_finite(&self) -> Result<(), VerifyError> {
        if self.lambda.is_finite() && self.vector.iter().all(|z| z.is_finite()) {
            Ok(())
        } else {
            Err(VerifyError::NonFinite)
        }
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn matrix(&self) -> &IntervalMatrix {
        self.matrix
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn vector(&self) -> &[Complex64] {
        &self.vector
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn inverse(&self) -> &ComplexMatrix {
        &self.inverse
    }

    /// Eigenvector component addressed by unknown `t >= 1`.
    #[inline]
    fn component_of_unknown(&self, t: usize) -> usize {
        if t - 1 < self.pivot {
            t - 1
        } else {
            t
        }
    }

    /// `x_bar = (lambda, v_1, ..., v_{k-1}, v_{k+1}, ..., v_n)`.
    pub fn x_bar(&self) -> Vec<Complex64> {
        let mut x = Vec::with_capacity(self.dim());
        x.push(self.lambda);
        x.extend(
            self.vector
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != self.pivot)
                .map(|(_, &z)| z),
        );
        x
    }

    /// Splits `x` into `lambda` and the full vector with the pivot pinned.
    pub fn unpack(&self, x: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let mut v = self.vector.clone();
        for t in 1..x.len() {
            v[self.component_of_unknown(t)] = x[t];
        }
        (x[0], v)
    }

    /// Interval enclosure of `f_A(x) = A v - lambda v` for every `A` in the
    /// interval matrix.
    pub fn eval_f(&self, x: &[Complex64]) -> Result<Vec<ComplexInterval>, VerifyError> {
        if x.len() != self.dim() {
            return Err(VerifyError::Dimension(format!("x has length {}, expected {}", x.len(), self.dim())));
        }
        if x.iter().any(|z| !z.is_finite()) {
            return Err(VerifyError::NonFinite);
        }
        let (lambda, v) = self.unpack(x);
        let av = self
            .matrix
            .matvec_point(&v)
            .map_err(|e| VerifyError::Dimension(e.to_string()))?;
        Ok(av
            .into_iter()
            .zip(&v)
            .map(|(a, &vi)| a - ComplexInterval::point(lambda).mul_point(vi))
            .collect())
    }

    /// Interval Jacobian at `x_bar`: `[-v | (A - lambda I) without column k]`.
    pub fn jacobian(&self) -> IntervalMatrix {
        let x: Vec<ComplexInterval> = self.x_bar().into_iter().map(ComplexInterval::point).collect();
        self.jacobian_over(&x)
    }

    /// Interval Jacobian enclosing `Df_A(x)` for every `A` in the matrix and
    /// every `x` in the box.
    pub fn jacobian_over(&self, x: &[ComplexInterval]) -> IntervalMatrix {
        let n = self.dim();
        let lambda = x[0];
        let mut v: Vec<ComplexInterval> = self.vector.iter().map(|&z| ComplexInterval::point(z)).collect();
        for t in 1..n {
            v[self.component_of_unknown(t)] = x[t];
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            data.push(-v[i]);
            for t in 1..n {
                let j = self.component_of_unknown(t);
                let a = self.matrix[(i, j)];
                data.push(if i == j { a - lambda } else { a });
            }
        }
        IntervalMatrix::new(n, n, data).expect("square by construction")
    }

    /// `Y_i = sup |(R f(x_bar))_i|`.
    pub fn compute_y(&self) -> Result<Vec<f64>, VerifyError> {
        let f = self.eval_f(&self.x_bar())?;
        let y: Vec<f64> = (0..self.dim())
            .map(|i| {
                self.inverse
                    .row(i)
                    .iter()
                    .zip(&f)
                    .fold(ComplexInterval::ZERO, |acc, (&r, fl)| acc + fl.mul_point(r))
                    .mag_sup()
            })
            .collect();
        if y.iter().all(|v| v.is_finite()) {
            Ok(y)
        } else {
            Err(VerifyError::NonFinite)
        }
    }

    /// `Z0 = |I - R Df(x_bar)| 1`, uniform over the interval Jacobian.
    pub fn compute_z0(&self) -> Result<Vec<f64>, VerifyError> {
        identity_residual_row_sums(&self.inverse, &self.jacobian()).map_err(|e| match e {
            MatrixError::NonFinite => VerifyError::NonFinite,
            other => VerifyError::Dimension(other.to_string()),
        })
    }

    /// `Z1 = 2 |R| 1_hat` where `1_hat` has a zero in the pivot component.
    pub fn compute_z1(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let row = self.inverse.row(i);
                let s = round::sum_up(
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != self.pivot)
                        .map(|(_, z)| round::hypot_up(z.re, z.im)),
                );
                2.0 * s
            })
            .collect()
    }

    pub fn bounds(&self) -> Result<RadiiBounds, VerifyError> {
        let b = RadiiBounds {
            y: self.compute_y()?,
            z0: self.compute_z0()?,
            z1: self.compute_z1(),
        };
        if b.is_finite() {
            Ok(b)
        } else {
            Err(VerifyError::NonFinite)
        }
    }
}

fn check_dims(matrix: &IntervalMatrix, n: usize, pivot: usize) -> Result<(), VerifyError> {
    if !matrix.is_square() {
        return Err(VerifyError::Dimension(format!(
            "matrix is {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if n != matrix.rows() {
        return Err(VerifyError::Dimension(format!(
            "candidate has length {n}, matrix is {0}x{0}",
            matrix.rows()
        )));
    }
    if pivot >= n {
        return Err(VerifyError::Dimension(format!("pivot {pivot} out of range for length {n}")));
    }
    Ok(())
}

/// Radii certified by the rigorous re-check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRadii {
    /// Every matrix in the interval matrix has its eigenpair within this
    /// max-norm distance of the center.
    pub exist: f64,
    /// That eigenpair is the only one (with the pinned pivot) within this
    /// distance.
    pub unique: f64,
}

/// Certificate (or failure) for one candidate eigenpair.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenpairEnclosure {
    pub lambda_center: Complex64,
    /// Full vector center; the pivot component is exactly one.
    pub vector_center: Vec<Complex64>,
    pub pivot: usize,
    pub status: Status,
    pub radii: Option<CertifiedRadii>,
    pub is_real: bool,
    pub bounds: Option<RadiiBounds>,
    pub failure_reason: Option<String>,
}

impl EigenpairEnclosure {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn r_exist(&self) -> Option<f64> {
        self.radii.map(|r| r.exist)
    }

    pub fn r_unique(&self) -> Option<f64> {
        self.radii.map(|r| r.unique)
    }

    /// Center in the unknown layout `(lambda, v without the pivot)`.
    pub fn x_bar(&self) -> Vec<Complex64> {
        std::iter::once(self.lambda_center)
            .chain(
                self.vector_center
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != self.pivot)
                    .map(|(_, &z)| z),
            )
            .collect()
    }

    /// The eigenvalue disk `|lambda - center| <= r_exist` contains `z`.
    pub fn lambda_contains(&self, z: Complex64) -> bool {
        self.r_exist().is_some_and(|r| (z - self.lambda_center).norm() <= r)
    }

    fn failed(cand: &CandidateEigenpair, status: Status, reason: String) -> Self {
        Self {
            lambda_center: cand.lambda,
            vector_center: cand.vector.clone(),
            pivot: cand.pivot,
            status,
            radii: None,
            is_real: false,
            bounds: None,
            failure_reason: Some(reason),
        }
    }
}

/// A certified eigenpair is real when the matrix has point-zero imaginary
/// parts and the center is real: the conjugate of the unique solution is a
/// solution in the same ball, hence equal to it.
pub fn realness_check(matrix: &IntervalMatrix, lambda: Complex64, vector: &[Complex64], status: Status) -> bool {
    status == Status::Verified && matrix.is_real() && lambda.im == 0.0 && vector.iter().all(|z| z.im == 0.0)
}

/// Verifies one candidate against every matrix in `matrix`.
///
/// Mathematical failures are reported through [`Status`]; `Err` is reserved
/// for malformed input.
pub fn verify_eigenpair(matrix: &IntervalMatrix, cand: &CandidateEigenpair) -> Result<EigenpairEnclosure, VerifyError> {
    check_dims(matrix, cand.dim(), cand.pivot)?;
    let normalized = cand.normalized();
    let prob = match VerificationProblem::assemble(matrix, cand) {
        Ok(p) => p,
        Err(VerifyError::SingularJacobian(e)) => {
            return Ok(EigenpairEnclosure::failed(&normalized, Status::FailedSingularR, e.to_string()))
        }
        Err(VerifyError::NonFinite) => {
            return Ok(EigenpairEnclosure::failed(
                &normalized,
                Status::FailedNonFinite,
                "non-finite candidate".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    Ok(certify(&prob))
}

/// Runs the bounds, the radii polynomials and the radius selection for an
/// assembled problem.
pub fn certify(prob: &VerificationProblem<'_>) -> EigenpairEnclosure {
    let mut out = EigenpairEnclosure {
        lambda_center: prob.lambda,
        vector_center: prob.vector.clone(),
        pivot: prob.pivot,
        status: Status::FailedNegativeTest,
        radii: None,
        is_real: false,
        bounds: None,
        failure_reason: None,
    };
    let bounds = match prob.bounds() {
        Ok(b) => b,
        Err(e) => {
            out.status = Status::FailedNonFinite;
            out.failure_reason = Some(e.to_string());
            return out;
        }
    };
    let selected = bounds
        .solve()
        .and_then(|iv| bounds.select_radii(iv).ok_or(NegativeTestFailure::Recheck));
    match selected {
        Ok((exist, unique)) => {
            out.status = Status::Verified;
            out.radii = Some(CertifiedRadii { exist, unique });
        }
        Err(reason) => out.failure_reason = Some(reason.to_string()),
    }
    out.is_real = realness_check(prob.matrix, prob.lambda, &prob.vector, out.status);
    out.bounds = Some(bounds);
    out
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Verify candidates concurrently. Results keep candidate order.
    pub parallel: bool,
    pub eig: EigOptions,
}

/// Candidates for the midpoint of `matrix` from the non-verified solver.
pub fn midpoint_candidates(matrix: &IntervalMatrix, eig: &EigOptions) -> Result<Vec<CandidateEigenpair>, VerifyError> {
    if !matrix.is_square() {
        return Err(VerifyError::Dimension(format!(
            "matrix is {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    approx_eigendecomposition_with(&matrix.midpoint(), eig).map_err(VerifyError::Eigensolver)
}

/// Encloses every eigenpair of the midpoint-derived candidates.
pub fn verify_eigendecomposition(
    matrix: &IntervalMatrix,
    opts: &VerifyOptions,
) -> Result<Vec<EigenpairEnclosure>, VerifyError> {
    let candidates = midpoint_candidates(matrix, &opts.eig)?;
    verify_candidates(matrix, &candidates, opts.parallel)
}

pub fn verify_candidates(
    matrix: &IntervalMatrix,
    candidates: &[CandidateEigenpair],
    parallel: bool,
) -> Result<Vec<EigenpairEnclosure>, VerifyError> {
    let results: Result<Vec<_>, _> = if parallel {
        candidates.par_iter().map(|c| verify_eigenpair(matrix, c)).collect()
    } else {
        candidates.iter().map(|c| verify_eigenpair(matrix, c)).collect()
    };
    let results = results?;
    for (i, j) in overlapping_pairs(&results) {
        log::warn!("verified enclosures {i} and {j} overlap; the candidate list likely contains duplicates");
    }
    Ok(results)
}

/// Pairs of verified enclosures whose eigenvalue disks overlap and whose
/// vector boxes overlap after rescaling the second to the first's pivot.
pub fn overlapping_pairs(encl: &[EigenpairEnclosure]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..encl.len() {
        for j in i + 1..encl.len() {
            let (a, b) = (&encl[i], &encl[j]);
            let (Some(ra), Some(rb)) = (a.r_exist(), b.r_exist()) else {
                continue;
            };
            let reach = ra + rb;
            if (a.lambda_center - b.lambda_center).norm() > reach {
                continue;
            }
            let scale = b.vector_center[a.pivot];
            if scale.norm() == 0.0 {
                continue;
            }
            let close = a
                .vector_center
                .iter()
                .zip(&b.vector_center)
                .all(|(&va, &vb)| (va - vb / scale).norm() <= reach);
            if close {
                out.push((i, j));
            }
        }
    }
    out
}

/// Interval enclosure of `p_k(r)` recomputed from scratch for an
/// enclosure's matrix and center: rebuilds the problem with a fresh `R`,
/// the bounds, and evaluates each polynomial in interval arithmetic.
pub fn recheck_radius(
    matrix: &IntervalMatrix,
    encl: &EigenpairEnclosure,
    r: f64,
) -> Result<Vec<RealInterval>, VerifyError> {
    let cand = CandidateEigenpair {
        lambda: encl.lambda_center,
        vector: encl.vector_center.clone(),
        pivot: encl.pivot,
    };
    let prob = VerificationProblem::assemble(matrix, &cand)?;
    let b = prob.bounds()?;
    Ok((0..b.dim()).map(|k| b.eval_rigorous(k, r)).collect())
}
