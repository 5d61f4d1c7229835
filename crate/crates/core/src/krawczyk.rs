//! Textbook Krawczyk-operator verification of the same pinned eigenproblem,
//! used as an independent baseline.
//!
//! For a box `X = x_bar + [-r, r] + i[-r, r]` (componentwise),
//! `K(X) = x_bar - R f(x_bar) + (I - R Df(X)) (X - x_bar)`.
//! `K(X)` inside the interior of `X` proves a unique zero of every `f_A` in
//! `X`. The interval Jacobian is evaluated over the whole box.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::interval::{ComplexInterval, RealInterval};
use crate::matrix::{CandidateEigenpair, IntervalMatrix};
use crate::verifier::{midpoint_candidates, VerificationProblem, VerifyError, VerifyOptions};

/// Growth factor of the trial box between attempts.
pub const INFLATION_FACTOR: f64 = 2.0;
/// Containment attempts, including the first.
pub const MAX_ATTEMPTS: usize = 10;

/// Initial box radius `1e-8 (1 + |lambda|)`.
pub fn default_initial_radius(lambda: Complex64) -> f64 {
    1e-8 * (1.0 + lambda.norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrawczykOutcome {
    Contained,
    NotContained,
    SingularR,
    NonFinite,
}

impl KrawczykOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            KrawczykOutcome::Contained => "Verified",
            KrawczykOutcome::NotContained => "FailedContainment",
            KrawczykOutcome::SingularR => "FailedSingularR",
            KrawczykOutcome::NonFinite => "FailedNonFinite",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrawczykResult {
    pub lambda_center: Complex64,
    pub vector_center: Vec<Complex64>,
    pub pivot: usize,
    pub outcome: KrawczykOutcome,
    /// Half-width of the certified box, or of the last box tried.
    pub box_radius: f64,
    pub iterations: usize,
}

impl KrawczykResult {
    pub fn success(&self) -> bool {
        self.outcome == KrawczykOutcome::Contained
    }

    /// Certified half-width, if any.
    pub fn certified_radius(&self) -> Option<f64> {
        self.success().then_some(self.box_radius)
    }
}

fn square_box(center: &[Complex64], r: f64) -> Option<Vec<ComplexInterval>> {
    center
        .iter()
        .map(|z| ComplexInterval::from_midrad(z.re, z.im, r, r).ok())
        .collect()
}

/// Krawczyk verification of one candidate starting from box radius `r0`,
/// with up to [`MAX_ATTEMPTS`] boxes grown by [`INFLATION_FACTOR`].
pub fn krawczyk_verify(
    matrix: &IntervalMatrix,
    cand: &CandidateEigenpair,
    r0: f64,
) -> Result<KrawczykResult, VerifyError> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(VerifyError::Dimension(format!("initial radius must be positive, got {r0}")));
    }
    let normalized = cand.normalized();
    let mut result = KrawczykResult {
        lambda_center: normalized.lambda,
        vector_center: normalized.vector.clone(),
        pivot: normalized.pivot,
        outcome: KrawczykOutcome::NotContained,
        box_radius: r0,
        iterations: 0,
    };
    let prob = match VerificationProblem::assemble(matrix, cand) {
        Ok(p) => p,
        Err(VerifyError::SingularJacobian(_)) => {
            result.outcome = KrawczykOutcome::SingularR;
            return Ok(result);
        }
        Err(VerifyError::NonFinite) => {
            result.outcome = KrawczykOutcome::NonFinite;
            return Ok(result);
        }
        Err(e) => return Err(e),
    };
    let n = prob.dim();
    let x_bar = prob.x_bar();
    let r_mat = prob.inverse();

    // x_bar - R f(x_bar)
    let f = prob.eval_f(&x_bar)?;
    let newton: Vec<ComplexInterval> = (0..n)
        .map(|i| {
            let rf = r_mat
                .row(i)
                .iter()
                .zip(&f)
                .fold(ComplexInterval::ZERO, |acc, (&r, fl)| acc + fl.mul_point(r));
            ComplexInterval::point(x_bar[i]) - rf
        })
        .collect();

    let mut r = r0;
    for attempt in 1..=MAX_ATTEMPTS {
        result.iterations = attempt;
        result.box_radius = r;
        let Some(x_box) = square_box(&x_bar, r) else {
            result.outcome = KrawczykOutcome::NonFinite;
            return Ok(result);
        };
        let jac = prob.jacobian_over(&x_box);
        let mut contraction = jac
            .left_mul_point(r_mat)
            .map_err(|e| VerifyError::Dimension(e.to_string()))?;
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { ComplexInterval::ONE } else { ComplexInterval::ZERO };
                contraction[(i, j)] = id - contraction[(i, j)];
            }
        }
        let sym = RealInterval::new(-r, r).expect("finite radius");
        let offset = vec![ComplexInterval::new(sym, sym); n];
        let spread = contraction
            .matvec(&offset)
            .map_err(|e| VerifyError::Dimension(e.to_string()))?;
        let k_box: Vec<ComplexInterval> = newton.iter().zip(&spread).map(|(&a, &b)| a + b).collect();
        if k_box.iter().any(|z| !z.is_finite()) {
            result.outcome = KrawczykOutcome::NonFinite;
            return Ok(result);
        }
        if k_box.iter().zip(&x_box).all(|(k, x)| k.is_interior_of(x)) {
            result.outcome = KrawczykOutcome::Contained;
            return Ok(result);
        }
        r *= INFLATION_FACTOR;
    }
    result.outcome = KrawczykOutcome::NotContained;
    Ok(result)
}

/// Krawczyk verification of every midpoint candidate, each starting from
/// [`default_initial_radius`].
pub fn krawczyk_eigendecomposition(
    matrix: &IntervalMatrix,
    opts: &VerifyOptions,
) -> Result<Vec<KrawczykResult>, VerifyError> {
    let candidates = midpoint_candidates(matrix, &opts.eig)?;
    let run = |c: &CandidateEigenpair| krawczyk_verify(matrix, c, default_initial_radius(c.lambda));
    if opts.parallel {
        candidates.par_iter().map(run).collect()
    } else {
        candidates.iter().map(run).collect()
    }
}
