//! Midpoint-radius bound for `|I - R M|` over an interval matrix.
//!
//! The product `R * mid(M)` is formed in plain floating point. Its rounding
//! error is bounded a priori by `gamma_{n+4} (1 + |R| |mid(M)|)` with
//! `gamma_k = k u / (1 - k u)` (complex inner products with recursive
//! summation), plus an underflow term. The radius of `M` contributes
//! `|R| rad(M)`. Only the n^3 product runs in floating point; every other
//! step is O(n^2) with upward rounding.

use num_complex::Complex64;

use super::{ComplexMatrix, IntervalMatrix, MatrixError};
use crate::interval::round;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;
/// 2^-1070, covering the absolute underflow error of a few subnormal products.
const UNDERFLOW_UNIT: f64 = f64::from_bits(16);

fn gamma_up(k: usize) -> f64 {
    let ku = round::mul_up(k as f64, UNIT_ROUNDOFF);
    let denom = round::sub(1.0, ku).0;
    round::div_up(ku, denom)
}

/// Rigorous upper bounds of the row sums `sum_j |(I - R M)_ij|`, uniform
/// over every point matrix `M` in `m`.
pub fn identity_residual_row_sums(r: &ComplexMatrix, m: &IntervalMatrix) -> Result<Vec<f64>, MatrixError> {
    let n = m.rows();
    if !m.is_square() || r.rows() != n || r.cols() != n {
        return Err(MatrixError::DimensionMismatch {
            expected: format!("{n}x{n} factors"),
            found: format!("{}x{} and {}x{}", r.rows(), r.cols(), m.rows(), m.cols()),
        });
    }
    let center = m.midpoint();
    let radius = m.radius_up();

    // a_l = sum_j |mid M_lj|, rho_l = sum_j rad M_lj, both rounded up.
    let mut mid_abs_rows = vec![0.0; n];
    let mut rad_rows = vec![0.0; n];
    for l in 0..n {
        mid_abs_rows[l] = round::sum_up(center.row(l).iter().map(|z| round::hypot_up(z.re, z.im)));
        rad_rows[l] = round::sum_up(radius[l * n..(l + 1) * n].iter().copied());
    }

    let gamma = gamma_up(n + 4);
    let underflow = round::mul_up(round::mul_up(n as f64, (n + 2) as f64), UNDERFLOW_UNIT);
    let weights: Vec<f64> = mid_abs_rows
        .iter()
        .zip(&rad_rows)
        .map(|(&a, &rho)| round::add_up(round::mul_up(gamma, a), rho))
        .collect();

    let mut sums = Vec::with_capacity(n);
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        acc.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        acc[i] = Complex64::new(1.0, 0.0);
        let mut spread = 0.0;
        for (l, &ril) in r.row(i).iter().enumerate() {
            spread = round::add_up(spread, round::mul_up(round::hypot_up(ril.re, ril.im), weights[l]));
            if ril == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(center.row(l)) {
                *a -= ril * b;
            }
        }
        let computed = round::sum_up(acc.iter().map(|z| round::hypot_up(z.re, z.im)));
        let total = round::add_up(round::add_up(computed, spread), round::add_up(gamma, underflow));
        if !total.is_finite() {
            return Err(MatrixError::NonFinite);
        }
        sums.push(total);
    }
    Ok(sums)
}
