use num_complex::Complex64;

use super::{ComplexMatrix, MatrixError};

/// Floating LU factorization `P M = L U` with partial pivoting by modulus.
#[derive(Clone, Debug)]
pub struct LuFactors {
    n: usize,
    /// Unit-lower `L` below the diagonal, `U` on and above it.
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn factor(m: &ComplexMatrix) -> Result<Self, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let (p, pivot_abs) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 || !pivot_abs.is_finite() {
                return Err(MatrixError::Singular { column: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let ukj = lu[k * n + j];
                    lu[i * n + j] -= factor * ukj;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let lij = self.lu[i * n + j];
                x[i] = x[i] - lij * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let uij = self.lu[i * n + j];
                x[i] = x[i] - uij * x[j];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.n;
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            e[j] = Complex64::new(0.0, 0.0);
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        inv
    }
}

/// Numerical inverse of `m`. No accuracy guarantee: callers audit `R·M ≈ I`
/// rigorously.
pub fn approx_inverse(m: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    let inv = LuFactors::factor(m)?.inverse();
    if !inv.is_finite() {
        return Err(MatrixError::NonFinite);
    }
    Ok(inv)
}
