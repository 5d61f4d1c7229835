//! Non-verified complex eigensolver: balancing, Householder reduction to
//! Hessenberg form, single-shift complex QR with deflation, and eigenvectors
//! by back substitution on the Schur form.
//!
//! Nothing here is rigorous. Its output only seeds the verifier.

use num_complex::Complex64;

use super::{ComplexMatrix, MatrixError};

const EPS: f64 = f64::EPSILON;
const RADIX: f64 = 2.0;

#[derive(Clone, Debug)]
pub struct EigOptions {
    /// QR sweeps allowed for a single deflation before giving up.
    pub max_iterations_per_eigenvalue: usize,
    pub balance: bool,
}

impl Default for EigOptions {
    fn default() -> Self {
        Self {
            max_iterations_per_eigenvalue: 100,
            balance: true,
        }
    }
}

/// An approximate eigenpair together with its pivot index: the position of
/// the largest-modulus component of the vector (lowest index on ties).
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateEigenpair {
    pub lambda: Complex64,
    pub vector: Vec<Complex64>,
    pub pivot: usize,
}

impl CandidateEigenpair {
    /// Returns `None` for a zero or non-finite vector.
    pub fn new(lambda: Complex64, vector: Vec<Complex64>) -> Option<Self> {
        if !lambda.is_finite() || vector.iter().any(|z| !z.is_finite()) {
            return None;
        }
        let pivot = pivot_index(&vector)?;
        Some(Self {
            lambda,
            vector,
            pivot,
        })
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    /// The same pair rescaled so that the pivot component is exactly one.
    pub fn normalized(&self) -> Self {
        let p = self.vector[self.pivot];
        let mut vector: Vec<Complex64> = self.vector.iter().map(|&z| z / p).collect();
        vector[self.pivot] = Complex64::new(1.0, 0.0);
        Self {
            lambda: self.lambda,
            vector,
            pivot: self.pivot,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            lambda: self.lambda.conj(),
            vector: self.vector.iter().map(|z| z.conj()).collect(),
            pivot: self.pivot,
        }
    }

    pub fn is_real(&self) -> bool {
        self.lambda.im == 0.0 && self.vector.iter().all(|z| z.im == 0.0)
    }
}

/// Index of the largest-modulus entry, lowest index on ties; `None` for a
/// zero vector.
pub(crate) fn pivot_index(v: &[Complex64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best.map_or(0.0, |b| b.1) {
            best = Some((i, m));
        }
    }
    best.map(|b| b.0)
}

/// Approximate eigenpairs of `m` with default options.
pub fn approx_eigendecomposition(m: &ComplexMatrix) -> Result<Vec<CandidateEigenpair>, MatrixError> {
    approx_eigendecomposition_with(m, &EigOptions::default())
}

/// Approximate eigenpairs of `m`, one per eigenvalue in Schur order, each
/// normalized so its pivot component is exactly one.
///
/// For real input, eigenvalues whose imaginary part is at noise level are
/// returned as real pairs with real vectors.
pub fn approx_eigendecomposition_with(
    m: &ComplexMatrix,
    opts: &EigOptions,
) -> Result<Vec<CandidateEigenpair>, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(MatrixError::NonFinite);
    }
    let n = m.rows();
    let mut a = Dense::from(m);
    let scale = if opts.balance {
        balance(&mut a)
    } else {
        vec![1.0; n]
    };
    let mut z = hessenberg(&mut a);
    schur(&mut a, &mut z, opts.max_iterations_per_eigenvalue)?;
    let vectors = schur_eigenvectors(&a, &z);

    let real_input = m.is_real();
    let real_tol = 1e-8 * m.max_abs().max(1.0);
    let mut out = Vec::with_capacity(n);
    for (k, mut v) in vectors.into_iter().enumerate() {
        for (vi, s) in v.iter_mut().zip(&scale) {
            *vi *= *s;
        }
        let lambda = a.get(k, k);
        let cand = CandidateEigenpair::new(lambda, v).ok_or(MatrixError::NonFinite)?;
        let mut cand = cand.normalized();
        if real_input && cand.lambda.im.abs() <= real_tol {
            cand.lambda.im = 0.0;
            for z in &mut cand.vector {
                z.im = 0.0;
            }
        }
        out.push(cand);
    }
    Ok(out)
}

struct Dense {
    n: usize,
    d: Vec<Complex64>,
}

impl Dense {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            n: m.rows(),
            d: m.as_slice().to_vec(),
        }
    }

    fn identity(n: usize) -> Self {
        let mut d = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            d[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, d }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.d[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.d[i * self.n + j] = v;
    }
}

#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity scaling by powers of two; returns the scaling
/// factors `d` with `A_balanced = D^{-1} A D`.
fn balance(a: &mut Dense) -> Vec<f64> {
    let n = a.n;
    let mut d = vec![1.0; n];
    let sqrdx = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a.get(j, i));
                    r += abs1(a.get(i, j));
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                d[i] *= f;
                for j in 0..n {
                    let v = a.get(i, j) / f;
                    a.set(i, j, v);
                    let v = a.get(j, i) * f;
                    a.set(j, i, v);
                }
            }
        }
        if done {
            return d;
        }
    }
}

/// Householder reduction to upper Hessenberg form in place; returns the
/// accumulated unitary `Q` with `A = Q H Q^H`.
fn hessenberg(h: &mut Dense) -> Dense {
    let n = h.n;
    let mut q = Dense::identity(n);
    if n < 3 {
        return q;
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n - 2 {
        let m = n - k - 1;
        let norm = (k + 1..n).map(|i| h.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h.get(k + 1, k);
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        for (t, i) in (k + 1..n).enumerate() {
            v[t] = h.get(i, k);
        }
        v[0] += phase * norm;
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // H <- P H
        for j in k..n {
            let s: Complex64 = (0..m).map(|t| v[t].conj() * h.get(k + 1 + t, j)).sum::<Complex64>() * beta;
            for t in 0..m {
                let val = h.get(k + 1 + t, j) - v[t] * s;
                h.set(k + 1 + t, j, val);
            }
        }
        // H <- H P, Q <- Q P
        for mat in [&mut *h, &mut q] {
            for i in 0..n {
                let s: Complex64 = (0..m).map(|t| mat.get(i, k + 1 + t) * v[t]).sum::<Complex64>() * beta;
                for t in 0..m {
                    let val = mat.get(i, k + 1 + t) - s * v[t].conj();
                    mat.set(i, k + 1 + t, val);
                }
            }
        }
        for i in k + 2..n {
            h.set(i, k, Complex64::new(0.0, 0.0));
        }
    }
    q
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G [x; y] = [rho; 0]`.
#[inline]
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let rho = ax.hypot(ay);
    let c = ax / rho;
    let s = (x / ax) * y.conj() / rho;
    (c, s)
}

fn wilkinson_shift(h: &Dense, hi: usize) -> Complex64 {
    let a = h.get(hi - 1, hi - 1);
    let b = h.get(hi - 1, hi);
    let c = h.get(hi, hi - 1);
    let d = h.get(hi, hi);
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let den_plus = p + disc;
    let den_minus = p - disc;
    let den = if den_plus.norm() >= den_minus.norm() {
        den_plus
    } else {
        den_minus
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Reduces upper Hessenberg `h` to upper triangular Schur form, accumulating
/// the rotations into `z`.
fn schur(h: &mut Dense, z: &mut Dense, max_iter: usize) -> Result<(), MatrixError> {
    let n = h.n;
    if n < 2 {
        return Ok(());
    }
    let norm = h.d.iter().map(|&x| abs1(x)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iter = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = abs1(h.get(l, l)) + abs1(h.get(l - 1, l - 1));
            if s == 0.0 {
                s = norm;
            }
            if abs1(h.get(l, l - 1)) <= EPS * s {
                h.set(l, l - 1, Complex64::new(0.0, 0.0));
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iter {
            return Err(MatrixError::NoConvergence {
                stage: hi,
                lo: l,
                iterations: iter - 1,
            });
        }
        let shift = if iter % 10 == 0 {
            // exceptional shift
            h.get(hi, hi) + Complex64::new(0.75 * abs1(h.get(hi, hi - 1)), 0.0)
        } else {
            wilkinson_shift(h, hi)
        };
        qr_sweep(h, z, l, hi, shift);
    }
    Ok(())
}

/// One implicit single-shift QR sweep on the active block `lo..=hi`.
fn qr_sweep(h: &mut Dense, z: &mut Dense, lo: usize, hi: usize, shift: Complex64) {
    let n = h.n;
    let mut x = h.get(lo, lo) - shift;
    let mut y = h.get(lo + 1, lo);
    for p in lo..hi {
        let (c, s) = givens(x, y);
        let col_start = if p == lo { lo } else { p - 1 };
        for j in col_start..n {
            let a = h.get(p, j);
            let b = h.get(p + 1, j);
            h.set(p, j, a * c + s * b);
            h.set(p + 1, j, -s.conj() * a + b * c);
        }
        let row_end = (p + 2).min(hi);
        for i in 0..=row_end {
            let a = h.get(i, p);
            let b = h.get(i, p + 1);
            h.set(i, p, a * c + b * s.conj());
            h.set(i, p + 1, -a * s + b * c);
        }
        for i in 0..n {
            let a = z.get(i, p);
            let b = z.get(i, p + 1);
            z.set(i, p, a * c + b * s.conj());
            z.set(i, p + 1, -a * s + b * c);
        }
        if p + 1 < hi {
            x = h.get(p + 1, p);
            y = h.get(p + 2, p);
        }
    }
}

/// Eigenvectors of the original matrix from the Schur form `t` and Schur
/// vectors `z`.
fn schur_eigenvectors(t: &Dense, z: &Dense) -> Vec<Vec<Complex64>> {
    let n = t.n;
    let tnorm = t.d.iter().map(|&x| x.norm()).fold(0.0, f64::max);
    let small = (EPS * tnorm).max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        x.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        x[k] = Complex64::new(1.0, 0.0);
        let tkk = t.get(k, k);
        for i in (0..k).rev() {
            let s: Complex64 = (i + 1..=k).map(|j| t.get(i, j) * x[j]).sum();
            let mut den = t.get(i, i) - tkk;
            if den.norm() < small {
                den = Complex64::new(small, 0.0);
            }
            x[i] = -s / den;
            let big = x[i].norm();
            if big > 1e100 {
                for v in &mut x[..=k] {
                    *v /= big;
                }
            }
        }
        let v: Vec<Complex64> = (0..n)
            .map(|i| (0..=k).map(|j| z.get(i, j) * x[j]).sum())
            .collect();
        out.push(v);
    }
    out
}
