//! Independent oracles shared by the integration tests: exact rational
//! arithmetic, integer matrices with known spectra, and point sampling of
//! interval matrices.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use radiipol::interval::{ComplexInterval, RealInterval};
use radiipol::io::MatrixDocument;
use radiipol::matrix::{approx_eigendecomposition, ComplexMatrix, IntervalMatrix};
use radiipol::verifier::EigenpairEnclosure;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn lorenz() -> IntervalMatrix {
    let (doc, _) = MatrixDocument::read(&fixture("lorenz.json")).expect("lorenz fixture");
    doc.to_interval_matrix().expect("valid fixture")
}

#[derive(serde::Deserialize)]
pub struct LorenzExpected {
    pub radius: Vec<f64>,
    pub lambda: Vec<f64>,
    pub vector: Vec<Vec<f64>>,
}

pub fn lorenz_expected() -> LorenzExpected {
    serde_json::from_str(&std::fs::read_to_string(fixture("lorenz_expected.json")).unwrap()).unwrap()
}

// ---------------------------------------------------------------- rationals

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite double")
}

pub fn rat_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `q` lies in the closed interval, compared exactly.
pub fn interval_holds(iv: &RealInterval, q: &BigRational) -> bool {
    let lo_ok = iv.lo() == f64::NEG_INFINITY || (iv.lo().is_finite() && rat(iv.lo()) <= *q);
    let hi_ok = iv.hi() == f64::INFINITY || (iv.hi().is_finite() && *q <= rat(iv.hi()));
    lo_ok && hi_ok
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn from_f64(z: Complex64) -> Self {
        Self { re: rat(z.re), im: rat(z.im) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn abs_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let d = o.abs_sqr();
        if d.is_zero() {
            return None;
        }
        Some(Self {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        })
    }
}

pub fn complex_holds(iv: &ComplexInterval, z: &ExactComplex) -> bool {
    interval_holds(&iv.re, &z.re) && interval_holds(&iv.im, &z.im)
}

/// `|z - c| <= r` decided exactly.
pub fn within_disk(z: &ExactComplex, c: Complex64, r: f64) -> bool {
    let d = z.sub(&ExactComplex::from_f64(c));
    let r = rat(r);
    d.abs_sqr() <= &r * &r
}

// ---------------------------------------------------------------- random intervals

/// A double spread over many binades, occasionally an exact small integer
/// or zero.
pub fn random_double<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..10) {
        0 => 0.0,
        1 => rng.gen_range(-8i32..=8) as f64,
        _ => {
            let mant: f64 = rng.gen_range(1.0..2.0);
            let exp = rng.gen_range(-60..=60);
            let sign = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            sign * mant * 2f64.powi(exp)
        }
    }
}

pub fn random_interval<R: Rng>(rng: &mut R) -> RealInterval {
    let a = random_double(rng);
    match rng.gen_range(0..4) {
        0 => RealInterval::point(a),
        1 => {
            let w = a.abs() * 2f64.powi(-rng.gen_range(1..50)) + f64::MIN_POSITIVE;
            RealInterval::new(a, a + w).unwrap_or(RealInterval::point(a))
        }
        _ => {
            let b = random_double(rng);
            RealInterval::new(a.min(b), a.max(b)).unwrap()
        }
    }
}

/// An exact rational member: an endpoint, or a convex combination with
/// weight `k / 1024`.
pub fn random_member<R: Rng>(rng: &mut R, iv: &RealInterval) -> BigRational {
    match rng.gen_range(0..4) {
        0 => rat(iv.lo()),
        1 => rat(iv.hi()),
        _ => {
            let t = BigRational::new(BigInt::from(rng.gen_range(0..=1024)), BigInt::from(1024));
            rat(iv.lo()) + (rat(iv.hi()) - rat(iv.lo())) * t
        }
    }
}

pub fn random_complex_interval<R: Rng>(rng: &mut R) -> ComplexInterval {
    ComplexInterval::new(random_interval(rng), random_interval(rng))
}

pub fn random_complex_member<R: Rng>(rng: &mut R, iv: &ComplexInterval) -> ExactComplex {
    ExactComplex {
        re: random_member(rng, &iv.re),
        im: random_member(rng, &iv.im),
    }
}

// ---------------------------------------------------------------- integer matrices with known spectra

pub type Gauss = (i64, i64);

fn gmul(a: Gauss, b: Gauss) -> Gauss {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Integer `P` with determinant 1 and its exact inverse, built from
/// elementary row operations `row_i += c row_j`.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut inv = p.clone();
    if n == 1 {
        return (p, inv);
    }
    for _ in 0..n + 2 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
        // P <- E P, with E = I + c e_i e_j^T
        for col in 0..n {
            p[i][col] += c * p[j][col];
        }
        // P^-1 <- P^-1 E^-1, with E^-1 = I - c e_i e_j^T
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (p, inv)
}

/// Point matrix `P diag(lambda) P^-1` with exactly known distinct
/// eigenvalues: integers, or Gaussian integers when `complex`.
pub fn known_spectrum_matrix<R: Rng>(rng: &mut R, n: usize, complex: bool) -> (ComplexMatrix, Vec<Gauss>) {
    let mut lambdas: Vec<Gauss> = Vec::new();
    while lambdas.len() < n {
        let l = (rng.gen_range(-6..=6), if complex { rng.gen_range(-6..=6) } else { 0 });
        if !lambdas.contains(&l) {
            lambdas.push(l);
        }
    }
    let (p, inv) = unimodular(rng, n);
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc: Gauss = (0, 0);
            for k in 0..n {
                let t = gmul(lambdas[k], (p[i][k] * inv[k][j], 0));
                acc = (acc.0 + t.0, acc.1 + t.1);
            }
            assert!(acc.0.abs() < 1 << 52 && acc.1.abs() < 1 << 52);
            data.push(Complex64::new(acc.0 as f64, acc.1 as f64));
        }
    }
    (ComplexMatrix::new(n, n, data).unwrap(), lambdas)
}

// ---------------------------------------------------------------- sampling

fn pick<R: Rng>(rng: &mut R, iv: &RealInterval, vertex: bool) -> f64 {
    if iv.is_point() {
        iv.lo()
    } else if vertex {
        if rng.gen_bool(0.5) {
            iv.lo()
        } else {
            iv.hi()
        }
    } else {
        rng.gen_range(iv.lo()..=iv.hi())
    }
}

/// A point matrix inside `m`: every entry at a vertex, or uniformly inside.
pub fn sample_point<R: Rng>(rng: &mut R, m: &IntervalMatrix, vertex: bool) -> ComplexMatrix {
    let data = m
        .as_slice()
        .iter()
        .map(|z| Complex64::new(pick(rng, &z.re, vertex), pick(rng, &z.im, vertex)))
        .collect();
    ComplexMatrix::new(m.rows(), m.cols(), data).unwrap()
}

/// Floating-point slack for eigenpairs of a sample computed in double
/// precision; far below every radius the sampling checks.
pub fn sample_slack(z: Complex64) -> f64 {
    1e-11 * (1.0 + z.norm())
}

/// Checks that the sample's eigenpair nearest the center, pivot-normalized,
/// lies in the `r_exist` ball of the enclosure.
pub fn sample_inside(encl: &EigenpairEnclosure, a: &ComplexMatrix) -> Result<(), String> {
    let r = encl.r_exist().ok_or("enclosure not verified")?;
    let pairs = approx_eigendecomposition(a).map_err(|e| e.to_string())?;
    let nearest = pairs
        .iter()
        .min_by(|p, q| {
            (p.lambda - encl.lambda_center)
                .norm()
                .total_cmp(&(q.lambda - encl.lambda_center).norm())
        })
        .ok_or("no eigenpairs")?;
    let dl = (nearest.lambda - encl.lambda_center).norm();
    if dl > r + sample_slack(encl.lambda_center) {
        return Err(format!("eigenvalue {} at distance {dl:e} > r_exist {r:e}", nearest.lambda));
    }
    let scale = nearest.vector[encl.pivot];
    if scale.norm() == 0.0 {
        return Err("sample eigenvector vanishes at the pivot".into());
    }
    for (j, (&v, &c)) in nearest.vector.iter().zip(&encl.vector_center).enumerate() {
        let d = (v / scale - c).norm();
        if d > r + sample_slack(c) {
            return Err(format!("vector component {j} at distance {d:e} > r_exist {r:e}"));
        }
    }
    Ok(())
}

/// Exact evaluation of `Z1 r^2 + (Z0 - 1) r + Y` is negative.
pub fn polynomial_negative_exact(y: f64, z0: f64, z1: f64, r: f64) -> bool {
    let r = rat(r);
    let p = rat(z1) * &r * &r + (rat(z0) - rat_int(1)) * &r + rat(y);
    p.is_negative()
}
