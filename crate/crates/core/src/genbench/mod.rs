//! Deterministic test matrices `X D X^-1` with a known spectrum, and the
//! radius-sweep and timing harnesses built on them.

mod prng;

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::krawczyk::{default_initial_radius, krawczyk_verify};
use crate::matrix::{approx_inverse, ComplexMatrix, IntervalMatrix, MatrixError};
use crate::method::{run_method, Method, PairOutcome};
use crate::verifier::{midpoint_candidates, verify_candidates, VerifyError, VerifyOptions};

pub use prng::SplitMix64;

/// Seed used by the shipped sweeps and benchmarks. For `N = 5` its `X`
/// keeps the whole decomposition verifiable up to entry radius `1e-3`, which
/// most draws do not.
pub const DEFAULT_SEED: u64 = 342;
/// Draws of `X` attempted before giving up.
pub const MAX_DRAWS: u64 = 10;
/// `X` with a larger 1-norm condition estimate is redrawn.
pub const MAX_CONDITION: f64 = 1e12;
/// Timing runs per measurement; the fastest is reported.
pub const TIMING_REPEATS: usize = 3;
/// Token written to CSV cells of failed verifications.
pub const FAIL_TOKEN: &str = "FAIL";

#[derive(Debug, Error)]
pub enum GenError {
    #[error("spectrum size N must be positive")]
    EmptySpectrum,
    #[error("entry radius must be finite and nonnegative, got {0}")]
    BadRadius(f64),
    #[error("no well-conditioned X after {0} draws")]
    SingularDraws(u64),
    #[error("radius schedule is empty")]
    EmptySchedule,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("output failed: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// Number of nonzero eigenvalues; the matrix has dimension `n + 1`.
    pub n: usize,
    pub seed: u64,
    /// Entrywise radius of both real and imaginary parts.
    pub rad: f64,
}

impl GeneratorSpec {
    pub fn new(n: usize, seed: u64, rad: f64) -> Result<Self, GenError> {
        let spec = Self { n, seed, rad };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::EmptySpectrum);
        }
        if !(self.rad.is_finite() && self.rad >= 0.0) {
            return Err(GenError::BadRadius(self.rad));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }
}

/// `0` followed by the `n`-th roots of unity `e^{2 pi i j / n}`, `j = 1..n`.
pub fn exact_spectrum(n: usize) -> Vec<Complex64> {
    std::iter::once(Complex64::new(0.0, 0.0))
        .chain((1..=n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)))
        .collect()
}

fn one_norm(m: &ComplexMatrix) -> f64 {
    (0..m.cols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn draw_x(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim)
        .map(|_| {
            let re = rng.next_signed();
            let im = rng.next_signed();
            Complex64::new(re, im)
        })
        .collect();
    ComplexMatrix::new(dim, dim, data).expect("square by construction")
}

/// Midpoint `X D X^-1`, computed in floating point.
///
/// Entries of `X` are drawn row-major, real part then imaginary part, from
/// [`SplitMix64`] stream 0 of the seed; a numerically singular draw moves on
/// to stream 1, 2, and so on.
pub fn generate_center(n: usize, seed: u64) -> Result<ComplexMatrix, GenError> {
    if n == 0 {
        return Err(GenError::EmptySpectrum);
    }
    let dim = n + 1;
    let d = exact_spectrum(n);
    for draw in 0..MAX_DRAWS {
        let mut rng = SplitMix64::substream(seed, draw);
        let x = draw_x(&mut rng, dim);
        let x_inv = match approx_inverse(&x) {
            Ok(inv) => inv,
            Err(MatrixError::Singular { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        let cond = one_norm(&x) * one_norm(&x_inv);
        if !cond.is_finite() || cond > MAX_CONDITION {
            log::debug!("draw {draw} for seed {seed} has condition {cond:e}; redrawing");
            continue;
        }
        // X D scales column j by d_j
        let data = x.as_slice().iter().enumerate().map(|(idx, &z)| z * d[idx % dim]).collect();
        let xd = ComplexMatrix::new(dim, dim, data)?;
        return Ok(xd.matmul(&x_inv)?);
    }
    Err(GenError::SingularDraws(MAX_DRAWS))
}

pub fn generate_test_matrix(spec: &GeneratorSpec) -> Result<IntervalMatrix, GenError> {
    spec.validate()?;
    let center = generate_center(spec.n, spec.seed)?;
    Ok(IntervalMatrix::from_midrad(&center, spec.rad, spec.rad)?)
}

/// Index of the nearest exact eigenvalue for each candidate eigenvalue,
/// assigned greedily by distance so that no exact value is used twice.
pub fn match_to_spectrum(approx: &[Complex64], exact: &[Complex64]) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize, usize)> = approx
        .iter()
        .enumerate()
        .flat_map(|(i, a)| exact.iter().enumerate().map(move |(j, e)| ((a - e).norm(), i, j)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = vec![usize::MAX; approx.len()];
    let mut used = vec![false; exact.len()];
    for (_, i, j) in pairs {
        if out[i] == usize::MAX && !used[j] {
            out[i] = j;
            used[j] = true;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub rad: f64,
    /// Certified radius per exact eigenvalue, in the order of
    /// [`exact_spectrum`]; `None` marks a failure.
    pub radii: Vec<Option<f64>>,
}

impl SweepRow {
    pub fn successes(&self) -> usize {
        self.radii.iter().flatten().count()
    }

    pub fn all_verified(&self) -> bool {
        self.successes() == self.radii.len()
    }

    pub fn mean_radius(&self) -> Option<f64> {
        mean(self.radii.iter().flatten().copied())
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub n: usize,
    pub seed: u64,
    pub method: Method,
    pub spectrum: Vec<Complex64>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Mean certified radius over every success of the sweep.
    pub fn mean_radius(&self) -> Option<f64> {
        mean(self.rows.iter().flat_map(|r| r.radii.iter().flatten().copied()))
    }

    /// Once an eigenvalue fails, it fails for every later row.
    pub fn failures_are_monotone(&self) -> bool {
        (0..self.spectrum.len()).all(|j| {
            let mut failed = false;
            self.rows.iter().all(|row| {
                failed |= row.radii[j].is_none();
                !failed || row.radii[j].is_none()
            })
        })
    }

    /// `rad,lambda_0,...,lambda_N,mean` with radii as `{:.14e}`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), GenError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["rad".to_owned()];
        header.extend((0..self.spectrum.len()).map(|j| format!("lambda_{j}")));
        header.push("mean".to_owned());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![format_real(row.rad)];
            rec.extend(row.radii.iter().map(|r| format_cell(*r)));
            rec.push(format_cell(row.mean_radius()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scientific notation with 15 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.14e}")
}

fn format_cell(v: Option<f64>) -> String {
    v.map_or_else(|| FAIL_TOKEN.to_owned(), format_real)
}

/// Verifies one fixed midpoint `X D X^-1` (seed and `n` from `base`; its
/// `rad` is ignored) inflated by each radius of the schedule in turn.
///
/// Candidates come from the midpoint once, so column `j` of every row refers
/// to the same eigenpair.
pub fn radius_sweep(
    base: &GeneratorSpec,
    schedule: &[f64],
    method: Method,
    opts: &VerifyOptions,
) -> Result<SweepReport, GenError> {
    if schedule.is_empty() {
        return Err(GenError::EmptySchedule);
    }
    let center = generate_center(base.n, base.seed)?;
    let spectrum = exact_spectrum(base.n);
    let point = IntervalMatrix::from_point(&center);
    let candidates = midpoint_candidates(&point, &opts.eig)?;
    let order = match_to_spectrum(&candidates.iter().map(|c| c.lambda).collect::<Vec<_>>(), &spectrum);

    let mut rows = Vec::with_capacity(schedule.len());
    for &rad in schedule {
        GeneratorSpec { rad, ..*base }.validate()?;
        let matrix = IntervalMatrix::from_midrad(&center, rad, rad)?;
        let radii: Vec<Option<f64>> = match method {
            Method::Radiipol => verify_candidates(&matrix, &candidates, opts.parallel)?
                .iter()
                .map(|e| e.r_exist())
                .collect(),
            Method::Krawczyk => candidates
                .iter()
                .map(|c| krawczyk_verify(&matrix, c, default_initial_radius(c.lambda)).map(|k| k.certified_radius()))
                .collect::<Result<_, _>>()?,
        };
        let mut by_eigenvalue = vec![None; spectrum.len()];
        for (i, r) in radii.into_iter().enumerate() {
            if let Some(slot) = order.get(i).and_then(|&j| by_eigenvalue.get_mut(j)) {
                *slot = r;
            }
        }
        rows.push(SweepRow { rad, radii: by_eigenvalue });
    }
    Ok(SweepReport {
        n: base.n,
        seed: base.seed,
        method,
        spectrum,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    pub seconds: f64,
    pub successes: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rad: f64,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Krawczyk time over radiipol time for `n`, when both were measured.
    pub fn ratio(&self, n: usize) -> Option<f64> {
        let time = |m| self.rows.iter().find(|r| r.n == n && r.method == m).map(|r| r.seconds);
        Some(time(Method::Krawczyk)? / time(Method::Radiipol)?)
    }

    /// `N,method,seconds,success_count,total,ratio_krawczyk_over_radiipol`;
    /// the ratio cell is empty unless both methods ran for that `N`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), GenError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["N", "method", "seconds", "success_count", "total", "ratio_krawczyk_over_radiipol"])?;
        for row in &self.rows {
            w.write_record([
                row.n.to_string(),
                row.method.to_string(),
                format_real(row.seconds),
                row.successes.to_string(),
                row.total.to_string(),
                self.ratio(row.n).map(format_real).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Times the full eigendecomposition (candidates plus verification) of the
/// `N`-th test matrix for every method, best of [`TIMING_REPEATS`] after one
/// warm-up run.
pub fn timing_benchmark(
    n_schedule: &[usize],
    rad: f64,
    methods: &[Method],
    seed: u64,
    opts: &VerifyOptions,
) -> Result<BenchReport, GenError> {
    let mut rows = Vec::new();
    for &n in n_schedule {
        if methods.is_empty() {
            break;
        }
        let matrix = generate_test_matrix(&GeneratorSpec::new(n, seed, rad)?)?;
        for &method in methods {
            let mut outcomes: Vec<PairOutcome> = run_method(&matrix, method, opts)?;
            let mut best = Duration::MAX;
            for _ in 0..TIMING_REPEATS {
                let start = Instant::now();
                outcomes = run_method(&matrix, method, opts)?;
                best = best.min(start.elapsed());
            }
            rows.push(BenchRow {
                n,
                method,
                seconds: best.as_secs_f64(),
                successes: outcomes.iter().filter(|o| o.is_verified()).count(),
                total: outcomes.len(),
            });
        }
    }
    Ok(BenchReport { rad, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::approx_eigendecomposition;

    #[test]
    fn spectrum_layout() {
        let s = exact_spectrum(5);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], Complex64::new(0.0, 0.0));
        assert!((s[1] - Complex64::new(0.30901699437494745, 0.9510565162951535)).norm() < 1e-15);
        assert!((s[5] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn n5_midpoint_eigenvalues() {
        let center = generate_center(5, DEFAULT_SEED).unwrap();
        let approx: Vec<Complex64> = approx_eigendecomposition(&center)
            .unwrap()
            .iter()
            .map(|c| c.lambda)
            .collect();
        let exact = exact_spectrum(5);
        let order = match_to_spectrum(&approx, &exact);
        for (i, &j) in order.iter().enumerate() {
            assert!((approx[i] - exact[j]).norm() < 1e-5, "{} vs {}", approx[i], exact[j]);
        }
    }

    #[test]
    fn n1_is_two_by_two_with_zero_and_one() {
        let m = generate_test_matrix(&GeneratorSpec::new(1, 7, 0.0).unwrap()).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        let mut ev: Vec<f64> = approx_eigendecomposition(&m.midpoint())
            .unwrap()
            .iter()
            .map(|c| c.lambda.re)
            .collect();
        ev.sort_by(f64::total_cmp);
        assert!(ev[0].abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = GeneratorSpec::new(6, 99, 1e-7).unwrap();
        let a = generate_test_matrix(&spec).unwrap();
        let b = generate_test_matrix(&spec).unwrap();
        assert_eq!(a, b);
        let c = generate_test_matrix(&GeneratorSpec { seed: 100, ..spec }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(GeneratorSpec::new(0, 1, 0.0), Err(GenError::EmptySpectrum)));
        assert!(matches!(GeneratorSpec::new(3, 1, -1.0), Err(GenError::BadRadius(_))));
        assert!(matches!(GeneratorSpec::new(3, 1, f64::NAN), Err(GenError::BadRadius(_))));
    }

    #[test]
    fn greedy_matching() {
        let exact = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let approx = [Complex64::new(0.9, 0.0), Complex64::new(0.2, 0.0)];
        assert_eq!(match_to_spectrum(&approx, &exact), vec![1, 0]);
    }

    #[test]
    fn zero_radius_sweep_is_near_rounding() {
        let base = GeneratorSpec::new(5, DEFAULT_SEED, 0.0).unwrap();
        let rep = radius_sweep(&base, &[0.0], Method::Radiipol, &VerifyOptions::default()).unwrap();
        assert!(rep.rows[0].all_verified());
        assert!(rep.mean_radius().unwrap() < 1e-12);
    }

    #[test]
    fn sweep_rows_follow_schedule() {
        let base = GeneratorSpec::new(5, DEFAULT_SEED, 0.0).unwrap();
        let schedule = [1e-5, 1e-3, 3.2e-3, 1e-1];
        let rep = radius_sweep(&base, &schedule, Method::Radiipol, &VerifyOptions::default()).unwrap();
        assert_eq!(rep.rows.iter().map(|r| r.rad).collect::<Vec<_>>(), schedule);
        assert!(rep.rows[0].all_verified());
        assert_eq!(rep.rows[3].successes(), 0);
        assert!(rep.failures_are_monotone());
        assert!(matches!(
            radius_sweep(&base, &[], Method::Radiipol, &VerifyOptions::default()),
            Err(GenError::EmptySchedule)
        ));
    }

    #[test]
    fn sweep_csv_layout() {
        let report = SweepReport {
            n: 1,
            seed: 0,
            method: Method::Radiipol,
            spectrum: exact_spectrum(1),
            rows: vec![SweepRow {
                rad: 1e-5,
                radii: vec![Some(1.5e-4), None],
            }],
        };
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "rad,lambda_0,lambda_1,mean\n1.00000000000000e-5,1.50000000000000e-4,FAIL,1.50000000000000e-4\n"
        );
    }

    #[test]
    fn empty_methods_empty_table() {
        let rep = timing_benchmark(&[5], 1e-15, &[], DEFAULT_SEED, &VerifyOptions::default()).unwrap();
        assert!(rep.rows.is_empty());
    }

    #[test]
    fn benchmark_counts_successes() {
        let rep = timing_benchmark(&[5], 1e-15, &Method::ALL, DEFAULT_SEED, &VerifyOptions::default()).unwrap();
        assert_eq!(rep.rows.len(), 2);
        for row in &rep.rows {
            assert_eq!((row.successes, row.total), (6, 6), "{row:?}");
            assert!(row.seconds > 0.0);
        }
        assert!(rep.ratio(5).is_some());
        assert!(rep.ratio(6).is_none());
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("N,method,seconds,success_count,total,ratio_krawczyk_over_radiipol\n"));
    }
}
