//! Uniform view over the two verification methods.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::krawczyk::{krawczyk_eigendecomposition, KrawczykResult};
use crate::matrix::IntervalMatrix;
use crate::verifier::{realness_check, verify_eigendecomposition, EigenpairEnclosure, Status, VerifyError, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Radiipol,
    Krawczyk,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Radiipol, Method::Krawczyk];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Radiipol => "radiipol",
            Method::Krawczyk => "krawczyk",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "radiipol" => Ok(Method::Radiipol),
            "krawczyk" => Ok(Method::Krawczyk),
            other => Err(format!("unknown method '{other}' (expected radiipol or krawczyk)")),
        }
    }
}

/// Result for one candidate, whichever method produced it.
///
/// For the Krawczyk baseline both radii equal the half-width of the
/// certified box: the box proves existence and uniqueness at once.
#[derive(Clone, Debug, PartialEq)]
pub struct PairOutcome {
    pub lambda: Complex64,
    pub vector: Vec<Complex64>,
    pub pivot: usize,
    pub status: String,
    pub r_exist: Option<f64>,
    pub r_unique: Option<f64>,
    pub is_real: bool,
    pub failure_reason: Option<String>,
}

impl PairOutcome {
    pub fn is_verified(&self) -> bool {
        self.r_exist.is_some()
    }
}

impl From<EigenpairEnclosure> for PairOutcome {
    fn from(e: EigenpairEnclosure) -> Self {
        Self {
            r_exist: e.r_exist(),
            r_unique: e.r_unique(),
            status: e.status.as_str().to_owned(),
            lambda: e.lambda_center,
            vector: e.vector_center,
            pivot: e.pivot,
            is_real: e.is_real,
            failure_reason: e.failure_reason,
        }
    }
}

impl PairOutcome {
    fn from_krawczyk(matrix: &IntervalMatrix, k: KrawczykResult) -> Self {
        let radius = k.certified_radius();
        let status = if k.success() { Status::Verified } else { Status::FailedNegativeTest };
        let failure_reason = (!k.success()).then(|| {
            format!(
                "{} after {} attempt(s), last box half-width {:e}",
                k.outcome.as_str(),
                k.iterations,
                k.box_radius
            )
        });
        Self {
            is_real: realness_check(matrix, k.lambda_center, &k.vector_center, status),
            lambda: k.lambda_center,
            vector: k.vector_center,
            pivot: k.pivot,
            status: k.outcome.as_str().to_owned(),
            r_exist: radius,
            r_unique: radius,
            failure_reason,
        }
    }
}

/// Full eigendecomposition of `matrix` with the chosen method, in
/// candidate order.
pub fn run_method(matrix: &IntervalMatrix, method: Method, opts: &VerifyOptions) -> Result<Vec<PairOutcome>, VerifyError> {
    Ok(match method {
        Method::Radiipol => verify_eigendecomposition(matrix, opts)?
            .into_iter()
            .map(PairOutcome::from)
            .collect(),
        Method::Krawczyk => krawczyk_eigendecomposition(matrix, opts)?
            .into_iter()
            .map(|k| PairOutcome::from_krawczyk(matrix, k))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;

    #[test]
    fn parse_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert_eq!(" Krawczyk ".parse::<Method>().unwrap(), Method::Krawczyk);
        assert!("newton".parse::<Method>().is_err());
    }

    #[test]
    fn both_methods_certify_diagonal() {
        let m = IntervalMatrix::from_point(&ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap());
        for method in Method::ALL {
            let out = run_method(&m, method, &VerifyOptions::default()).unwrap();
            assert_eq!(out.len(), 2);
            for o in &out {
                assert!(o.is_verified(), "{method}: {o:?}");
                assert_eq!(o.status, "Verified");
                assert!(o.is_real);
                assert!(o.r_exist.unwrap() <= o.r_unique.unwrap());
            }
        }
    }

    #[test]
    fn krawczyk_failure_has_reason() {
        let m = IntervalMatrix::from_point(&ComplexMatrix::identity(2));
        let out = run_method(&m, Method::Krawczyk, &VerifyOptions::default()).unwrap();
        for o in out {
            assert!(!o.is_verified());
            assert!(!o.is_real);
            assert!(o.failure_reason.is_some());
        }
    }
}
