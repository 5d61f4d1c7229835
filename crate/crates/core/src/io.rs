//! JSON matrix and report documents, and the CSV form of reports.
//!
//! Reals are written as shortest round-trip decimals and parsed with exact
//! rounding, so a document read back reproduces the same doubles.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::interval::ComplexInterval;
use crate::matrix::{ComplexMatrix, IntervalMatrix};
use crate::method::{Method, PairOutcome};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("output failed: {0}")]
    Write(#[from] std::io::Error),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; the position is reported separately
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_owned(),
            None => message,
        };
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub re_mid: f64,
    pub im_mid: f64,
    pub re_rad: f64,
    pub im_rad: f64,
}

/// `{"n": n, "entries": [[{re_mid, im_mid, re_rad, im_rad}, ...], ...]}`,
/// row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<EntryDoc>>,
}

impl MatrixDocument {
    /// Center `center` with the same real and imaginary radii everywhere.
    pub fn from_midrad(center: &ComplexMatrix, re_rad: f64, im_rad: f64) -> Self {
        let n = center.rows();
        let entries = (0..n)
            .map(|i| {
                center
                    .row(i)
                    .iter()
                    .map(|z| EntryDoc {
                        re_mid: z.re,
                        im_mid: z.im,
                        re_rad,
                        im_rad,
                    })
                    .collect()
            })
            .collect();
        Self { n, entries }
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<(Self, Vec<u8>), DocumentError> {
        let bytes = std::fs::read(path).map_err(|source| DocumentError::Read {
            path: path.display().to_string(),
            source,
        })?;
        let text = std::str::from_utf8(&bytes).map_err(|e| invalid("document", format!("not UTF-8: {e}")))?;
        Ok((Self::from_json(text)?, bytes))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.n == 0 {
            return Err(invalid("n", "must be positive"));
        }
        if self.entries.len() != self.n {
            return Err(invalid("entries", format!("expected {} rows, found {}", self.n, self.entries.len())));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.n {
                return Err(invalid(
                    format!("entries[{i}]"),
                    format!("expected {} entries, found {}", self.n, row.len()),
                ));
            }
            for (j, e) in row.iter().enumerate() {
                for (name, v) in [("re_mid", e.re_mid), ("im_mid", e.im_mid)] {
                    if !v.is_finite() {
                        return Err(invalid(format!("entries[{i}][{j}].{name}"), "must be finite"));
                    }
                }
                for (name, v) in [("re_rad", e.re_rad), ("im_rad", e.im_rad)] {
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(invalid(
                            format!("entries[{i}][{j}].{name}"),
                            format!("must be finite and nonnegative, got {v}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Adds `rad` to every real and imaginary radius.
    pub fn inflate(&mut self, rad: f64) -> Result<(), DocumentError> {
        if !(rad.is_finite() && rad >= 0.0) {
            return Err(invalid("--rad", format!("must be finite and nonnegative, got {rad}")));
        }
        for e in self.entries.iter_mut().flatten() {
            e.re_rad += rad;
            e.im_rad += rad;
        }
        self.validate()
    }

    pub fn to_interval_matrix(&self) -> Result<IntervalMatrix, DocumentError> {
        self.validate()?;
        let mut data = Vec::with_capacity(self.n * self.n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let z = ComplexInterval::from_midrad(e.re_mid, e.im_mid, e.re_rad, e.im_rad)
                    .map_err(|err| invalid(format!("entries[{i}][{j}]"), err.to_string()))?;
                data.push(z);
            }
        }
        IntervalMatrix::new(self.n, self.n, data).map_err(|e| invalid("entries", e.to_string()))
    }
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexDoc> for Complex64 {
    fn from(z: ComplexDoc) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub status: String,
    pub lambda: ComplexDoc,
    pub vector: Vec<ComplexDoc>,
    /// One-based index of the vector component pinned to 1.
    pub pivot_k: usize,
    pub r_exist: Option<f64>,
    pub r_unique: Option<f64>,
    pub is_real: bool,
    pub failure_reason: Option<String>,
}

impl From<&PairOutcome> for ReportRecord {
    fn from(o: &PairOutcome) -> Self {
        Self {
            status: o.status.clone(),
            lambda: o.lambda.into(),
            vector: o.vector.iter().map(|&z| z.into()).collect(),
            pivot_k: o.pivot + 1,
            r_exist: o.r_exist,
            r_unique: o.r_unique,
            is_real: o.is_real,
            failure_reason: o.failure_reason.clone(),
        }
    }
}

impl ReportRecord {
    pub fn is_verified(&self) -> bool {
        self.status == "Verified"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// SHA-256 of the input document bytes.
    pub input_hash: String,
    pub method: String,
    pub wall_time_seconds: f64,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub metadata: ReportMetadata,
    pub records: Vec<ReportRecord>,
}

impl ReportDocument {
    pub fn new(n: usize, method: Method, input_hash: String, wall_time_seconds: f64, outcomes: &[PairOutcome]) -> Self {
        Self {
            metadata: ReportMetadata {
                input_hash,
                method: method.to_string(),
                wall_time_seconds,
                n,
            },
            records: outcomes.iter().map(ReportRecord::from).collect(),
        }
    }

    /// Every one of the `n` eigenpairs verified.
    pub fn all_verified(&self) -> bool {
        self.records.len() == self.metadata.n && self.records.iter().all(ReportRecord::is_verified)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// One row per record: `index,status,lambda_re,lambda_im,pivot_k,
    /// r_exist,r_unique,is_real,failure_reason,v1_re,v1_im,...`. Missing
    /// radii are written as `FAIL`; reals use the shortest round-trip form.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), DocumentError> {
        let n = self.metadata.n;
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = [
            "index",
            "status",
            "lambda_re",
            "lambda_im",
            "pivot_k",
            "r_exist",
            "r_unique",
            "is_real",
            "failure_reason",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        for j in 1..=n {
            header.push(format!("v{j}_re"));
            header.push(format!("v{j}_im"));
        }
        w.write_record(&header)?;
        let real = |v: f64| format!("{v:?}");
        let radius = |r: Option<f64>| r.map_or_else(|| "FAIL".to_owned(), real);
        for (i, rec) in self.records.iter().enumerate() {
            let mut row = vec![
                (i + 1).to_string(),
                rec.status.clone(),
                real(rec.lambda.re),
                real(rec.lambda.im),
                rec.pivot_k.to_string(),
                radius(rec.r_exist),
                radius(rec.r_unique),
                rec.is_real.to_string(),
                rec.failure_reason.clone().unwrap_or_default(),
            ];
            for z in &rec.vector {
                row.push(real(z.re));
                row.push(real(z.im));
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDENTITY: &str = r#"{"n": 2, "entries": [
        [{"re_mid": 1, "im_mid": 0, "re_rad": 0, "im_rad": 0}, {"re_mid": 0, "im_mid": 0, "re_rad": 0, "im_rad": 0}],
        [{"re_mid": 0, "im_mid": 0, "re_rad": 0, "im_rad": 0}, {"re_mid": 1, "im_mid": 0, "re_rad": 0, "im_rad": 0}]
    ]}"#;

    #[test]
    fn parses_point_matrix() {
        let doc = MatrixDocument::from_json(IDENTITY).unwrap();
        let m = doc.to_interval_matrix().unwrap();
        assert_eq!(m, IntervalMatrix::from_point(&ComplexMatrix::identity(2)));
    }

    #[test]
    fn truncated_document_reports_position() {
        let err = MatrixDocument::from_json(&IDENTITY[..60]).unwrap_err();
        match err {
            DocumentError::Syntax { line, .. } => assert!(line >= 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_field_is_named() {
        let text = r#"{"n": 1, "entries": [[{"re_mid": 1, "im_mid": 0, "re_rad": 0}]]}"#;
        let err = MatrixDocument::from_json(text).unwrap_err().to_string();
        assert!(err.contains("im_rad"), "{err}");
    }

    #[test]
    fn shape_and_radius_validation() {
        let ragged = r#"{"n": 2, "entries": [[{"re_mid": 1, "im_mid": 0, "re_rad": 0, "im_rad": 0}]]}"#;
        assert!(MatrixDocument::from_json(ragged).unwrap_err().to_string().starts_with("entries:"));
        let negative = r#"{"n": 1, "entries": [[{"re_mid": 1, "im_mid": 0, "re_rad": -1, "im_rad": 0}]]}"#;
        let err = MatrixDocument::from_json(negative).unwrap_err().to_string();
        assert!(err.starts_with("entries[0][0].re_rad"), "{err}");
        let empty = r#"{"n": 0, "entries": []}"#;
        assert!(MatrixDocument::from_json(empty).is_err());
    }

    #[test]
    fn inflation_adds_to_both_parts() {
        let mut doc = MatrixDocument::from_json(IDENTITY).unwrap();
        doc.inflate(1e-3).unwrap();
        assert!(doc.entries.iter().flatten().all(|e| e.re_rad == 1e-3 && e.im_rad == 1e-3));
        assert!(doc.inflate(-1.0).is_err());
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let center = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.1, 1.0 / 3.0), Complex64::new(-2e-300, 5e300)],
            vec![Complex64::new(std::f64::consts::PI, -0.7), Complex64::new(1.0 - f64::EPSILON, 0.0)],
        ])
        .unwrap();
        let doc = MatrixDocument::from_midrad(&center, 9.66146973e-7, 0.0);
        let back = MatrixDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_interval_matrix().unwrap(), doc.to_interval_matrix().unwrap());
    }

    #[test]
    fn sha256_known_value() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    fn outcome(verified: bool) -> PairOutcome {
        PairOutcome {
            lambda: Complex64::new(1.0, -0.5),
            vector: vec![Complex64::new(1.0, 0.0), Complex64::new(0.25, 0.125)],
            pivot: 0,
            status: if verified { "Verified" } else { "FailedNegativeTest" }.into(),
            r_exist: verified.then_some(1e-6),
            r_unique: verified.then_some(0.3),
            is_real: false,
            failure_reason: (!verified).then(|| "Z0[0] = 1.2e0 is not below 1".into()),
        }
    }

    #[test]
    fn report_roundtrip_and_counts() {
        let rep = ReportDocument::new(2, Method::Radiipol, sha256_hex(b"x"), 0.5, &[outcome(true), outcome(true)]);
        assert!(rep.all_verified());
        assert_eq!(rep.records[0].pivot_k, 1);
        assert_eq!(ReportDocument::from_json(&rep.to_json()).unwrap(), rep);

        let partial = ReportDocument::new(2, Method::Radiipol, String::new(), 0.0, &[outcome(true), outcome(false)]);
        assert!(!partial.all_verified());
        let short = ReportDocument::new(2, Method::Radiipol, String::new(), 0.0, &[outcome(true)]);
        assert!(!short.all_verified());
    }

    #[test]
    fn report_csv_rows() {
        let rep = ReportDocument::new(2, Method::Krawczyk, String::new(), 0.0, &[outcome(true), outcome(false)]);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "index,status,lambda_re,lambda_im,pivot_k,r_exist,r_unique,is_real,failure_reason,v1_re,v1_im,v2_re,v2_im"
        );
        assert_eq!(lines[1], "1,Verified,1.0,-0.5,1,1e-6,0.3,false,,1.0,0.0,0.25,0.125");
        assert!(lines[2].starts_with("2,FailedNegativeTest,1.0,-0.5,1,FAIL,FAIL,false,Z0[0] = 1.2e0 is not below 1,"));
    }
}
