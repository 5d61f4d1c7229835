//! Floquet exponents of a Lorenz periodic orbit: verifies the shipped
//! interval matrix and compares with the published enclosure radii.
//!
//!     cargo run --example floquet_lorenz

use std::path::Path;

use num_complex::Complex64;
use radiipol::io::MatrixDocument;
use radiipol::verifier::{verify_eigendecomposition, VerifyOptions};
use serde::Deserialize;

#[derive(Deserialize)]
struct Expected {
    radius: Vec<f64>,
    lambda: Vec<f64>,
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let (doc, _) = MatrixDocument::read(&fixtures.join("lorenz.json"))?;
    let expected: Expected = serde_json::from_str(&std::fs::read_to_string(fixtures.join("lorenz_expected.json"))?)?;
    let matrix = doc.to_interval_matrix()?;

    let start = std::time::Instant::now();
    let enclosures = verify_eigendecomposition(&matrix, &VerifyOptions::default())?;
    println!("verified in {:.2?}", start.elapsed());

    for e in &enclosures {
        // pair with the published eigenvalue closest to this center
        let (i, _) = expected
            .lambda
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - e.lambda_center.re).abs().total_cmp(&(b.1 - e.lambda_center.re).abs()))
            .expect("three published values");
        println!(
            "lambda = {:+.15}  {}  real: {}  r_exist = {:.6e}  (published {:.6e} around {:+.15})",
            e.lambda_center.re,
            e.status.as_str(),
            e.is_real,
            e.r_exist().unwrap_or(f64::NAN),
            expected.radius[i],
            expected.lambda[i]
        );
    }
    let zero_enclosed = enclosures.iter().any(|e| e.lambda_contains(Complex64::new(0.0, 0.0)));
    println!("the zero Floquet exponent is enclosed: {zero_enclosed}");
    Ok(())
}
