//! File workflow: generate a test matrix document, read it back, widen its
//! entries, verify, and write JSON and CSV reports.
//!
//!     cargo run --example documents -- [output-dir]

use std::path::PathBuf;

use radiipol::genbench::{generate_center, DEFAULT_SEED};
use radiipol::io::{sha256_hex, MatrixDocument, ReportDocument};
use radiipol::method::{run_method, Method};
use radiipol::verifier::VerifyOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let doc = MatrixDocument::from_midrad(&generate_center(4, DEFAULT_SEED)?, 1e-9, 1e-9);
    let matrix_path = dir.join("matrix.json");
    std::fs::write(&matrix_path, doc.to_json())?;
    println!("wrote {}", matrix_path.display());

    let (mut back, bytes) = MatrixDocument::read(&matrix_path)?;
    assert_eq!(back.to_interval_matrix()?, doc.to_interval_matrix()?);
    back.inflate(1e-7)?;

    let start = std::time::Instant::now();
    let outcomes = run_method(&back.to_interval_matrix()?, Method::Radiipol, &VerifyOptions::default())?;
    let report = ReportDocument::new(back.n, Method::Radiipol, sha256_hex(&bytes), start.elapsed().as_secs_f64(), &outcomes);

    let json_path = dir.join("report.json");
    std::fs::write(&json_path, report.to_json())?;
    let csv_path = dir.join("report.csv");
    report.write_csv(std::fs::File::create(&csv_path)?)?;
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    println!("all verified: {}", report.all_verified());
    print!("{}", std::fs::read_to_string(&csv_path)?);
    Ok(())
}
