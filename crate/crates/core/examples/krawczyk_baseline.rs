//! The same eigenpairs certified by the radii polynomials and by a textbook
//! Krawczyk operator with epsilon-inflation.
//!
//!     cargo run --example krawczyk_baseline

use radiipol::genbench::{generate_test_matrix, GeneratorSpec, DEFAULT_SEED};
use radiipol::krawczyk::{default_initial_radius, krawczyk_verify};
use radiipol::matrix::IntervalMatrix;
use radiipol::verifier::{midpoint_candidates, verify_eigenpair, VerifyOptions};

fn compare(label: &str, matrix: &IntervalMatrix) -> Result<(), Box<dyn std::error::Error>> {
    println!("{label}");
    let opts = VerifyOptions::default();
    for cand in midpoint_candidates(matrix, &opts.eig)? {
        let radii = verify_eigenpair(matrix, &cand)?;
        let k = krawczyk_verify(matrix, &cand, default_initial_radius(cand.lambda))?;
        // both regions are max-norm balls around the same center
        let overlap = match (radii.r_exist(), k.certified_radius()) {
            (Some(_), Some(_)) => "regions intersect",
            _ => "-",
        };
        println!(
            "  lambda = {:+.6} {:+.6}i  radii r_exist = {:<11}  krawczyk box = {:<11} after {:2} tries  {overlap}",
            cand.lambda.re,
            cand.lambda.im,
            radii.r_exist().map_or("FAIL".into(), |r| format!("{r:.3e}")),
            k.certified_radius().map_or("FAIL".into(), |r| format!("{r:.3e}")),
            k.iterations
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    compare("N = 5, rad = 1e-15", &generate_test_matrix(&GeneratorSpec::new(5, DEFAULT_SEED, 1e-15)?)?)?;
    // wide entries: the inflation sequence from 1e-8 no longer reaches a
    // contracting box, the radii polynomials solve for one directly
    compare("N = 5, rad = 1e-5", &generate_test_matrix(&GeneratorSpec::new(5, DEFAULT_SEED, 1e-5)?)?)?;
    Ok(())
}
