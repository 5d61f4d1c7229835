//! Step-by-step verification of one eigenpair of a point matrix: the
//! candidate, the bounds Y, Z0, Z1, the interval where every radii
//! polynomial is negative, and the certified radii.
//!
//!     cargo run --example verify_point_matrix

use num_complex::Complex64;
use radiipol::matrix::{approx_eigendecomposition, ComplexMatrix, IntervalMatrix};
use radiipol::verifier::{certify, verify_eigendecomposition, VerificationProblem, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // companion matrix of z^3 - 2z^2 - z + 2 = (z - 2)(z - 1)(z + 1)
    let center = ComplexMatrix::from_real_rows(&[
        vec![2.0, 1.0, -2.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    let a = IntervalMatrix::from_point(&center);

    let candidates = approx_eigendecomposition(&center)?;
    let cand = &candidates[0];
    println!("candidate lambda = {:.15}", cand.lambda);
    let vector: Vec<String> = cand.vector.iter().map(|z| format!("{:.6}", z)).collect();
    println!("candidate vector = [{}], pivot {}", vector.join(", "), cand.pivot);

    let prob = VerificationProblem::assemble(&a, cand)?;
    let bounds = prob.bounds()?;
    println!("Y  = {:?}", bounds.y);
    println!("Z0 = {:?}", bounds.z0);
    println!("Z1 = {:?}", bounds.z1);
    match bounds.solve() {
        Ok(iv) => println!("all p_k < 0 on ({:e}, {:e})", iv.lo, iv.hi),
        Err(e) => println!("negative test failed: {e}"),
    }
    let enclosure = certify(&prob);
    println!("status {}, r_exist {:?}, r_unique {:?}", enclosure.status.as_str(), enclosure.r_exist(), enclosure.r_unique());
    println!("contains lambda = 2: {}", enclosure.lambda_contains(Complex64::new(2.0, 0.0)));

    println!();
    println!("full decomposition:");
    for e in verify_eigendecomposition(&a, &VerifyOptions::default())? {
        println!(
            "  lambda = {:+.12} {:+.1e}i  {}  r_exist = {:.3e}  real: {}",
            e.lambda_center.re,
            e.lambda_center.im,
            e.status.as_str(),
            e.r_exist().unwrap_or(f64::NAN),
            e.is_real
        );
    }

    // a double eigenvalue can never be certified
    let identity = IntervalMatrix::from_point(&ComplexMatrix::identity(2));
    for e in verify_eigendecomposition(&identity, &VerifyOptions::default())? {
        println!("identity: {} ({})", e.status.as_str(), e.failure_reason.unwrap_or_default());
    }
    Ok(())
}
