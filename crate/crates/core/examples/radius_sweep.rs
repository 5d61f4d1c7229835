//! Verifies one `X D X^-1` test matrix while its entry radius grows, and
//! prints the certified radius per eigenvalue (FAIL once verification
//! breaks down) followed by the CSV form of the table.
//!
//!     cargo run --release --example radius_sweep -- [N] [seed]

use radiipol::genbench::{format_real, radius_sweep, GeneratorSpec, DEFAULT_SEED, FAIL_TOKEN};
use radiipol::method::Method;
use radiipol::verifier::VerifyOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(DEFAULT_SEED);

    let schedule = [1e-5, 1e-4, 1e-3, 2e-3, 3.2e-3, 1e-2, 1e-1];
    let base = GeneratorSpec::new(n, seed, 0.0)?;
    let report = radius_sweep(&base, &schedule, Method::Radiipol, &VerifyOptions::default())?;

    println!("N = {n}, seed = {seed}");
    for (j, lambda) in report.spectrum.iter().enumerate() {
        println!("  lambda_{j} = {:+.5} {:+.5}i", lambda.re, lambda.im);
    }
    for row in &report.rows {
        let cells: Vec<String> = row
            .radii
            .iter()
            .map(|r| r.map_or_else(|| FAIL_TOKEN.to_owned(), |r| format!("{r:.3e}")))
            .collect();
        let mean = row.mean_radius().map_or_else(|| FAIL_TOKEN.to_owned(), format_real);
        println!("rad {:8.1e}: {}  mean {mean}", row.rad, cells.join(" "));
    }
    println!("monotone failures: {}", report.failures_are_monotone());
    println!();
    report.write_csv(std::io::stdout())?;
    Ok(())
}
