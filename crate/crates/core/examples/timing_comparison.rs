//! Times the full eigendecomposition of `X D X^-1` test matrices with the
//! radii-polynomial verifier and the Krawczyk baseline, then prints the
//! benchmark CSV.
//!
//!     cargo run --release --example timing_comparison -- [N,N,...] [rad]

use radiipol::genbench::{timing_benchmark, DEFAULT_SEED};
use radiipol::method::Method;
use radiipol::verifier::VerifyOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let sizes: Vec<usize> = match args.next() {
        Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![5, 10, 20, 50],
    };
    let rad: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1e-15);

    let report = timing_benchmark(&sizes, rad, &Method::ALL, DEFAULT_SEED, &VerifyOptions::default())?;
    for &n in &sizes {
        let ratio = report.ratio(n).map_or("-".to_owned(), |r| format!("{r:.2}"));
        println!("N = {n:4}  krawczyk / radiipol time = {ratio}");
    }
    for row in &report.rows {
        println!(
            "N = {:4}  {:9} {:10.4} s  {}/{} verified",
            row.n, row.method, row.seconds, row.successes, row.total
        );
    }
    println!();
    report.write_csv(std::io::stdout())?;
    Ok(())
}
