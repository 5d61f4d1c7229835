//! Command-line front end: `verify`, `gen` and `bench`.
//!
//! Exit codes: 0 when every eigenpair is verified, 1 when some are not,
//! 2 for unusable input or output.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::genbench::{generate_center, timing_benchmark, GeneratorSpec, DEFAULT_SEED};
use crate::io::{sha256_hex, MatrixDocument, ReportDocument};
use crate::method::{run_method, Method};
use crate::verifier::VerifyOptions;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_PARTIAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "radiipol", version, about = "Rigorous enclosures of eigenpairs of complex interval matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose every eigenpair of the matrix in a JSON matrix document.
    Verify {
        input: PathBuf,
        #[arg(long, default_value = "radiipol", value_parser = parse_method)]
        method: Method,
        /// Added to every real and imaginary entry radius before verifying.
        #[arg(long, default_value_t = 0.0)]
        rad: f64,
        /// Report path; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        /// Worker threads for per-eigenpair verification (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Write the test matrix X D X^-1 for spectrum {0, N-th roots of unity}.
    Gen {
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        rad: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time full eigendecompositions of generated matrices; writes CSV.
    Bench {
        /// Comma-separated spectrum sizes.
        #[arg(long = "N-list", value_name = "N,N,...")]
        n_list: String,
        #[arg(long, default_value_t = 1e-15)]
        rad: f64,
        /// Comma-separated subset of radiipol,krawczyk.
        #[arg(long, default_value = "radiipol,krawczyk")]
        methods: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads (1 keeps timings comparable; 0 = all cores).
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn with_threads<T: Send>(threads: usize, job: impl FnOnce(bool) -> T + Send) -> Result<T, Failure> {
    if threads == 1 {
        return Ok(job(false));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    Ok(pool.install(|| job(true)))
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    let items: Vec<T> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| Failure(format!("{flag}: '{s}': {e}"))))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(Failure(format!("{flag}: list is empty")));
    }
    Ok(items)
}

fn cmd_verify(
    input: &Path,
    method: Method,
    rad: f64,
    output: Option<&Path>,
    format: ReportFormat,
    threads: usize,
) -> Result<i32, Failure> {
    let (mut doc, bytes) = MatrixDocument::read(input)?;
    doc.inflate(rad)?;
    let matrix = doc.to_interval_matrix()?;

    let start = Instant::now();
    let outcomes = with_threads(threads, |parallel| {
        let opts = VerifyOptions {
            parallel,
            ..Default::default()
        };
        run_method(&matrix, method, &opts)
    })??;
    let elapsed = start.elapsed().as_secs_f64();

    let report = ReportDocument::new(doc.n, method, sha256_hex(&bytes), elapsed, &outcomes);
    let mut out = open_output(output)?;
    match format {
        ReportFormat::Json => out.write_all(report.to_json().as_bytes())?,
        ReportFormat::Csv => report.write_csv(&mut out)?,
    }
    out.flush()?;
    Ok(if report.all_verified() { EXIT_VERIFIED } else { EXIT_PARTIAL })
}

fn cmd_gen(n: usize, seed: u64, rad: f64, output: Option<&Path>) -> Result<i32, Failure> {
    let spec = GeneratorSpec::new(n, seed, rad)?;
    let center = generate_center(spec.n, spec.seed)?;
    let doc = MatrixDocument::from_midrad(&center, spec.rad, spec.rad);
    let mut out = open_output(output)?;
    out.write_all(doc.to_json().as_bytes())?;
    out.flush()?;
    Ok(EXIT_VERIFIED)
}

fn cmd_bench(
    n_list: &str,
    rad: f64,
    methods: &str,
    seed: u64,
    output: Option<&Path>,
    threads: usize,
) -> Result<i32, Failure> {
    let sizes: Vec<usize> = parse_list("--N-list", n_list)?;
    let methods: Vec<Method> = parse_list("--methods", methods)?;
    let report = with_threads(threads, |parallel| {
        let opts = VerifyOptions {
            parallel,
            ..Default::default()
        };
        timing_benchmark(&sizes, rad, &methods, seed, &opts)
    })??;
    let mut out = open_output(output)?;
    report.write_csv(&mut out)?;
    out.flush()?;
    let complete = report.rows.iter().all(|r| r.successes == r.total);
    Ok(if complete { EXIT_VERIFIED } else { EXIT_PARTIAL })
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_VERIFIED };
        }
    };
    let result = match &cli.command {
        Command::Verify {
            input,
            method,
            rad,
            output,
            format,
            threads,
        } => cmd_verify(input, *method, *rad, output.as_deref(), *format, *threads),
        Command::Gen { n, seed, rad, output } => cmd_gen(*n, *seed, *rad, output.as_deref()),
        Command::Bench {
            n_list,
            rad,
            methods,
            seed,
            output,
            threads,
        } => cmd_bench(n_list, *rad, methods, *seed, output.as_deref(), *threads),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}
