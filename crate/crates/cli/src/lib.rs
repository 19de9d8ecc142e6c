//! Command-line front end for `tripoint-core`: parses variety files and
//! flags, runs the requested operation and renders a versioned report as
//! text or JSON.
//!
//! Exit status: 0 when every expectation evaluated by the command is met,
//! 1 on a verified mismatch, 2 on an input or usage error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
pub mod file;
mod report;

pub use error::CliError;
pub use report::{Claim, Provenance, Report, Status, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact tools for ordinary triple points on Calabi-Yau threefolds.
#[derive(Debug, Parser)]
#[command(name = "tripoint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add wall-clock timing to the report (reports are otherwise
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timing: bool,
}

/// Finite-field census settings.
#[derive(Debug, Args)]
pub(crate) struct CensusArgs {
    /// Census primes, comma separated.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Degree of the field extension F_{p^k}.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
    ext_degree: u32,
    /// Maximum number of points enumerated per field.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    /// Worker threads (default: all cores); reports do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub(crate) enum Command {
    /// Classify the declared points of a variety file exactly.
    Classify {
        file: PathBuf,
    },
    /// Count singular points over finite fields and compare with the
    /// declared expectations.
    Census {
        file: PathBuf,
        #[command(flatten)]
        census: CensusArgs,
        /// Number of primes to use when none are given.
        #[arg(long, default_value_t = 3)]
        n_primes: usize,
    },
    /// Build and verify a named example construction.
    VerifyExample {
        /// x33-nine, x24-seven, x223-four, x6-wps or quartic-six-otp.
        recipe: String,
        /// Candidate census primes, comma separated.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Seed of the random draws.
        #[arg(long)]
        seed: Option<u64>,
        /// Maximum number of candidates drawn.
        #[arg(long, value_parser = positive)]
        cap: Option<usize>,
        /// Sextic surface file with declared triple points (x6-wps).
        #[arg(long)]
        surface: Option<PathBuf>,
        /// Write the verified variety to this file.
        #[arg(long)]
        write_variety: Option<PathBuf>,
        /// Worker threads for the census.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Project from a triple point and check the image's singularities.
    Project {
        file: PathBuf,
        /// Centre of projection (default: the first declared OTP).
        #[arg(long)]
        center: Option<String>,
        /// Candidate census primes, comma separated.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Number of admissible primes at which to run the census.
        #[arg(long, default_value_t = 3)]
        n_primes: usize,
        /// Seed of the double-point certificate.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the image variety to this file.
        #[arg(long)]
        write_image: Option<PathBuf>,
        /// Worker threads for the census.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Spectrum of a Brieskorn-Pham singularity and its length in an
    /// interval.
    Spectrum {
        /// Exponents a_i of x_1^a_1 + ... + x_n^a_n.
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        /// Interval such as "(2/5,7/5)" or "[0,1)".
        #[arg(long)]
        interval: Option<String>,
        /// Expected spectral length in the interval.
        #[arg(long)]
        expect_length: Option<u64>,
    },
    /// Semicontinuity bound, polar-intersection count or projection degree.
    Bound {
        /// Spectral length of the ambient singularity.
        #[arg(long, requires_all = ["local"])]
        ambient: Option<u64>,
        /// Length taken by other singularities.
        #[arg(long, default_value_t = 0)]
        deduct: u64,
        /// Spectral length of one local singularity.
        #[arg(long)]
        local: Option<u64>,
        /// Added to the maximal count: the centre of the projection is a
        /// triple point of the source but not of the image.
        #[arg(long, default_value_t = 1)]
        offset: u64,
        /// Name of the source variety in the bound line.
        #[arg(long, default_value = "X_{2,4}")]
        source: String,
        /// Number of points for the polar-intersection count.
        #[arg(long, requires_all = ["mults", "degrees"])]
        polar: Option<u64>,
        /// Local intersection multiplicities at each point.
        #[arg(long, value_delimiter = ',')]
        mults: Option<Vec<u64>>,
        /// Degrees of the intersected hypersurfaces.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
        /// Degree of a variety, for the degree of its projection.
        #[arg(long, requires_all = ["mult"])]
        degree: Option<u64>,
        /// Multiplicity of the centre of projection.
        #[arg(long)]
        mult: Option<u64>,
        /// Expected value of the main result.
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Structural obstruction to ordinary triple points.
    Nogo {
        /// x2222, x8 or x10.
        #[arg(long)]
        family: Option<String>,
        /// Degrees of a complete intersection.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u32>>,
        /// Dimension n of the ambient P^n.
        #[arg(long)]
        ambient_dim: Option<usize>,
        /// Weights of a weighted projective space.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
        /// Degree of a weighted hypersurface.
        #[arg(long)]
        degree: Option<u32>,
        /// Expected verdict.
        #[arg(long, value_enum)]
        expect: Option<Verdict>,
        /// Census random quadric intersections with a forced singular point
        /// over this prime field.
        #[arg(long)]
        census_prime: Option<u64>,
        /// Number of random members for the census.
        #[arg(long, default_value_t = 3)]
        samples: u64,
        /// Seed of the first random member.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Forms of a given degree with multiplicity at least 3 at given points.
    Impose {
        /// Ambient header, e.g. "P(1,1,1,1) vars x y z t".
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        degree: u32,
        /// A point such as "[1:0:0:0]"; repeat for several.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        /// Expected dimension of the solution space.
        #[arg(long)]
        expect_dimension: Option<usize>,
        /// List a basis of the solution space.
        #[arg(long)]
        show_basis: bool,
    },
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verdict {
    Possible,
    Impossible,
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: 2, stdout: String::new(), stderr: format!("error[usage-error]: {rendered}") }
            } else {
                Outcome { status: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    match commands::dispatch(cli.command, echo) {
        Ok(mut report) => {
            report.finish();
            if cli.timing {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            let stdout = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            Outcome { status: report.exit_status(), stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = format!("error[{}]: {e}\n", e.code());
            let stdout = match cli.format {
                Format::Text => String::new(),
                Format::Json => {
                    let value = serde_json::json!({
                        "schema": SCHEMA,
                        "version": env!("CARGO_PKG_VERSION"),
                        "error": { "code": e.code(), "message": e.to_string() },
                    });
                    format!("{}\n", serde_json::to_string_pretty(&value).expect("error serializes"))
                }
            };
            Outcome { status: 2, stdout, stderr }
        }
    }
}
