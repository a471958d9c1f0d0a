//! `hopspec` — spectra and spectral symmetries of periodic hopping operators
//! from the command line.
//!
//! Subcommands: `table`, `enumerate`, `closure`, `spectrum`,
//! `finite-spectrum`, `verify`, `render`. Every command is deterministic
//! given its resolved configuration; file outputs get a `.cfg.txt` sidecar
//! recording that configuration. Exit status: 0 on success, 1 when a
//! verification check fails (or a job errors out), 2 on usage errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ConfigFile;

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

#[derive(Parser)]
#[command(
    name = "hopspec",
    version,
    about = "Symmetry polynomials, spectra and spectral-set renders of periodic hopping operators"
)]
struct Cli {
    /// Directory for produced files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Cap the worker thread count (default: available cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Job config file with line-oriented `key = value` defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symmetry table (No., k, p_k) and write its CSV
    Table {
        /// Largest polynomial degree to enumerate (>= 2)
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Enumerate the symmetry set: entry CSV plus counts vs the conjecture
    Enumerate {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Composition closure of the symmetry set within a degree budget
    Closure {
        /// Degree cap for the generating set (>= 2)
        #[arg(long)]
        max_degree: Option<usize>,
        /// Total degree budget for compositions
        #[arg(long)]
        max_total_degree: Option<usize>,
        /// Longest composition chain
        #[arg(long)]
        max_chain: Option<usize>,
    },
    /// Sample the spectrum of a periodic operator as a CSV point cloud
    Spectrum {
        /// Period as a comma-separated ±1 list, e.g. "1,-1,1"
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Number of equispaced samples of the target segment (>= 2)
        #[arg(long)]
        samples: Option<usize>,
        /// Residual tolerance of the root certification
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Eigenvalues of the finite hopping matrix of a period
    FiniteSpectrum {
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run verification suites; one PASS/FAIL line per check
    Verify {
        /// prop1 | laurent | thm1 | claim2 | thm2 | cor2 | all
        suite: String,
        /// Restrict pair-based suites to one generator period
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Restrict pair-based suites to one base period
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Exhaustive period length for prop1/laurent (default 6)
        #[arg(long)]
        max_m: Option<usize>,
        /// Number of phase samples (default 16; cor2 default 8)
        #[arg(long)]
        phis: Option<usize>,
        /// Numeric tolerance (prop1 default 1e-9, cor2 default 1e-7)
        #[arg(long)]
        tol: Option<f64>,
        /// Truncation half-width (laurent default 60, else sized per pair)
        #[arg(long)]
        half_width: Option<i64>,
        /// Number of random pairs for thm1/claim2/thm2/cor2 sweeps
        #[arg(long)]
        pairs: Option<usize>,
        /// Seed of the deterministic pair generator
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render spectral subsets as images
    Render {
        /// preimage | union | iterated | julia
        #[arg(long)]
        kind: Option<String>,
        /// Period whose polynomial is rendered, e.g. "1,-1,1"
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Polynomial as an ascending coefficient list, e.g. "0,-1,0,1"
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Degree cap when rendering over the symmetry set
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Lower degree bound when rendering over the symmetry set
        #[arg(long)]
        min_degree: Option<usize>,
        /// Iterated-preimage depth (default 9)
        #[arg(long)]
        n_max: Option<usize>,
        /// Filled-Julia iteration budget (default 100)
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        center_re: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        center_im: Option<f64>,
        /// Window half-width (default 1.8)
        #[arg(long)]
        half_width: Option<f64>,
        /// Window half-height (default: half-width)
        #[arg(long)]
        half_height: Option<f64>,
        /// Pixels per axis (default 2048)
        #[arg(long)]
        resolution: Option<u32>,
        /// 2x2 supersampling
        #[arg(long)]
        supersample: bool,
        /// Also admit points whose quarter-turn/conjugate images are members
        #[arg(long)]
        symmetry_closure: bool,
        /// Suppress the red reference unit circle
        #[arg(long)]
        no_circle: bool,
        /// Julia variant: grayscale escape-time image instead of membership
        #[arg(long)]
        counts: bool,
        /// ppm | png (default ppm)
        #[arg(long)]
        format: Option<String>,
        /// Basename of the output image (default: the kind)
        #[arg(long)]
        name: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(usage_error("--threads must be at least 1"));
        }
        // ignore the error when a pool already exists (tests set one up)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    std::fs::create_dir_all(&cli.out)?;

    match cli.command {
        Command::Table { max_degree } => {
            commands::table(&cli.out, &config, max_degree)?;
            Ok(true)
        }
        Command::Enumerate { max_degree } => {
            commands::enumerate(&cli.out, &config, max_degree)?;
            Ok(true)
        }
        Command::Closure {
            max_degree,
            max_total_degree,
            max_chain,
        } => {
            commands::closure(&cli.out, &config, max_degree, max_total_degree, max_chain)?;
            Ok(true)
        }
        Command::Spectrum { k, samples, tol } => {
            commands::spectrum(&cli.out, &config, k.as_deref(), samples, tol)?;
            Ok(true)
        }
        Command::FiniteSpectrum { k, tol } => {
            commands::finite_spectrum(&cli.out, &config, k.as_deref(), tol)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            k,
            b,
            max_m,
            phis,
            tol,
            half_width,
            pairs,
            seed,
        } => commands::verify(commands::VerifyArgs {
            suite,
            k,
            b,
            max_m,
            phis,
            tol,
            half_width,
            pairs,
            seed,
        }),
        Command::Render {
            kind,
            k,
            poly,
            degree_cap,
            min_degree,
            n_max,
            max_iter,
            center_re,
            center_im,
            half_width,
            half_height,
            resolution,
            supersample,
            symmetry_closure,
            no_circle,
            counts,
            format,
            name,
        } => {
            commands::render(
                &cli.out,
                &config,
                commands::RenderArgs {
                    kind,
                    k,
                    poly,
                    degree_cap,
                    min_degree,
                    n_max,
                    max_iter,
                    center_re,
                    center_im,
                    half_width,
                    half_height,
                    resolution,
                    supersample,
                    symmetry_closure,
                    no_circle,
                    counts,
                    format,
                    name,
                },
            )?;
            Ok(true)
        }
    }
}
