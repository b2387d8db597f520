//! `lforge` — exact checks and numerical reports for Laplacian polynomial
//! algebras.
//!
//! Every subcommand prints a short human summary to stdout and, with
//! `--out`, writes a machine-readable JSON report.  Exit codes follow one
//! contract everywhere: 0 when the checked property holds (or the command
//! is purely informational), 2 when a check fails, 1 on input errors.

mod commands;
mod input;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Errors that terminate a run with exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] lforge_core::Error),
}

#[derive(Parser)]
#[command(
    name = "lforge",
    version,
    about = "Exact toolkit for Laplacian polynomial algebras on spheres",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the full JSON report to this path.
    #[arg(long, global = true, env = "LFORGE_OUT", value_name = "FILE")]
    out: Option<PathBuf>,
}

/// An algebra given either as a TOML file or as a built-in name.
#[derive(Args)]
struct AlgebraSource {
    /// Path to a TOML algebra file (see README for the format).
    #[arg(
        value_name = "ALGEBRA",
        required_unless_present = "builtin",
        conflicts_with = "builtin"
    )]
    file: Option<PathBuf>,

    /// Built-in algebra instead of a file: dihedral:G.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl AlgebraSource {
    fn load(&self) -> Result<input::LoadedAlgebra, CliError> {
        match (&self.file, &self.builtin) {
            (Some(path), None) => input::algebra_from_file(path),
            (None, Some(spec)) => input::algebra_from_builtin(spec),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

/// A finite orthogonal group given either as a TOML file or a built-in.
#[derive(Args)]
struct GroupSource {
    /// Path to a TOML group file (see README for the format).
    #[arg(
        value_name = "GROUP",
        required_unless_present = "builtin",
        conflicts_with = "builtin"
    )]
    file: Option<PathBuf>,

    /// Built-in group instead of a file: dihedral:G, neg-id:N,
    /// signed-permutations:N, cyclic-sign:N:AXIS.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl GroupSource {
    fn load(&self) -> Result<input::LoadedGroup, CliError> {
        match (&self.file, &self.builtin) {
            (Some(path), None) => input::group_from_file(path),
            (None, Some(spec)) => input::group_from_builtin(spec),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify that an algebra is closed under the Laplacian.
    CheckLaplacian {
        #[command(flatten)]
        algebra: AlgebraSource,

        /// Degree cap for membership checks (default: file value, then the
        /// required minimum 2·max-degree − 2).
        #[arg(short = 'D', long, env = "LFORGE_DEGREE_CAP")]
        degree_cap: Option<u32>,
    },

    /// Adjoin escaping derivatives and pairings until the algebra closes.
    LaplacianClosure {
        #[command(flatten)]
        algebra: AlgebraSource,

        /// Largest generator degree the closure may adjoin.
        #[arg(short = 'D', long, env = "LFORGE_DEGREE_CAP", default_value_t = 12)]
        degree_cap: u32,

        /// Abort once the generator count would exceed this bound.
        #[arg(long, default_value_t = 16)]
        max_generators: usize,
    },

    /// Project a polynomial orthogonally onto an algebra.
    Reynolds {
        /// Polynomial in the grammar, e.g. "x1^2 - 2*x1*x2".
        polynomial: String,

        #[command(flatten)]
        algebra: AlgebraSource,
    },

    /// Exact membership test for a polynomial in an algebra.
    Contains {
        /// Polynomial in the grammar.
        polynomial: String,

        #[command(flatten)]
        algebra: AlgebraSource,
    },

    /// Generators of the invariant ring of a finite orthogonal group,
    /// with Laplacian certification.
    InvariantRing {
        #[command(flatten)]
        group: GroupSource,

        /// Largest invariant degree to search (default: the group order).
        #[arg(short = 'D', long, env = "LFORGE_DEGREE_CAP")]
        degree_cap: Option<u32>,
    },

    /// Check that apolar projection equals group averaging on random
    /// polynomials.
    VerifyReynoldsAverage {
        #[command(flatten)]
        group: GroupSource,

        /// Largest test degree (default: the group order).
        #[arg(short = 'D', long, env = "LFORGE_DEGREE_CAP")]
        degree_cap: Option<u32>,

        /// Number of random polynomials to test.
        #[arg(long, default_value_t = 50)]
        trials: usize,

        /// Random seed.
        #[arg(long, env = "LFORGE_SEED", default_value_t = 7)]
        seed: u64,
    },

    /// Check the Cartan-Münzner identities for one polynomial.
    Munzner {
        /// Polynomial in the grammar.
        polynomial: String,

        /// Ambient dimension n.
        #[arg(short = 'n', long, env = "LFORGE_DIMENSION")]
        dimension: usize,
    },

    /// Check that a family of quadratics spans a gradient-pairing-closed
    /// space containing r².
    Jordan {
        /// Quadratics in the grammar.
        #[arg(required = true)]
        polynomials: Vec<String>,

        /// Ambient dimension n.
        #[arg(short = 'n', long, env = "LFORGE_DIMENSION")]
        dimension: usize,
    },

    /// Exact matrix of pairwise gradient pairings and its determinant.
    BMatrix {
        #[command(flatten)]
        algebra: AlgebraSource,
    },

    /// Generic rank of the generator Jacobian at random rational points.
    TranscendenceDegree {
        #[command(flatten)]
        algebra: AlgebraSource,

        /// Number of random evaluation points.
        #[arg(long, default_value_t = 8)]
        trials: usize,

        /// Random seed.
        #[arg(long, env = "LFORGE_SEED", default_value_t = 7)]
        seed: u64,
    },

    /// Sample fibers on the unit sphere: rank stratification, value
    /// clustering, connectivity, and equidistance evidence.
    FiberReport {
        #[command(flatten)]
        algebra: AlgebraSource,

        /// Sphere samples per fiber (and for the rank stratification).
        #[arg(long, default_value_t = 400)]
        samples: usize,

        /// Random seed.
        #[arg(long, env = "LFORGE_SEED", default_value_t = 7)]
        seed: u64,

        /// Tolerance for matching sampled values to a base value.
        #[arg(long, env = "LFORGE_TOL_VALUE", default_value_t = 1e-6)]
        tol_value: f64,

        /// Connectivity graph radius in radians of great-circle distance.
        #[arg(long, env = "LFORGE_EPS", default_value_t = 0.1)]
        eps: f64,

        /// Explicit base value as comma-separated floats, one flag per
        /// fiber (default: two generic values chosen automatically).
        #[arg(long = "base-value", value_name = "V1,V2,...")]
        base_values: Vec<String>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (document, verdict) = match &cli.command {
        Command::CheckLaplacian { algebra, degree_cap } => {
            commands::check_laplacian(algebra.load()?, *degree_cap)?
        }
        Command::LaplacianClosure {
            algebra,
            degree_cap,
            max_generators,
        } => commands::closure(algebra.load()?, *degree_cap, *max_generators)?,
        Command::Reynolds { algebra, polynomial } => {
            commands::reynolds(algebra.load()?, polynomial)?
        }
        Command::Contains { algebra, polynomial } => {
            commands::contains(algebra.load()?, polynomial)?
        }
        Command::InvariantRing { group, degree_cap } => {
            commands::invariant_ring(group.load()?, *degree_cap)?
        }
        Command::VerifyReynoldsAverage {
            group,
            degree_cap,
            trials,
            seed,
        } => commands::verify_reynolds_average(group.load()?, *degree_cap, *trials, *seed)?,
        Command::Munzner {
            polynomial,
            dimension,
        } => commands::munzner(polynomial, *dimension)?,
        Command::Jordan {
            polynomials,
            dimension,
        } => commands::jordan(polynomials, *dimension)?,
        Command::BMatrix { algebra } => commands::b_matrix(algebra.load()?)?,
        Command::TranscendenceDegree {
            algebra,
            trials,
            seed,
        } => commands::transcendence_degree(algebra.load()?, *trials, *seed)?,
        Command::FiberReport {
            algebra,
            samples,
            seed,
            tol_value,
            eps,
            base_values,
        } => commands::fiber_report(
            algebra.load()?,
            *samples,
            *seed,
            *tol_value,
            *eps,
            base_values,
        )?,
    };

    if let Some(path) = &cli.out {
        document.write(path)?;
    }
    println!("verdict: {}", document.verdict);
    Ok(verdict.exit_code())
}

fn main() {
    // Input errors exit with code 1 (clap's default of 2 is reserved here
    // for failing checks); --help and --version keep exit code 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = if error.use_stderr() { 1 } else { 0 };
            let _ = error.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(1);
        }
    }
}
