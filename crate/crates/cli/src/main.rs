//! Command-line front end: dual spectra, semicharacter evaluation,
//! verification suites, transform values and the discretized tensor check.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or schema error,
//! 3 domain error.

mod commands;
mod complex_arg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eberlein::Error;

#[derive(Parser)]
#[command(
    name = "eberlein",
    about = "Semigroup compactifications: duals, spectra and transform identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the semicharacter dual of a semigroup spec and sample it.
    Spectrum {
        /// Path to a JSON semigroup spec (numerical or cone).
        #[arg(long)]
        input: std::path::PathBuf,
        /// Write the CSV sample grid here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate a semicharacter at a point of the semigroup.
    Eval {
        /// Path to a JSON semigroup spec (numerical or cone).
        #[arg(long)]
        input: std::path::PathBuf,
        /// Disc parameter z (numerical specs), e.g. "0.5" or "0.3+0.4i".
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Cone dual parameters, comma separated: l reals then n-l complex.
        #[arg(long, allow_hyphen_values = true)]
        character: Option<String>,
        /// The point: an integer (numerical) or comma-separated reals (cone).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        /// Suite name: semichar, spine, opcompact, xform, axb or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Tolerance override for fit and scalar-form checks.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for the randomized samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base grid size for discretized-representation checks.
        #[arg(long)]
        grid: Option<usize>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate transform identities at a point (and optionally on a grid).
    Transform {
        /// Which transform: laplace, cayley or gn.
        which: String,
        /// Index n of the basis density or pullback.
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Evaluation point, e.g. "1+2i".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Also sample a half-plane grid to CSV at this resolution.
        #[arg(long)]
        grid: Option<usize>,
        /// Write CSV samples here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Discretized checks for the extension semigroup element (a, z).
    Axb {
        /// Run the tensor-square residual check.
        #[arg(long)]
        walter: bool,
        /// Dilation parameter a > 0.
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        /// Translation parameter z with Im z >= 0, e.g. "0.5+0.3i".
        #[arg(long, default_value = "0.5+0.3i", allow_hyphen_values = true)]
        z: String,
        /// Grid size n.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        /// Re-run at a doubled grid and report the residual ratio.
        #[arg(long)]
        refine: bool,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Validate a spine spec and report its structure checks.
    Spine {
        /// Path to a JSON spine spec.
        #[arg(long)]
        input: std::path::PathBuf,
        /// Candidate unit-group node for the ideal check.
        #[arg(long)]
        top: Option<String>,
        /// Samples per node pair in the ideal check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => 3,
        Error::FitFailure { .. } | Error::Underdetermined { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum { input, out } => commands::spectrum(&input, out.as_deref()),
        Command::Eval {
            input,
            z,
            character,
            point,
        } => commands::eval(&input, z.as_deref(), character.as_deref(), &point),
        Command::Verify {
            suite,
            tol,
            seed,
            grid,
            out,
        } => commands::verify(&suite, tol, seed, grid, out.as_deref()),
        Command::Transform {
            which,
            n,
            z,
            grid,
            out,
        } => commands::transform(&which, n, &z, grid, out.as_deref()),
        Command::Axb {
            walter,
            a,
            z,
            grid,
            refine,
            out,
        } => commands::axb(walter, a, &z, grid, refine, out.as_deref()),
        Command::Spine {
            input,
            top,
            samples,
            seed,
            out,
        } => commands::spine(&input, top.as_deref(), samples, seed, out.as_deref()),
    };
    match result {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
