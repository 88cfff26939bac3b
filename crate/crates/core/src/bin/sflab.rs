use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use sflab::cli::{cohomology_report, run_tasks, Manifest, Report, RunOptions};

#[derive(Parser)]
#[command(name = "sflab", version, about = "Exact checks for deformations of regular Poisson structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a manifest.
    Run {
        manifest: PathBuf,
        /// Write the report here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the manifest seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the truncation order of the deformation.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Truncated foliated and Poisson cohomology for the Kronecker slope.
    Cohomology {
        /// Slope expression, e.g. `rt`, `1/2`, `sqrt(3)`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        cutoff: u64,
        /// Also print the small-divisor profile at cutoffs 1, 2, 5, 10, … up to N.
        #[arg(long)]
        profile: bool,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>) -> ExitCode {
    print!("{}", report.render());
    if let Some(path) = out {
        if let Err(e) = report.write(path) {
            eprintln!("sflab: {e}");
            return ExitCode::from(2);
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn profile_ladder(cutoff: u64) -> Vec<BigInt> {
    let mut out: Vec<u64> = Vec::new();
    let mut scale = 1u64;
    while scale <= cutoff {
        out.extend([scale, 2 * scale, 5 * scale].into_iter().filter(|&c| c <= cutoff));
        scale = scale.saturating_mul(10);
    }
    if out.last() != Some(&cutoff) && cutoff > 0 {
        out.push(cutoff);
    }
    out.into_iter().map(BigInt::from).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { manifest, out, seed, order } => std::fs::read_to_string(manifest)
            .map_err(|e| sflab::Error::Io(format!("{}: {e}", manifest.display())))
            .and_then(|text| Manifest::parse(&text))
            .map(|m| (run_tasks(&m, RunOptions { seed: *seed, order: *order }), out.clone())),
        Command::Cohomology { lambda, cutoff, profile } => {
            let cutoffs = profile_ladder(*cutoff);
            cohomology_report(lambda, *cutoff, profile.then_some(&cutoffs[..])).map(|r| (r, None))
        }
    };
    match result {
        Ok((report, out)) => emit(&report, out.as_ref()),
        Err(e) => {
            eprintln!("sflab: {e}");
            ExitCode::from(2)
        }
    }
}
