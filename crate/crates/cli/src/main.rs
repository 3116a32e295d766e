//! Command-line front end: run a job file or a builtin fixture, print a
//! human-readable summary, and optionally write the JSON report.
//!
//! Exit codes: 0 all requested verifications pass, 1 verification failure,
//! 2 input error, 3 internal invariant violation.

use clap::Parser;
use parseval_core::job::{self, RunOptions};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "parseval",
    about = "Exact Parseval-Rayleigh identity checker for Artinian Gorenstein algebras in characteristic p"
)]
struct Args {
    /// Job description file.
    #[arg(long, conflicts_with = "fixture")]
    job: Option<PathBuf>,

    /// Builtin example: nonci, ci-xy, simplex-boundary, octahedron, square.
    #[arg(long)]
    fixture: Option<String>,

    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,

    /// Override the job seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Test hook: corrupt the computed epsilon before the checks.
    #[arg(long, hide = true)]
    corrupt_epsilon: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();

    let spec = match (&args.job, &args.fixture) {
        (Some(path), None) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read job file {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            };
            match job::parse_job(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("job error: {}", e);
                    return ExitCode::from(2);
                }
            }
        }
        (None, Some(name)) => match job::fixture_job(name) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{}", e);
                return ExitCode::from(2);
            }
        },
        _ => {
            eprintln!("exactly one of --job <file> or --fixture <name> is required");
            return ExitCode::from(2);
        }
    };

    let opts = RunOptions {
        seed_override: args.seed,
        corrupt_epsilon: args.corrupt_epsilon,
    };
    let outcome = job::run_job(&spec, &opts);
    print!("{}", outcome.summary);

    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&outcome.report).expect("serializable report");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("cannot write report {}: {}", path.display(), e);
            return ExitCode::from(2);
        }
    }

    ExitCode::from(outcome.exit_code.clamp(0, 255) as u8)
}
