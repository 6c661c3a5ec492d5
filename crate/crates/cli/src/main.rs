use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use clospace::enumerate::{
    catalog, hunt_counterexample, verify_claim, VerifyOptions, DEFAULT_BUDGET,
};
use clospace::io::{parse_map, parse_relation, parse_space, serialize_instance, serialize_space};
use clospace::{closure_from_relation, separated_pairs, Error};

#[derive(Parser)]
#[command(
    name = "clospace",
    version,
    about = "Inspect finite closure spaces and check claims about them"
)]
struct Cli {
    /// Suppress everything but the primary output.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the axiom and symmetry flags of a space.
    Check { file: PathBuf },
    /// List the separated pairs of a space.
    Separate { file: PathBuf },
    /// Rebuild a closure function from a separation relation.
    Derive {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the morphism flags of a map.
    MapCheck { file: PathBuf },
    /// Check a claim over every instance of carrier size n (or a sample).
    Verify(SweepArgs),
    /// Search carrier sizes 1..=n for a counterexample to a claim.
    Hunt {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the claim catalog.
    Claims,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    claim: String,
    #[arg(long)]
    n: usize,
    /// Evaluation budget; larger universes are sampled.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run on a single thread.
    #[arg(long)]
    sequential: bool,
}

impl SweepArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            budget: self.budget,
            seed: self.seed,
            parallel: !self.sequential,
            ..VerifyOptions::default()
        }
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| Error::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn base_dir(path: &Path) -> Option<&Path> {
    if path == Path::new("-") {
        None
    } else {
        path.parent()
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Check { file } => {
            let space = parse_space(&read_input(file)?)?;
            let a = space.axiom_profile();
            let s = space.symmetry_profile();
            let flags = [
                ("grounded", a.grounded),
                ("isotonic", a.isotonic),
                ("enlarging", a.enlarging),
                ("idempotent", a.idempotent),
                ("sublinear", a.sublinear),
                ("pointwise_symmetric", s.pointwise_symmetric),
                ("r0", s.r0),
                ("exterior_separated", s.exterior_separated),
            ];
            for (name, value) in flags {
                println!("{name}={value}");
            }
        }
        Command::Separate { file } => {
            let space = parse_space(&read_input(file)?)?;
            let g = space.ground();
            for (a, b) in separated_pairs(&space).iter() {
                println!("{{{}}} | {{{}}}", g.format_subset(a), g.format_subset(b));
            }
        }
        Command::Derive { file, output } => {
            let rel = parse_relation(&read_input(file)?)?;
            match closure_from_relation(&rel) {
                Ok(space) => write_output(output.as_deref(), &serialize_space(&space))?,
                Err(Error::ConditionsViolated(report)) => {
                    println!("{}", report.describe(rel.ground()));
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e),
            }
        }
        Command::MapCheck { file } => {
            let map = parse_map(&read_input(file)?, base_dir(file))?;
            let p = map.profile();
            println!("closure_preserving={}", p.closure_preserving);
            println!("continuous={}", p.continuous);
            println!("nonseparating={}", p.nonseparating);
            println!("preimage_separating={}", p.preimage_separating);
        }
        Command::Verify(args) => {
            let report = verify_claim(&args.claim, args.n, &args.options())?;
            println!("{}", report.summary());
            if !cli.quiet {
                eprintln!(
                    "claim={} n={} premise_hits={} elapsed={:.3?}",
                    report.claim, report.n, report.premise_hits, report.elapsed
                );
                if let Some(first) = report.violations.first() {
                    eprintln!("first violation:");
                    eprint!("{}", serialize_instance(first));
                }
            }
            if report.violation_count > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Hunt { sweep, output } => {
            let start = Instant::now();
            let outcome = hunt_counterexample(&sweep.claim, sweep.n, &sweep.options())?;
            let Some(found) = outcome else {
                if !cli.quiet {
                    eprintln!("no counterexample to {} with n <= {}", sweep.claim, sweep.n);
                }
                return Ok(ExitCode::from(3));
            };
            write_output(output.as_deref(), &serialize_instance(&found.witness))?;
            if !cli.quiet {
                eprintln!(
                    "witness for {} at n={} after {} instances{} ({:.3?})",
                    found.claim,
                    found.witness.carrier_size(),
                    found.instances_checked,
                    if found.exhaustive { "" } else { ", sampled" },
                    start.elapsed()
                );
            }
        }
        Command::Claims => {
            for claim in catalog() {
                println!("{}\t{}", claim.id, claim.statement);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
