use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use polyperm::Error;

use polyperm_harness::config::Params;
use polyperm_harness::experiments::{det, disc, dist, perm, poly};
use polyperm_harness::report::Report;

/// Exact and Monte Carlo experiments on factorization types, cycle types,
/// discriminants, and random determinants.
#[derive(Parser)]
#[command(name = "polyperm", version, max_term_width = 100)]
struct Cli {
    /// Flat `key = value` config file; CLI --set and --seed override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed (64-bit). Defaults to a fixed documented constant —
    /// never the clock.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for trial execution. Results are identical for any
    /// worker count.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,

    /// Override one config key (repeatable): --set trials=500
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fraction of random monic polynomials certified irreducible by the
    /// multi-prime degree sieve, per degree.
    IrreducibilityRate,
    /// Exact total-variation distance between factor-type and cycle-type
    /// laws marginalized to parts >= r.
    TvDistance,
    /// Cross-check the exact factor-type formula against brute-force
    /// enumeration of all q^n polynomials.
    DistributionAudit,
    /// Discriminant statistics per degree: 2-adic valuations, squares,
    /// signs, and log-size fits.
    DiscStats,
    /// Scan attained discriminant 2-adic valuations in the ±1 model
    /// against their reference progressions.
    Table1Scan,
    /// Frequency of square determinants of random {-1,0,1} matrices.
    DetSquare,
    /// 4-permutation window events plus per-permutation cycle events.
    CycleEvents,
    /// Fraction of random polynomials whose sieve witness admits a small
    /// divisor degree.
    SmallDivisorRate,
    /// Certify a batch file: one polynomial per line, base-10 coefficients,
    /// constant term first.
    Certify {
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn exit_code(f: &Failure) -> i32 {
    match f {
        Failure::Io(_) => 1,
        Failure::Lib(Error::Usage(_) | Error::ModulusMismatch(..)) => 2,
        Failure::Lib(Error::Capacity(_)) => 3,
        Failure::Lib(Error::Precision(_) | Error::Internal(_)) => 4,
    }
}

fn build_params(cli: &Cli) -> Result<Params, Failure> {
    let mut params = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Params::from_str(&text)?
        }
        None => Params::new(BTreeMap::new()),
    };
    for pair in &cli.set {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Error::usage(format!("--set needs KEY=VALUE, got '{pair}'")))?;
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::usage(format!("--set: bad key '{key}'")).into());
        }
        params.set(key, value.trim());
    }
    if let Some(seed) = cli.seed {
        params.set("seed", &seed.to_string());
    }
    Ok(params)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.workers == 0 {
        return Err(Error::usage("--workers must be >= 1").into());
    }
    let params = build_params(cli)?;
    let report: Report = match &cli.command {
        Command::IrreducibilityRate => poly::run_irreducibility(&params, cli.workers)?,
        Command::TvDistance => dist::run_tv(&params, cli.workers)?,
        Command::DistributionAudit => dist::run_audit(&params, cli.workers)?,
        Command::DiscStats => disc::run_disc_stats(&params, cli.workers)?,
        Command::Table1Scan => disc::run_table1(&params, cli.workers)?,
        Command::DetSquare => det::run_det_square(&params, cli.workers)?,
        Command::CycleEvents => perm::run_cycle_events(&params, cli.workers)?,
        Command::SmallDivisorRate => poly::run_small_divisor(&params, cli.workers)?,
        Command::Certify { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| Failure::Io(format!("{}: {e}", input.display())))?;
            poly::run_certify(&params, &input.display().to_string(), &text)?
        }
    };
    let body = match cli.format.as_str() {
        "csv" => report.to_csv(),
        _ => report.to_json(),
    };
    match &cli.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    // a panic is a broken invariant, not an I/O or config problem; map it
    // to the internal-error exit code after the default hook has printed
    let outcome = catch_unwind(AssertUnwindSafe(|| run(&cli)));
    let code = match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(f)) => {
            let msg = match &f {
                Failure::Io(m) => m.clone(),
                Failure::Lib(e) => e.to_string(),
            };
            eprintln!("error: {msg}");
            exit_code(&f)
        }
        Err(_) => 4,
    };
    std::process::exit(code);
}
