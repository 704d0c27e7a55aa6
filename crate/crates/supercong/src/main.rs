//! Command-line front end: prime-range scans, identity sweeps, and the two
//! debugging entry points (exact oracle sums, x² + y² partitions).
//!
//! Exit codes: 0 all asserted checks passed, 1 at least one failed,
//! 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use std::str::FromStr;

use supercong::oracle::{oracle_sum, OracleParams};
use supercong::primes::cornacchia;
use supercong::rational::Rational;
use supercong::report::{format_report, ReportFormat};
use supercong::residue::PrimeContext;
use supercong::scan::{
    record_is_asserted, run_identity, run_scan, CheckKind, IdentityConfig, IdentityKind,
    ScanConfig,
};

#[derive(Parser)]
#[command(
    name = "supercong",
    version,
    about = "Verify central-binomial supercongruences modulo p²",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify congruences for every prime in a range
    Scan(ScanArgs),
    /// Verify the exact combinatorial identities over a range of n
    Identity(IdentityArgs),
    /// Print one exact (denominator-cleared) big-integer sum
    Oracle(OracleArgs),
    /// Print the x² + y² = p decomposition for p ≡ 1 (mod 4)
    Partition(PartitionArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Smallest prime to scan, inclusive (≥ 3)
    #[arg(long, default_value_t = 3)]
    min: u64,
    /// Largest prime to scan, inclusive
    #[arg(long)]
    max: u64,
    /// Check to run (repeatable); default is every check
    #[arg(long = "check", value_name = "NAME")]
    checks: Vec<String>,
    /// Random (α,β) or t trials per prime for parameterized checks
    #[arg(long, default_value_t = 8)]
    trials: u32,
    /// Seed for the per-prime trial generators
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to available parallelism
    #[arg(long, env = "SUPERCONG_JOBS")]
    jobs: Option<usize>,
    /// Report format: text, json, or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Stop issuing new primes after the first failure
    #[arg(long)]
    fail_fast: bool,
    /// Count the p = 5 fib special case toward the exit status
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct IdentityArgs {
    /// Smallest n, inclusive
    #[arg(long, default_value_t = 0)]
    min: u64,
    /// Largest n, inclusive
    #[arg(long)]
    max: u64,
    /// Identity check to run (repeatable); default is every check
    #[arg(long = "check", value_name = "NAME")]
    checks: Vec<String>,
    /// Random (a,b) evaluation points per n
    #[arg(long, default_value_t = 5)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to available parallelism
    #[arg(long, env = "SUPERCONG_JOBS")]
    jobs: Option<usize>,
    /// Report format: text, json, or csv
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct OracleArgs {
    /// Sum kind: rv, sun, theorem_lhs, theorem_rhs, remark_lhs, remark_rhs,
    /// fib, lucas, gauss
    #[arg(long)]
    kind: String,
    /// Odd prime
    #[arg(long)]
    p: u64,
    /// α as an integer or fraction, e.g. -3 or 1/2
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// β as an integer or fraction
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// t as an integer or fraction
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
}

#[derive(Args)]
struct PartitionArgs {
    /// Prime congruent to 1 modulo 4
    #[arg(long)]
    p: u64,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Scan(args) => scan_cmd(args),
        Command::Identity(args) => identity_cmd(args),
        Command::Oracle(args) => oracle_cmd(args),
        Command::Partition(args) => partition_cmd(args),
    }
}

const USAGE_FAILURE: u8 = 2;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_FAILURE)
}

fn scan_cmd(args: ScanArgs) -> ExitCode {
    let mut config = ScanConfig::new(args.min, args.max);
    if !args.checks.is_empty() {
        match args.checks.iter().map(|s| CheckKind::from_str(s)).collect() {
            Ok(kinds) => config.checks = kinds,
            Err(e) => return usage_error(e),
        }
    }
    config.trials = args.trials;
    config.seed = args.seed;
    if let Some(jobs) = args.jobs {
        config.jobs = jobs;
    }
    config.format = match ReportFormat::from_str(&args.format) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    config.fail_fast = args.fail_fast;
    config.strict = args.strict;
    let records = match run_scan(&config) {
        Ok(records) => records,
        Err(e) => return usage_error(e),
    };
    print!("{}", format_report(&records, config.format));
    let failed = records.iter().any(|r| !r.ok && record_is_asserted(r, config.strict));
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn identity_cmd(args: IdentityArgs) -> ExitCode {
    let mut config = IdentityConfig::new(args.min, args.max);
    if !args.checks.is_empty() {
        match args.checks.iter().map(|s| IdentityKind::from_str(s)).collect() {
            Ok(kinds) => config.checks = kinds,
            Err(e) => return usage_error(e),
        }
    }
    config.trials = args.trials;
    config.seed = args.seed;
    if let Some(jobs) = args.jobs {
        config.jobs = jobs;
    }
    config.format = match ReportFormat::from_str(&args.format) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let records = match run_identity(&config) {
        Ok(records) => records,
        Err(e) => return usage_error(e),
    };
    print!("{}", format_report(&records, config.format));
    if records.iter().any(|r| !r.ok) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn oracle_cmd(args: OracleArgs) -> ExitCode {
    if let Err(e) = PrimeContext::new(args.p) {
        return usage_error(e);
    }
    let parse = |name: &str, v: &Option<String>| -> Result<Option<Rational>, String> {
        v.as_deref()
            .map(|s| Rational::from_str(s).map_err(|e| format!("--{name}: {e}")))
            .transpose()
    };
    let params = match (|| {
        Ok::<_, String>(OracleParams {
            alpha: parse("alpha", &args.alpha)?,
            beta: parse("beta", &args.beta)?,
            t: parse("t", &args.t)?,
        })
    })() {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    match oracle_sum(&args.kind, args.p, &params) {
        Ok(sum) => {
            println!("{sum}");
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn partition_cmd(args: PartitionArgs) -> ExitCode {
    if let Err(e) = PrimeContext::new(args.p) {
        return usage_error(e);
    }
    match cornacchia(args.p) {
        Ok(part) => {
            println!("p={} x={} y={}", part.p, part.x, part.y);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}
