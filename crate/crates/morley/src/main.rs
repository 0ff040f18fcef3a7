//! Command-line front end: grid verification, single-quantity computation,
//! counterexample search, and the frozen-example self-test.
//!
//! Exit codes: 0 when everything passed, 1 when a congruence failed or a
//! hypothesis was violated, 2 on usage errors.

use std::fs;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;

use morley::bernoulli::{bernoulli_number, bernoulli_poly, euler_number};
use morley::congruence::{
    a_e_mod, moebius_binom_product, s_product, t_product, ClaimId, Variant,
};
use morley::grid::{self, VerifyRequest};
use morley::harmonic::SumSpec;
use morley::multiplicative::{
    combined_totient, combined_totient_default, euler_quotient, floor_totient,
    generalized_totient, jacobi_unit, TotientSpec, Weight,
};
use morley::report::{self, ReportFormat};
use morley::selftest;
use morley::Error;

#[derive(Parser)]
#[command(
    name = "morley",
    version,
    about = "Exact verification of Morley-type binomial and harmonic congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one claim over a parameter grid and report every cell.
    Verify(SweepArgs),
    /// Print one computed quantity (exact rational or residue).
    Compute(ComputeArgs),
    /// Sweep a grid but print failures only.
    Search(SearchArgs),
    /// Replay the built-in table of frozen example values.
    Selftest(SelftestArgs),
}

fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s).map_err(|err| format!("not a rational number: {err}"))
}

fn parse_range<T>(s: &str) -> Result<(T, T), String>
where
    T: FromStr + PartialOrd + Copy,
    T::Err: std::fmt::Display,
{
    let parse_bound = |text: &str| {
        text.parse::<T>()
            .map_err(|err| format!("bad range bound {text:?}: {err}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse_bound(lo)?, parse_bound(hi)?),
        None => {
            let single = parse_bound(s)?;
            (single, single)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

fn parse_range_u64(s: &str) -> Result<(u64, u64), String> {
    parse_range(s)
}

fn parse_range_u32(s: &str) -> Result<(u32, u32), String> {
    parse_range(s)
}

#[derive(Args)]
struct SweepArgs {
    /// Claim to check (for instance th2, cor3_1, lem5_2).
    #[arg(long, value_parser = parse_claim)]
    claim: ClaimId,
    /// Inclusive n range, as A..B or a single value.
    #[arg(long, value_parser = parse_range_u64)]
    n: (u64, u64),
    /// Inclusive k range, as A..B or a single value (default 1).
    #[arg(long, value_parser = parse_range_u32)]
    k: Option<(u32, u32)>,
    /// Comma-separated subset of the claim's e sweep.
    #[arg(long, value_delimiter = ',')]
    e: Option<Vec<u32>>,
    /// Closed-form shape: statement, proof-expansion, or corrected.
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    /// Worker count (default: CONGRUENCE_JOBS, then available parallelism).
    #[arg(long)]
    jobs: Option<NonZeroUsize>,
    /// Report encoding: text, json, or csv.
    #[arg(long, default_value_t, value_parser = parse_format)]
    format: ReportFormat,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_parser = parse_claim)]
    claim: ClaimId,
    #[arg(long, value_parser = parse_range_u64)]
    n: (u64, u64),
    #[arg(long, value_parser = parse_range_u32)]
    k: Option<(u32, u32)>,
    #[arg(long, value_delimiter = ',')]
    e: Option<Vec<u32>>,
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    #[arg(long)]
    jobs: Option<NonZeroUsize>,
    /// Stop at the first failing cell.
    #[arg(long)]
    stop_on_first: bool,
}

#[derive(Args)]
struct ComputeArgs {
    /// One of: bernoulli, bernoulli-poly, euler-number, euler-quotient,
    /// totient, combined-totient, floor-totient, jacobi, beta, a-e, sum,
    /// t-product, s-product, binom-product.
    quantity: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Index for euler-number.
    #[arg(long)]
    m: Option<usize>,
    /// Base for euler-quotient.
    #[arg(long)]
    r: Option<i64>,
    /// Index for bernoulli and bernoulli-poly.
    #[arg(long)]
    v: Option<usize>,
    /// Extra power: quotient precision digits or totient exponent.
    #[arg(long)]
    w: Option<u32>,
    /// Rational argument, as A/B or an integer.
    #[arg(long, value_parser = parse_rational)]
    x: Option<BigRational>,
    /// Power of the summed inverses (1 or 2).
    #[arg(long)]
    power: Option<u32>,
    /// Sum over shifted denominators n - e*r instead of r.
    #[arg(long)]
    shifted: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Print the example inventory without running it.
    #[arg(long)]
    list: bool,
    /// Restrict to one group (for instance bernoulli).
    #[arg(long)]
    only: Option<String>,
}

fn resolve_jobs(flag: Option<NonZeroUsize>) -> usize {
    if let Some(jobs) = flag {
        return jobs.get();
    }
    if let Ok(value) = std::env::var("CONGRUENCE_JOBS") {
        match value.parse::<NonZeroUsize>() {
            Ok(jobs) => return jobs.get(),
            Err(_) => eprintln!("ignoring CONGRUENCE_JOBS={value:?}: not a positive integer"),
        }
    }
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

fn cmd_verify(args: SweepArgs) -> u8 {
    let request = VerifyRequest {
        claim: args.claim,
        n_range: args.n,
        k_range: args.k,
        e_values: args.e,
        variant: args.variant,
        jobs: resolve_jobs(args.jobs),
        format: args.format,
        output: args.output,
    };
    let report = grid::run(&request);
    let rendered = report::render(&report, request.format);
    if let Some(path) = &request.output {
        if let Err(err) = fs::write(path, rendered) {
            eprintln!("cannot write {}: {err}", path.display());
            return 2;
        }
        println!("{}", report::summary_line(&report));
    } else {
        print!("{rendered}");
    }
    if report.all_pass() {
        0
    } else {
        1
    }
}

fn failure_line(outcome: &grid::Outcome) -> Option<String> {
    let is_failure = match outcome {
        grid::Outcome::Checked(result) => !result.pass,
        grid::Outcome::Skipped { .. } => false,
        grid::Outcome::Faulted { .. } => true,
    };
    is_failure.then(|| report::outcome_line(outcome))
}

fn cmd_search(args: SearchArgs) -> u8 {
    let mut request = VerifyRequest::new(args.claim, args.n);
    request.k_range = args.k;
    request.e_values = args.e;
    request.variant = args.variant;
    request.jobs = resolve_jobs(args.jobs);
    let cells = grid::expand(&request);

    let mut found = false;
    if args.stop_on_first {
        for cell in &cells {
            if let Some(line) = failure_line(&grid::evaluate_cell(cell)) {
                println!("{line}");
                found = true;
                break;
            }
        }
    } else {
        for outcome in grid::evaluate_all(&cells, request.jobs) {
            if let Some(line) = failure_line(&outcome) {
                println!("{line}");
                found = true;
            }
        }
    }
    if found {
        1
    } else {
        0
    }
}

enum ComputeError {
    Usage(String),
    Math(Error),
}

impl From<Error> for ComputeError {
    fn from(err: Error) -> ComputeError {
        ComputeError::Math(err)
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, ComputeError> {
    value.ok_or_else(|| ComputeError::Usage(format!("this quantity needs --{flag}")))
}

fn compute_value(args: &ComputeArgs) -> Result<String, ComputeError> {
    let value = match args.quantity.as_str() {
        "bernoulli" => bernoulli_number(need(args.v, "v")?).to_string(),
        "bernoulli-poly" => {
            let x = args.x.clone().unwrap_or_else(BigRational::zero);
            bernoulli_poly(need(args.v, "v")?, &x).to_string()
        }
        "euler-number" => euler_number(need(args.m, "m")?).to_string(),
        "euler-quotient" => {
            euler_quotient(need(args.r, "r")?, need(args.n, "n")?, args.w.unwrap_or(1))?
                .to_string()
        }
        "totient" => {
            let weight = match args.e {
                Some(e) => Weight::Jacobi(e),
                None => Weight::One,
            };
            let spec = TotientSpec { weight, exponent: i64::from(args.k.unwrap_or(1)) };
            generalized_totient(&spec, need(args.n, "n")?)?.to_string()
        }
        "combined-totient" => {
            let n = need(args.n, "n")?;
            let e = need(args.e, "e")?;
            match args.w {
                Some(exponent) => combined_totient(e, n, exponent)?.to_string(),
                None => combined_totient_default(e, n)?.to_string(),
            }
        }
        "floor-totient" => floor_totient(need(args.e, "e")?, need(args.n, "n")?).to_string(),
        "jacobi" => jacobi_unit(need(args.e, "e")?, need(args.n, "n")?)?.to_string(),
        "beta" => {
            morley::bernoulli::bernoulli_factor_mod(need(args.n, "n")?, need(args.e, "e")?)?
                .to_string()
        }
        "a-e" => a_e_mod(need(args.n, "n")?, need(args.e, "e")?)?.to_string(),
        "sum" => {
            let spec = SumSpec {
                n: need(args.n, "n")?,
                e: need(args.e, "e")?,
                power: args.power.unwrap_or(2),
                shifted: args.shifted,
            };
            spec.evaluate()?.to_string()
        }
        "t-product" => {
            t_product(need(args.n, "n")?, args.e.unwrap_or(2), args.k.unwrap_or(1))?.to_string()
        }
        "s-product" => s_product(need(args.n, "n")?, args.k.unwrap_or(1))?.to_string(),
        "binom-product" => {
            let n = need(args.n, "n")?;
            if n < 3 || n % 2 == 0 {
                return Err(ComputeError::Math(Error::BadHypothesis(format!(
                    "the Mobius product is stated for odd n > 1, got {n}"
                ))));
            }
            moebius_binom_product(n, args.e.unwrap_or(2), args.k.unwrap_or(1)).to_string()
        }
        other => {
            return Err(ComputeError::Usage(format!(
                "unknown quantity {other:?}; see `morley compute --help` for the list"
            )))
        }
    };
    Ok(value)
}

fn cmd_compute(args: ComputeArgs) -> u8 {
    match compute_value(&args) {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(ComputeError::Math(err)) => {
            eprintln!("{err}");
            1
        }
        Err(ComputeError::Usage(msg)) => {
            eprintln!("{msg}");
            2
        }
    }
}

fn cmd_selftest(args: SelftestArgs) -> u8 {
    if let Some(group) = &args.only {
        if !selftest::groups().contains(&group.as_str()) {
            eprintln!(
                "unknown selftest group {group:?}; available: {}",
                selftest::groups().join(", ")
            );
            return 2;
        }
    }
    if args.list {
        for ex in selftest::inventory() {
            if args.only.as_deref().is_some_and(|group| group != ex.group) {
                continue;
            }
            println!("{:<14} {:<44} {}", ex.group, ex.name, ex.expected);
        }
        return 0;
    }
    let (checked, mismatches) = selftest::run_examples(args.only.as_deref());
    for m in &mismatches {
        println!(
            "MISMATCH {}/{}: expected {}, observed {}",
            m.group, m.name, m.expected, m.observed
        );
    }
    println!("{checked} examples checked, {} mismatches", mismatches.len());
    if mismatches.is_empty() {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Compute(args) => cmd_compute(args),
        Command::Search(args) => cmd_search(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    ExitCode::from(code)
}
