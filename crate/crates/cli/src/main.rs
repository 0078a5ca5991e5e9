//! `terai`: verify `x^2 + (2k - 1)^y = k^z` has only `(k - 1, 1, 2)` for given `k`,
//! sweep ranges, probe the `d = ab` conjecture, and poke at form arithmetic.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use terai_core::form::{class_number, Form};
use terai_core::pipeline::{
    brute_force_solutions, check_ab_conjecture, eligibility, eligible_in_range, run_parallel, verify_k,
    DivisorStrategy, EligibilityMode, KContext, VerifyOptions, DEFAULT_MAX_ORDER,
};
use terai_core::{Certificate, Error};

use crate::report::{KOutcome, RunReport};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "terai", version, about = "Even-power certificates for x^2 + (2k-1)^y = k^z")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a single k (or a single (k, d) pair).
    Verify(VerifyArgs),
    /// Certify every k = 4 (mod 8) with 2k - 1 a prime power in a range.
    Range(RangeArgs),
    /// Check whether d = ab alone certifies each eligible k in a range.
    Conjecture(RangeArgs),
    /// Brute-force search for solutions with z <= max-z.
    Search(SearchArgs),
    /// Form arithmetic helpers.
    #[command(subcommand)]
    Form(FormCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    AbFirst,
    Ascending,
}

impl From<StrategyArg> for DivisorStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::AbFirst => DivisorStrategy::AbFirst,
            StrategyArg::Ascending => DivisorStrategy::Ascending,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: u64,
    /// Certify this divisor of ab only.
    #[arg(long, conflicts_with = "d_strategy")]
    d: Option<u64>,
    #[arg(long, value_enum)]
    d_strategy: Option<StrategyArg>,
    /// Accept any k divisible by 4 (not just k = 4 mod 8).
    #[arg(long)]
    relaxed: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    /// Write the certificate (or the failed attempts) as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    #[arg(long, value_enum, default_value = "ab-first")]
    d_strategy: StrategyArg,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    max_z: u32,
}

#[derive(Subcommand)]
enum FormCommand {
    /// Reduced representative of (a, b, c).
    Reduce {
        #[arg(allow_negative_numbers = true, required = true, num_args = 3, value_names = ["A", "B", "C"])]
        coeffs: Vec<BigInt>,
    },
    /// Reduced composition of two forms.
    Compose {
        #[arg(allow_negative_numbers = true, required = true, num_args = 6, value_names = ["A1", "B1", "C1", "A2", "B2", "C2"])]
        coeffs: Vec<BigInt>,
    },
    /// Reduced representative of (a, b, c)^n.
    Power {
        #[arg(allow_negative_numbers = true, required = true, num_args = 3, value_names = ["A", "B", "C"])]
        coeffs: Vec<BigInt>,
        n: u64,
    },
    /// Order of the class of (a, b, c).
    Order {
        #[arg(allow_negative_numbers = true, required = true, num_args = 3, value_names = ["A", "B", "C"])]
        coeffs: Vec<BigInt>,
    },
    /// Class number of a negative discriminant.
    Classnum {
        #[arg(allow_negative_numbers = true)]
        disc: BigInt,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Range(args) => cmd_range(args),
        Command::Conjecture(args) => cmd_conjecture(args),
        Command::Search(args) => cmd_search(args),
        Command::Form(cmd) => cmd_form(cmd),
    };
    ExitCode::from(code)
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), u8> {
    fs::write(path, contents).map_err(|e| usage_error(format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let mode = if args.relaxed { EligibilityMode::Relaxed } else { EligibilityMode::Strict };
    let report = match eligibility(args.k, mode) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    if let Some(reason) = report.reason() {
        return usage_error(format!("k = {} is ineligible: {reason}", args.k));
    }

    if let Some(d) = args.d {
        let ctx = match KContext::new(args.k, mode) {
            Ok(ctx) => ctx,
            Err(e) => return usage_error(e),
        };
        let cert = match ctx.certify_d(d, args.max_order) {
            Ok(cert) => cert,
            Err(e @ Error::Domain(_)) => return usage_error(e),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_FAILED;
            }
        };
        println!("{cert}");
        if let Some(path) = &args.json {
            if let Err(code) = write_file(path, &cert.to_json_string()) {
                return code;
            }
        }
        return if cert.is_even_only() { EXIT_OK } else { EXIT_FAILED };
    }

    let options = VerifyOptions {
        strategy: args.d_strategy.map(Into::into).unwrap_or_default(),
        mode,
        max_order: args.max_order,
    };
    let result = match verify_k(args.k, options) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    println!("k = {}: k - 1 = {} * {}^2, ab = {}", result.k, result.a, result.b, result.a * result.b);
    for attempt in &result.attempts {
        match &attempt.outcome {
            Ok(cert) => println!("{cert}"),
            Err(e) => println!("d = {}: error: {e}", attempt.d),
        }
    }
    let certificate = result.certificate();
    if let Some(path) = &args.json {
        let text = match certificate {
            Some(cert) => cert.to_json_string(),
            None => {
                let failed: Vec<_> = result
                    .attempts
                    .iter()
                    .filter_map(|a| a.outcome.as_ref().ok().map(Certificate::to_json))
                    .collect();
                serde_json::to_string_pretty(&failed).expect("serializable")
            }
        };
        if let Err(code) = write_file(path, &text) {
            return code;
        }
    }
    match certificate {
        Some(cert) => {
            println!("certified: k = {} with d = {}", result.k, cert.d);
            EXIT_OK
        }
        None => {
            println!("exhausted: no divisor of ab = {} certifies k = {}", result.a * result.b, result.k);
            EXIT_FAILED
        }
    }
}

fn check_range(args: &RangeArgs) -> Result<Vec<u64>, u8> {
    if args.from > args.to {
        return Err(usage_error(format!("--from {} exceeds --to {}", args.from, args.to)));
    }
    if args.jobs == Some(0) {
        return Err(usage_error("--jobs must be at least 1"));
    }
    eligible_in_range(args.from, args.to, EligibilityMode::Strict).map_err(usage_error)
}

fn cmd_range(args: RangeArgs) -> u8 {
    let ks = match check_range(&args) {
        Ok(ks) => ks,
        Err(code) => return code,
    };
    let options =
        VerifyOptions { strategy: args.d_strategy.into(), mode: EligibilityMode::Strict, max_order: args.max_order };
    let results = match run_parallel(&ks, args.jobs, |k| verify_k(k, options)) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let outcomes = results
        .into_iter()
        .map(|(k, result, elapsed)| KOutcome::from_verify(k, result, elapsed))
        .collect();
    finish_report(RunReport::new("range", args.from, args.to, outcomes), args.csv.as_ref())
}

fn cmd_conjecture(args: RangeArgs) -> u8 {
    let ks = match check_range(&args) {
        Ok(ks) => ks,
        Err(code) => return code,
    };
    let results = match run_parallel(&ks, args.jobs, |k| check_ab_conjecture(k, args.max_order)) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let outcomes = results
        .into_iter()
        .map(|(k, result, elapsed)| KOutcome::from_conjecture(k, result, elapsed))
        .collect::<Vec<_>>();
    let report = RunReport::new("conjecture", args.from, args.to, outcomes);
    for o in report.outcomes.iter().filter(|o| !o.verified) {
        println!("COUNTEREXAMPLE CANDIDATE: k = {} with d = ab = {}: {}", o.k, o.a * o.b, o.detail);
    }
    finish_report(report, args.csv.as_ref())
}

fn finish_report(report: RunReport, csv_path: Option<&PathBuf>) -> u8 {
    print!("{}", report.render_table());
    if let Some(path) = csv_path {
        match report.to_csv() {
            Ok(text) => {
                if let Err(code) = write_file(path, &text) {
                    return code;
                }
            }
            Err(e) => return usage_error(e),
        }
    }
    if report.failed() == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn cmd_search(args: SearchArgs) -> u8 {
    match brute_force_solutions(args.k, args.max_z) {
        Ok(sols) => {
            for s in &sols {
                println!("{s}");
            }
            if sols.is_empty() {
                println!("no solutions with z <= {}", args.max_z);
            }
            EXIT_OK
        }
        Err(e) => usage_error(e),
    }
}

fn parse_form(coeffs: &[BigInt]) -> Result<Form, u8> {
    Form::new(coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()).map_err(usage_error)
}

fn print_form(f: &Form) {
    println!("{} {} {}", f.a(), f.b(), f.c());
}

fn cmd_form(cmd: FormCommand) -> u8 {
    let run = || -> Result<(), u8> {
        match cmd {
            FormCommand::Reduce { coeffs } => print_form(&parse_form(&coeffs)?.reduced()),
            FormCommand::Compose { coeffs } => {
                let f = parse_form(&coeffs[..3])?;
                let g = parse_form(&coeffs[3..])?;
                print_form(&f.compose_reduced(&g).map_err(usage_error)?);
            }
            FormCommand::Power { coeffs, n } => print_form(&parse_form(&coeffs)?.power(n)),
            FormCommand::Order { coeffs } => println!("{}", parse_form(&coeffs)?.order().map_err(usage_error)?),
            FormCommand::Classnum { disc } => println!("{}", class_number(&disc).map_err(usage_error)?),
        }
        Ok(())
    };
    match run() {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}
