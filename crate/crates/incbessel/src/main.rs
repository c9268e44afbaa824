//! Thin command-line front end over the `incbessel` library.
//!
//! Exit codes: 0 success, 1 non-convergence or failed self-test, 2 usage
//! error, 3 parameter-domain error, 4 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use incbessel::engine::{self, EngineConfig, TerminationStatus};
use incbessel::params::Parameters;
use incbessel::quadrature::{self, QuadratureConfig};
use incbessel::{bench, legacy, selftest, sweep};

/// Default relative tolerance, overridable through the environment.
const TOL_ENV: &str = "INCBESSEL_TOL";
const DEFAULT_TOL: f64 = 1e-14;

const EXIT_NOT_CONVERGED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "incbessel",
    version,
    about = "Incomplete Bessel functions K_nu(x,y) via a linear-cost recurrence",
    after_help = "The default relative tolerance (1e-14) can be overridden with the \
                  INCBESSEL_TOL environment variable."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate K_nu(x,y) at one point
    Eval(EvalArgs),
    /// Emit a relative-error-vs-order CSV for one x and several y values
    Sweep(SweepArgs),
    /// Compare wall-clock scaling of the recursive and sum-based methods
    Bench(BenchArgs),
    /// Run the cross-validation suites
    SelfTest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Four-term recurrence (linear cost)
    Recursive,
    /// Sum-based reference algorithm (order capped at 32)
    Legacy,
    /// Adaptive quadrature of the defining integral
    Quadrature,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Precision {
    /// IEEE-754 binary64
    Double,
    /// Compensated double-double
    Extended,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    x: f64,
    #[arg(long)]
    y: f64,
    #[arg(long)]
    nu: f64,
    #[arg(long, value_enum, default_value_t = Method::Recursive)]
    method: Method,
    /// Relative tolerance (default 1e-14, or INCBESSEL_TOL)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 200)]
    max_order: u32,
    #[arg(long, value_enum, default_value_t = Precision::Double)]
    precision: Precision,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    x: f64,
    #[arg(long)]
    nu: f64,
    /// Comma-separated y values, e.g. --y 0,2,4
    #[arg(long, value_delimiter = ',', required = true)]
    y: Vec<f64>,
    #[arg(long, default_value_t = 60)]
    n_max: u32,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10.0)]
    x: f64,
    #[arg(long, default_value_t = 5.0)]
    y: f64,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    /// Trajectory lengths for the recursive method
    #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
    recursive_orders: Vec<u32>,
    /// Trajectory lengths for the sum-based method (each must be <= 32)
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    legacy_orders: Vec<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Bench(args) => cmd_bench(args),
        Command::SelfTest => cmd_selftest(),
    }
}

fn default_tolerance() -> Result<f64, String> {
    match std::env::var(TOL_ENV) {
        Ok(raw) => raw
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && *t < 1.0)
            .ok_or(format!("{TOL_ENV} must be a number in (0, 1), got {raw:?}")),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn parse_params(x: f64, y: f64, nu: f64) -> Result<Parameters, ExitCode> {
    Parameters::new(x, y, nu).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_DOMAIN)
    })
}

fn print_result(value: f64, order: Option<u32>, est_rel_error: f64, status: &str, start: Instant) {
    println!("value        = {value:.16e}");
    match order {
        Some(n) => println!("order        = {n}"),
        None => println!("order        = n/a"),
    }
    println!("est_rel_err  = {est_rel_error:.3e}");
    println!("status       = {status}");
    println!("wall_time_ms = {:.3}", start.elapsed().as_secs_f64() * 1e3);
}

fn cmd_eval(args: EvalArgs) -> ExitCode {
    let tol = match args.tol.map(Ok).unwrap_or_else(default_tolerance) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if args.precision == Precision::Extended && args.method != Method::Recursive {
        eprintln!("error: --precision extended applies only to --method recursive");
        return ExitCode::from(EXIT_USAGE);
    }
    let params = match parse_params(args.x, args.y, args.nu) {
        Ok(p) => p,
        Err(code) => return code,
    };

    match args.method {
        Method::Recursive => {
            let config = EngineConfig {
                max_order: args.max_order,
                rel_tolerance: tol,
                ..EngineConfig::default()
            };
            let start = Instant::now();
            let r = match args.precision {
                Precision::Double => engine::evaluate(&params, &config),
                Precision::Extended => engine::evaluate_extended(&params, &config),
            };
            let status = match r.status {
                TerminationStatus::Converged => "converged",
                TerminationStatus::MaxOrderReached => "max-order-reached",
                TerminationStatus::DegenerateDenominator => "degenerate-denominator",
            };
            print_result(r.value, Some(r.order), r.est_rel_error, status, start);
            if r.converged() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NOT_CONVERGED)
            }
        }
        Method::Legacy => {
            if args.max_order > 32 {
                eprintln!("error: --method legacy supports --max-order up to 32");
                return ExitCode::from(EXIT_USAGE);
            }
            let start = Instant::now();
            // Same successive-agreement rule as the engine, on the
            // sum-based trajectory.
            let tr = legacy::legacy_trajectory(args.max_order as usize, &params);
            let mut prev: Option<f64> = None;
            let mut outcome: Option<(f64, u32, f64)> = None;
            let mut best: Option<(f64, u32, f64)> = None;
            let mut agree = 0;
            for (n, g) in tr.approximants.iter().enumerate() {
                let Some(g) = *g else { continue };
                if let Some(p) = prev {
                    let change = if g == p { 0.0 } else { ((g - p) / g).abs() };
                    if best.map_or(true, |(_, _, c)| change < c) {
                        best = Some((g, n as u32, change));
                    }
                    agree = if change <= tol { agree + 1 } else { 0 };
                    if agree >= 2 {
                        outcome = Some((g, n as u32, change));
                        break;
                    }
                }
                prev = Some(g);
            }
            match outcome.or(best) {
                Some((value, order, change)) => {
                    let converged = outcome.is_some();
                    let status = if converged { "converged" } else { "max-order-reached" };
                    print_result(value, Some(order), change, status, start);
                    if converged {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_NOT_CONVERGED)
                    }
                }
                None => {
                    print_result(f64::NAN, None, f64::INFINITY, "degenerate-denominator", start);
                    ExitCode::from(EXIT_NOT_CONVERGED)
                }
            }
        }
        Method::Quadrature => {
            let qc = QuadratureConfig {
                rel_target: tol.max(1e-15),
                ..QuadratureConfig::default()
            };
            let start = Instant::now();
            let e = quadrature::tail_integral(&params, &qc);
            let status = if e.converged { "converged" } else { "budget-exhausted" };
            print_result(e.value, None, e.est_rel_error, status, start);
            if e.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NOT_CONVERGED)
            }
        }
    }
}

fn cmd_sweep(args: SweepArgs) -> ExitCode {
    let rows = match sweep::error_sweep(
        args.x,
        &args.y,
        args.nu,
        args.n_max,
        &QuadratureConfig::default(),
    ) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let io_result = match &args.output {
        Some(path) => File::create(path)
            .and_then(|f| sweep::write_csv(&mut BufWriter::new(f), &rows)),
        None => {
            let stdout = io::stdout();
            sweep::write_csv(&mut stdout.lock(), &rows)
        }
    };
    if let Err(e) = io_result {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::SUCCESS
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    if args.legacy_orders.iter().any(|&n| n > 32) {
        eprintln!("error: legacy orders beyond 32 are impractical (O(n^4) cost)");
        return ExitCode::from(EXIT_USAGE);
    }
    let params = match parse_params(args.x, args.y, args.nu) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let report = bench::run(&params, &args.recursive_orders, &args.legacy_orders);

    println!("method     n        time");
    for p in &report.recursive {
        println!("recursive  {:<8} {:>12.3} us", p.n, p.seconds * 1e6);
    }
    for p in &report.legacy {
        println!("legacy     {:<8} {:>12.3} us", p.n, p.seconds * 1e6);
    }
    println!("fitted scaling exponent (recursive) = {:.2}", report.recursive_exponent);
    println!("fitted scaling exponent (legacy)    = {:.2}", report.legacy_exponent);
    ExitCode::SUCCESS
}

fn cmd_selftest() -> ExitCode {
    let checks = selftest::run_selftest();
    let mut all_ok = true;
    for c in &checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict}  {} — {}", c.name, c.detail);
        all_ok &= c.passed;
    }
    let _ = io::stdout().flush();
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_CONVERGED)
    }
}
