use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use spindla::decomposition::{analyze, ControllabilityReport, Verdict};
use spindla::model::ModelParams;
use spindla::pauli::DEFAULT_MAX_QUBITS;
use spindla::symgroup::{hook_length, num_standard_tableaux, partitions, subspace_dim};
use spindla::verify::{run_suite, CheckResult, Suite, DEFAULT_MAX_N};
use spindla::{closure, default_max_dim, Error, Operator, RegisterSpec};

/// Largest `n` the dims table accepts; `n!` must fit in 128 bits.
const DIMS_MAX_N: usize = 30;

#[derive(Parser)]
#[command(name = "spindla", version, about = "Dynamical Lie algebras and subspace controllability of central-spin networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close the model generators and classify every invariant subspace.
    Analyze {
        #[arg(long)]
        nc: usize,
        #[arg(long)]
        np: usize,
        #[arg(long = "gamma-c", default_value_t = 1.0, allow_negative_numbers = true)]
        gamma_c: f64,
        #[arg(long = "gamma-p", default_value_t = 2.0, allow_negative_numbers = true)]
        gamma_p: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the numerical checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long = "max-n", default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Dimensions of the symmetrizer images for every partition of n.
    Dims {
        #[arg(long)]
        n: usize,
    },
    /// Lie closure of operators read from text files.
    Closure {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn qubit_cap() -> Result<usize, Failure> {
    match std::env::var("SPINDLA_MAX_QUBITS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("SPINDLA_MAX_QUBITS must be a positive integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Su => "su",
        Verdict::U => "u",
        Verdict::Deficient => "deficient",
        Verdict::Trivial => "trivial",
    }
}

fn print_report(r: &ControllabilityReport) {
    println!("register      n_c = {}, n_p = {}", r.nc, r.np);
    println!("gamma         ({}, {})", r.gamma[0], r.gamma[1]);
    println!("dla dim       {}", r.dla_dim);
    println!();
    println!("{:<10} {:>5} {:<10} {:>5} {:>4} {:>8} {:<10} {:>9}", "shape_c", "idx_c", "shape_p", "idx_p", "m", "dim", "verdict", "leakage");
    for b in &r.blocks {
        println!(
            "{:<10} {:>5} {:<10} {:>5} {:>4} {:>8} {:<10} {:>9.1e}",
            b.shape_c.to_string(),
            b.idx_c,
            b.shape_p.to_string(),
            b.idx_p,
            b.m,
            b.restricted_dim,
            verdict_name(b.verdict),
            b.leakage
        );
    }
    println!();
    println!("subspace controllable: {}", if r.subspace_controllable { "yes" } else { "no" });
}

fn cmd_analyze(nc: usize, np: usize, gamma_c: f64, gamma_p: f64, seed: u64, json: bool) -> Result<(), Failure> {
    if !(1..=2).contains(&nc) {
        return Err(Failure::Usage(format!("--nc must be 1 or 2, got {nc}")));
    }
    let reg = RegisterSpec::with_cap(nc, np, qubit_cap()?)?;
    let params = ModelParams::new(reg, gamma_c, gamma_p)?;
    if params.outside_assumption() {
        eprintln!("warning: |gamma_c| = |gamma_p|; the controls then only rotate the total spin and the algebra may shrink");
    }
    let report = analyze(&params, seed)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print_report(&report);
    }
    if report.subspace_controllable {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cmd_verify(suite: Suite, max_n: usize, seed: u64, json: bool) -> Result<(), Failure> {
    let cap = qubit_cap()?;
    if max_n < 2 || max_n > cap {
        return Err(Failure::Usage(format!("--max-n must lie in 2..={cap}, got {max_n}")));
    }
    let results = run_suite(suite, max_n, seed);
    if json {
        println!("{}", serde_json::to_string_pretty(&results).expect("results serialize"));
    } else {
        print_checks(&results);
    }
    if results.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn print_checks(results: &[CheckResult]) {
    println!("{:<26} {:<12} {:<6} {:>9} {:>8}", "check", "params", "result", "residual", "seconds");
    for r in results {
        println!(
            "{:<26} {:<12} {:<6} {:>9.1e} {:>8.2}",
            r.name,
            r.params.to_string(),
            if r.passed { "pass" } else { "FAIL" },
            r.residual,
            r.elapsed
        );
        if !r.passed {
            println!("    {}", r.detail);
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("\n{passed} of {} checks passed", results.len());
}

fn cmd_dims(n: usize) -> Result<(), Failure> {
    if n == 0 || n > DIMS_MAX_N {
        return Err(Failure::Usage(format!("--n must lie in 1..={DIMS_MAX_N}, got {n}")));
    }
    println!("{:<16} {:>12} {:>24} {:>6}", "partition", "#SYT", "hook", "dim");
    let mut total: u128 = 0;
    let mut largest = 0;
    for shape in partitions(n) {
        let dim = subspace_dim(&shape);
        let syt = num_standard_tableaux(&shape);
        total += syt as u128 * dim as u128;
        largest = largest.max(dim);
        println!("{:<16} {:>12} {:>24} {:>6}", shape.to_string(), syt, hook_length(&shape), dim);
    }
    let full = 1u128 << n;
    println!();
    println!("sum #SYT * dim = {total}, 2^{n} = {full}: {}", if total == full { "ok" } else { "MISMATCH" });
    println!("largest = {largest} (n + 1 = {})", n + 1);
    if total == full && largest == n + 1 {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

#[derive(Serialize)]
struct ClosureReport {
    dimension: usize,
    depths: BTreeMap<usize, usize>,
    closed: bool,
}

fn cmd_closure(inputs: &[PathBuf]) -> Result<(), Failure> {
    let cap = qubit_cap()?;
    let mut gens: Vec<Operator> = Vec::new();
    for path in inputs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let op = Operator::parse_text(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if let Some(first) = gens.first() {
            if first.register() != op.register() {
                return Err(Failure::Usage(format!(
                    "{}: {} qubits, expected {}",
                    path.display(),
                    op.register().n(),
                    first.register().n()
                )));
            }
        }
        gens.push(op);
    }
    let reg = gens[0].register();
    if reg.n() > cap {
        return Err(Failure::Usage(format!("{} qubits exceeds the cap of {cap}", reg.n())));
    }
    let basis = closure(&gens, default_max_dim(reg))?;
    let report = ClosureReport {
        dimension: basis.dim(),
        depths: basis.depth_histogram(),
        closed: basis.is_closed(),
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if report.closed {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Analyze { nc, np, gamma_c, gamma_p, seed, json } => cmd_analyze(nc, np, gamma_c, gamma_p, seed, json),
        Command::Verify { suite, max_n, seed, json } => cmd_verify(suite, max_n, seed, json),
        Command::Dims { n } => cmd_dims(n),
        Command::Closure { input } => cmd_closure(&input),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
