//! `qsim` — run QASM files, build the search and Grover circuits, fit
//! readout noise, and self-check the simulator.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or parse error,
//! 3 circuit validation failure, 4 noise-fit failure, 5 verification
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsim_core::algorithms::{
    auto_grover_iterations, build_constant_search, build_grover, GroverSpec, SearchSpec,
    SearchVariant,
};
use qsim_core::noise::{fit_readout, NoiseModel};
use qsim_core::report::{format_significant, CountsReport};
use qsim_core::verify::{run_all, VerifyConfig};
use qsim_core::{qasm, Error};

#[derive(Parser)]
#[command(name = "qsim", version, about = "State-vector simulator and OpenQASM 2.0 toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an OpenQASM 2.0 file and print its histogram.
    Run {
        /// Path to a .qasm file.
        path: PathBuf,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Build and execute the constant-depth register-comparison search.
    Search {
        /// Register width; the circuit uses 2n qubits.
        #[arg(long)]
        n: usize,
        /// Search key bitstring of length n (most significant bit first).
        #[arg(long)]
        key: String,
        #[arg(long, value_enum, default_value_t = VariantOpt::Algorithm)]
        variant: VariantOpt,
        /// Write the circuit's canonical QASM to this path.
        #[arg(long, value_name = "PATH")]
        emit_qasm: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Build and execute the Grover search baseline.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        key: String,
        /// Iteration count, or "auto" for ⌊(π/4)·√(2^n)⌋.
        #[arg(long, default_value = "auto")]
        iterations: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Run the self-check suites and report per-suite timing.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_qubits: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Fit the symmetric readout flip probability that reproduces a
    /// target search success probability.
    FitNoise {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        key: String,
        /// Target P(key) in (0, 1].
        #[arg(long)]
        target: f64,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantOpt {
    /// Six-step layout (X, H, Z, H, CNOT, measure); finds the key with
    /// certainty.
    Algorithm,
    /// Literal-listing layout; outcomes are uniform.
    QasmLiteral,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct RunOpts {
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    /// RNG seed; QSIM_SEED overrides the default, --seed overrides both.
    #[arg(long, env = "QSIM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the rendered report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Depolarizing probability per gate per involved qubit.
    #[arg(long, value_name = "P")]
    depolarizing: Option<f64>,
    /// Symmetric readout flip probability.
    #[arg(long, value_name = "P")]
    readout: Option<f64>,
}

impl RunOpts {
    fn noise(&self) -> Option<NoiseModel> {
        if self.depolarizing.is_none() && self.readout.is_none() {
            return None;
        }
        let readout = self.readout.unwrap_or(0.0);
        Some(NoiseModel {
            depolarizing_p: self.depolarizing.unwrap_or(0.0),
            readout_p01: readout,
            readout_p10: readout,
        })
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidCircuit(_) => 3,
            Error::FitFailure(_) => 4,
            _ => 2,
        };
        Failure::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Run { path, run } => cmd_run(&path, &run),
        Command::Search {
            n,
            key,
            variant,
            emit_qasm,
            run,
        } => cmd_search(n, &key, variant, emit_qasm.as_deref(), &run),
        Command::Grover {
            n,
            key,
            iterations,
            run,
        } => cmd_grover(n, &key, &iterations, &run),
        Command::Verify {
            max_qubits,
            tolerance,
        } => cmd_verify(max_qubits, tolerance),
        Command::FitNoise { n, key, target, run } => cmd_fit_noise(n, &key, target, &run),
    }
}

fn cmd_run(path: &Path, run: &RunOpts) -> Result<u8, Failure> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot open {}: {e}", path.display())))?;
    let circuit = qasm::parse(&source)
        .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    let report = circuit.execute(run.shots, run.seed, run.noise().as_ref())?;
    emit_report(&report, run)?;
    Ok(0)
}

fn cmd_search(
    n: usize,
    key: &str,
    variant: VariantOpt,
    emit_qasm: Option<&Path>,
    run: &RunOpts,
) -> Result<u8, Failure> {
    let variant = match variant {
        VariantOpt::Algorithm => SearchVariant::AlgorithmFaithful,
        VariantOpt::QasmLiteral => SearchVariant::QasmLiteral,
    };
    let circuit = build_constant_search(&SearchSpec::new(n, key, variant))?;
    if let Some(path) = emit_qasm {
        let text = qasm::print(&circuit)?;
        std::fs::write(path, text)
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display())))?;
    }
    if variant == SearchVariant::QasmLiteral {
        eprintln!(
            "note: the qasm-literal variant leaves its CNOT targets in |+>; outcomes are \
             uniform rather than concentrated on the key (use --variant algorithm for the \
             deterministic result)"
        );
    }
    let report = circuit.execute(run.shots, run.seed, run.noise().as_ref())?;
    emit_report(&report, run)?;
    Ok(0)
}

fn cmd_grover(n: usize, key: &str, iterations: &str, run: &RunOpts) -> Result<u8, Failure> {
    let iterations = match iterations {
        "auto" => {
            let chosen = auto_grover_iterations(n);
            eprintln!("iterations: {chosen} (auto)");
            Some(chosen)
        }
        text => Some(text.parse::<usize>().map_err(|_| {
            Failure::new(2, format!("--iterations must be a count or 'auto', got '{text}'"))
        })?),
    };
    let circuit = build_grover(&GroverSpec {
        n,
        key: key.to_string(),
        iterations,
    })?;
    let report = circuit.execute(run.shots, run.seed, run.noise().as_ref())?;
    emit_report(&report, run)?;
    Ok(0)
}

fn cmd_verify(max_qubits: usize, tolerance: f64) -> Result<u8, Failure> {
    let config = VerifyConfig {
        max_qubits,
        tolerance,
        ..VerifyConfig::default()
    };
    let results = run_all(&config)?;
    println!("{:<20} {:>6} {:>12} {:>9}  result", "suite", "cases", "max-error", "time");
    let mut all_passed = true;
    for result in &results {
        println!(
            "{:<20} {:>6} {:>12.3e} {:>7} ms  {}",
            result.name,
            result.cases,
            result.max_error,
            result.duration.as_millis(),
            if result.passed { "pass" } else { "FAIL" }
        );
        all_passed &= result.passed;
    }
    if all_passed {
        println!("all suites passed (tolerance {tolerance:e}, max qubits {max_qubits})");
        Ok(0)
    } else {
        println!("verification FAILED (tolerance {tolerance:e}, max qubits {max_qubits})");
        Ok(5)
    }
}

fn cmd_fit_noise(n: usize, key: &str, target: f64, run: &RunOpts) -> Result<u8, Failure> {
    let circuit =
        build_constant_search(&SearchSpec::new(n, key, SearchVariant::AlgorithmFaithful))?;
    let fit = fit_readout(&circuit, key, target, run.shots, run.seed)?;
    println!("fitted readout p: {}", format_significant(fit.p));
    println!("achieved P(key): {}", format_significant(fit.achieved));
    println!("iterations: {}", fit.iterations);
    Ok(0)
}

fn emit_report(report: &CountsReport, run: &RunOpts) -> Result<(), Failure> {
    let rendered = match run.format {
        Format::Json => {
            let mut text = report.to_json();
            text.push('\n');
            text
        }
        Format::Csv => report.to_csv(),
        Format::Text => render_text(report),
    };
    match &run.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn render_text(report: &CountsReport) -> String {
    let mut out = format!("shots: {}  seed: {}\n", report.shots, report.seed);
    out.push_str(&format!("digest: {}\n", report.circuit_digest));
    let max_count = report.counts.values().copied().max().unwrap_or(1).max(1);
    let width = report
        .counts
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(7)
        .max("outcome".len());
    out.push_str(&format!("{:<width$} {:>8}  {:<17}\n", "outcome", "count", "probability"));
    for (outcome, count) in &report.counts {
        let bar_len = ((*count as f64 / max_count as f64) * 40.0).round() as usize;
        out.push_str(&format!(
            "{outcome:<width$} {count:>8}  {:<17} {}\n",
            format_significant(*count as f64 / report.shots as f64),
            "#".repeat(bar_len),
        ));
    }
    out
}
