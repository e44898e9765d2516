use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcrkit::bench::{run_bench, BenchConfig};
use mcrkit::circuit::{emit_qasm, emit_qc, parse_qasm};
use mcrkit::mcr::{count_quadruples, enumerate_quadruples};
use mcrkit::optimizer::{optimize, parse_passes, OptimizerConfig, Pass};
use mcrkit::pbc::{gates_to_pbc, pbc_to_gates};
use mcrkit::unopt::{unoptimize, UnoptRecipe};
use mcrkit::verify::{check_equiv, check_equiv_statevector, DEFAULT_DENSE_CAP, DEFAULT_STATE_SAMPLES, DEFAULT_TOLERANCE};
use mcrkit::{Error, GateCircuit, PbcCircuit};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_EQUIVALENT: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "mcrkit", version, about = "Clifford+T unoptimization benchmarks and T-count optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an unoptimized circuit from the single R_{Z..Z}(π/4) input
    Unopt(UnoptArgs),
    /// Reduce the T-count of a circuit
    Optimize(OptimizeArgs),
    /// Convert between QASM, qc and PBC JSON
    Convert(ConvertArgs),
    /// Check two circuits for equality up to global phase
    Verify(VerifyArgs),
    /// Unoptimize then optimize many samples and report reduction rates
    Bench(BenchArgs),
    /// Count MCR quadruples
    CountMcr(CountArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Qasm,
    Qc,
    PbcJson,
}

#[derive(Args)]
struct UnoptArgs {
    #[arg(long)]
    qubits: usize,
    /// Defaults to qubits²
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_swap: bool,
    #[arg(long, value_enum, default_value_t = Format::PbcJson)]
    format: Format,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the replayable recipe log here
    #[arg(long)]
    recipe: Option<PathBuf>,
}

#[derive(Args)]
struct PassArgs {
    /// Comma separated passes out of merge, mcr_swap
    #[arg(long, default_value = "mcr_swap,merge")]
    passes: String,
    #[arg(long, default_value_t = 32)]
    max_rounds: usize,
    #[arg(long, default_value_t = 64)]
    pair_cap: usize,
}

impl PassArgs {
    fn config(&self) -> Result<OptimizerConfig, Failure> {
        let passes = parse_passes(&self.passes).map_err(Failure::usage)?;
        let cfg = OptimizerConfig {
            passes,
            max_rounds: self.max_rounds,
            pair_cap: self.pair_cap,
        };
        cfg.validate().map_err(Failure::usage)?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    passes: PassArgs,
    #[arg(long, value_enum, default_value_t = Format::PbcJson)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the optimizer report as JSON
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    to: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Dense,
    Statevector,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// auto picks dense up to the dense qubit cap
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_STATE_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// A single count (`4`) or an inclusive range (`2..6`)
    #[arg(long)]
    qubits: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    no_swap: bool,
    #[arg(long, default_value = "merge")]
    passes: String,
    #[arg(long, default_value_t = 32)]
    max_rounds: usize,
    #[arg(long, default_value_t = 64)]
    pair_cap: usize,
    #[arg(long, env = "MCRKIT_THREADS")]
    threads: Option<usize>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    qubits: usize,
    /// Brute-force the quadruples as well (two qubits at most)
    #[arg(long)]
    enumerate: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnsupportedGate { .. } | Error::Format(_) | Error::PauliParse(_) => EXIT_PARSE,
            Error::CapExhausted { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

enum Loaded {
    Gates(GateCircuit),
    Pbc(PbcCircuit),
}

impl Loaded {
    fn pbc(&self) -> PbcCircuit {
        match self {
            Loaded::Gates(c) => gates_to_pbc(c),
            Loaded::Pbc(p) => p.clone(),
        }
    }

    fn num_qubits(&self) -> usize {
        match self {
            Loaded::Gates(c) => c.num_qubits(),
            Loaded::Pbc(p) => p.num_qubits(),
        }
    }

    fn simulate(&self) -> &dyn mcrkit::verify::Simulate {
        match self {
            Loaded::Gates(c) => c,
            Loaded::Pbc(p) => p,
        }
    }
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    // PBC JSON is recognised by content, so the extension does not matter
    if text.trim_start().starts_with('{') {
        Ok(Loaded::Pbc(PbcCircuit::from_json(&text)?))
    } else {
        Ok(Loaded::Gates(parse_qasm(&text)?))
    }
}

fn render(p: &PbcCircuit, format: Format) -> String {
    match format {
        Format::PbcJson => p.to_json(),
        Format::Qasm => emit_qasm(&pbc_to_gates(p)),
        Format::Qc => emit_qc(&pbc_to_gates(p)),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_unopt(a: UnoptArgs) -> CmdResult {
    if a.qubits < 2 {
        return Err(Failure::usage("unoptimization needs at least 2 qubits"));
    }
    let input = PbcCircuit::default_input(a.qubits);
    let mut recipe = UnoptRecipe::new(a.qubits, a.seed, !a.no_swap);
    if let Some(m) = a.iterations {
        recipe.iterations = m;
    }
    let v = unoptimize(&input, &mut recipe)?;
    write_out(a.out.as_deref(), &render(&v, a.format))?;
    if let Some(path) = &a.recipe {
        fs::write(path, recipe.to_json()).map_err(|e| Failure::io(path, e))?;
    }
    eprintln!("t_unopt {}", v.t_count());
    Ok(ExitCode::SUCCESS)
}

fn cmd_optimize(a: OptimizeArgs) -> CmdResult {
    let cfg = a.passes.config()?;
    let p = load(&a.input)?.pbc();
    let (q, report) = optimize(&p, &cfg)?;
    write_out(a.out.as_deref(), &render(&q, a.format))?;
    if let Some(path) = &a.report {
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        fs::write(path, json).map_err(|e| Failure::io(path, e))?;
    }
    eprintln!("t_count {} -> {}", report.t_initial, report.t_final);
    Ok(ExitCode::SUCCESS)
}

fn cmd_convert(a: ConvertArgs) -> CmdResult {
    let text = match (load(&a.input)?, a.to) {
        (Loaded::Gates(c), Format::Qasm) => emit_qasm(&c),
        (Loaded::Gates(c), Format::Qc) => emit_qc(&c),
        (loaded, to) => render(&loaded.pbc(), to),
    };
    write_out(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let (u, v) = (load(&a.a)?, load(&a.b)?);
    let dense = match a.method {
        Method::Dense => true,
        Method::Statevector => false,
        Method::Auto => u.num_qubits() <= DEFAULT_DENSE_CAP,
    };
    let report = if dense {
        check_equiv(u.simulate(), v.simulate(), a.tol)?
    } else {
        check_equiv_statevector(u.simulate(), v.simulate(), a.samples, a.seed, a.tol)?
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(if report.equivalent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_EQUIVALENT)
    })
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("invalid qubit range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo < 2 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let (lo, hi) = parse_range(&a.qubits)?;
    let passes: Vec<Pass> = parse_passes(&a.passes).map_err(Failure::usage)?;
    let mut cfg = BenchConfig::new(lo, hi, a.samples, a.seed);
    cfg.swap_enabled = !a.no_swap;
    cfg.iterations = a.iterations;
    cfg.optimizer = OptimizerConfig {
        passes,
        max_rounds: a.max_rounds,
        pair_cap: a.pair_cap,
    };
    cfg.threads = a.threads.filter(|&t| t > 0);
    let report = run_bench(&cfg)?;
    if let Some(path) = &a.csv {
        fs::write(path, report.to_csv()).map_err(|e| Failure::io(path, e))?;
    }
    if let Some(path) = &a.json {
        fs::write(path, report.to_json()).map_err(|e| Failure::io(path, e))?;
    }
    println!("n  samples  t_unopt          t_opt            p");
    for s in &report.summary {
        println!(
            "{:<2} {:>7}  {:>7.2} ± {:<6.2} {:>7.2} ± {:<6.2} {:.4} ± {:.4}",
            s.n, s.samples, s.t_unopt.mean, s.t_unopt.std, s.t_opt.mean, s.t_opt.std, s.p.mean, s.p.std
        );
    }
    if !report.failures.is_empty() {
        for f in &report.failures {
            eprintln!("failed sample {f}");
        }
        return Ok(ExitCode::from(EXIT_CAP));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(a: CountArgs) -> CmdResult {
    let count = count_quadruples(a.qubits).map_err(Failure::usage)?;
    println!("{count}");
    if a.enumerate {
        let found = enumerate_quadruples(a.qubits).map_err(Failure::usage)?.len() as u128;
        if found != count {
            eprintln!("enumeration found {found}, formula gives {count}");
            return Ok(ExitCode::from(EXIT_USAGE));
        }
        eprintln!("enumeration agrees");
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Unopt(a) => cmd_unopt(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Convert(a) => cmd_convert(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::CountMcr(a) => cmd_count(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").ok(), Some((2, 6)));
        assert_eq!(parse_range("3").ok(), Some((3, 3)));
        assert_eq!(parse_range("2..=4").ok(), Some((2, 4)));
        assert!(parse_range("1..3").is_err());
        assert!(parse_range("5..3").is_err());
    }
}
