use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tptori::exact_linalg::{format_rational, parse_rational, SquareMatrix};
use tptori::explorer::{
    parse_range, run_property_suite, scan_conjecture_a, scan_conjecture_b, Format, Mutation, Report, ScanConfig,
};
use tptori::flags::{is_in_b_neg, is_in_b_pos, tilde_map, BorelPoint, FlagPairClass};
use tptori::pimap::{
    eigen_split, pi_prime, verify_unique_borel, verify_unique_borel_neg, verify_unique_borel_neg_within,
    verify_unique_borel_within,
};
use tptori::pinning::{is_in_g_pos, is_in_u_pos, Sign};
use tptori::tori::iota;
use tptori::Error;

/// Stabilization defect allowed for flags of approximate eigenvectors.
const FLOAT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "tptori",
    version,
    about = "Totally positive elements of maximal tori in GL_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    CorruptTilde,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Membership tests for a matrix file.
    Check { matrix: PathBuf },
    /// The tilde map of a lower unitriangular matrix.
    Tilde { u: PathBuf },
    /// Frame of the torus B ∩ B' for B = u B+ u^-1, B' = v^-1 B+ v.
    Intersect { u: PathBuf, v: PathBuf },
    /// Eigen-flags and torus of a totally positive matrix.
    Pi { matrix: PathBuf },
    /// Sampled property checks for every module.
    Suite {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value = "none")]
        mutation: MutationArg,
        #[command(flatten)]
        output: Output,
    },
    /// Scan the conjectured description of positive torus elements.
    Conjecture {
        #[arg(long, value_enum)]
        part: Part,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Range of t_1..t_{n-1} (t_n = 1).
        #[arg(long, default_value = "1/16:4096")]
        grid: String,
        /// Range of the unipotent parameters.
        #[arg(long, default_value = "1/4:4")]
        params: String,
        #[arg(long, default_value = "1/64")]
        p_tol: String,
        /// Diagonals sampled per frame.
        #[arg(long, default_value_t = 100)]
        per_frame: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Re-emit a JSON report in another format.
    Report {
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
        /// JSON report to read; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

enum Failure {
    Invariant(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) | Error::Contradiction(_) | Error::Numerical(_) => {
                Failure::Invariant(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn read_matrix(path: &Path) -> std::result::Result<SquareMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    text.parse::<SquareMatrix>()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn matrix_json(m: &SquareMatrix) -> Value {
    Value::Array(
        (0..m.n())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(format_rational(x))).collect()))
            .collect(),
    )
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) -> CliResult {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(e.to_string())),
        _ => Ok(()),
    }
}

fn print_json(v: &Value) -> CliResult {
    out(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"))
}

fn emit(report: &Report, output: &Output) -> CliResult {
    let text = report.render(output.format.into())?;
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => out(&text),
    }
}

fn unitriangular_verdict(g: &SquareMatrix, sign: Sign) -> Value {
    match is_in_u_pos(g, sign) {
        Ok(r) => Value::Bool(r.verdict),
        Err(_) => Value::Null,
    }
}

fn check(path: &Path) -> CliResult {
    let g = read_matrix(path)?;
    let report = is_in_g_pos(&g);
    let witness = report
        .witness
        .as_ref()
        .map(|(idx, v)| json!({ "minor": idx.to_string(), "value": format_rational(v) }));
    let flag = BorelPoint::new(g.clone()).ok();
    print_json(&json!({
        "n": g.n(),
        "g_pos": report.verdict,
        "witness": witness,
        "u_pos_lower": unitriangular_verdict(&g, Sign::Lower),
        "u_pos_upper": unitriangular_verdict(&g, Sign::Upper),
        "b_pos": flag.as_ref().map(is_in_b_pos),
        "b_neg": flag.as_ref().map(is_in_b_neg),
    }))
}

fn pi(path: &Path) -> CliResult {
    let g = read_matrix(path)?;
    let data = eigen_split(&g)?;
    let pair = pi_prime(&g)?;
    let frame = iota(&pair)?;
    let (b, b1) = (pair.first(), pair.second());
    let checks = if data.exact {
        [
            ("b_pos", is_in_b_pos(b)),
            ("b_neg", is_in_b_neg(b1)),
            ("unique_borel", verify_unique_borel(&g, b)),
            ("unique_borel_inverse", verify_unique_borel_neg(&g, b1)),
        ]
    } else {
        [
            ("b_pos", is_in_b_pos(b)),
            ("b_neg", is_in_b_neg(b1)),
            ("unique_borel", verify_unique_borel_within(&g, b, FLOAT_TOL)),
            (
                "unique_borel_inverse",
                verify_unique_borel_neg_within(&g, b1, FLOAT_TOL),
            ),
        ]
    };
    print_json(&json!({
        "exact": data.exact,
        "eigenvalues": data.values_f64(),
        "eigenvalues_exact": data.exact.then(|| data.values.iter().map(format_rational).collect::<Vec<_>>()),
        "residual": data.residual,
        "u": matrix_json(pair.u()),
        "v": matrix_json(pair.v()),
        "frame": matrix_json(frame.s()),
        "checks": checks.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect::<serde_json::Map<_, _>>(),
    }))?;
    let failed: Vec<&str> = checks.iter().filter(|(_, v)| !v).map(|(k, _)| *k).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("failed checks: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Check { matrix } => check(&matrix),
        Command::Tilde { u } => {
            let u = read_matrix(&u)?;
            out(&tilde_map(&u)?.to_string())
        }
        Command::Intersect { u, v } => {
            let pair = FlagPairClass::from_unipotents(&read_matrix(&u)?, &read_matrix(&v)?)?;
            out(&iota(&pair)?.s().to_string())
        }
        Command::Pi { matrix } => pi(&matrix),
        Command::Suite {
            n,
            seed,
            samples,
            mutation,
            output,
        } => {
            let cfg = ScanConfig::new(n, seed, samples)?;
            let mutation = match mutation {
                MutationArg::None => Mutation::None,
                MutationArg::CorruptTilde => Mutation::CorruptTilde,
            };
            let report = run_property_suite(&cfg, mutation)?;
            let passed = report.passed;
            let failing = report.failing_modules();
            emit(&Report::Suite(report), &output)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Invariant(format!("failing modules: {}", failing.join(", "))))
            }
        }
        Command::Conjecture {
            part,
            n,
            seed,
            samples,
            grid,
            params,
            p_tol,
            per_frame,
            output,
        } => {
            let mut cfg = ScanConfig::new(n, seed, samples)?;
            cfg.grid = parse_range(&grid)?;
            cfg.param_range = parse_range(&params)?;
            cfg.p_tol = parse_rational(&p_tol)?;
            cfg.diagonals_per_frame = per_frame;
            cfg.validate()?;
            let report = match part {
                Part::A => scan_conjecture_a(&cfg)?,
                Part::B => scan_conjecture_b(&cfg)?,
            };
            let found = report.counterexamples.len();
            emit(&Report::Conjecture(report), &output)?;
            if found == 0 {
                Ok(())
            } else {
                Err(Failure::Invariant(format!("{found} counterexamples")))
            }
        }
        Command::Report { format, out, input } => {
            let mut text = String::new();
            match input {
                Some(path) => {
                    text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                None => {
                    std::io::stdin()
                        .read_to_string(&mut text)
                        .map_err(|e| Failure::Input(e.to_string()))?;
                }
            }
            let report = Report::parse_json(&text)?;
            emit(&report, &Output { format, out: Some(out) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
