use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qudit_match::decompose::{self, Named};
use qudit_match::matching::{ascii_bits, run_match_with, RunOptions};
use qudit_match::resources::{conformance, fredkin_sweep, sweep_csv, NoiseMode};
use qudit_match::{verify_on_binary_subspace, Circuit, Error, MatchProblem};

const EXIT_MATCH: u8 = 0;
const EXIT_NO_MATCH: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "qudit-match",
    version,
    about = "Qudit-assisted Grover string matching"
)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on nonzero amplitudes during simulation.
    #[arg(long, global = true, env = "QUDIT_MATCH_SUPPORT_BUDGET")]
    support_budget: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Search a binary text for every occurrence of a binary pattern.
    Match {
        text: String,
        pattern: String,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        expected_matches: Option<usize>,
        /// Treat both strings as ASCII, eight bits per character. Offsets are
        /// bit offsets and need not fall on character boundaries.
        #[arg(long)]
        ascii: bool,
    },
    /// Print a decomposition in gate notation followed by its cost.
    Decompose {
        name: String,
        /// Wire count for `mct`.
        #[arg(default_value_t = 4)]
        n: usize,
    },
    /// Check a decomposition exhaustively on binary inputs.
    Verify {
        name: String,
        #[arg(default_value_t = 4)]
        n: usize,
        /// Verify this dumped circuit against the named reference instead.
        #[arg(long)]
        circuit: Option<PathBuf>,
    },
    /// Compare measured gate counts with the closed-form predictions.
    Cost { n: usize, m: usize },
    /// Success probability of the two Fredkin constructions under gate noise.
    Noise {
        #[arg(long, default_value_t = 0.0)]
        eps_min: f64,
        #[arg(long, default_value_t = 0.05)]
        eps_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Mode::Uniform)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Uniform,
    DimensionPenalty,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(msg) | Error::Parse { msg, .. } => Failure::Usage(msg),
            other => Failure::Lib(other),
        }
    }
}

struct Output {
    body: String,
    code: u8,
}

fn named(name: &str) -> Result<Named, Failure> {
    Named::parse(name).ok_or_else(|| {
        let all: Vec<&str> = Named::ALL.iter().map(|n| n.name()).collect();
        Failure::Usage(format!(
            "unknown decomposition `{name}`; expected one of {}",
            all.join(", ")
        ))
    })
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.cmd {
        Cmd::Match {
            text,
            pattern,
            iterations,
            expected_matches,
            ascii,
        } => {
            let mut problem = if *ascii {
                MatchProblem::new(ascii_bits(text)?, ascii_bits(pattern)?)?
            } else {
                MatchProblem::from_bits(text, pattern)?
            };
            problem.iterations = *iterations;
            problem.expected_matches = *expected_matches;
            let mut opts = RunOptions::default();
            if let Some(b) = cli.support_budget {
                opts.support_budget = b;
            }
            let res = run_match_with(&problem, opts)?;
            let code = if res.verified {
                EXIT_MATCH
            } else {
                EXIT_NO_MATCH
            };
            Ok(Output {
                body: pretty(&res),
                code,
            })
        }
        Cmd::Decompose { name, n } => {
            let spec = decompose::build(named(name)?, *n)?;
            let cost = spec.circuit.cost();
            let mut body = spec.circuit.dump();
            body.push_str(&pretty(&json!({ "cost": cost, "expected": spec.expected })));
            Ok(Output {
                body,
                code: EXIT_MATCH,
            })
        }
        Cmd::Verify { name, n, circuit } => {
            let spec = decompose::build(named(name)?, *n)?;
            let c = match circuit {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| {
                        Failure::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    Circuit::parse(&text)?
                }
                None => spec.circuit,
            };
            let report = verify_on_binary_subspace(&c, &spec.reference, &[], false)?;
            let passed = report.passed(false);
            let body = pretty(
                &json!({ "name": name, "gates": c.len(), "passed": passed, "report": report }),
            );
            Ok(Output {
                body,
                code: if passed { EXIT_MATCH } else { EXIT_NO_MATCH },
            })
        }
        Cmd::Cost { n, m } => {
            let report = conformance(*n, *m)?;
            Ok(Output {
                body: pretty(&report),
                code: EXIT_MATCH,
            })
        }
        Cmd::Noise {
            eps_min,
            eps_max,
            steps,
            mode,
        } => {
            let mode = match mode {
                Mode::Uniform => NoiseMode::Uniform,
                Mode::DimensionPenalty => NoiseMode::DimensionPenalty,
            };
            let rows = fredkin_sweep(*eps_min, *eps_max, *steps, mode)?;
            if rows.iter().any(|r| r.p_proposed < r.p_baseline) {
                eprintln!("note: the qutrit Fredkin is less reliable than the Clifford+T one for part of this range");
            }
            Ok(Output {
                body: sweep_csv(&rows),
                code: EXIT_MATCH,
            })
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_MATCH
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli.out, &o.body) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_ERROR);
            }
            ExitCode::from(o.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_ERROR
            })
        }
    }
}
