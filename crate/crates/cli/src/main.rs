//! `fmclass`: command-line front end for the exact classifiers.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a verification
//! (`selftest`, `ledger-verify`) fails.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fmclass_core::binary_cubic::P4Point;
use fmclass_core::conic_pairs::Conic;
use fmclass_core::exact::rational::{self, Rational};
use fmclass_core::flag_sextic::TracelessMatrix3;
use fmclass_core::g2::G2Element;
use fmclass_core::report::{self, Envelope};
use fmclass_core::selftest;

#[derive(Debug, Parser)]
#[command(
    name = "fmclass",
    version,
    about = "Exact classifiers for g2 orbits, sextic sections, conic pairs, binary cubics and intersection ledgers"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Read the positional values (or the expression) from a file instead.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify g in g2 (14 coordinates: h1 h2, then e for roots
    /// (1,0) (0,1) (1,1) (2,1) (3,1) (3,2) and their negatives).
    #[command(name = "classify-g2")]
    ClassifyG2 {
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Classify the hyperplane section of the flag variety cut by a traceless
    /// 3x3 matrix (9 entries, row-major).
    #[command(name = "classify-sextic")]
    ClassifySextic {
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Classify a conic pair: 12 values, the upper triangles
    /// (g11 g12 g13 g22 g23 g33) of the base conic and then of the second.
    #[command(name = "classify-conics")]
    ClassifyConics {
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Classify a point (a0 a1 a2 a3 c) of P(M3 + C), where the cubic is
    /// a0 x^3 + a1 x^2 y + a2 x y^2 + a3 y^3.
    #[command(name = "classify-cubic")]
    ClassifyCubic {
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Check every built-in intersection identity.
    #[command(name = "ledger-verify")]
    LedgerVerify,
    /// Evaluate a degree-4 expression over {H, A} or {L, B},
    /// e.g. "(2H-A)^3*(H-A)".
    #[command(name = "ledger-eval")]
    LedgerEval {
        #[arg(allow_hyphen_values = true)]
        expression: Vec<String>,
    },
    /// Run every property suite (seeded by FM_SEED).
    Selftest,
}

/// An error with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<fmclass_core::Error> for Failure {
    fn from(e: fmclass_core::Error) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

/// Positional tokens, or the whitespace/comma separated tokens of `--input`.
fn tokens(cli_input: &Option<PathBuf>, values: &[String]) -> Result<Vec<String>, Failure> {
    match cli_input {
        Some(path) => {
            if !values.is_empty() {
                return Err(invalid("give values either inline or with --input, not both"));
            }
            let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            Ok(text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect())
        }
        None => Ok(values.to_vec()),
    }
}

fn rationals(cli_input: &Option<PathBuf>, values: &[String]) -> Result<Vec<Rational>, Failure> {
    tokens(cli_input, values)?
        .iter()
        .map(|s| rational::parse(s).map_err(Failure::from))
        .collect()
}

fn arity(expected: usize, got: &[Rational]) -> Result<(), Failure> {
    if got.len() != expected {
        return Err(fmclass_core::Error::Arity {
            expected,
            got: got.len(),
        }
        .into());
    }
    Ok(())
}

fn emit<T: Serialize>(format: Format, env: &Envelope<T>, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => env.to_json(),
        Format::Text => text(&env.result).trim_end().to_string(),
    }
}

/// Positional lists accept leading hyphens (for negative rationals), so clap
/// hands over any `--format`/`--input` that follows them; pull those out here.
fn split_flags(cli: &mut Cli) -> Result<(), Failure> {
    let values = match &mut cli.command {
        Command::ClassifyG2 { values }
        | Command::ClassifySextic { values }
        | Command::ClassifyConics { values }
        | Command::ClassifyCubic { values } => values,
        Command::LedgerEval { expression } => expression,
        Command::LedgerVerify | Command::Selftest => return Ok(()),
    };
    let mut kept = Vec::new();
    let mut it = std::mem::take(values).into_iter();
    while let Some(tok) = it.next() {
        let (flag, inline) = match tok.split_once('=') {
            Some((f, v)) if f == "--format" || f == "--input" => (f.to_string(), Some(v.to_string())),
            _ if tok == "--format" || tok == "--input" => (tok.clone(), None),
            _ => {
                kept.push(tok);
                continue;
            }
        };
        let value = inline
            .or_else(|| it.next())
            .ok_or_else(|| invalid(format!("{flag} needs a value")))?;
        if flag == "--format" {
            cli.format = Format::from_str(&value, false)
                .map_err(|_| invalid(format!("unknown format {value:?}; use text or json")))?;
        } else {
            cli.input = Some(PathBuf::from(value));
        }
    }
    *values = kept;
    Ok(())
}

fn run(mut cli: Cli) -> Result<(String, u8), Failure> {
    split_flags(&mut cli)?;
    let cli = &cli;
    let f = cli.format;
    let out = match &cli.command {
        Command::ClassifyG2 { values } => {
            let v = rationals(&cli.input, values)?;
            let g = G2Element::new(v)?;
            (emit(f, &report::g2_report(&g), report::g2_text), 0)
        }
        Command::ClassifySextic { values } => {
            let v = rationals(&cli.input, values)?;
            let c = TracelessMatrix3::from_row_major(&v)?;
            (emit(f, &report::sextic_report(&c), report::sextic_text), 0)
        }
        Command::ClassifyConics { values } => {
            let v = rationals(&cli.input, values)?;
            arity(12, &v)?;
            let u = Conic::from_upper(&v[..6])?;
            let j = Conic::from_upper(&v[6..])?;
            (emit(f, &report::conics_report(&u, &j)?, report::conics_text), 0)
        }
        Command::ClassifyCubic { values } => {
            let v = rationals(&cli.input, values)?;
            let p = P4Point::from_slice(&v)?;
            (emit(f, &report::cubic_report(&p), report::cubic_text), 0)
        }
        Command::LedgerVerify => {
            let env = report::ledger_verify_report();
            let code = if env.result.pass { 0 } else { 2 };
            (emit(f, &env, report::ledger_verify_text), code)
        }
        Command::LedgerEval { expression } => {
            let expr = tokens(&cli.input, expression)?.join(" ");
            if expr.is_empty() {
                return Err(invalid("missing expression, e.g. \"(2H-A)^4\""));
            }
            (
                emit(f, &report::ledger_eval_report(&expr)?, report::ledger_eval_text),
                0,
            )
        }
        Command::Selftest => {
            let seed = selftest::seed_from_env().map_err(invalid)?;
            let env = report::selftest_report(selftest::run_selftest(seed));
            let code = if env.result.pass { 0 } else { 2 };
            (emit(f, &env, report::selftest_text), code)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
