//! Command-line driver for `levicert`.
//!
//! Exit codes: 0 pass, 1 a check failed (artifacts are still written),
//! 2 invalid input, 3 numeric failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use levicert::certify::{build_weights, certify_epsilon, check_dominance, Certificate, TypeStatus, RESOLVE_SLACK};
use levicert::finite_type::conjecture_bounds;
use levicert::problem::{parse_delta_sweep, parse_problem, Problem};
use levicert::report::{certificate_to_json, check_record_json, scan_csv, scan_rows, type_report_json};
use levicert::{Delta, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_NUMERIC_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "levicert", version, about = "Type, multiplicity and weight certificates for rigid monomial domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print pure powers, 1-type, multiplicity and the epsilon bounds as JSON.
    Type { file: PathBuf },
    /// Print the multiplicity of the generator ideal.
    Mult { file: PathBuf },
    /// Run the full check battery and emit a JSON certificate.
    Certify {
        file: PathBuf,
        /// Delta sweep, `k1..k2` for 1e-k1 … 1e-k2, or a comma-separated list.
        #[arg(long)]
        deltas: Option<String>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check Levi-form dominance of file1 over file2, and the reverse.
    Compare { file1: PathBuf, file2: PathBuf },
    /// Dump scaled diagonal resolve entries along each axis as CSV.
    Scan {
        file: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        csv: PathBuf,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EigenNoConvergence { .. } => EXIT_NUMERIC_FAILURE,
            _ => EXIT_INVALID_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::invalid(format!("stdout: {e}")))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn type_status(p: &Problem) -> Result<TypeStatus, Failure> {
    match conjecture_bounds(&p.term) {
        Ok(r) => Ok(TypeStatus::Finite(r)),
        Err(Error::NotFiniteType(coordinate)) => Ok(TypeStatus::NotFinite { coordinate }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_type(file: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let status = type_status(&load(file)?)?;
    emit(out, &pretty(&type_report_json(&status)))?;
    Ok(match status {
        TypeStatus::Finite(_) => EXIT_PASS,
        TypeStatus::NotFinite { .. } => EXIT_CHECK_FAILED,
    })
}

fn cmd_mult(file: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    match type_status(&load(file)?)? {
        TypeStatus::Finite(r) => {
            emit(out, &format!("{}\n", r.multiplicity))?;
            Ok(EXIT_PASS)
        }
        TypeStatus::NotFinite { coordinate } => {
            emit(out, &format!("infinite: z_{coordinate} has no pure-power generator\n"))?;
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

/// Loads `file`, applies a `--deltas` override, and certifies.
pub fn certify_file(file: &Path, deltas: Option<&str>) -> Result<Certificate, Failure> {
    let mut p = load(file)?;
    if let Some(d) = deltas {
        p.plan.deltas = parse_delta_sweep(d).map_err(|e| Failure::invalid(format!("--deltas: {e}")))?;
    }
    Ok(certify_epsilon(&p.term, &p.plan)?)
}

fn cmd_certify(file: &Path, deltas: Option<&str>, target: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let cert = certify_file(file, deltas)?;
    let text = certificate_to_json(&cert);
    match target {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(if cert.overall { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn cmd_compare(file1: &Path, file2: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let (p1, p2) = (load(file1)?, load(file2)?);
    if p1.term.dim() != p2.term.dim() {
        return Err(Failure::invalid(format!("dimensions differ: {} vs {}", p1.term.dim(), p2.term.dim())));
    }
    let forward = check_dominance(&p1.term, &p2.term, &p1.plan)?;
    let backward = check_dominance(&p2.term, &p1.term, &p1.plan)?;
    let transfer = if forward.passed {
        let cert = certify_epsilon(&p2.term, &p2.plan)?;
        match (cert.overall, cert.type_report()) {
            (true, Some(r)) => json!({
                "epsilon": format!("{}/{}", r.epsilon.numer(), r.epsilon.denom()),
                "note": format!(
                    "the Levi form of {} dominates that of {}, whose weights certify epsilon = {}/{}; the same order holds for {}",
                    file1.display(), file2.display(), r.epsilon.numer(), r.epsilon.denom(), file1.display()
                ),
            }),
            _ => serde_json::Value::Null,
        }
    } else {
        serde_json::Value::Null
    };
    let report = json!({
        "forward": check_record_json(&forward),
        "backward": check_record_json(&backward),
        "dominates": forward.passed,
        "transfer": transfer,
    });
    emit(out, &pretty(&report))?;
    Ok(if forward.passed { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn cmd_scan(file: &Path, delta: f64, csv: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = load(file)?;
    let delta = Delta::new(delta)?;
    let report = match type_status(&p)? {
        TypeStatus::Finite(r) => r,
        TypeStatus::NotFinite { coordinate } => {
            return Err(Failure::invalid(format!("not of finite type: z_{coordinate} has no pure-power generator")))
        }
    };
    let (w, _) = build_weights(&p.term, &report)?;
    let rows = scan_rows(&w, delta);
    write_file(csv, &scan_csv(&rows))?;
    let worst = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    emit(out, &format!("{} rows, smallest margin {worst:.6e}\n", rows.len()))?;
    Ok(if worst >= -RESOLVE_SLACK * w.big_c() { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

/// Runs one command, writing primary output to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Type { file } => cmd_type(file, out),
        Command::Mult { file } => cmd_mult(file, out),
        Command::Certify { file, deltas, out: target } => cmd_certify(file, deltas.as_deref(), target.as_deref(), out),
        Command::Compare { file1, file2 } => cmd_compare(file1, file2, out),
        Command::Scan { file, delta, csv } => cmd_scan(file, *delta, csv, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "levicert: {}", f.message);
            f.code
        }
    }
}
