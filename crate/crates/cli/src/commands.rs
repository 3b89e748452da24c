//! Command definitions and dispatch for the `qharm` binary.

use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use qharmonic::harmonic::{dim_full, dim_harmonic, project, t_poly, xi_basis, zonal};
use qharmonic::report::Report;
use qharmonic::sphere::{gram, inner};
use qharmonic::{Error, Poly, QScalar, Space};
use serde::Serialize;

use crate::expr::{parse_poly, parse_scalar, ParseError};
use crate::suites::{run_suite, suite_names, SuiteParams, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "qharm", version, about = "Harmonic analysis on the quantum Euclidean space")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of the degree-m polynomials and harmonics.
    Dims { n: usize, m: u32 },
    /// Harmonic projection of a homogeneous polynomial.
    Project { n: usize, expr: String },
    /// The zonal polynomial for exponents m1, m1' of x_1, x_1'.
    Zonal { n: usize, m1: u32, m1p: u32 },
    /// The t-polynomial for degree m, exponents m1, m1' and inner degree l.
    Tpoly { n: usize, m: u32, m1: u32, m1p: u32, l: u32 },
    /// The orthogonal basis of the degree-m harmonics.
    Basis { n: usize, m: u32 },
    /// Gram matrix of that basis under the sphere scalar product.
    Gram { n: usize, m: u32 },
    /// Scalar product of two polynomials.
    Inner { n: usize, a: String, b: String },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Dimension range, e.g. `3..5` (inclusive) or `4`.
        #[arg(long = "N", value_parser = parse_range)]
        dims: Option<RangeInclusive<usize>>,
        /// Degree bound.
        #[arg(long)]
        deg: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Evaluate a scalar expression at t = t0, where q = t^2.
    Eval {
        expr: String,
        #[arg(long)]
        t0: String,
    },
}

/// `a..b`, `a..=b` (both inclusive) or a single `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a range like 3..5, got {s:?}");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    Internal = 3,
}

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), status: Status::Success }
    }

    fn fail(status: Status, msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), status }
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Algebra(inner) => inner.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

fn poly_out(p: &Poly, json: bool) -> String {
    if json {
        to_json(&p.to_json())
    } else {
        format!("{p}\n")
    }
}

#[derive(Serialize)]
struct Matrix {
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Dims {
    #[serde(rename = "N")]
    dim: usize,
    m: u32,
    dim_a: String,
    dim_h: String,
}

#[derive(Serialize)]
struct Value {
    value: String,
}

#[derive(Serialize)]
struct BasisEntry {
    label: qharmonic::harmonic::HarmonicLabel,
    poly: qharmonic::algebra::PolyJson,
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(&cli.command, cli.json) {
        Ok(out) => out,
        Err(Failure::Usage(m)) => Outcome::fail(Status::Usage, m),
        Err(Failure::Internal(m)) => Outcome::fail(Status::Internal, m),
    }
}

fn dispatch(cmd: &Command, json: bool) -> Result<Outcome, Failure> {
    let out = match cmd {
        Command::Dims { n, m } => {
            let (a, h) = (dim_full(*n, *m)?, dim_harmonic(*n, *m)?);
            if json {
                to_json(&Dims { dim: *n, m: *m, dim_a: a.to_string(), dim_h: h.to_string() })
            } else {
                format!("dim A_m = {a}, dim H_m = {h}\n")
            }
        }
        Command::Project { n, expr } => {
            let p = parse_poly(expr, &Space::new(*n)?)?;
            poly_out(&project(&p)?, json)
        }
        Command::Zonal { n, m1, m1p } => poly_out(&zonal(*n, *m1, *m1p)?, json),
        Command::Tpoly { n, m, m1, m1p, l } => poly_out(&t_poly(*n, *m, *m1, *m1p, *l)?, json),
        Command::Basis { n, m } => {
            let basis = xi_basis(*n, *m)?;
            if json {
                let entries: Vec<BasisEntry> =
                    basis.into_iter().map(|(label, p)| BasisEntry { label, poly: p.to_json() }).collect();
                to_json(&entries)
            } else {
                basis.iter().map(|(label, p)| format!("{label}: {p}\n")).collect()
            }
        }
        Command::Gram { n, m } => {
            let basis: Vec<Poly> = xi_basis(*n, *m)?.into_iter().map(|(_, p)| p).collect();
            let rows: Vec<Vec<String>> =
                gram(&basis)?.iter().map(|row| row.iter().map(QScalar::to_string).collect()).collect();
            if json {
                to_json(&Matrix { rows })
            } else {
                rows.iter().map(|r| format!("[{}]\n", r.join(", "))).collect()
            }
        }
        Command::Inner { n, a, b } => {
            let space = Space::new(*n)?;
            let v = inner(&parse_poly(a, &space)?, &parse_poly(b, &space)?)?;
            value_out(v.to_string(), json)
        }
        Command::Eval { expr, t0 } => {
            let t0 = BigRational::from_str(t0.trim()).map_err(|_| Failure::Usage(format!("bad rational t0 {t0:?}")))?;
            let v = parse_scalar(expr)?.eval_at(&t0)?;
            value_out(v.to_string(), json)
        }
        Command::Verify { suite, dims, deg, seed } => {
            let params = SuiteParams { dims: dims.clone(), deg: *deg, seed: *seed };
            return verify(suite, &params, json);
        }
    };
    Ok(Outcome::ok(out))
}

fn value_out(v: String, json: bool) -> String {
    if json {
        to_json(&Value { value: v })
    } else {
        format!("{v}\n")
    }
}

fn verify(suite: &str, params: &SuiteParams, json: bool) -> Result<Outcome, Failure> {
    let Some(reports) = run_suite(suite, params) else {
        return Err(Failure::Usage(format!("unknown suite {suite:?}; known: all, {}", suite_names().join(", "))));
    };
    let ok = reports.iter().all(Report::ok);
    let stdout = if json {
        if suite == "all" {
            to_json(&reports)
        } else {
            to_json(&reports[0])
        }
    } else {
        let mut s: String = reports.iter().map(|r| r.to_string()).collect();
        let cells: usize = reports.iter().map(|r| r.cells.len()).sum();
        let passed: usize = reports.iter().map(Report::passed).sum();
        s.push_str(&format!("total: {passed}/{cells} passed\n"));
        s
    };
    let status = if ok { Status::Success } else { Status::VerificationFailed };
    Ok(Outcome { stdout, stderr: String::new(), status })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        let mut full = vec!["qharm"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).expect("valid arguments"))
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..5"), Ok(3..=5));
        assert_eq!(parse_range("3..=5"), Ok(3..=5));
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn dims_text() {
        let out = run(&["dims", "3", "2"]);
        assert_eq!(out.stdout, "dim A_m = 6, dim H_m = 5\n");
        assert_eq!(out.status, Status::Success);
    }

    #[test]
    fn eval_removable_singularity() {
        assert_eq!(run(&["eval", "(1-q^2)/(1-q)", "--t0", "1"]).stdout, "2\n");
        assert_eq!(run(&["eval", "1/(1-q)", "--t0", "1"]).status, Status::Usage);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["project", "3", "x4"]).status, Status::Usage);
        assert_eq!(run(&["project", "3", "x1 +"]).status, Status::Usage);
        assert_eq!(run(&["project", "3", "x1 + x1 x2"]).status, Status::Usage);
        assert_eq!(run(&["verify", "nonsense"]).status, Status::Usage);
    }

    #[test]
    fn gram_json_schema() {
        let out = run(&["--json", "gram", "3", "1"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 3));
    }
}
