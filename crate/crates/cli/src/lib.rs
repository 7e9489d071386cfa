//! Command-line front end: argument parsing, model files and report output.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use norden_core::algebra::{parse_rational, ParameterSpace, Poly, Rational};
use norden_core::family::{verify_family, verify_model, FamilyParams};
use norden_core::geometry::{AlmostComplexStructure, LieAlgebra, WeylConvention};
use norden_core::report::{Check, Topic, VerificationReport};
use norden_core::tensor::{matrix, Metric};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] norden_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Every check: tables, closed forms and identities.
    Verify,
    /// Validity of the input and the class of both metrics.
    Classify,
    /// Curvature tables, Ricci, scalar and Weyl tensors.
    Curvature,
    /// Square norms of the structure tensors and scalar curvatures.
    Norms,
    /// The transfer tensors and the invariants S and P.
    Invariants,
    /// Component tables compared with their printed values.
    Tables,
}

impl Command {
    fn keeps(self, c: &Check) -> bool {
        let curvature_table = ["R_", "tR_", "tW_"].iter().any(|p| c.name.starts_with(p));
        match self {
            Command::Verify => true,
            Command::Classify => matches!(c.topic, Topic::Validity | Topic::Classification),
            Command::Curvature => c.topic == Topic::Curvature || (c.topic == Topic::Tables && curvature_table),
            Command::Norms => matches!(c.topic, Topic::Norms | Topic::ClosedForms),
            Command::Invariants => matches!(c.topic, Topic::Invariants | Topic::Connection),
            Command::Tables => c.topic == Topic::Tables,
        }
    }

    fn topics(self) -> &'static [Topic] {
        match self {
            Command::Verify => &Topic::ALL,
            Command::Classify => &[Topic::Validity, Topic::Classification],
            Command::Curvature => &[Topic::Curvature],
            Command::Norms => &[Topic::Norms, Topic::ClosedForms],
            Command::Invariants => &[Topic::Invariants, Topic::Connection],
            Command::Tables => &[Topic::Tables],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Convention {
    #[default]
    Standard,
    Printed,
}

impl From<Convention> for WeylConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Standard => WeylConvention::Standard,
            Convention::Printed => WeylConvention::Printed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "norden",
    version,
    about = "Norden metrics on Lie groups: exact verification pipelines"
)]
pub struct CliInvocation {
    #[command(subcommand)]
    pub command: Command,
    /// Numeric parameters of the built-in family, e.g. `1,0,1,0` or `1/2,-3,0,2`.
    #[arg(long, global = true, value_name = "L1,L2,L3,L4", allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Keep the family parameters symbolic (the default).
    #[arg(long, global = true)]
    pub symbolic: bool,
    /// Read a Lie algebra, metric and complex structure from a JSON model file.
    #[arg(long, global = true, value_name = "FILE")]
    pub model: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// Input source selected by `--lambda`, `--symbolic` or `--model`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Mode {
    Family(FamilyParams),
    Model(PathBuf),
}

impl CliInvocation {
    pub fn mode(&self) -> Result<Mode, CliError> {
        let active = [self.lambda.is_some(), self.symbolic, self.model.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if active > 1 {
            return Err(CliError::Usage(
                "--lambda, --symbolic and --model are mutually exclusive".into(),
            ));
        }
        Ok(match (&self.lambda, &self.model) {
            (Some(l), _) => Mode::Family(parse_lambda(l)?),
            (_, Some(path)) => Mode::Model(path.clone()),
            _ => Mode::Family(FamilyParams::Symbolic),
        })
    }
}

/// Four comma-separated exact rationals.
pub fn parse_lambda(s: &str) -> Result<FamilyParams, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--lambda takes exactly 4 values, got {}",
            parts.len()
        )));
    }
    let mut values: Vec<Rational> = Vec::with_capacity(4);
    for p in parts {
        values.push(parse_rational(p).map_err(|e| CliError::Usage(format!("--lambda value {p:?}: {e}")))?);
    }
    Ok(FamilyParams::Numeric(values.try_into().expect("four values")))
}

/// One bracket relation `[X_i, X_j] = Σ_k coefficients[k] X_k`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coefficients: BTreeMap<String, String>,
}

/// JSON model file. `metric[a][b] = g(X_a, X_b)`; `j[k][i]` is the `X_k`
/// component of `J X_i`, so `j` acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub dim: usize,
    pub params: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub metric: Vec<Vec<String>>,
    pub j: Vec<Vec<String>>,
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("model file: {e}")))
    }
}

fn rational_matrix(name: &str, rows: &[Vec<String>], dim: usize) -> Result<matrix::Matrix, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Parse(format!("{name} must be a {dim}x{dim} matrix")));
    }
    rows.iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, s)| {
                    parse_rational(s.trim())
                        .map_err(|e| CliError::Parse(format!("{name}[{}][{}] = {s:?}: {e}", a + 1, b + 1)))
                })
                .collect()
        })
        .collect()
}

/// Build and validate the data of a model file.
pub fn parse_model(doc: &ModelDocument) -> Result<(LieAlgebra, Metric, AlmostComplexStructure), CliError> {
    let dim = doc.dim;
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(CliError::Invariant(format!(
            "dimension must be even and positive, got {dim}"
        )));
    }
    let space = ParameterSpace::new(&doc.params).map_err(|e| CliError::Parse(format!("params: {e}")))?;
    let mut brackets = Vec::with_capacity(doc.brackets.len());
    for b in &doc.brackets {
        if !(1 <= b.i && b.i < b.j && b.j <= dim) {
            return Err(CliError::Parse(format!(
                "bracket [X{},X{}]: need 1 <= i < j <= {dim}",
                b.i, b.j
            )));
        }
        let mut v = vec![Poly::zero(&space); dim];
        for (k, text) in &b.coefficients {
            let k: usize =
                k.parse().ok().filter(|k| (1..=dim).contains(k)).ok_or_else(|| {
                    CliError::Parse(format!("bracket [X{},X{}]: bad component index {k:?}", b.i, b.j))
                })?;
            v[k - 1] = Poly::parse(&space, text)
                .map_err(|e| CliError::Parse(format!("bracket [X{},X{}] component X{k}: {e}", b.i, b.j)))?;
        }
        brackets.push((b.i - 1, b.j - 1, v));
    }
    let algebra = LieAlgebra::from_brackets(&space, dim, brackets).map_err(|e| CliError::Invariant(e.to_string()))?;
    let jacobi = algebra.jacobi_residual();
    if let Some((idx, p)) = jacobi.nonzero().next() {
        return Err(CliError::Invariant(format!(
            "Jacobi identity fails for (X{}, X{}, X{}): X{} component {p}",
            idx[0] + 1,
            idx[1] + 1,
            idx[2] + 1,
            idx[3] + 1
        )));
    }
    let g_rows = rational_matrix("metric", &doc.metric, dim)?;
    for a in 0..dim {
        for b in 0..a {
            if g_rows[a][b] != g_rows[b][a] {
                return Err(CliError::Invariant(format!(
                    "metric is not symmetric at ({}, {})",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    let metric = Metric::from_rows(&space, &g_rows).map_err(|e| CliError::Invariant(format!("metric: {e}")))?;
    let j_rows = rational_matrix("j", &doc.j, dim)?;
    let j = AlmostComplexStructure::from_matrix(&space, &j_rows)
        .map_err(|e| CliError::Invariant(format!("j: {e} (J^2 = -id required)")))?;
    if !metric.is_norden(j.tensor())? {
        return Err(CliError::Invariant(
            "metric is not a Norden metric for j: g(JX,JY) = -g(X,Y) fails".into(),
        ));
    }
    Ok((algebra, metric, j))
}

/// Rendered report plus whether every shown check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub passed: bool,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.document)
    }
}

/// Build the (unfiltered) report for an invocation.
pub fn build_report(inv: &CliInvocation) -> Result<VerificationReport, CliError> {
    let convention = WeylConvention::from(inv.convention);
    match inv.mode()? {
        Mode::Family(params) => Ok(verify_family(&params, convention)?),
        Mode::Model(path) => {
            if inv.command == Command::Tables {
                return Err(CliError::Usage(
                    "tables compares the built-in family; it cannot take --model".into(),
                ));
            }
            let text = std::fs::read_to_string(&path)?;
            let (alg, g, j) = parse_model(&ModelDocument::from_json(&text)?)?;
            let (mut report, _) = verify_model(&alg, &g, &j, convention)?;
            report.context = format!("model {}", path.display());
            Ok(report)
        }
    }
}

/// Compute and render without touching stdout.
pub fn execute(inv: &CliInvocation) -> Result<Outcome, CliError> {
    let full = build_report(inv)?;
    let mut report = full.restrict(inv.command.topics());
    report.checks = full.checks.iter().filter(|c| inv.command.keeps(c)).cloned().collect();
    let document = match inv.format {
        Format::Text => report.render_text(),
        Format::Json => report.render_json(),
    };
    Ok(Outcome {
        document,
        passed: report.passed(),
    })
}

/// Run an invocation, writing the report, and return the process exit code.
pub fn run(inv: &CliInvocation) -> i32 {
    let outcome = match execute(inv) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("norden: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &inv.output {
        Some(path) => std::fs::write(path, &outcome.document),
        None => std::io::stdout().write_all(outcome.document.as_bytes()),
    };
    // a closed pipe (`norden verify | head`) is the reader's choice, not a failure
    if let Err(e) = written.or_else(|e| {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Ok(())
        } else {
            Err(e)
        }
    }) {
        eprintln!("norden: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}
