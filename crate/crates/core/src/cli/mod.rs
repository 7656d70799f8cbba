//! Command-line front end: `compute`, `verify`, `example`, `fuzz`.

pub mod format;
pub mod fuzz;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::chains::ChainCase;
use crate::numeric::{GaussScalar, Rational, Roots, Scalar};
use crate::oracle::{generalized_rank, verify_chain, ChainVerdict};
use crate::worked;

use self::format::{read_matrix, read_vectors, ProblemFile};
use self::report::{exact_report, float_report, ChainFilter, Mode, ReportOptions, UpdateReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("golden value mismatch: {0}")]
    Golden(String),
}

impl CliError {
    fn json(e: serde_json::Error) -> Self {
        CliError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Parser)]
#[command(name = "geu", version, about = "Eigenvalues and generalized eigenvector chains of rank-one updates A + x_m b*")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CommonFlags {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Relative residual tolerance, float mode only.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ChainFilter::All)]
    pub chains: ChainFilter,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the update factor, new eigenvalues and chains for a problem file.
    Compute {
        input: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Check that vectors form a Jordan chain of a matrix for an eigenvalue.
    Verify {
        matrix: PathBuf,
        /// `p/q`, `a+bi` style scalar.
        #[arg(allow_hyphen_values = true)]
        eigenvalue: String,
        vectors: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the built-in reference example and check its known values.
    Example {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check random instances against the oracle.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Also recover Jordan structure for every instance (exact mode).
        #[arg(long)]
        structure: bool,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

fn emit<S: Serialize>(value: &S, output: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    match output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

/// Outcome of a command: whether every verdict passed.
pub type Outcome = Result<bool, CliError>;

pub fn cmd_compute(input: &Path, flags: &CommonFlags) -> Outcome {
    let file = ProblemFile::read(input)?;
    let opts = ReportOptions { chains: flags.chains, structure: true, tolerance: flags.tolerance };
    match flags.mode {
        Mode::Exact => {
            let report = exact_report(&file.to_problem()?, &opts);
            emit(&report, flags.output.as_deref())?;
            Ok(report.passed())
        }
        Mode::Float => {
            let report = float_report(&file.to_float_problem()?, &opts);
            emit(&report, flags.output.as_deref())?;
            Ok(report.passed())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutput {
    pub eigenvalue: GaussScalar,
    pub verdict: ChainVerdict,
    /// Generalized rank of each vector (`null` when not a generalized eigenvector).
    pub ranks: Vec<Option<usize>>,
}

pub fn cmd_verify(matrix: &Path, eigenvalue: &str, vectors: &Path, output: Option<&Path>) -> Outcome {
    let m = read_matrix(matrix)?;
    let lambda: GaussScalar = eigenvalue
        .parse()
        .map_err(|e| CliError::Field { field: "eigenvalue".into(), message: format!("{e}") })?;
    let vs = read_vectors(vectors, m.rows())?;
    let verdict = verify_chain(&m, &lambda, &vs);
    let ranks = vs.iter().map(|v| generalized_rank(&m, &lambda, v).ok().flatten()).collect();
    let passed = verdict.passed;
    emit(&VerifyOutput { eigenvalue: lambda, verdict, ranks }, output)?;
    Ok(passed)
}

fn q(p: i64, d: i64) -> GaussScalar {
    GaussScalar::real(Rational::new(p, d).expect("nonzero denominator"))
}

/// Checks the reference report against the known closed-form values.
pub fn check_golden(report: &UpdateReport<GaussScalar>) -> Result<(), CliError> {
    let fail = |what: &str| Err(CliError::Golden(what.to_string()));
    let ints = |v: &[i64]| v.iter().map(|&x| GaussScalar::int(x)).collect::<Vec<_>>();
    if report.factor.shifted != ints(&[-3, 2, 1]) || report.factor.monomial != ints(&[-3, -2, 1]) {
        return fail("update factor");
    }
    let Some(Roots::Exact(roots)) = &report.new_eigenvalues else {
        return fail("new eigenvalues");
    };
    let values: Vec<_> = roots.iter().map(|r| r.value.clone()).collect();
    if values != ints(&[-1, 3]) {
        return fail("new eigenvalues");
    }
    let same = report.chain(ChainCase::SameBlock, worked::SOURCE_BLOCK).ok_or(CliError::Golden("same block".into()))?;
    if same.beta != Some(GaussScalar::int(3)) {
        return fail("beta");
    }
    let same_rows = [(3, vec![q(40, 9), q(8, 3)]), (4, vec![q(176, 27), q(40, 9)])];
    for (t, row) in same_rows {
        if same.vectors.get(t - 1).map(|v| &v.coefficients) != Some(&row) {
            return fail("same-block coefficients");
        }
    }
    let other = report.chain(ChainCase::OtherBlock, worked::OTHER_BLOCK).ok_or(CliError::Golden("other block".into()))?;
    let other_rows = [(2, vec![q(-5, 9), q(-1, 3)]), (3, vec![q(-22, 27), q(-5, 9)])];
    for (t, row) in other_rows {
        if other.vectors.get(t - 1).map(|v| &v.coefficients) != Some(&row) {
            return fail("other-block coefficients");
        }
    }
    let distinct = report
        .chain(ChainCase::DistinctEigenvalue, worked::MU_BLOCK)
        .ok_or(CliError::Golden("distinct eigenvalue".into()))?;
    // β_2^{(1)}, β_1^{(1)}, β_2^{(2)}, β_1^{(2)}
    let seq: Vec<GaussScalar> = distinct.vectors.iter().flat_map(|v| v.coefficients.iter().rev().cloned()).collect();
    if seq != vec![q(1, 4), q(-1, 4), GaussScalar::zero(), q(-1, 4)] {
        return fail("distinct-eigenvalue coefficients");
    }
    match &report.oracle.jordan_structure {
        Some(s) if s.blocks() == worked::expected_structure() => {}
        _ => return fail("jordan structure"),
    }
    if !report.passed() {
        return fail("oracle verdicts");
    }
    Ok(())
}

pub fn cmd_example(output: Option<&Path>) -> Outcome {
    let report = exact_report(&worked::problem(), &ReportOptions::default());
    check_golden(&report)?;
    emit(&report, output)?;
    Ok(report.passed())
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { input, flags } => cmd_compute(&input, &flags),
        Command::Verify { matrix, eigenvalue, vectors, output } => {
            cmd_verify(&matrix, &eigenvalue, &vectors, output.as_deref())
        }
        Command::Example { output } => cmd_example(output.as_deref()),
        Command::Fuzz { seed, count, n_max, structure, flags } => {
            if flags.mode == Mode::Exact && n_max > 8 {
                return Err(CliError::Usage("--n-max must be at most 8 in exact mode".into()));
            }
            if n_max == 0 {
                return Err(CliError::Usage("--n-max must be positive".into()));
            }
            let opts = ReportOptions { chains: flags.chains, structure, tolerance: flags.tolerance };
            let summary = fuzz::fuzz(seed, count, n_max, flags.mode, &opts);
            emit(&summary, flags.output.as_deref())?;
            Ok(summary.failed == 0)
        }
    }
}

