//! The `compute` report: update factor, new eigenvalues, constructed chains
//! and the oracle's verdicts on them.

use std::fmt::Debug;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::chains::{all_chains, ChainBuild, ChainCase, ChainError};
use crate::numeric::{exact_roots, norm2, poly_roots, Complex64, GaussScalar, NumericRoot, RootMode, Roots, Scalar};
use crate::oracle::{
    apply_update, chain_residuals, chain_step_holds, char_poly_direct, count_changed_eigenvalues,
    generalized_rank, jordan_structure, JordanStructure,
};
use crate::perturb::{changed_eigenvalue_bound, update_char_factor, updated_char_poly, PerturbationProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum ChainFilter {
    #[default]
    All,
    Same,
    Other,
    Distinct,
}

impl ChainFilter {
    fn admits(self, case: ChainCase) -> bool {
        matches!(
            (self, case),
            (ChainFilter::All, _)
                | (ChainFilter::Same, ChainCase::SameBlock)
                | (ChainFilter::Other, ChainCase::OtherBlock)
                | (ChainFilter::Distinct, ChainCase::DistinctEigenvalue)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Passed,
    Failed,
}

/// Complex float written as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloatScalar {
    pub re: f64,
    pub im: f64,
}

/// How a scalar appears in a report.
pub trait ReportScalar: Scalar {
    type Repr: Serialize + DeserializeOwned + Clone + PartialEq + Debug;
    fn repr(&self) -> Self::Repr;
}

impl ReportScalar for GaussScalar {
    type Repr = GaussScalar;
    fn repr(&self) -> GaussScalar {
        self.clone()
    }
}

impl ReportScalar for Complex64 {
    type Repr = FloatScalar;
    fn repr(&self) -> FloatScalar {
        FloatScalar { re: self.re, im: self.im }
    }
}

fn reprs<T: ReportScalar>(v: &[T]) -> Vec<T::Repr> {
    v.iter().map(ReportScalar::repr).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct FactorReport<S> {
    /// `[b* x_1, …, b* x_m]`
    pub moments: Vec<S>,
    /// Coefficients in powers of `(t − λ)`.
    pub shifted: Vec<S>,
    /// Coefficients in powers of `t`.
    pub monomial: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct VectorReport<S> {
    pub rank: usize,
    pub coefficients: Vec<S>,
    pub vector: Vec<S>,
    pub chain_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generalized_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct ChainReport<S> {
    pub case: ChainCase,
    pub block: usize,
    pub eigenvalue: S,
    pub requested: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<S>,
    pub table: Vec<Vec<S>>,
    pub vectors: Vec<VectorReport<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<ChainError>,
}

impl<S> ChainReport<S> {
    pub fn passed(&self) -> bool {
        self.vectors.iter().all(|v| v.chain_ok && v.generalized_rank.is_none_or(|k| k == v.rank))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct OracleReport<S> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct_char_poly: Option<Vec<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly_identity: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub changed_eigenvalues: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_respected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jordan_structure: Option<JordanStructure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub vectors_checked: usize,
    pub vectors_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct UpdateReport<S> {
    pub mode: Mode,
    pub dimension: usize,
    pub lambda: S,
    pub m: usize,
    pub r: usize,
    pub factor: FactorReport<S>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_eigenvalues: Option<Roots>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_eigenvalues_error: Option<String>,
    pub bound: usize,
    pub updated_char_poly: Vec<S>,
    pub chains: Vec<ChainReport<S>>,
    pub oracle: OracleReport<S>,
    pub status: Status,
}

impl<S> UpdateReport<S> {
    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }

    pub fn degenerate_chains(&self) -> usize {
        self.chains.iter().filter(|c| c.degenerate.is_some()).count()
    }

    pub fn chain(&self, case: ChainCase, block: usize) -> Option<&ChainReport<S>> {
        self.chains.iter().find(|c| c.case == case && c.block == block)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub chains: ChainFilter,
    /// Recover the Jordan structure of the updated matrix (exact mode).
    pub structure: bool,
    /// Relative residual tolerance (float mode).
    pub tolerance: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { chains: ChainFilter::All, structure: true, tolerance: 1e-9 }
    }
}

fn chain_skeleton<T: ReportScalar>(build: &ChainBuild<T>) -> ChainReport<T::Repr> {
    ChainReport {
        case: build.case,
        block: build.block,
        eigenvalue: build.eigenvalue.repr(),
        requested: build.requested,
        beta: build.coefficients.beta.as_ref().map(ReportScalar::repr),
        table: build.coefficients.table.iter().map(|row| reprs(row)).collect(),
        vectors: Vec::new(),
        degenerate: build.error.clone(),
    }
}

fn factor_report<T: ReportScalar>(p: &PerturbationProblem<T>) -> FactorReport<T::Repr> {
    let f = update_char_factor(p);
    FactorReport { moments: reprs(&f.moments), shifted: reprs(&f.shifted), monomial: reprs(f.f.coeffs()) }
}

fn finish<S>(mut report: UpdateReport<S>) -> UpdateReport<S> {
    let checked: usize = report.chains.iter().map(|c| c.vectors.len()).sum();
    let failed: usize = report
        .chains
        .iter()
        .flat_map(|c| &c.vectors)
        .filter(|v| !(v.chain_ok && v.generalized_rank.is_none_or(|k| k == v.rank)))
        .count();
    report.oracle.vectors_checked = checked;
    report.oracle.vectors_failed = failed;
    let ok = failed == 0
        && report.oracle.char_poly_identity != Some(false)
        && report.oracle.bound_respected != Some(false);
    report.status = if ok { Status::Passed } else { Status::Failed };
    report
}

/// Runs every applicable construction and checks each result exactly.
pub fn exact_report(p: &PerturbationProblem<GaussScalar>, opts: &ReportOptions) -> UpdateReport<GaussScalar> {
    let updated = apply_update(p);
    let n = p.dim();
    let zero = vec![GaussScalar::zero(); n];

    let chains: Vec<ChainReport<GaussScalar>> = all_chains(p)
        .into_iter()
        .filter(|c| opts.chains.admits(c.case))
        .map(|build| {
            let mut rep = chain_skeleton(&build);
            for (k, v) in build.vectors.iter().enumerate() {
                let prev = if k == 0 { &zero } else { &build.vectors[k - 1].vector };
                let nonzero = k > 0 || v.vector.iter().any(|x| !x.is_zero());
                rep.vectors.push(VectorReport {
                    rank: v.rank,
                    coefficients: v.coefficients.clone(),
                    vector: v.vector.clone(),
                    chain_ok: nonzero && chain_step_holds(&updated, &v.eigenvalue, &v.vector, prev),
                    generalized_rank: generalized_rank(&updated, &v.eigenvalue, &v.vector).ok().flatten(),
                    residual: None,
                });
            }
            rep
        })
        .collect();

    let f = update_char_factor(p);
    let (new_eigenvalues, new_eigenvalues_error) = match exact_roots(&f.f) {
        Ok(r) => (Some(Roots::Exact(r)), None),
        Err(e) => match poly_roots(&f.f, RootMode::Numeric) {
            Ok(r) => (Some(r), Some(e.to_string())),
            Err(e2) => (None, Some(format!("{e}; {e2}"))),
        },
    };

    let direct = char_poly_direct(&updated);
    let via_factor = updated_char_poly(p).expect("charpoly(A) contains (t-λ)^m");
    let bound = changed_eigenvalue_bound(p);
    let changed = count_changed_eigenvalues(p);
    let mut notes = Vec::new();

    let jordan = if opts.structure {
        match &new_eigenvalues {
            Some(Roots::Exact(roots)) => {
                let mut spectrum: Vec<GaussScalar> = p.spec().blocks.iter().map(|b| b.eigenvalue.clone()).collect();
                spectrum.extend(roots.iter().map(|r| r.value.clone()));
                match jordan_structure(&updated, &spectrum) {
                    Ok(s) => Some(s),
                    Err(e) => {
                        notes.push(format!("jordan structure: {e}"));
                        None
                    }
                }
            }
            _ => {
                notes.push("jordan structure skipped: new eigenvalues are not gaussian rationals".into());
                None
            }
        }
    } else {
        None
    };

    finish(UpdateReport {
        mode: Mode::Exact,
        dimension: n,
        lambda: p.lambda().clone(),
        m: p.m(),
        r: p.r(),
        factor: factor_report(p),
        new_eigenvalues,
        new_eigenvalues_error,
        bound,
        updated_char_poly: via_factor.coeffs().to_vec(),
        chains,
        oracle: OracleReport {
            char_poly_identity: Some(direct == via_factor),
            direct_char_poly: Some(direct.into_coeffs()),
            changed_eigenvalues: Some(changed),
            bound_respected: Some(changed <= bound),
            jordan_structure: jordan,
            notes,
            vectors_checked: 0,
            vectors_failed: 0,
        },
        status: Status::Failed,
    })
}

/// Float-mode residual scale `(‖A‖_F + ‖x_m‖ ‖b‖) ‖u_t‖`.
pub fn residual_scale(p: &PerturbationProblem<Complex64>, v: &[Complex64]) -> f64 {
    p.scale() * norm2(v)
}

/// Runs the constructions in floating point and checks relative residuals.
pub fn float_report(p: &PerturbationProblem<Complex64>, opts: &ReportOptions) -> UpdateReport<FloatScalar> {
    let updated = p.updated_matrix();
    let chains: Vec<ChainReport<FloatScalar>> = all_chains(p)
        .into_iter()
        .filter(|c| opts.chains.admits(c.case))
        .map(|build| {
            let mut rep = chain_skeleton(&build);
            let vs: Vec<Vec<Complex64>> = build.vectors.iter().map(|v| v.vector.clone()).collect();
            let residuals = chain_residuals(&updated, &build.eigenvalue, &vs);
            for (v, res) in build.vectors.iter().zip(residuals) {
                let limit = opts.tolerance * residual_scale(p, &v.vector);
                rep.vectors.push(VectorReport {
                    rank: v.rank,
                    coefficients: reprs(&v.coefficients),
                    vector: reprs(&v.vector),
                    chain_ok: res <= limit && norm2(&v.vector) > 0.0,
                    generalized_rank: None,
                    residual: Some(res),
                });
            }
            rep
        })
        .collect();

    let f = update_char_factor(p);
    let (new_eigenvalues, new_eigenvalues_error) = match crate::numeric::numeric_roots(&f.f) {
        Ok(r) => (
            Some(Roots::Numeric(r.into_iter().map(|z| NumericRoot { re: z.re, im: z.im, multiplicity: 1 }).collect())),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let charpoly = updated_char_poly(p).map(|q| reprs(q.coeffs())).unwrap_or_default();

    finish(UpdateReport {
        mode: Mode::Float,
        dimension: p.dim(),
        lambda: p.lambda().repr(),
        m: p.m(),
        r: p.r(),
        factor: factor_report(p),
        new_eigenvalues,
        new_eigenvalues_error,
        bound: changed_eigenvalue_bound(p),
        updated_char_poly: charpoly,
        chains,
        oracle: OracleReport {
            direct_char_poly: None,
            char_poly_identity: None,
            changed_eigenvalues: None,
            bound_respected: None,
            jordan_structure: None,
            notes: vec!["float mode: chains checked by relative residual only".into()],
            vectors_checked: 0,
            vectors_failed: 0,
        },
        status: Status::Failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    #[test]
    fn worked_report_passes_and_round_trips() {
        let report = exact_report(&worked::problem(), &ReportOptions::default());
        assert!(report.passed());
        assert_eq!(report.oracle.vectors_failed, 0);
        let json = serde_json::to_string(&report).unwrap();
        let back: UpdateReport<GaussScalar> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn chain_filter_restricts_cases() {
        let opts = ReportOptions { chains: ChainFilter::Distinct, structure: false, ..Default::default() };
        let report = exact_report(&worked::problem(), &opts);
        assert_eq!(report.chains.len(), 1);
        assert_eq!(report.chains[0].case, ChainCase::DistinctEigenvalue);
    }

    #[test]
    fn float_report_on_worked_problem() {
        let file = crate::cli::format::ProblemFile::from_problem(&worked::problem());
        let p = file.to_float_problem().unwrap();
        let report = float_report(&p, &ReportOptions::default());
        assert!(report.passed(), "{report:?}");
        let json = serde_json::to_string(&report).unwrap();
        let back: UpdateReport<FloatScalar> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
