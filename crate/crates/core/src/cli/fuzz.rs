//! Seeded random instances checked end to end against the oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::sample::{random_float_problem, random_problem, SampleConfig};

use super::report::{exact_report, float_report, Mode, ReportOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub index: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: u64,
    pub n_max: usize,
    pub mode: Mode,
    pub passed: u64,
    pub failed: u64,
    /// Problems where at least one construction hit a vanishing denominator.
    pub degenerate_problems: u64,
    pub degenerate_chains: u64,
    pub vectors_checked: u64,
    pub failures: Vec<FuzzFailure>,
}

/// Per-instance generator seed; instances are independent of scheduling.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

struct Outcome {
    passed: bool,
    degenerate: u64,
    vectors: u64,
    reason: Option<String>,
}

fn run_one(seed: u64, index: u64, n_max: usize, mode: Mode, opts: &ReportOptions) -> Outcome {
    let mut rng = instance_rng(seed, index);
    let (passed, degenerate, vectors, notes) = match mode {
        Mode::Exact => {
            let p = random_problem(&mut rng, &SampleConfig::exact(n_max));
            let r = exact_report(&p, opts);
            (r.passed(), r.degenerate_chains(), r.oracle.vectors_checked, describe(&r))
        }
        Mode::Float => {
            let p = random_float_problem(&mut rng, n_max);
            let r = float_report(&p, opts);
            (r.passed(), r.degenerate_chains(), r.oracle.vectors_checked, describe(&r))
        }
    };
    Outcome {
        passed,
        degenerate: degenerate as u64,
        vectors: vectors as u64,
        reason: (!passed).then_some(notes),
    }
}

fn describe<S>(r: &super::report::UpdateReport<S>) -> String {
    let mut parts = Vec::new();
    if r.oracle.char_poly_identity == Some(false) {
        parts.push("characteristic polynomial mismatch".to_string());
    }
    if r.oracle.bound_respected == Some(false) {
        parts.push(format!("{:?} changed eigenvalues exceed bound {}", r.oracle.changed_eigenvalues, r.bound));
    }
    for c in &r.chains {
        for v in &c.vectors {
            if !v.chain_ok || v.generalized_rank.is_some_and(|k| k != v.rank) {
                parts.push(format!("{:?} block {} rank {}", c.case, c.block, v.rank));
            }
        }
    }
    parts.join("; ")
}

pub fn fuzz(seed: u64, count: u64, n_max: usize, mode: Mode, opts: &ReportOptions) -> FuzzSummary {
    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|i| run_one(seed, i, n_max, mode, opts))
        .collect();
    let mut summary = FuzzSummary {
        seed,
        count,
        n_max,
        mode,
        passed: 0,
        failed: 0,
        degenerate_problems: 0,
        degenerate_chains: 0,
        vectors_checked: 0,
        failures: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        if o.passed {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            summary.failures.push(FuzzFailure { index: i as u64, reason: o.reason.unwrap_or_default() });
        }
        summary.degenerate_chains += o.degenerate;
        summary.degenerate_problems += u64::from(o.degenerate > 0);
        summary.vectors_checked += o.vectors;
    }
    summary
}
