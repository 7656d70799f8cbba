//! Generalized-eigenvector chains of `A + x_m b*` for eigenvalues kept from `A`.
//!
//! Three cases are covered, each built from the chains of `A` with
//! coefficients given by a recurrence in the target rank `t`:
//!
//! * **same block** – `λ` surviving in the block of `x_m`:
//!   `u_t = x_t + Σ_j β_j^{(t)} x_j + β x_{m+t}`,
//! * **other block** – `λ` in a different block with chain `y`:
//!   `v_t = y_t + Σ_j β_j^{(t)} x_j`,
//! * **distinct eigenvalue** – `μ ≠ λ` with chain `z`:
//!   `w_t = z_t + Σ_j β_j^{(t)} x_j`.
//!
//! Coefficient tables are rectangular: `table[t][j]` for `0 ≤ t ≤ t_max`,
//! `0 ≤ j ≤ m`, with row `t = 0` and column `j = 0` identically zero.
//! Every denominator is checked; a vanishing one stops the construction with
//! [`ChainError::DegenerateDenominator`] instead of dividing by zero.

#![allow(clippy::needless_range_loop, clippy::manual_memcpy)]

use serde::{Deserialize, Serialize};

use crate::model::ChainLocator;
use crate::numeric::{axpy, inner, norm2, Scalar, Vector};
use crate::perturb::PerturbationProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainCase {
    SameBlock,
    OtherBlock,
    DistinctEigenvalue,
}

/// Which denominator vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Denominator {
    /// `1 + b* x_{m+1}`
    OnePlusMomentAfterSource,
    /// `b* x_1`
    FirstMoment,
    /// `(μ−λ)^{m+1} − Σ_j (μ−λ)^j b* x_j`
    DistinctShift,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error, Serialize, Deserialize)]
pub enum ChainError {
    #[error("denominator {which:?} vanishes at rank {rank} (value {value})")]
    DegenerateDenominator { which: Denominator, rank: usize, value: String },
    #[error("rank {t_max} out of range: {reason}")]
    RankOutOfRange { t_max: usize, reason: String },
    #[error("block {block} has eigenvalue {found}, incompatible with λ = {lambda}")]
    EigenvalueMismatch { block: usize, found: String, lambda: String },
    #[error("block index {0} out of range")]
    BlockOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainCoefficients<T> {
    pub case: ChainCase,
    /// `β` of the same-block case.
    pub beta: Option<T>,
    pub table: Vec<Vec<T>>,
}

impl<T: Scalar> ChainCoefficients<T> {
    fn new(case: ChainCase, beta: Option<T>, m: usize) -> Self {
        Self { case, beta, table: vec![vec![T::zero(); m + 1]] }
    }

    /// `β_j^{(t)}`; zero whenever `t = 0`, `j = 0` or the entry is outside the table.
    pub fn get(&self, t: usize, j: usize) -> T {
        self.table
            .get(t)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn max_rank(&self) -> usize {
        self.table.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpdatedChainVector<T> {
    pub rank: usize,
    pub eigenvalue: T,
    pub vector: Vector<T>,
    /// `[β_1^{(t)}, …, β_m^{(t)}]` for this rank.
    pub coefficients: Vec<T>,
}

/// A constructed chain, possibly cut short by a vanishing denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainBuild<T> {
    pub case: ChainCase,
    /// Block of `A` the chain is derived from.
    pub block: usize,
    pub eigenvalue: T,
    pub requested: usize,
    pub coefficients: ChainCoefficients<T>,
    pub vectors: Vec<UpdatedChainVector<T>>,
    pub error: Option<ChainError>,
}

impl<T: Scalar> ChainBuild<T> {
    pub fn is_complete(&self) -> bool {
        self.error.is_none() && self.vectors.len() == self.requested
    }

    pub fn into_result(self) -> Result<Vec<UpdatedChainVector<T>>, ChainError> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.vectors),
        }
    }
}

fn degenerate<T: Scalar>(which: Denominator, rank: usize, value: &T) -> ChainError {
    ChainError::DegenerateDenominator { which, rank, value: format!("{value:?}") }
}

fn first_moment_scale<T: Scalar>(p: &PerturbationProblem<T>) -> f64 {
    norm2(p.b()) * norm2(p.x(1))
}

/// `β = −b* x_1 / (1 + b* x_{m+1})`.
pub fn same_block_beta<T: Scalar>(p: &PerturbationProblem<T>) -> Result<T, ChainError> {
    let m = p.m();
    if m + 1 > p.r() {
        return Err(ChainError::RankOutOfRange {
            t_max: 1,
            reason: format!("m + 1 = {} exceeds block size {}", m + 1, p.r()),
        });
    }
    let denom = T::one() + p.moment(m + 1).clone();
    if denom.is_negligible(1.0 + p.moment(m + 1).modulus()) {
        return Err(degenerate(Denominator::OnePlusMomentAfterSource, 1, &denom));
    }
    Ok(-p.moment(1).clone() / denom)
}

/// Largest rank allowed by `m + t ≤ r`.
pub fn same_block_default_rank<T: Scalar>(p: &PerturbationProblem<T>) -> usize {
    p.r() - p.m()
}

/// `u_1, …, u_{t_max}` for `λ` in the source block.
pub fn same_block_chain<T: Scalar>(p: &PerturbationProblem<T>, t_max: usize) -> Result<Vec<UpdatedChainVector<T>>, ChainError> {
    build_same_block(p, t_max).into_result()
}

pub fn build_same_block<T: Scalar>(p: &PerturbationProblem<T>, t_max: usize) -> ChainBuild<T> {
    let m = p.m();
    let lambda = p.lambda().clone();
    let mut build = ChainBuild {
        case: ChainCase::SameBlock,
        block: p.source().block,
        eigenvalue: lambda.clone(),
        requested: t_max,
        coefficients: ChainCoefficients::new(ChainCase::SameBlock, None, m),
        vectors: Vec::new(),
        error: None,
    };
    if m + t_max > p.r() {
        build.error = Some(ChainError::RankOutOfRange {
            t_max,
            reason: format!("m + t = {} exceeds block size {}", m + t_max, p.r()),
        });
        return build;
    }
    if t_max == 0 {
        return build;
    }
    let beta = match same_block_beta(p) {
        Ok(beta) => beta,
        Err(e) => {
            build.error = Some(e);
            return build;
        }
    };
    build.coefficients.beta = Some(beta.clone());
    let first = p.moment(1).clone();
    let first_scale = first_moment_scale(p);

    for t in 1..=t_max {
        let width = (t - 1).min(m);
        let mut row = vec![T::zero(); m + 1];
        if t >= 2 {
            if first.is_negligible(first_scale) {
                build.error = Some(degenerate(Denominator::FirstMoment, t, &first));
                return build;
            }
            let prev = &build.coefficients.table[t - 1];
            for j in 2..=width {
                row[j] = prev[j - 1].clone();
            }
            // b* u_t must equal β_m^{(t-1)} once t exceeds m + 1, and vanish before
            let mut num = if t > m + 1 { prev[m].clone() } else { T::zero() };
            num = num - p.moment(t).clone();
            for j in 2..=width {
                num = num - row[j].clone() * p.moment(j).clone();
            }
            num = num - beta.clone() * p.moment(m + t).clone();
            row[1] = num / first.clone();
        }
        let mut u = p.x(t).to_vec();
        for j in 1..=width {
            axpy(&row[j], p.x(j), &mut u);
        }
        axpy(&beta, p.x(m + t), &mut u);
        build.vectors.push(UpdatedChainVector {
            rank: t,
            eigenvalue: lambda.clone(),
            vector: u,
            coefficients: row[1..].to_vec(),
        });
        build.coefficients.table.push(row);
    }
    build
}

fn other_chain<T: Scalar>(p: &PerturbationProblem<T>, block: usize) -> Result<Vec<Vector<T>>, ChainError> {
    let mut chain = vec![vec![T::zero(); p.dim()]];
    chain.extend(p.spec().chain(block).map_err(|_| ChainError::BlockOutOfRange(block))?);
    Ok(chain)
}

/// `v_1, …, v_{t_max}` for `λ` in another block of `A` with the same eigenvalue.
pub fn other_block_chain<T: Scalar>(
    p: &PerturbationProblem<T>,
    other_block: usize,
    t_max: usize,
) -> Result<Vec<UpdatedChainVector<T>>, ChainError> {
    build_other_block(p, other_block, t_max).into_result()
}

pub fn build_other_block<T: Scalar>(p: &PerturbationProblem<T>, other_block: usize, t_max: usize) -> ChainBuild<T> {
    let m = p.m();
    let lambda = p.lambda().clone();
    let mut build = ChainBuild {
        case: ChainCase::OtherBlock,
        block: other_block,
        eigenvalue: lambda.clone(),
        requested: t_max,
        coefficients: ChainCoefficients::new(ChainCase::OtherBlock, None, m),
        vectors: Vec::new(),
        error: None,
    };
    let Some(target) = p.spec().blocks.get(other_block) else {
        build.error = Some(ChainError::BlockOutOfRange(other_block));
        return build;
    };
    let gap = target.eigenvalue.clone() - lambda.clone();
    if other_block == p.source().block || !gap.is_negligible(1.0 + lambda.modulus()) {
        build.error = Some(ChainError::EigenvalueMismatch {
            block: other_block,
            found: format!("{:?}", target.eigenvalue),
            lambda: format!("{lambda:?}"),
        });
        return build;
    }
    if t_max > target.size {
        build.error = Some(ChainError::RankOutOfRange {
            t_max,
            reason: format!("block {other_block} has size {}", target.size),
        });
        return build;
    }
    let y = match other_chain(p, other_block) {
        Ok(y) => y,
        Err(e) => {
            build.error = Some(e);
            return build;
        }
    };
    let b = p.b();
    let first = p.moment(1).clone();
    if t_max > 0 && first.is_negligible(first_moment_scale(p)) {
        build.error = Some(degenerate(Denominator::FirstMoment, 1, &first));
        return build;
    }

    for t in 1..=t_max {
        let width = t.min(m);
        let prev = &build.coefficients.table[t - 1];
        let mut row = vec![T::zero(); m + 1];
        for j in 2..=width {
            row[j] = prev[j - 1].clone();
        }
        let mut num = if t > m { prev[m].clone() } else { T::zero() };
        num = num - inner(b, &y[t]);
        for j in 2..=width {
            num = num - row[j].clone() * p.moment(j).clone();
        }
        row[1] = num / first.clone();

        let mut v = y[t].clone();
        for j in 1..=width {
            axpy(&row[j], p.x(j), &mut v);
        }
        build.vectors.push(UpdatedChainVector {
            rank: t,
            eigenvalue: lambda.clone(),
            vector: v,
            coefficients: row[1..].to_vec(),
        });
        build.coefficients.table.push(row);
    }
    build
}

/// `D = (μ−λ)^{m+1} − Σ_{j=1}^{m} (μ−λ)^j b* x_j`, which equals `(μ−λ) f(μ)`.
pub fn distinct_denominator<T: Scalar>(p: &PerturbationProblem<T>, mu: &T) -> T {
    let d = mu.clone() - p.lambda().clone();
    let mut acc = d.pow(p.m() + 1);
    for j in 1..=p.m() {
        acc = acc - d.pow(j) * p.moment(j).clone();
    }
    acc
}

/// `w_1, …, w_{t_max}` for an eigenvalue `μ ≠ λ` of `A`.
pub fn distinct_eig_chain<T: Scalar>(
    p: &PerturbationProblem<T>,
    mu_block: usize,
    t_max: usize,
) -> Result<Vec<UpdatedChainVector<T>>, ChainError> {
    build_distinct(p, mu_block, t_max).into_result()
}

pub fn build_distinct<T: Scalar>(p: &PerturbationProblem<T>, mu_block: usize, t_max: usize) -> ChainBuild<T> {
    let m = p.m();
    let lambda = p.lambda().clone();
    let Some(target) = p.spec().blocks.get(mu_block) else {
        return ChainBuild {
            case: ChainCase::DistinctEigenvalue,
            block: mu_block,
            eigenvalue: lambda.clone(),
            requested: t_max,
            coefficients: ChainCoefficients::new(ChainCase::DistinctEigenvalue, None, m),
            vectors: Vec::new(),
            error: Some(ChainError::BlockOutOfRange(mu_block)),
        };
    };
    let mu = target.eigenvalue.clone();
    let mut build = ChainBuild {
        case: ChainCase::DistinctEigenvalue,
        block: mu_block,
        eigenvalue: mu.clone(),
        requested: t_max,
        coefficients: ChainCoefficients::new(ChainCase::DistinctEigenvalue, None, m),
        vectors: Vec::new(),
        error: None,
    };
    let d = mu.clone() - lambda.clone();
    if d.is_negligible(1.0 + lambda.modulus()) {
        build.error = Some(ChainError::EigenvalueMismatch {
            block: mu_block,
            found: format!("{mu:?}"),
            lambda: format!("{lambda:?}"),
        });
        return build;
    }
    if t_max > target.size {
        build.error = Some(ChainError::RankOutOfRange {
            t_max,
            reason: format!("block {mu_block} has size {}", target.size),
        });
        return build;
    }
    let z = match other_chain(p, mu_block) {
        Ok(z) => z,
        Err(e) => {
            build.error = Some(e);
            return build;
        }
    };
    let denom = distinct_denominator(p, &mu);
    let denom_scale = d.modulus().powi(m as i32 + 1)
        + (1..=m).map(|j| d.modulus().powi(j as i32) * p.moment(j).modulus()).sum::<f64>();
    if t_max > 0 && denom.is_negligible(denom_scale) {
        build.error = Some(degenerate(Denominator::DistinctShift, 1, &denom));
        return build;
    }
    let d_pows: Vec<T> = (0..=m + 1).map(|k| d.pow(k)).collect();
    let b = p.b();

    for t in 1..=t_max {
        let prev = &build.coefficients.table[t - 1];
        let mut row = vec![T::zero(); m + 1];
        // tail(j) = Σ_{i=0}^{m-1-j} (μ−λ)^i β_{m-1-i}^{(t-1)}
        let tail = |j: usize| -> T {
            (0..m - j).fold(T::zero(), |acc, i| acc + d_pows[i].clone() * prev[m - 1 - i].clone())
        };
        let mut num = d_pows[m].clone() * (inner(b, &z[t]) - prev[m].clone());
        for j in 1..=m {
            num = num - p.moment(j).clone() * d_pows[j].clone() * tail(j);
        }
        row[m] = num / denom.clone();
        for j in (1..m).rev() {
            row[j] = (row[m].clone() - tail(j)) / d_pows[m - j].clone();
        }

        let mut w = z[t].clone();
        for j in 1..=m {
            axpy(&row[j], p.x(j), &mut w);
        }
        build.vectors.push(UpdatedChainVector {
            rank: t,
            eigenvalue: mu.clone(),
            vector: w,
            coefficients: row[1..].to_vec(),
        });
        build.coefficients.table.push(row);
    }
    build
}

/// Closed form of the rank-1 same-block vector: `x_1 − b* x_1 / (1 + b* x_{m+1}) · x_{m+1}`.
pub fn same_block_eigenvector<T: Scalar>(p: &PerturbationProblem<T>) -> Result<Vector<T>, ChainError> {
    let beta = same_block_beta(p)?;
    let mut u = p.x(1).to_vec();
    axpy(&beta, p.x(p.m() + 1), &mut u);
    Ok(u)
}

/// Closed form of the rank-1 other-block vector: `y_1 − (b* y_1 / b* x_1) x_1`.
pub fn other_block_eigenvector<T: Scalar>(p: &PerturbationProblem<T>, other_block: usize) -> Result<Vector<T>, ChainError> {
    let y1 = p
        .spec()
        .chain_vector(ChainLocator::new(other_block, 1))
        .map_err(|_| ChainError::BlockOutOfRange(other_block))?;
    let first = p.moment(1).clone();
    if first.is_negligible(first_moment_scale(p)) {
        return Err(degenerate(Denominator::FirstMoment, 1, &first));
    }
    let c = -(inner(p.b(), &y1) / first);
    let mut v = y1;
    axpy(&c, p.x(1), &mut v);
    Ok(v)
}

/// Closed form of the rank-1 vector for `μ ≠ λ`: `z_1 + (b* z_1 / D) Σ_j (μ−λ)^j x_j`.
pub fn distinct_eigenvector<T: Scalar>(p: &PerturbationProblem<T>, mu_block: usize) -> Result<Vector<T>, ChainError> {
    let block = p.spec().blocks.get(mu_block).ok_or(ChainError::BlockOutOfRange(mu_block))?;
    let mu = block.eigenvalue.clone();
    let denom = distinct_denominator(p, &mu);
    if denom.is_zero() {
        return Err(degenerate(Denominator::DistinctShift, 1, &denom));
    }
    let z1 = p
        .spec()
        .chain_vector(ChainLocator::new(mu_block, 1))
        .map_err(|_| ChainError::BlockOutOfRange(mu_block))?;
    let c = inner(p.b(), &z1) / denom;
    let d = mu - p.lambda().clone();
    let mut w = z1;
    for j in 1..=p.m() {
        axpy(&(c.clone() * d.pow(j)), p.x(j), &mut w);
    }
    Ok(w)
}

/// Default target ranks: `r − m` for the source block, the block size otherwise.
pub fn default_rank<T: Scalar>(p: &PerturbationProblem<T>, block: usize) -> usize {
    if block == p.source().block {
        same_block_default_rank(p)
    } else {
        p.spec().blocks[block].size
    }
}

/// Every applicable construction: same block, then each other block in order.
pub fn all_chains<T: Scalar>(p: &PerturbationProblem<T>) -> Vec<ChainBuild<T>> {
    let lambda = p.lambda();
    let scale = 1.0 + lambda.modulus();
    p.spec()
        .blocks
        .iter()
        .enumerate()
        .filter_map(|(k, block)| {
            let t = default_rank(p, k);
            if k == p.source().block {
                (t > 0).then(|| build_same_block(p, t))
            } else if (block.eigenvalue.clone() - lambda.clone()).is_negligible(scale) {
                Some(build_other_block(p, k, t))
            } else {
                Some(build_distinct(p, k, t))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cumulative_similarity, JordanSpec};
    use crate::numeric::GaussScalar as G;

    fn reference() -> PerturbationProblem<G> {
        let spec = JordanSpec::from_blocks([(G::int(2), 6), (G::int(2), 3), (G::int(1), 2)])
            .with_similarity(cumulative_similarity(&[6, 3, 2]));
        let mut b = vec![G::int(0); 11];
        b[0] = G::int(3);
        b[1] = G::int(-5);
        b[6] = G::int(1);
        b[9] = G::int(1);
        PerturbationProblem::new(spec, ChainLocator::new(0, 2), b).unwrap()
    }

    #[test]
    fn beta_values() {
        assert_eq!(same_block_beta(&reference()).unwrap(), G::int(3));
        let spec = JordanSpec::from_blocks([(G::int(2), 3)]);
        let p = PerturbationProblem::new(spec, ChainLocator::new(0, 1), vec![G::int(0), G::int(1), G::int(4)]).unwrap();
        assert_eq!(same_block_beta(&p).unwrap(), G::int(0));
    }

    #[test]
    fn beta_degenerate() {
        // 1 + b* x_2 = 0
        let spec = JordanSpec::from_blocks([(G::int(0), 2)]);
        let p = PerturbationProblem::new(spec, ChainLocator::new(0, 1), vec![G::int(1), G::int(-1)]).unwrap();
        assert!(matches!(
            same_block_beta(&p),
            Err(ChainError::DegenerateDenominator { which: Denominator::OnePlusMomentAfterSource, .. })
        ));
    }

    #[test]
    fn same_block_rank_limit() {
        let p = reference();
        assert!(matches!(same_block_chain(&p, 5), Err(ChainError::RankOutOfRange { .. })));
        assert_eq!(same_block_chain(&p, 4).unwrap().len(), 4);
    }

    #[test]
    fn zero_update_gives_trivial_chains() {
        let spec = JordanSpec::from_blocks([(G::int(2), 4), (G::int(5), 2)]);
        let p = PerturbationProblem::new(spec, ChainLocator::new(0, 2), vec![G::int(0); 6]).unwrap();
        let u = same_block_chain(&p, 1).unwrap();
        assert_eq!(u[0].vector, p.x(1));
        assert!(matches!(
            same_block_chain(&p, 2),
            Err(ChainError::DegenerateDenominator { which: Denominator::FirstMoment, rank: 2, .. })
        ));
        let w = distinct_eig_chain(&p, 1, 2).unwrap();
        for (t, wt) in w.iter().enumerate() {
            assert_eq!(wt.vector, p.spec().chain_vector(ChainLocator::new(1, t + 1)).unwrap());
        }
    }

    #[test]
    fn mismatched_blocks() {
        let p = reference();
        assert!(matches!(other_block_chain(&p, 2, 1), Err(ChainError::EigenvalueMismatch { .. })));
        assert!(matches!(other_block_chain(&p, 0, 1), Err(ChainError::EigenvalueMismatch { .. })));
        assert!(matches!(distinct_eig_chain(&p, 1, 1), Err(ChainError::EigenvalueMismatch { .. })));
        assert!(matches!(distinct_eig_chain(&p, 2, 3), Err(ChainError::RankOutOfRange { .. })));
        assert!(matches!(other_block_chain(&p, 7, 1), Err(ChainError::BlockOutOfRange(7))));
    }

    #[test]
    fn partial_build_keeps_completed_ranks() {
        let spec = JordanSpec::from_blocks([(G::int(1), 4)]);
        // b* x_1 = 0 so only u_1 is defined
        let p = PerturbationProblem::new(spec, ChainLocator::new(0, 1), vec![G::int(0), G::int(2), G::int(0), G::int(0)]).unwrap();
        let build = build_same_block(&p, 3);
        assert_eq!(build.vectors.len(), 1);
        assert!(!build.is_complete());
    }
}
