//! Seeded random problem generators for fuzzing and property tests.

use num_complex::Complex64;
use rand::Rng;

use crate::model::{ChainLocator, JordanBlock, JordanSpec};
use crate::numeric::{inner, GaussScalar, Matrix, Rational, Scalar};
use crate::perturb::PerturbationProblem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub n_max: usize,
    /// Probability of a non-real eigenvalue or entry.
    pub complex_rate: f64,
    /// Probability that `S ≠ I`.
    pub similarity_rate: f64,
    /// Probability that an entry of `b` is zero.
    pub sparsity: f64,
}

impl SampleConfig {
    pub fn exact(n_max: usize) -> Self {
        Self { n_max, complex_rate: 0.15, similarity_rate: 0.7, sparsity: 0.25 }
    }
}

fn small_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num), rng.gen_range(1..=den)).expect("positive denominator")
}

fn small_scalar<R: Rng>(rng: &mut R, complex_rate: f64) -> GaussScalar {
    let re = small_rational(rng, 4, 3);
    let im = if rng.gen_bool(complex_rate) { small_rational(rng, 3, 2) } else { Rational::zero() };
    GaussScalar::new(re, im)
}

/// Random composition of `n` into block sizes.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// Random Jordan data whose eigenvalues come from a small pool so that
/// repeated eigenvalues across blocks are common.
pub fn random_blocks<R: Rng>(rng: &mut R, cfg: &SampleConfig, sizes: &[usize]) -> Vec<JordanBlock<GaussScalar>> {
    let pool_len = rng.gen_range(1..=3usize);
    let pool: Vec<GaussScalar> = (0..pool_len)
        .map(|_| {
            let re = rng.gen_range(-3..=3);
            let im = if rng.gen_bool(cfg.complex_rate) { rng.gen_range(-2..=2) } else { 0 };
            GaussScalar::int_complex(re, im)
        })
        .collect();
    sizes
        .iter()
        .map(|&s| JordanBlock::new(pool[rng.gen_range(0..pool.len())].clone(), s))
        .collect()
}

/// `L U` with unit-triangular integer factors, so `det S = 1` and `S⁻¹` is integral.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, complex_rate: f64) -> Matrix<GaussScalar> {
    let entry = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            GaussScalar::zero()
        } else {
            let im = if rng.gen_bool(complex_rate) { rng.gen_range(-1..=1) } else { 0 };
            GaussScalar::int_complex(rng.gen_range(-1..=1), im)
        }
    };
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = entry(rng);
            u[(j, i)] = entry(rng);
        }
    }
    l.mul(&u)
}

pub fn random_spec<R: Rng>(rng: &mut R, cfg: &SampleConfig) -> JordanSpec<GaussScalar> {
    let n = rng.gen_range(1..=cfg.n_max);
    let sizes = random_partition(rng, n);
    let blocks = random_blocks(rng, cfg, &sizes);
    let similarity = rng
        .gen_bool(cfg.similarity_rate)
        .then(|| random_unimodular(rng, n, cfg.complex_rate));
    JordanSpec::new(blocks, similarity)
}

pub fn random_b<R: Rng>(rng: &mut R, cfg: &SampleConfig, n: usize) -> Vec<GaussScalar> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(cfg.sparsity) {
                GaussScalar::zero()
            } else {
                small_scalar(rng, cfg.complex_rate)
            }
        })
        .collect()
}

pub fn random_problem<R: Rng>(rng: &mut R, cfg: &SampleConfig) -> PerturbationProblem<GaussScalar> {
    let spec = random_spec(rng, cfg);
    let block = rng.gen_range(0..spec.blocks.len());
    let rank = rng.gen_range(1..=spec.blocks[block].size);
    let b = random_b(rng, cfg, spec.dim());
    PerturbationProblem::new(spec, ChainLocator::new(block, rank), b).expect("generated problem is valid")
}

/// Random problem whose source vector is an eigenvector (`m = 1`).
pub fn random_eigenvector_problem<R: Rng>(rng: &mut R, cfg: &SampleConfig) -> PerturbationProblem<GaussScalar> {
    let spec = random_spec(rng, cfg);
    let block = rng.gen_range(0..spec.blocks.len());
    let b = random_b(rng, cfg, spec.dim());
    PerturbationProblem::new(spec, ChainLocator::new(block, 1), b).expect("generated problem is valid")
}

/// Removes from `c` its components along `x_1, …, x_m` so that `b* x_j = 0`.
pub fn orthogonalize(c: &[GaussScalar], chain: &[Vec<GaussScalar>]) -> Vec<GaussScalar> {
    let k = chain.len();
    if k == 0 {
        return c.to_vec();
    }
    // Gram matrix G_ij = x_i* x_j, solve G a = X* c, b = c − X a
    let gram = Matrix::from_fn(k, k, |i, j| inner(&chain[i], &chain[j]));
    let rhs: Vec<GaussScalar> = chain.iter().map(|x| inner(x, c)).collect();
    let coef = gram.solve(&rhs).expect("chain vectors are independent");
    let mut b = c.to_vec();
    for (a, x) in coef.iter().zip(chain) {
        for (bi, xi) in b.iter_mut().zip(x) {
            *bi = bi.clone() - a.clone() * xi.clone();
        }
    }
    b
}

/// Random problem with `b* x_j = 0` for every `j ≤ m`.
pub fn random_orthogonal_problem<R: Rng>(rng: &mut R, cfg: &SampleConfig) -> PerturbationProblem<GaussScalar> {
    // resample until the projected b is nonzero, otherwise the update is vacuous;
    // that needs room for b outside the chain, so n >= 2
    let cfg = &SampleConfig { n_max: cfg.n_max.max(2), ..*cfg };
    loop {
        let spec = random_spec(rng, cfg);
        if spec.dim() < 2 {
            continue;
        }
        let block = rng.gen_range(0..spec.blocks.len());
        let rank = rng.gen_range(1..=spec.blocks[block].size.min(spec.dim() - 1));
        let chain: Vec<_> = spec.chain(block).expect("block exists")[..rank].to_vec();
        let b = orthogonalize(&random_b(rng, cfg, spec.dim()), &chain);
        if b.iter().any(|c| !c.is_zero()) {
            return PerturbationProblem::new(spec, ChainLocator::new(block, rank), b).expect("generated problem is valid");
        }
    }
}

/// Random invertible integer matrix with entries in `[-3, 3]`.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix<GaussScalar> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| GaussScalar::int(rng.gen_range(-3..=3)));
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, complex_rate: f64) -> Vec<GaussScalar> {
    (0..n).map(|_| small_scalar(rng, complex_rate)).collect()
}

fn unit_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Floating-point problem of size up to `n_max` with a well-conditioned
/// similarity `S = I + E`, `‖E‖_F ≤ 1/2`.
pub fn random_float_problem<R: Rng>(rng: &mut R, n_max: usize) -> PerturbationProblem<Complex64> {
    let n = rng.gen_range(1..=n_max);
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(10));
        sizes.push(s);
        left -= s;
    }
    let pool: Vec<Complex64> = (0..rng.gen_range(1..=3)).map(|_| unit_complex(rng, 3.0)).collect();
    let blocks: Vec<JordanBlock<Complex64>> = sizes
        .iter()
        .map(|&s| JordanBlock::new(pool[rng.gen_range(0..pool.len())], s))
        .collect();
    let e_scale = 0.5 / n as f64;
    let s = Matrix::from_fn(n, n, |i, j| {
        let e = unit_complex(rng, e_scale);
        if i == j { <Complex64 as Scalar>::one() + e } else { e }
    });
    let spec = JordanSpec::new(blocks, Some(s));
    let block = rng.gen_range(0..spec.blocks.len());
    let rank = rng.gen_range(1..=spec.blocks[block].size);
    let b: Vec<Complex64> = (0..n).map(|_| unit_complex(rng, 1.0)).collect();
    PerturbationProblem::new(spec, ChainLocator::new(block, rank), b).expect("generated problem is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            let s = random_unimodular(&mut rng, n, 0.3);
            assert_eq!(s.det().unwrap(), GaussScalar::one());
        }
    }

    #[test]
    fn orthogonal_b_kills_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = SampleConfig::exact(7);
        for _ in 0..20 {
            let p = random_orthogonal_problem(&mut rng, &cfg);
            assert!(p.moments().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn same_seed_same_problem() {
        let cfg = SampleConfig::exact(8);
        let a = random_problem(&mut ChaCha8Rng::seed_from_u64(5), &cfg);
        let b = random_problem(&mut ChaCha8Rng::seed_from_u64(5), &cfg);
        assert_eq!(a, b);
    }
}
