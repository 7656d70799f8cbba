//! Spectrum of the rank-one update `A + x_m b*`, where `x_m` is the rank-`m`
//! vector of a Jordan chain of `A` for the eigenvalue `λ`.

use serde::{Deserialize, Serialize};

use crate::model::{ChainLocator, JordanSpec, ModelError};
use crate::numeric::{
    exact_roots, inner, norm2, numeric_roots, poly_roots, Complex64, GaussScalar, Matrix,
    NumericError, Poly, RootMode, Roots, Scalar, Vector,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PerturbError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("vector b has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("t = {0} lies in the spectrum of A")]
    SpectrumCollision(String),
}

/// A Jordan specification, the source chain vector `x_m` and the update vector `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationProblem<T> {
    spec: JordanSpec<T>,
    source: ChainLocator,
    b: Vector<T>,
    matrix: Matrix<T>,
    /// `x_0 = 0, x_1, …, x_r` of the source block.
    chain: Vec<Vector<T>>,
    /// `b* x_0 = 0, b* x_1, …, b* x_r`.
    moments: Vec<T>,
}

impl<T: Scalar> PerturbationProblem<T> {
    pub fn new(spec: JordanSpec<T>, source: ChainLocator, b: Vector<T>) -> Result<Self, PerturbError> {
        let matrix = spec.assemble_matrix()?;
        let n = spec.dim();
        if b.len() != n {
            return Err(PerturbError::LengthMismatch { expected: n, got: b.len() });
        }
        if source.rank == 0 {
            return Err(ModelError::LocatorOutOfRange { block: source.block, rank: 0 }.into());
        }
        spec.chain_vector(source)?;
        let mut chain = vec![vec![T::zero(); n]];
        chain.extend(spec.chain(source.block)?);
        let moments = chain.iter().map(|x| inner(&b, x)).collect();
        Ok(Self { spec, source, b, matrix, chain, moments })
    }

    pub fn spec(&self) -> &JordanSpec<T> {
        &self.spec
    }

    pub fn source(&self) -> ChainLocator {
        self.source
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// `A`.
    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn lambda(&self) -> &T {
        &self.spec.blocks[self.source.block].eigenvalue
    }

    /// Rank `m` of the source vector.
    pub fn m(&self) -> usize {
        self.source.rank
    }

    /// Size `r` of the source block.
    pub fn r(&self) -> usize {
        self.spec.blocks[self.source.block].size
    }

    /// `x_j` of the source chain, `0 ≤ j ≤ r`.
    pub fn x(&self, j: usize) -> &[T] {
        &self.chain[j]
    }

    pub fn x_m(&self) -> &[T] {
        &self.chain[self.source.rank]
    }

    /// `b* x_j`, `0 ≤ j ≤ r` (zero at `j = 0`).
    pub fn moment(&self, j: usize) -> &T {
        &self.moments[j]
    }

    /// `[b* x_1, …, b* x_m]`.
    pub fn moments(&self) -> &[T] {
        &self.moments[1..=self.m()]
    }

    /// `A + x_m b*`.
    pub fn updated_matrix(&self) -> Matrix<T> {
        self.matrix.add(&Matrix::outer(self.x_m(), &self.b))
    }

    /// `‖A‖_F + ‖x_m‖ ‖b‖`, the scale used for floating-point zero tests.
    pub fn scale(&self) -> f64 {
        self.matrix.frobenius_norm() + norm2(self.x_m()) * norm2(&self.b)
    }
}

/// `det(A + x b*)` via `(b* A⁻¹ x + 1) det A`.
pub fn det_rank1_update<T: Scalar>(a: &Matrix<T>, x: &[T], b: &[T]) -> Result<T, PerturbError> {
    let det = a.det()?;
    if det.is_negligible(a.frobenius_norm().powi(a.rows() as i32)) {
        return Err(PerturbError::SingularMatrix);
    }
    let a_inv_x = a.solve(x).map_err(|_| PerturbError::SingularMatrix)?;
    Ok((inner(b, &a_inv_x) + T::one()) * det)
}

/// `(tI − A)⁻¹ x_m` expanded along the chain: `Σ_{i<m} x_{i+1} / (t − λ)^{m−i}`.
pub fn resolvent_action<T: Scalar>(problem: &PerturbationProblem<T>, t: &T) -> Result<Vector<T>, PerturbError> {
    let collides = problem
        .spec()
        .blocks
        .iter()
        .any(|b| (t.clone() - b.eigenvalue.clone()).is_negligible(1.0 + t.modulus()));
    if collides {
        return Err(PerturbError::SpectrumCollision(format!("{t:?}")));
    }
    let shift = t.clone() - problem.lambda().clone();
    let inv = T::one() / shift;
    let m = problem.m();
    let mut out = vec![T::zero(); problem.dim()];
    // Horner over the chain: ((x_1 / s + x_2) / s + …) / s
    for j in 1..=m {
        for (o, xj) in out.iter_mut().zip(problem.x(j)) {
            *o = o.clone() + xj.clone();
        }
        for o in out.iter_mut() {
            *o = o.clone() * inv.clone();
        }
    }
    Ok(out)
}

/// The degree-`m` factor whose roots are the eigenvalues that may change.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpdateFactor<T> {
    /// Monomial coefficients of `f`.
    pub f: Poly<T>,
    /// `[b* x_1, …, b* x_m]`.
    pub moments: Vec<T>,
    /// Coefficients of `f` in powers of `(t − λ)`.
    pub shifted: Vec<T>,
    pub lambda: T,
}

/// `f(t) = (t − λ)^m − Σ_{i<m} (b* x_{i+1}) (t − λ)^i`.
pub fn update_char_factor<T: Scalar>(problem: &PerturbationProblem<T>) -> UpdateFactor<T> {
    let m = problem.m();
    let mut shifted: Vec<T> = problem.moments().iter().map(|c| -c.clone()).collect();
    shifted.push(T::one());
    debug_assert_eq!(shifted.len(), m + 1);
    let f = Poly::from_shifted(&shifted, problem.lambda());
    UpdateFactor { f, moments: problem.moments().to_vec(), shifted, lambda: problem.lambda().clone() }
}

/// Number of leading vanishing moments `b* x_1 = … = b* x_k = 0`.
pub fn vanishing_moments<T: Scalar>(problem: &PerturbationProblem<T>) -> usize {
    let scale = norm2(&problem.b) * (1..=problem.m()).map(|j| norm2(problem.x(j))).fold(0.0, f64::max);
    problem.moments().iter().take_while(|c| c.is_negligible(scale)).count()
}

/// Upper bound `m − k` on the number of eigenvalues of `A + x_m b*` outside σ(A).
pub fn changed_eigenvalue_bound<T: Scalar>(problem: &PerturbationProblem<T>) -> usize {
    problem.m() - vanishing_moments(problem)
}

/// Roots of the update factor. Roots equal to `λ` are reported, not dropped.
pub fn new_eigenvalues(problem: &PerturbationProblem<GaussScalar>, mode: RootMode) -> Result<Roots, PerturbError> {
    Ok(poly_roots(&update_char_factor(problem).f, mode)?)
}

/// Exact roots of the update factor, with multiplicity.
pub fn new_eigenvalues_exact(problem: &PerturbationProblem<GaussScalar>) -> Result<Vec<crate::numeric::ExactRoot>, PerturbError> {
    Ok(exact_roots(&update_char_factor(problem).f)?)
}

/// Floating-point roots of the update factor.
pub fn new_eigenvalues_float(problem: &PerturbationProblem<Complex64>) -> Result<Vec<Complex64>, PerturbError> {
    Ok(numeric_roots(&update_char_factor(problem).f)?)
}

/// `det(tI − (A + x_m b*)) = f(t) · charpoly(A) / (t − λ)^m`.
pub fn updated_char_poly<T: Scalar>(problem: &PerturbationProblem<T>) -> Result<Poly<T>, PerturbError> {
    let base = problem.spec().char_poly();
    let reduced = base.divide_linear(problem.lambda(), problem.m())?;
    Ok(&update_char_factor(problem).f * &reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussScalar as G;

    fn single(lambda: i64, r: usize, m: usize, b: Vec<G>) -> PerturbationProblem<G> {
        let spec = JordanSpec::from_blocks([(G::int(lambda), r)]);
        PerturbationProblem::new(spec, ChainLocator::new(0, m), b).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<G> {
        v.iter().map(|&x| G::int(x)).collect()
    }

    #[test]
    fn determinant_lemma_examples() {
        let id = Matrix::<G>::identity(2);
        assert_eq!(det_rank1_update(&id, &ints(&[1, 0]), &ints(&[1, 0])).unwrap(), G::int(2));
        assert_eq!(det_rank1_update(&id, &ints(&[3, -7]), &ints(&[0, 0])).unwrap(), G::int(1));
        let j = Matrix::from_rows(vec![ints(&[2, 1]), ints(&[0, 2])]).unwrap();
        assert_eq!(det_rank1_update(&j, &ints(&[1, 0]), &ints(&[0, 1])).unwrap(), G::int(4));
        let sing = Matrix::from_rows(vec![ints(&[1, 1]), ints(&[1, 1])]).unwrap();
        assert_eq!(det_rank1_update(&sing, &ints(&[1, 0]), &ints(&[0, 1])), Err(PerturbError::SingularMatrix));
    }

    #[test]
    fn resolvent_examples() {
        let p1 = single(2, 2, 1, ints(&[0, 0]));
        assert_eq!(resolvent_action(&p1, &G::int(3)).unwrap(), ints(&[1, 0]));
        let p2 = single(2, 2, 2, ints(&[0, 0]));
        assert_eq!(resolvent_action(&p2, &G::int(3)).unwrap(), ints(&[1, 1]));
        assert_eq!(resolvent_action(&p2, &G::int(4)).unwrap(), vec![G::frac(1, 4), G::frac(1, 2)]);
        assert!(matches!(resolvent_action(&p2, &G::int(2)), Err(PerturbError::SpectrumCollision(_))));
    }

    #[test]
    fn factor_reduces_to_brauer() {
        let p = single(5, 1, 1, ints(&[2]));
        let f = update_char_factor(&p);
        assert_eq!(f.f, Poly::new(ints(&[-7, 1])));
        assert_eq!(updated_char_poly(&p).unwrap(), Poly::new(ints(&[-7, 1])));
        let Roots::Exact(r) = new_eigenvalues(&p, RootMode::Exact).unwrap() else { panic!() };
        assert_eq!(r[0].value, G::int(7));
    }

    #[test]
    fn zero_update() {
        let p = single(3, 4, 3, ints(&[0, 0, 0, 0]));
        assert_eq!(update_char_factor(&p).f, Poly::linear_power(G::int(3), 3));
        assert_eq!(changed_eigenvalue_bound(&p), 0);
        assert_eq!(updated_char_poly(&p).unwrap(), p.spec().char_poly());
    }

    #[test]
    fn one_vanishing_moment() {
        // x_1 = e_1, x_2 = e_2; b = c e_2 gives b*x_1 = 0, b*x_2 = c
        let p = single(4, 3, 2, ints(&[0, 5, 0]));
        assert_eq!(changed_eigenvalue_bound(&p), 1);
        let roots = new_eigenvalues_exact(&p).unwrap();
        let values: Vec<G> = roots.iter().map(|r| r.value.clone()).collect();
        assert_eq!(values, ints(&[4, 9]));
    }

    #[test]
    fn bad_inputs() {
        let spec = JordanSpec::from_blocks([(G::int(1), 2)]);
        assert_eq!(
            PerturbationProblem::new(spec.clone(), ChainLocator::new(0, 1), ints(&[1])).unwrap_err(),
            PerturbError::LengthMismatch { expected: 2, got: 1 }
        );
        assert!(PerturbationProblem::new(spec.clone(), ChainLocator::new(0, 3), ints(&[1, 1])).is_err());
        assert!(PerturbationProblem::new(spec, ChainLocator::new(0, 0), ints(&[1, 1])).is_err());
    }
}
