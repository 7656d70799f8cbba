//! Brute-force checks that share no code path with the closed-form results:
//! direct update assembly, chain relations by matrix-vector products,
//! Faddeev–LeVerrier characteristic polynomials and Jordan structure from
//! rank sequences.

use serde::{Deserialize, Serialize};

use crate::numeric::{exact_roots, norm2, GaussScalar, Matrix, NumericError, Poly, Scalar, Vector};
use crate::perturb::PerturbationProblem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("vector is zero")]
    ZeroVector,
    #[error("supplied eigenvalues account for {found} of {n} dimensions")]
    IncompleteSpectrum { found: usize, n: usize },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// `A + x_m b*` assembled entry by entry.
pub fn apply_update<T: Scalar>(p: &PerturbationProblem<T>) -> Matrix<T> {
    let a = p.matrix();
    let x = p.x_m();
    let b = p.b();
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)].clone() + x[i].clone() * b[j].conj())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub passed: bool,
    /// 1-based index of the first vector violating `M v_t = λ v_t + v_{t−1}`.
    pub failed_at: Option<usize>,
    pub reason: Option<String>,
}

impl ChainVerdict {
    fn pass() -> Self {
        Self { passed: true, failed_at: None, reason: None }
    }

    fn fail(at: usize, reason: impl Into<String>) -> Self {
        Self { passed: false, failed_at: Some(at), reason: Some(reason.into()) }
    }
}

/// Exact chain check: `v_1 ≠ 0` and `M v_t = λ v_t + v_{t−1}` with `v_0 = 0`.
pub fn verify_chain<T: Scalar>(m: &Matrix<T>, eigenvalue: &T, vectors: &[Vector<T>]) -> ChainVerdict {
    if vectors.is_empty() {
        return ChainVerdict::fail(1, "empty chain");
    }
    if vectors[0].iter().all(Scalar::is_zero) {
        return ChainVerdict::fail(1, "first vector is zero");
    }
    let n = m.rows();
    let zero = vec![T::zero(); n];
    for (k, v) in vectors.iter().enumerate() {
        if v.len() != n {
            return ChainVerdict::fail(k + 1, "length mismatch");
        }
        let prev = if k == 0 { &zero } else { &vectors[k - 1] };
        if !chain_step_holds(m, eigenvalue, v, prev) {
            return ChainVerdict::fail(k + 1, "chain relation violated");
        }
    }
    ChainVerdict::pass()
}

/// Whether `M v = λ v + prev` holds exactly.
pub fn chain_step_holds<T: Scalar>(m: &Matrix<T>, eigenvalue: &T, v: &[T], prev: &[T]) -> bool {
    m.mul_vec(v)
        .into_iter()
        .zip(v)
        .zip(prev)
        .all(|((a, vi), pi)| (a - eigenvalue.clone() * vi.clone() - pi.clone()).is_zero())
}

/// `‖M v_t − λ v_t − v_{t−1}‖₂` for every `t`.
pub fn chain_residuals<T: Scalar>(m: &Matrix<T>, eigenvalue: &T, vectors: &[Vector<T>]) -> Vec<f64> {
    let n = m.rows();
    let zero = vec![T::zero(); n];
    vectors
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let prev = if k == 0 { &zero } else { &vectors[k - 1] };
            let r: Vec<T> = m
                .mul_vec(v)
                .into_iter()
                .zip(v)
                .zip(prev)
                .map(|((a, vi), pi)| a - eigenvalue.clone() * vi.clone() - pi.clone())
                .collect();
            norm2(&r)
        })
        .collect()
}

/// Smallest `k ≤ n` with `(M − λI)^k v = 0`, if any.
pub fn generalized_rank<T: Scalar>(m: &Matrix<T>, eigenvalue: &T, v: &[T]) -> Result<Option<usize>, OracleError> {
    if v.iter().all(Scalar::is_zero) {
        return Err(OracleError::ZeroVector);
    }
    let shifted = m.shifted(eigenvalue);
    let mut w = v.to_vec();
    for k in 1..=m.rows() {
        w = shifted.mul_vec(&w);
        if w.iter().all(Scalar::is_zero) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `det(tI − M)` by the Faddeev–LeVerrier recursion.
pub fn char_poly_direct<T: Scalar>(m: &Matrix<T>) -> Poly<T> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = −tr(A M_k) / k
    let mut mk = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let am = m.mul(&next);
        let trace = (0..n).fold(T::zero(), |acc, i| acc + am[(i, i)].clone());
        coeffs[n - k] = -(trace / T::from_i64(k as i64));
        mk = next;
    }
    Poly::new(coeffs)
}

/// `det M` read off the constant term of the characteristic polynomial.
pub fn det_direct<T: Scalar>(m: &Matrix<T>) -> T {
    let c0 = char_poly_direct(m).coeffs().first().cloned().unwrap_or_else(T::zero);
    if m.rows().is_multiple_of(2) {
        c0
    } else {
        -c0
    }
}

/// Reduced row echelon form; pivots are the first nonzero entry scanning
/// columns left to right. Returns the pivot columns.
fn rref(m: &Matrix<GaussScalar>) -> (Matrix<GaussScalar>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix<GaussScalar>) -> usize {
    rref(m).1.len()
}

/// Exact kernel basis, one vector per free column.
pub fn nullspace(m: &Matrix<GaussScalar>) -> Vec<Vector<GaussScalar>> {
    let (a, pivots) = rref(m);
    let cols = m.cols();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![GaussScalar::zero(); cols];
            v[free] = GaussScalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[(row, free)].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlocks {
    pub eigenvalue: GaussScalar,
    /// Block sizes in nonincreasing order.
    pub block_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanStructure {
    pub entries: Vec<EigenBlocks>,
}

impl JordanStructure {
    pub fn dim(&self) -> usize {
        self.entries.iter().flat_map(|e| &e.block_sizes).sum()
    }

    /// `(eigenvalue, size)` pairs sorted by eigenvalue then decreasing size.
    pub fn blocks(&self) -> Vec<(GaussScalar, usize)> {
        let mut out: Vec<(GaussScalar, usize)> = self
            .entries
            .iter()
            .flat_map(|e| e.block_sizes.iter().map(move |&s| (e.eigenvalue.clone(), s)))
            .collect();
        sort_blocks(&mut out);
        out
    }
}

pub fn sort_blocks(blocks: &mut [(GaussScalar, usize)]) {
    blocks.sort_by(|(a, s), (b, t)| (&a.re, &a.im, std::cmp::Reverse(s)).cmp(&(&b.re, &b.im, std::cmp::Reverse(t))));
}

/// Block sizes for one eigenvalue from the ranks of `(M − λI)^k`.
pub fn block_sizes(m: &Matrix<GaussScalar>, eigenvalue: &GaussScalar) -> Vec<usize> {
    let n = m.rows();
    let shifted = m.shifted(eigenvalue);
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    loop {
        power = power.mul(&shifted);
        let r = rank(&power);
        let last = *ranks.last().unwrap();
        if r == last {
            break;
        }
        ranks.push(r);
    }
    // Weyr characteristic w_k = rank drop; #blocks of size ≥ k is w_k
    let weyr: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in 1..=weyr.len() {
        let at_least = weyr[k - 1];
        let longer = weyr.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, at_least - longer));
    }
    sizes.reverse();
    sizes
}

pub fn jordan_structure(m: &Matrix<GaussScalar>, eigenvalues: &[GaussScalar]) -> Result<JordanStructure, OracleError> {
    let mut distinct: Vec<GaussScalar> = Vec::new();
    for e in eigenvalues {
        if !distinct.contains(e) {
            distinct.push(e.clone());
        }
    }
    let entries: Vec<EigenBlocks> = distinct
        .into_iter()
        .map(|e| EigenBlocks { block_sizes: block_sizes(m, &e), eigenvalue: e })
        .filter(|e| !e.block_sizes.is_empty())
        .collect();
    let s = JordanStructure { entries };
    if s.dim() != m.rows() {
        return Err(OracleError::IncompleteSpectrum { found: s.dim(), n: m.rows() });
    }
    Ok(s)
}

/// Exact eigenvalues from the characteristic polynomial.
pub fn exact_spectrum(m: &Matrix<GaussScalar>) -> Result<Vec<GaussScalar>, OracleError> {
    Ok(exact_roots(&char_poly_direct(m))?.into_iter().map(|r| r.value).collect())
}

/// Number of distinct eigenvalues of `A + x_m b*` that are not eigenvalues of `A`.
///
/// Works without locating the roots: strips every factor `(t − λ_k)` of the
/// direct characteristic polynomial and counts the square-free remainder.
pub fn count_changed_eigenvalues(p: &PerturbationProblem<GaussScalar>) -> usize {
    let mut rest = char_poly_direct(&apply_update(p));
    for block in &p.spec().blocks {
        while let Ok(q) = rest.divide_linear(&block.eigenvalue, 1) {
            if q.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.squarefree().degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ChainLocator, JordanSpec};
    use crate::numeric::GaussScalar as G;

    fn ints(rows: &[&[i64]]) -> Matrix<G> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| G::int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn char_poly_of_jordan_block() {
        let j = ints(&[&[3, 1], &[0, 3]]);
        assert_eq!(char_poly_direct(&j), Poly::linear_power(G::int(3), 2));
    }

    #[test]
    fn char_poly_integer_matrix_has_integer_coeffs() {
        let m = ints(&[&[1, 2, 0], &[-1, 3, 4], &[2, 0, 5]]);
        let p = char_poly_direct(&m);
        assert!(p.coeffs().iter().all(|c| c.re.is_integer() && c.im.is_zero()));
        assert_eq!(det_direct(&m), m.det().unwrap());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Matrix::zeros(3, 3)).len(), 3);
        assert!(nullspace(&Matrix::identity(3)).is_empty());
        let k = nullspace(&ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(k, vec![vec![G::int(1), G::int(0)]]);
        let m = ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        for v in nullspace(&m) {
            assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn verify_chain_examples() {
        let spec = JordanSpec::from_blocks([(G::int(2), 3)]);
        let a = spec.assemble_matrix().unwrap();
        let chain = spec.chain(0).unwrap();
        assert!(verify_chain(&a, &G::int(2), &chain).passed);
        let lone = vec![chain[1].clone()];
        assert_eq!(verify_chain(&a, &G::int(2), &lone).failed_at, Some(1));
        assert_eq!(verify_chain(&a, &G::int(7), &chain).failed_at, Some(1));
    }

    #[test]
    fn generalized_rank_examples() {
        let spec = JordanSpec::from_blocks([(G::int(2), 6), (G::int(2), 3), (G::int(1), 2)]);
        let a = spec.assemble_matrix().unwrap();
        let x3 = spec.chain_vector(ChainLocator::new(0, 3)).unwrap();
        assert_eq!(generalized_rank(&a, &G::int(2), &x3).unwrap(), Some(3));
        let x1 = spec.chain_vector(ChainLocator::new(0, 1)).unwrap();
        assert_eq!(generalized_rank(&a, &G::int(1), &x1).unwrap(), None);
        assert_eq!(generalized_rank(&a, &G::int(1), &vec![G::int(0); 11]), Err(OracleError::ZeroVector));
    }

    #[test]
    fn structure_of_diagonal() {
        let d = ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let s = jordan_structure(&d, &[G::int(1), G::int(2), G::int(3)]).unwrap();
        assert_eq!(s.blocks(), vec![(G::int(1), 1), (G::int(2), 1), (G::int(3), 1)]);
        assert_eq!(
            jordan_structure(&d, &[G::int(1)]),
            Err(OracleError::IncompleteSpectrum { found: 1, n: 3 })
        );
    }

    #[test]
    fn structure_round_trip() {
        let spec = JordanSpec::from_blocks([(G::int(0), 3), (G::int(0), 1), (G::int(0), 3), (G::int(-1), 2)]);
        let a = spec.assemble_matrix().unwrap();
        let s = jordan_structure(&a, &exact_spectrum(&a).unwrap()).unwrap();
        assert_eq!(s.blocks(), vec![(G::int(-1), 2), (G::int(0), 3), (G::int(0), 3), (G::int(0), 1)]);
    }
}
