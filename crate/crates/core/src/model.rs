//! Matrices assembled from Jordan data, and their Jordan chains.

use serde::{Deserialize, Serialize};

use crate::numeric::{Matrix, NumericError, Poly, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanBlock<T> {
    pub eigenvalue: T,
    pub size: usize,
}

impl<T: Scalar> JordanBlock<T> {
    pub fn new(eigenvalue: T, size: usize) -> Self {
        Self { eigenvalue, size }
    }

    /// Upper-triangular block with the eigenvalue on the diagonal and ones above it.
    pub fn matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.size, self.size, |i, j| {
            if i == j {
                self.eigenvalue.clone()
            } else if i + 1 == j {
                T::one()
            } else {
                T::zero()
            }
        })
    }
}

/// Identifies the chain vector of a given rank (1-based) inside a block (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainLocator {
    pub block: usize,
    pub rank: usize,
}

impl ChainLocator {
    pub fn new(block: usize, rank: usize) -> Self {
        Self { block, rank }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
pub enum Diagnostic {
    #[error("block list is empty")]
    EmptyBlocks,
    #[error("block {index} has size 0")]
    ZeroSizeBlock { index: usize },
    #[error("similarity is {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch { expected: usize, rows: usize, cols: usize },
    #[error("similarity matrix is singular")]
    SingularSimilarity,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid Jordan specification: {0:?}")]
    InvalidSpec(Vec<Diagnostic>),
    #[error("similarity matrix is singular")]
    SingularSimilarity,
    #[error("no chain vector of rank {rank} in block {block}")]
    LocatorOutOfRange { block: usize, rank: usize },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Jordan blocks in a fixed order plus an optional similarity `S`; the
/// described matrix is `A = S J S⁻¹` and the chain of block `k` consists of
/// the columns of `S` spanning that block.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanSpec<T> {
    pub blocks: Vec<JordanBlock<T>>,
    pub similarity: Option<Matrix<T>>,
}

impl<T: Scalar> JordanSpec<T> {
    pub fn new(blocks: Vec<JordanBlock<T>>, similarity: Option<Matrix<T>>) -> Self {
        Self { blocks, similarity }
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = (T, usize)>) -> Self {
        Self::new(blocks.into_iter().map(|(e, s)| JordanBlock::new(e, s)).collect(), None)
    }

    pub fn with_similarity(mut self, s: Matrix<T>) -> Self {
        self.similarity = Some(s);
        self
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Index of the first basis vector of `block`.
    pub fn offset(&self, block: usize) -> usize {
        self.blocks[..block].iter().map(|b| b.size).sum()
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.blocks.is_empty() {
            out.push(Diagnostic::EmptyBlocks);
        }
        for (index, b) in self.blocks.iter().enumerate() {
            if b.size == 0 {
                out.push(Diagnostic::ZeroSizeBlock { index });
            }
        }
        if let Some(s) = &self.similarity {
            let n = self.dim();
            if s.rows() != n || s.cols() != n {
                out.push(Diagnostic::DimensionMismatch { expected: n, rows: s.rows(), cols: s.cols() });
            } else if s.det().map_or(true, |d| d.is_negligible(1.0)) {
                out.push(Diagnostic::SingularSimilarity);
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), ModelError> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(ModelError::InvalidSpec(diags))
        }
    }

    /// Block-diagonal Jordan matrix `J`.
    pub fn jordan_matrix(&self) -> Matrix<T> {
        let n = self.dim();
        let mut j = Matrix::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            for i in 0..b.size {
                j[(off + i, off + i)] = b.eigenvalue.clone();
                if i + 1 < b.size {
                    j[(off + i, off + i + 1)] = T::one();
                }
            }
            off += b.size;
        }
        j
    }

    pub fn similarity_matrix(&self) -> Matrix<T> {
        self.similarity.clone().unwrap_or_else(|| Matrix::identity(self.dim()))
    }

    /// `S J S⁻¹`.
    pub fn assemble_matrix(&self) -> Result<Matrix<T>, ModelError> {
        self.ensure_valid()?;
        let j = self.jordan_matrix();
        match &self.similarity {
            None => Ok(j),
            Some(s) => {
                let s_inv = s.inverse().map_err(|_| ModelError::SingularSimilarity)?;
                Ok(s.mul(&j).mul(&s_inv))
            }
        }
    }

    /// `S e_{offset + rank}`; rank 0 gives the zero vector.
    pub fn chain_vector(&self, loc: ChainLocator) -> Result<Vector<T>, ModelError> {
        let block = self
            .blocks
            .get(loc.block)
            .ok_or(ModelError::LocatorOutOfRange { block: loc.block, rank: loc.rank })?;
        if loc.rank > block.size {
            return Err(ModelError::LocatorOutOfRange { block: loc.block, rank: loc.rank });
        }
        let n = self.dim();
        if loc.rank == 0 {
            return Ok(vec![T::zero(); n]);
        }
        let col = self.offset(loc.block) + loc.rank - 1;
        Ok(match &self.similarity {
            Some(s) => s.column(col),
            None => (0..n).map(|i| if i == col { T::one() } else { T::zero() }).collect(),
        })
    }

    /// Whole chain `x_1, …, x_size` of a block.
    pub fn chain(&self, block: usize) -> Result<Vec<Vector<T>>, ModelError> {
        let size = self
            .blocks
            .get(block)
            .ok_or(ModelError::LocatorOutOfRange { block, rank: 1 })?
            .size;
        (1..=size).map(|r| self.chain_vector(ChainLocator::new(block, r))).collect()
    }

    /// `Π (t − λ_block)^size`.
    pub fn char_poly(&self) -> Poly<T> {
        self.blocks.iter().fold(Poly::one(), |acc, b| {
            &acc * &Poly::linear_power(b.eigenvalue.clone(), b.size)
        })
    }
}

/// Block-diagonal similarity whose block `k` is the upper-triangular all-ones
/// matrix, so that the chain of each block reads `x_j = e_1 + … + e_j`
/// (relative to the block). It commutes with `J`, so `S J S⁻¹ = J`.
pub fn cumulative_similarity<T: Scalar>(sizes: &[usize]) -> Matrix<T> {
    let n = sizes.iter().sum();
    let mut s = Matrix::zeros(n, n);
    let mut off = 0;
    for &size in sizes {
        for i in 0..size {
            for j in i..size {
                s[(off + i, off + j)] = T::one();
            }
        }
        off += size;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussScalar as G;

    fn reference_spec() -> JordanSpec<G> {
        JordanSpec::from_blocks([(G::int(2), 6), (G::int(2), 3), (G::int(1), 2)])
    }

    #[test]
    fn single_block_is_jordan_matrix() {
        let spec = JordanSpec::from_blocks([(G::int(2), 2)]);
        let a = spec.assemble_matrix().unwrap();
        assert_eq!(a.to_rows(), vec![vec![G::int(2), G::int(1)], vec![G::int(0), G::int(2)]]);
    }

    #[test]
    fn direct_sum_layout() {
        let a = reference_spec().assemble_matrix().unwrap();
        assert_eq!((a.rows(), a.cols()), (11, 11));
        assert_eq!(a[(5, 6)], G::int(0));
        assert_eq!(a[(6, 7)], G::int(1));
        assert_eq!(a[(9, 9)], G::int(1));
        assert_eq!(a[(9, 10)], G::int(1));
    }

    #[test]
    fn one_by_one_similarity() {
        let spec = JordanSpec::from_blocks([(G::int(0), 1)])
            .with_similarity(Matrix::from_rows(vec![vec![G::int(2)]]).unwrap());
        assert_eq!(spec.assemble_matrix().unwrap().to_rows(), vec![vec![G::int(0)]]);
    }

    #[test]
    fn cumulative_chain_vectors() {
        let spec = reference_spec().with_similarity(cumulative_similarity(&[6, 3, 2]));
        assert_eq!(spec.assemble_matrix().unwrap(), reference_spec().jordan_matrix());
        let x3 = spec.chain_vector(ChainLocator::new(0, 3)).unwrap();
        let expected: Vec<G> = (0..11).map(|i| G::int((i < 3) as i64)).collect();
        assert_eq!(x3, expected);
        let y2 = spec.chain_vector(ChainLocator::new(1, 2)).unwrap();
        let expected: Vec<G> = (0..11).map(|i| G::int((i == 6 || i == 7) as i64)).collect();
        assert_eq!(y2, expected);
    }

    #[test]
    fn chain_relation_other_block() {
        let spec = reference_spec().with_similarity(cumulative_similarity(&[6, 3, 2]));
        let a = spec.assemble_matrix().unwrap();
        let y1 = spec.chain_vector(ChainLocator::new(1, 1)).unwrap();
        let y2 = spec.chain_vector(ChainLocator::new(1, 2)).unwrap();
        let lhs = a.mul_vec(&y2);
        let rhs: Vec<G> = y2.iter().zip(&y1).map(|(v, p)| G::int(2) * v.clone() + p.clone()).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn locator_out_of_range() {
        let spec = reference_spec();
        assert!(matches!(
            spec.chain_vector(ChainLocator::new(2, 3)),
            Err(ModelError::LocatorOutOfRange { block: 2, rank: 3 })
        ));
        assert!(spec.chain_vector(ChainLocator::new(3, 1)).is_err());
    }

    #[test]
    fn diagnostics() {
        assert!(reference_spec().validate().is_empty());
        let wrong = reference_spec().with_similarity(Matrix::identity(3));
        assert_eq!(
            wrong.validate(),
            vec![Diagnostic::DimensionMismatch { expected: 11, rows: 3, cols: 3 }]
        );
        let zero = reference_spec().with_similarity(Matrix::zeros(11, 11));
        assert_eq!(zero.validate(), vec![Diagnostic::SingularSimilarity]);
        assert_eq!(JordanSpec::<G>::from_blocks([]).validate(), vec![Diagnostic::EmptyBlocks]);
        assert!(matches!(zero.assemble_matrix(), Err(ModelError::InvalidSpec(_))));
    }
}
