use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{NumericError, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<T>>", try_from = "Vec<Vec<T>>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, NumericError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumericError::Ragged);
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                let a = &self[(i, k)];
                if a.is_zero() {
                    acc
                } else {
                    acc + a.clone() * rhs[(k, j)].clone()
                }
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, x)| {
                    if a.is_zero() || x.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * x.clone()
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }

    /// `self - shift * I`
    pub fn shifted(&self, shift: &T) -> Matrix<T> {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = out[(i, i)].clone() - shift.clone();
        }
        out
    }

    /// `x y*` (conjugate on `y`).
    pub fn outer(x: &[T], y: &[T]) -> Matrix<T> {
        Matrix::from_fn(x.len(), y.len(), |i, j| x[i].clone() * y[j].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if T::is_exact() {
            (from..self.rows).find(|&r| !self[(r, col)].is_zero())
        } else {
            (from..self.rows)
                .filter(|&r| !self[(r, col)].is_zero())
                .max_by(|&a, &b| self[(a, col)].modulus().total_cmp(&self[(b, col)].modulus()))
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<T, NumericError> {
        if !self.is_square() {
            return Err(NumericError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = m.pivot_row(col, col) else {
                return Ok(T::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pivot.clone();
                for j in col..n {
                    m[(r, j)] = m[(r, j)].clone() - factor.clone() * m[(col, j)].clone();
                }
            }
        }
        Ok(det)
    }

    /// Solves `self · X = rhs` by Gauss–Jordan elimination.
    pub fn solve_matrix(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, NumericError> {
        if !self.is_square() {
            return Err(NumericError::NotSquare);
        }
        let n = self.rows;
        assert_eq!(rhs.rows, n, "right-hand side has wrong height");
        let w = n + rhs.cols;
        let mut aug = Matrix::from_fn(n, w, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        for col in 0..n {
            let p = aug.pivot_row(col, col).ok_or(NumericError::Singular)?;
            aug.swap_rows(p, col);
            let inv = T::one() / aug[(col, col)].clone();
            for j in col..w {
                aug[(col, j)] = aug[(col, j)].clone() * inv.clone();
            }
            for r in 0..n {
                if r == col || aug[(r, col)].is_zero() {
                    continue;
                }
                let factor = aug[(r, col)].clone();
                for j in col..w {
                    aug[(r, j)] = aug[(r, j)].clone() - factor.clone() * aug[(col, j)].clone();
                }
            }
        }
        Ok(Matrix::from_fn(n, rhs.cols, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>, NumericError> {
        let b = Matrix::from_columns(&[rhs.to_vec()]);
        Ok(self.solve_matrix(&b)?.column(0))
    }

    pub fn inverse(&self) -> Result<Matrix<T>, NumericError> {
        self.solve_matrix(&Matrix::identity(self.rows))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> From<Matrix<T>> for Vec<Vec<T>> {
    fn from(m: Matrix<T>) -> Self {
        m.to_rows()
    }
}

impl<T: Scalar> TryFrom<Vec<Vec<T>>> for Matrix<T> {
    type Error = NumericError;
    fn try_from(rows: Vec<Vec<T>>) -> Result<Self, Self::Error> {
        Matrix::from_rows(rows)
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussScalar as G;
    use num_complex::Complex64;

    fn m(rows: &[&[i64]]) -> Matrix<G> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| G::int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[0, 2]]);
        assert_eq!(a.det().unwrap(), G::int(4));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det().unwrap(), G::int(0));
        assert_eq!(s.inverse(), Err(NumericError::Singular));
    }

    #[test]
    fn det_needs_row_swap() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(a.det().unwrap(), G::int(-3));
    }

    #[test]
    fn outer_conjugates_right_factor() {
        let x = vec![G::int(1), G::int(2)];
        let y = vec![G::i(), G::int(3)];
        let o = Matrix::outer(&x, &y);
        assert_eq!(o[(1, 0)], "-2i".parse().unwrap());
        assert_eq!(o[(0, 1)], G::int(3));
    }

    #[test]
    fn float_solve_pivots() {
        let a = Matrix::from_rows(vec![
            vec![Complex64::new(1e-20, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
        .unwrap();
        let x = a.solve(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]).unwrap();
        assert!((x[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![G::int(1)], vec![G::int(1), G::int(2)]];
        assert_eq!(Matrix::from_rows(rows), Err(NumericError::Ragged));
    }
}
