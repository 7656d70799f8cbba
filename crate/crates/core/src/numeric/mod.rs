//! Exact scalars, polynomials, dense matrices and root extraction.

mod gauss;
mod matrix;
mod poly;
mod rational;
mod roots;
mod scalar;

pub use gauss::GaussScalar;
pub use matrix::Matrix;
pub use poly::Poly;
pub use rational::Rational;
pub use roots::{
    exact_roots, numeric_roots, poly_roots, ExactRoot, NumericRoot, RootMode, Roots,
    NUMERIC_RESIDUAL_BOUND,
};
pub use scalar::{axpy, inner, norm2, scale, Scalar, FLOAT_ZERO_TOL};

pub use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}` as a rational or gaussian rational")]
    Parse(String),
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("degree-{degree} factor has no exact gaussian-rational roots; use numeric mode")]
    ExactModeUnavailable { degree: usize },
    #[error("polynomial not divisible by the linear factor (remainder nonzero at step {step})")]
    NotDivisible { step: usize },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix rows have different lengths")]
    Ragged,
}

/// Vectors are plain coefficient lists.
pub type Vector<T> = Vec<T>;
