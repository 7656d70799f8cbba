use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Relative threshold under which a floating-point value is treated as zero.
pub const FLOAT_ZERO_TOL: f64 = 1e-12;

/// Field operations shared by the exact and floating-point paths.
///
/// Division by an exact zero is a caller bug; every algorithm in this crate
/// checks `is_negligible` on a denominator before dividing.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn modulus(&self) -> f64;
    fn to_complex(&self) -> Complex64;

    /// Zero test relative to `scale`. Exact scalars ignore `scale`.
    fn is_negligible(&self, scale: f64) -> bool;

    fn is_exact() -> bool;

    fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.norm() <= FLOAT_ZERO_TOL * scale.max(f64::MIN_POSITIVE)
    }

    fn is_exact() -> bool {
        false
    }
}

/// Conjugate-linear inner product `b* x = Σ conj(b_i) x_i`.
pub fn inner<T: Scalar>(b: &[T], x: &[T]) -> T {
    assert_eq!(b.len(), x.len(), "inner product of mismatched vectors");
    b.iter()
        .zip(x)
        .fold(T::zero(), |acc, (bi, xi)| acc + bi.conj() * xi.clone())
}

pub fn norm2<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
}

pub fn axpy<T: Scalar>(alpha: &T, x: &[T], y: &mut [T]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = yi.clone() + alpha.clone() * xi.clone();
    }
}

pub fn scale<T: Scalar>(alpha: &T, x: &[T]) -> Vec<T> {
    x.iter().map(|xi| alpha.clone() * xi.clone()).collect()
}
