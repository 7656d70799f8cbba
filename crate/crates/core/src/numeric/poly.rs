use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{NumericError, Scalar};

/// Dense univariate polynomial, `coeffs[i]` multiplies `t^i`.
///
/// The coefficient list never ends in an exact zero; the zero polynomial has
/// no coefficients.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `t - root`
    pub fn linear(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    /// `(t - root)^k`
    pub fn linear_power(root: T, k: usize) -> Self {
        let base = Self::linear(root);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    /// Expands `Σ shifted[i] (t - center)^i` into the monomial basis.
    pub fn from_shifted(shifted: &[T], center: &T) -> Self {
        let base = Self::linear(center.clone());
        // Horner in the shifted variable
        let mut acc = Self::zero();
        for c in shifted.iter().rev() {
            acc = &(&acc * &base) + &Self::constant(c.clone());
        }
        acc
    }

    /// Taylor coefficients about `center`: returns `s` with `self = Σ s[i] (t - center)^i`.
    pub fn to_shifted(&self, center: &T) -> Vec<T> {
        let mut rest = self.coeffs.clone();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let (q, r) = synthetic_division(&rest, center);
            out.push(r);
            rest = q;
        }
        out
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, v: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * v.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Result<Self, NumericError> {
        let lead = self.leading().ok_or(NumericError::ZeroPolynomial)?;
        Ok(self.scale(&(T::one() / lead.clone())))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| T::from_i64(i as i64) * c.clone())
                .collect(),
        )
    }

    /// Divides by `(t - root)^k`, checking that every synthetic-division
    /// remainder vanishes.
    pub fn divide_linear(&self, root: &T, k: usize) -> Result<Self, NumericError> {
        let mut current = self.coeffs.clone();
        for step in 0..k {
            if current.is_empty() {
                // zero polynomial divides to zero
                break;
            }
            let (q, r) = synthetic_division(&current, root);
            if !r.is_zero() {
                return Err(NumericError::NotDivisible { step: step + 1 });
            }
            current = q;
        }
        Ok(Self::new(current))
    }

    /// Euclidean division; exact for exact scalars.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), NumericError> {
        let dd = divisor.degree().ok_or(NumericError::ZeroPolynomial)?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (exact scalars).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().unwrap_or_else(|_| Self::zero())
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic().unwrap_or_else(|_| Self::zero());
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g).expect("gcd is nonzero");
        q.monic().expect("nonzero quotient")
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Divides `coeffs` by `(t - root)`, returning quotient and remainder.
fn synthetic_division<T: Scalar>(coeffs: &[T], root: &T) -> (Vec<T>, T) {
    let mut q = vec![T::zero(); coeffs.len().saturating_sub(1)];
    let mut carry = T::zero();
    for i in (0..coeffs.len()).rev() {
        let v = coeffs[i].clone() + carry * root.clone();
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v.clone();
        carry = v;
    }
    (q, T::zero())
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            // a single term like "3", "-1/2" or "2i" needs no parentheses
            let simple = !text[1..].contains(['+', '-']);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ if simple => (false, text),
                _ => (false, format!("({text})")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = body == "1";
            let body = if i > 0 && simple && body.ends_with('i') { format!("({body})") } else { body };
            match i {
                0 => write!(f, "{body}")?,
                _ if unit && i == 1 => write!(f, "t")?,
                _ if unit => write!(f, "t^{i}")?,
                1 => write!(f, "{body}t")?,
                _ => write!(f, "{body}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussScalar as G;

    #[test]
    fn display_signs() {
        let p: Poly<G> = Poly::new(vec![G::int(-3), G::int(-2), G::int(1)]);
        assert_eq!(p.to_string(), "t^2 - 2t - 3");
        let q: Poly<G> = Poly::new(vec![G::int_complex(1, -1), G::i(), G::frac(-1, 2)]);
        assert_eq!(q.to_string(), "-1/2t^2 + (i)t + (1-i)");
    }

    fn p(c: &[i64]) -> Poly<G> {
        Poly::new(c.iter().map(|&v| G::int(v)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn eval_examples() {
        // t² − 1 at 1
        assert_eq!(p(&[-1, 0, 1]).eval(&G::int(1)), G::int(0));
        // (t−2)² + 2(t−2) − 3 expanded by hand is t² − 2t − 3
        let f = Poly::from_shifted(&[G::int(-3), G::int(2), G::int(1)], &G::int(2));
        assert_eq!(f, p(&[-3, -2, 1]));
        assert_eq!(f.eval(&G::int(3)), G::int(0));
        assert_eq!(f.eval(&G::int(-1)), G::int(0));
        assert_eq!(f.eval(&G::int(0)), G::int(-3));
    }

    #[test]
    fn divide_linear_examples() {
        let cube = Poly::linear_power(G::int(2), 3);
        assert_eq!(cube.divide_linear(&G::int(2), 2).unwrap(), Poly::linear(G::int(2)));

        let big = &Poly::linear_power(G::int(2), 9) * &Poly::linear_power(G::int(1), 2);
        let expected = &Poly::linear_power(G::int(2), 7) * &Poly::linear_power(G::int(1), 2);
        assert_eq!(big.divide_linear(&G::int(2), 2).unwrap(), expected);

        assert_eq!(
            p(&[1, 0, 1]).divide_linear(&G::int(1), 1),
            Err(NumericError::NotDivisible { step: 1 })
        );
    }

    #[test]
    fn shifted_round_trip() {
        let f = p(&[5, -1, 0, 3]);
        let c = G::frac(-2, 3);
        let s = f.to_shifted(&c);
        assert_eq!(Poly::from_shifted(&s, &c), f);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = &Poly::linear_power(G::int(2), 3) * &Poly::linear(G::int(-1));
        let b = &Poly::linear_power(G::int(2), 1) * &Poly::linear(G::int(5));
        assert_eq!(a.gcd(&b), Poly::linear(G::int(2)));
        assert_eq!(a.squarefree(), &Poly::linear(G::int(2)) * &Poly::linear(G::int(-1)));
    }
}
