use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{NumericError, Rational, Scalar};

/// Complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussScalar {
    pub re: Rational,
    #[serde(default)]
    pub im: Rational,
}

impl GaussScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn int(v: i64) -> Self {
        Self::real(Rational::from(v))
    }

    pub fn int_complex(re: i64, im: i64) -> Self {
        Self::new(Rational::from(re), Rational::from(im))
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        Self::real(Rational::new(p, q).expect("nonzero denominator"))
    }

    pub fn i() -> Self {
        Self::int_complex(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared modulus `re² + im²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, NumericError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Exact square root in the Gaussian rationals, when one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.im.is_zero() {
            if let Some(r) = self.re.sqrt_exact() {
                return Some(Self::real(r));
            }
            return (-&self.re).sqrt_exact().map(|r| Self::new(Rational::zero(), r));
        }
        // (x + iy)² = re + i·im with x² = (re + |z|)/2, y = im / 2x
        let modulus = self.norm_sqr().sqrt_exact()?;
        let two = Rational::from(2);
        let x = ((&self.re + &modulus) / two.clone()).sqrt_exact()?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / &(&two * &x);
        let root = Self::new(x, y);
        (root.clone() * root.clone() == *self).then_some(root)
    }
}

impl Add for GaussScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(self.re * rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(self.re / rhs.re);
        }
        self * rhs.inv().expect("gaussian division by zero")
    }
}

impl Neg for GaussScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Scalar for GaussScalar {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::int(1)
    }

    fn from_i64(v: i64) -> Self {
        Self::int(v)
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn is_exact() -> bool {
        true
    }
}

impl From<Rational> for GaussScalar {
    fn from(value: Rational) -> Self {
        Self::real(value)
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im == Rational::one() {
            String::new()
        } else if self.im == -Rational::one() {
            "-".to_string()
        } else {
            self.im.to_string()
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if im.starts_with('-') {
            write!(f, "{}{im}i", self.re)
        } else {
            write!(f, "{}+{im}i", self.re)
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussScalar {
    type Err = NumericError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` where `a`, `b` are `p/q` rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(s.parse()?));
        };
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => other.trim_start_matches('+').parse()?,
        };
        Ok(Self::new(re.parse()?, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["2", "-1/3", "i", "-i", "3/2+i", "1-2/5i", "-7i", "0"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("0+1i"), GaussScalar::i());
        assert!("1+".parse::<GaussScalar>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!(a.clone() * b.clone(), g("5+5i"));
        assert_eq!((a.clone() / b.clone()) * b, a);
        assert_eq!(a.conj(), g("1-2i"));
        assert!(GaussScalar::zero().inv().is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(g("-4").sqrt_exact(), Some(g("2i")));
        assert_eq!(g("3+4i").sqrt_exact(), Some(g("2+i")));
        assert_eq!(g("2i").sqrt_exact(), Some(g("1+i")));
        assert_eq!(g("2").sqrt_exact(), None);
        assert_eq!(g("1+i").sqrt_exact(), None);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&g("-5/9+1/3i")).unwrap();
        assert_eq!(json, r#"{"re":"-5/9","im":"1/3"}"#);
        let back: GaussScalar = serde_json::from_str(r#"{"re":"2"}"#).unwrap();
        assert_eq!(back, GaussScalar::int(2));
    }
}
