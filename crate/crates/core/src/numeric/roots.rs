//! Root extraction: exact search over the Gaussian rationals, with a
//! companion-matrix fallback in floating point.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GaussScalar, NumericError, Poly, Rational, Scalar};

/// Residual guarantee of [`numeric_roots`] for monic inputs of moderate degree:
/// `|p(root)| <= NUMERIC_RESIDUAL_BOUND * max |coeff|`.
pub const NUMERIC_RESIDUAL_BOUND: f64 = 1e-8;

/// Largest Gaussian-integer norm whose factorization is attempted.
const MAX_FACTOR_NORM: i128 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RootMode {
    #[default]
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRoot {
    pub value: GaussScalar,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericRoot {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl NumericRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "roots", rename_all = "lowercase")]
pub enum Roots {
    Exact(Vec<ExactRoot>),
    Numeric(Vec<NumericRoot>),
}

impl Roots {
    pub fn len(&self) -> usize {
        match self {
            Roots::Exact(r) => r.len(),
            Roots::Numeric(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_multiplicity(&self) -> usize {
        match self {
            Roots::Exact(r) => r.iter().map(|x| x.multiplicity).sum(),
            Roots::Numeric(r) => r.iter().map(|x| x.multiplicity).sum(),
        }
    }
}

pub fn poly_roots(p: &Poly<GaussScalar>, mode: RootMode) -> Result<Roots, NumericError> {
    match mode {
        RootMode::Exact => exact_roots(p).map(Roots::Exact),
        RootMode::Numeric => {
            let roots = numeric_roots(&p.map(Scalar::to_complex))?;
            Ok(Roots::Numeric(
                roots
                    .into_iter()
                    .map(|z| NumericRoot { re: z.re, im: z.im, multiplicity: 1 })
                    .collect(),
            ))
        }
    }
}

/// All roots of `p` in the Gaussian rationals with multiplicities, or
/// `ExactModeUnavailable` if some factor of `p` has no such root.
pub fn exact_roots(p: &Poly<GaussScalar>) -> Result<Vec<ExactRoot>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let mut roots: Vec<ExactRoot> = Vec::new();
    let mut rest = p.monic()?;

    let zeros = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(ExactRoot { value: GaussScalar::zero(), multiplicity: zeros });
        rest = Poly::new(rest.coeffs()[zeros..].to_vec());
    }

    // distinct roots come from the square-free part, multiplicities from `rest`
    let mut sqf = rest.squarefree();
    let mut distinct = Vec::new();
    loop {
        let degree = sqf.degree().unwrap_or(0);
        if degree == 0 {
            break;
        }
        if degree <= 2 {
            distinct.extend(low_degree_roots(&sqf)?);
            break;
        }
        let Some(root) = find_one_root(&sqf)? else {
            return Err(NumericError::ExactModeUnavailable { degree });
        };
        sqf = sqf.divide_linear(&root, 1)?;
        distinct.push(root);
    }
    for root in distinct {
        let mut k = 0;
        while let Ok(q) = rest.divide_linear(&root, 1) {
            rest = q;
            k += 1;
        }
        push_root(&mut roots, root, k);
    }
    roots.sort_by(|a, b| (&a.value.re, &a.value.im).cmp(&(&b.value.re, &b.value.im)));
    Ok(roots)
}

fn push_root(roots: &mut Vec<ExactRoot>, value: GaussScalar, k: usize) {
    match roots.iter_mut().find(|r| r.value == value) {
        Some(r) => r.multiplicity += k,
        None => roots.push(ExactRoot { value, multiplicity: k }),
    }
}

fn low_degree_roots(p: &Poly<GaussScalar>) -> Result<Vec<GaussScalar>, NumericError> {
    let c = p.coeffs();
    match c.len() {
        2 => Ok(vec![-(c[0].clone() / c[1].clone())]),
        3 => {
            let (a, b, cc) = (c[2].clone(), c[1].clone(), c[0].clone());
            let disc = b.clone() * b.clone() - GaussScalar::int(4) * a.clone() * cc;
            let sq = disc
                .sqrt_exact()
                .ok_or(NumericError::ExactModeUnavailable { degree: 2 })?;
            let two_a = GaussScalar::int(2) * a;
            Ok(vec![
                (-b.clone() + sq.clone()) / two_a.clone(),
                (-b - sq) / two_a,
            ])
        }
        _ => Ok(Vec::new()),
    }
}

/// Gaussian integer with `i128` parts; only used for divisor enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Gi(i128, i128);

impl Gi {
    fn norm(self) -> i128 {
        self.0 * self.0 + self.1 * self.1
    }

    fn mul(self, o: Gi) -> Gi {
        Gi(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }

    /// Exact quotient if `o` divides `self`.
    fn div_exact(self, o: Gi) -> Option<Gi> {
        let n = o.norm();
        let re = self.0 * o.0 + self.1 * o.1;
        let im = self.1 * o.0 - self.0 * o.1;
        (re % n == 0 && im % n == 0).then(|| Gi(re / n, im / n))
    }

    const UNITS: [Gi; 4] = [Gi(1, 0), Gi(0, 1), Gi(-1, 0), Gi(0, -1)];
}

/// Rewrites `p` with Gaussian-integer coefficients (clearing denominators).
fn integer_coeffs(p: &Poly<GaussScalar>) -> Option<Vec<Gi>> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let scale = Rational::from_integer(lcm);
    let mut out: Vec<(BigInt, BigInt)> = p
        .coeffs()
        .iter()
        .map(|c| {
            let re = &c.re * &scale;
            let im = &c.im * &scale;
            (re.numer().clone(), im.numer().clone())
        })
        .collect();
    let content = out
        .iter()
        .fold(BigInt::zero(), |g, (a, b)| g.gcd(a).gcd(b));
    if !content.is_zero() {
        for (a, b) in &mut out {
            *a /= &content;
            *b /= &content;
        }
    }
    out.into_iter()
        .map(|(a, b)| Some(Gi(a.to_i128()?, b.to_i128()?)))
        .collect()
}

/// Every Gaussian integer dividing `z`, including unit multiples.
fn gaussian_divisors(z: Gi) -> Option<Vec<Gi>> {
    let n = z.norm();
    if n == 0 || n > MAX_FACTOR_NORM {
        return None;
    }
    // prime factors of the norm, lifted to Gaussian primes
    let mut primes: Vec<Gi> = Vec::new();
    let mut m = n;
    let mut p: i128 = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            primes.extend(gaussian_primes_over(p));
        }
        p += 1;
    }
    if m > 1 {
        primes.extend(gaussian_primes_over(m));
    }
    primes.sort();
    primes.dedup();

    let mut divisors = vec![Gi(1, 0)];
    let mut rest = z;
    for &pi in &primes {
        let mut e = 0;
        while let Some(q) = rest.div_exact(pi) {
            rest = q;
            e += 1;
        }
        let mut next = Vec::with_capacity(divisors.len() * (e + 1));
        for &d in &divisors {
            let mut acc = d;
            next.push(acc);
            for _ in 0..e {
                acc = acc.mul(pi);
                next.push(acc);
            }
        }
        divisors = next;
    }
    Some(
        divisors
            .into_iter()
            .flat_map(|d| Gi::UNITS.map(|u| d.mul(u)))
            .collect(),
    )
}

fn gaussian_primes_over(p: i128) -> Vec<Gi> {
    if p == 2 {
        return vec![Gi(1, 1)];
    }
    if p % 4 == 3 {
        return vec![Gi(p, 0)];
    }
    let mut a = 1;
    while a * a < p {
        let b2 = p - a * a;
        let b = isqrt(b2);
        if b * b == b2 {
            return vec![Gi(a, b), Gi(a, -b)];
        }
        a += 1;
    }
    // not reached for primes ≡ 1 mod 4; composite leftovers fall through
    vec![Gi(p, 0)]
}

fn isqrt(n: i128) -> i128 {
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Tries rationalized floating-point roots first, then the divisor search.
fn find_one_root(p: &Poly<GaussScalar>) -> Result<Option<GaussScalar>, NumericError> {
    if let Some(r) = guided_root(p) {
        return Ok(Some(r));
    }
    divisor_root(p)
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i128) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        if !y.is_finite() || y.abs() > 1e15 {
            break;
        }
        let a = y.floor() as i128;
        let (h, k) = (a * h1 + h0, a * k1 + k0);
        if k > max_den {
            break;
        }
        if let Ok(r) = Rational::new(h, k) {
            out.push(r);
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Snaps each companion eigenvalue to nearby Gaussian rationals and keeps the first exact root.
fn guided_root(p: &Poly<GaussScalar>) -> Option<GaussScalar> {
    let approx = numeric_roots(&p.map(Scalar::to_complex)).ok()?;
    for z in approx {
        let res = convergents(z.re, 1 << 40);
        let ims = convergents(z.im, 1 << 40);
        // closest approximations first
        for re in res.iter().rev().take(6) {
            for im in ims.iter().rev().take(6) {
                let candidate = GaussScalar::new(re.clone(), im.clone());
                if p.eval(&candidate).is_zero() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

/// Searches `u / v` with `u | c0`, `v | lead` for a root of `p`.
fn divisor_root(p: &Poly<GaussScalar>) -> Result<Option<GaussScalar>, NumericError> {
    let degree = p.degree().unwrap_or(0);
    let unavailable = NumericError::ExactModeUnavailable { degree };
    let ints = integer_coeffs(p).ok_or(unavailable.clone())?;
    let c0 = ints[0];
    let lead = *ints.last().unwrap();
    let us = gaussian_divisors(c0).ok_or(unavailable.clone())?;
    let vs = gaussian_divisors(lead).ok_or(unavailable)?;
    // one associate per leading divisor suffices, units are covered by `us`
    let vs: BTreeSet<Gi> = vs
        .into_iter()
        .map(|v| *Gi::UNITS.map(|u| v.mul(u)).iter().max().unwrap())
        .collect();

    let bound = cauchy_bound(p);
    let mut seen = BTreeSet::new();
    for v in &vs {
        let vn = (v.norm() as f64).sqrt();
        for u in &us {
            if (u.norm() as f64).sqrt() > bound * vn * (1.0 + 1e-9) + 1e-9 {
                continue;
            }
            let candidate = gi_to_gauss(*u) / gi_to_gauss(*v);
            if !seen.insert((candidate.re.clone(), candidate.im.clone())) {
                continue;
            }
            if p.eval(&candidate).is_zero() {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}

fn gi_to_gauss(z: Gi) -> GaussScalar {
    GaussScalar::new(
        Rational::from_integer(BigInt::from(z.0)),
        Rational::from_integer(BigInt::from(z.1)),
    )
}

fn cauchy_bound(p: &Poly<GaussScalar>) -> f64 {
    let c = p.coeffs();
    let lead = c.last().map(|x| x.modulus()).unwrap_or(1.0);
    1.0 + c[..c.len() - 1]
        .iter()
        .map(|x| x.modulus() / lead)
        .fold(0.0, f64::max)
}

/// Floating-point roots via the eigenvalues of the companion matrix,
/// polished with Newton steps that are kept only when they lower the residual.
pub fn numeric_roots(p: &Poly<Complex64>) -> Result<Vec<Complex64>, NumericError> {
    let lead = *p.leading().ok_or(NumericError::ZeroPolynomial)?;
    let c: Vec<Complex64> = p.coeffs().iter().map(|x| x / lead).collect();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut comp = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i];
    }
    let eig = comp
        .schur()
        .eigenvalues()
        .ok_or(NumericError::NoConvergence)?;
    let monic = Poly::new(c);
    let dp = monic.derivative();
    Ok(eig.iter().map(|&z| polish(&monic, &dp, z)).collect())
}

fn polish(p: &Poly<Complex64>, dp: &Poly<Complex64>, mut z: Complex64) -> Complex64 {
    let mut res = p.eval(&z).norm();
    for _ in 0..3 {
        let d = dp.eval(&z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - p.eval(&z) / d;
        let r = p.eval(&next).norm();
        if r.is_nan() || r >= res {
            break;
        }
        z = next;
        res = r;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussScalar as G;

    fn p(c: &[i64]) -> Poly<G> {
        Poly::new(c.iter().map(|&v| G::int(v)).collect())
    }

    fn as_pairs(r: Vec<ExactRoot>) -> Vec<(G, usize)> {
        r.into_iter().map(|r| (r.value, r.multiplicity)).collect()
    }

    #[test]
    fn update_polynomial_roots() {
        let f = Poly::from_shifted(&[G::int(-3), G::int(2), G::int(1)], &G::int(2));
        assert_eq!(as_pairs(exact_roots(&f).unwrap()), vec![(G::int(-1), 1), (G::int(3), 1)]);
    }

    #[test]
    fn brauer_linear_root() {
        // (t − 5) − 2
        let f = Poly::from_shifted(&[G::int(-2), G::int(1)], &G::int(5));
        assert_eq!(as_pairs(exact_roots(&f).unwrap()), vec![(G::int(7), 1)]);
    }

    #[test]
    fn repeated_origin() {
        assert_eq!(as_pairs(exact_roots(&p(&[0, 0, 1])).unwrap()), vec![(G::int(0), 2)]);
    }

    #[test]
    fn high_degree_with_multiplicity() {
        let f = &(&Poly::linear_power(G::int(2), 7) * &Poly::linear_power(G::int(1), 2))
            * &(&Poly::linear(G::int(3)) * &Poly::linear(G::int(-1)));
        let roots = as_pairs(exact_roots(&f).unwrap());
        assert_eq!(
            roots,
            vec![(G::int(-1), 1), (G::int(1), 2), (G::int(2), 7), (G::int(3), 1)]
        );
    }

    #[test]
    fn gaussian_and_fractional_roots() {
        let r1 = G::frac(-2, 3);
        let r2: G = "1/2+3i".parse().unwrap();
        let r3: G = "-i".parse().unwrap();
        let f = &(&Poly::linear(r1.clone()) * &Poly::linear(r2.clone())) * &Poly::linear_power(r3.clone(), 2);
        let f = f.scale(&"3-i".parse().unwrap());
        let roots = exact_roots(&f).unwrap();
        assert_eq!(roots.iter().map(|r| r.multiplicity).sum::<usize>(), 4);
        for r in &roots {
            assert!(f.eval(&r.value).is_zero());
        }
        assert!(roots.iter().any(|r| r.value == r3 && r.multiplicity == 2));
    }

    #[test]
    fn irrational_roots_unavailable() {
        // t² − 2
        assert_eq!(
            exact_roots(&p(&[-2, 0, 1])),
            Err(NumericError::ExactModeUnavailable { degree: 2 })
        );
        // (t³ − 2)(t − 1)
        assert!(matches!(
            exact_roots(&p(&[2, -2, 0, -1, 1])),
            Err(NumericError::ExactModeUnavailable { degree: 3 })
        ));
        assert_eq!(exact_roots(&Poly::zero()), Err(NumericError::ZeroPolynomial));
    }

    #[test]
    fn numeric_mode_residual() {
        let f = p(&[-2, 0, 1]);
        let Roots::Numeric(roots) = poly_roots(&f, RootMode::Numeric).unwrap() else {
            panic!("expected numeric roots")
        };
        assert_eq!(roots.len(), 2);
        let fc = f.map(Scalar::to_complex);
        for r in roots {
            assert!(fc.eval(&r.value()).norm() <= NUMERIC_RESIDUAL_BOUND * 2.0);
        }
    }
}
