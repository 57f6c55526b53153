//! Dense complex polynomials in ascending coefficient order.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, max_norm, Real};

/// Polynomial `coeffs[0] + coeffs[1] λ + ...` kept in trimmed canonical form:
/// the last stored coefficient is nonzero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Poly<T> {
    /// Builds a polynomial, dropping trailing coefficients below the trim threshold.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    /// The monomial `λ`.
    pub fn x() -> Self {
        Poly { coeffs: vec![Complex::zero(), Complex::one()] }
    }

    /// `λ - root`.
    pub fn linear(root: Complex<T>) -> Self {
        Poly { coeffs: vec![-root, Complex::one()] }
    }

    /// Real coefficients, ascending.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(T::lit(c), T::zero())).collect())
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn convert<U: Real>(&self) -> Poly<U> {
        Poly::new(crate::scalar::convert(&self.coeffs))
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Coefficient of `λ^k`; zero when `k` is past the degree.
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_signed(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs.last().copied().unwrap_or_else(Complex::zero)
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> T {
        max_norm(&self.coeffs)
    }

    fn trim(&mut self) {
        let tol = T::TRIM_REL * self.scale();
        while let Some(c) = self.coeffs.last() {
            if c.norm() <= tol {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    pub fn scale_by(&self, c: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Scaled derivative `f^{<ν>} = f^{(ν)} / ν!`.
    ///
    /// The coefficient of `λ^k` in the result is `binom(k + ν, ν) · c_{k+ν}`.
    pub fn scaled_derivative(&self, nu: usize) -> Self {
        if nu == 0 {
            return self.clone();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(nu)
            .map(|(j, &c)| c * binomial::<T>(j, nu))
            .collect();
        Self::new(out)
    }

    /// Monic normalisation; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|&c| c / lead).collect())
    }

    /// `leading · ∏ (λ - r)`.
    pub fn from_roots(roots: &[Complex<T>], leading: Complex<T>) -> Result<Self> {
        if leading.is_zero() {
            return Err(Error::ZeroLeading);
        }
        let mut coeffs = vec![leading];
        for &r in roots {
            coeffs.push(Complex::zero());
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Ok(Poly { coeffs })
    }
}

/// `binom(n, k)` as a real scalar.
pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * from_usize::<T>(n - i) / from_usize::<T>(i + 1);
    }
    acc
}

impl<T: Real> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Real> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Real> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T: Real> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Real> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Real> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

/// First `k` Laurent coefficients `M_1..M_k` of `num / den` at infinity,
/// where `deg num = deg den - 1`.
///
/// Substituting `t = 1/λ` turns the quotient into `t · U(t) / D(t)` with the
/// reversed coefficient sequences, so the result is a power-series division.
pub fn laurent_expand<T: Real>(num: &Poly<T>, den: &Poly<T>, k: usize) -> Result<Vec<Complex<T>>> {
    let (nd, dd) = (num.degree_signed(), den.degree_signed());
    if dd < 1 || nd != dd - 1 {
        return Err(Error::DegreeMismatch { num: nd, den: dd });
    }
    let rev_num: Vec<_> = num.coeffs().iter().rev().copied().collect();
    let rev_den: Vec<_> = den.coeffs().iter().rev().copied().collect();
    let d0 = rev_den[0];
    let mut q: Vec<Complex<T>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut acc = rev_num.get(j).copied().unwrap_or_else(Complex::zero);
        for i in 1..=j.min(rev_den.len() - 1) {
            acc = acc - rev_den[i] * q[j - i];
        }
        q.push(acc / d0);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type P = Poly<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        cx(re, im)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(P::zero().eval(c(5.0, 0.0)), c(0.0, 0.0));
        assert_eq!(P::from_real(&[-1.0, 0.0, 1.0]).eval(c(1.0, 0.0)), c(0.0, 0.0));
        assert_eq!(P::from_real(&[1.0, 2.0]).eval(c(0.0, 1.0)), c(1.0, 2.0));
    }

    #[test]
    fn arithmetic_examples() {
        let p = &P::linear(c(1.0, 0.0)) * &P::linear(c(-1.0, 0.0));
        assert_eq!(p, P::from_real(&[-1.0, 0.0, 1.0]));
        let cube = P::from_real(&[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(cube.scaled_derivative(2), P::from_real(&[0.0, 3.0]));
        assert_eq!(cube.scaled_derivative(0), cube);
        let diff = &cube - &cube;
        assert!(diff.is_zero());
        assert_eq!(diff.coeffs().len(), 0);
        assert_eq!(diff.degree(), None);
    }

    #[test]
    fn cancellation_does_not_inflate_degree() {
        let p = P::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(1e-17, 0.0)]);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn from_roots_examples() {
        let p = P::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)], c(2.0, 0.0)).unwrap();
        assert_eq!(p, P::from_real(&[-2.0, 0.0, 2.0]));
        let p = P::from_roots(&[c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert_eq!(p, P::x());
        let s = 2f64.sqrt();
        let p = P::from_roots(&[c(0.0, 0.0), c(s, 0.0), c(-s, 0.0)], c(-1.0, 0.0)).unwrap();
        let want = P::from_real(&[0.0, 2.0, 0.0, -1.0]);
        for k in 0..4 {
            assert!((p.coeff(k) - want.coeff(k)).norm() < 1e-14);
        }
        assert_eq!(P::from_roots(&[c(1.0, 0.0)], c(0.0, 0.0)), Err(Error::ZeroLeading));
    }

    #[test]
    fn laurent_examples() {
        let m = laurent_expand(&P::x(), &P::from_real(&[-1.0, 0.0, 1.0]), 4).unwrap();
        assert_eq!(m, vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let b = c(0.3, -0.7);
        let m = laurent_expand(&P::one(), &P::linear(b), 2).unwrap();
        assert_eq!(m, vec![c(1.0, 0.0), b]);
        assert!(matches!(
            laurent_expand(&P::one(), &P::from_real(&[1.0, 0.0, 1.0]), 2),
            Err(Error::DegreeMismatch { num: 0, den: 2 })
        ));
    }

    #[test]
    fn laurent_monic_leading_is_one() {
        let num = P::from_real(&[0.4, -2.0, 1.0]);
        let den = P::from_real(&[3.0, 1.5, 0.2, 1.0]);
        let m = laurent_expand(&num, &den, 6).unwrap();
        assert_eq!(m[0], c(1.0, 0.0));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial::<f64>(5, 2), 10.0);
        assert_eq!(binomial::<f64>(7, 0), 1.0);
        assert_eq!(binomial::<f64>(7, 7), 1.0);
    }
}
