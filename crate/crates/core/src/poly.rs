//! Dense univariate polynomials with complex coefficients, stored in ascending
//! order (`coeffs[j]` multiplies `s^j`).

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::zero());
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c s^j`.
    pub fn monomial(c: Complex64, j: usize) -> Self {
        let mut v = vec![Complex64::zero(); j + 1];
        v[j] = c;
        Self::new(v)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::zero(); c.len() + 1];
            for (j, &cj) in c.iter().enumerate() {
                next[j + 1] += cj;
                next[j] -= r * cj;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * s + c)
    }

    /// Drops leading coefficients with modulus at most `tol * max|c_j|`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().unwrap().norm() <= tol * scale {
            c.pop();
        }
        Self::new(c)
    }

    /// Roots as eigenvalues of the balanced companion matrix.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let d = self.degree();
        if self.is_zero() {
            return Err(Error::arg("the zero polynomial has no finite root set"));
        }
        if d == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        let mut entries = vec![Complex64::zero(); d * d];
        for j in 0..d {
            entries[j] = -self.coeffs[d - 1 - j] / lead;
        }
        for i in 1..d {
            entries[i * d + i - 1] = Complex64::new(1.0, 0.0);
        }
        let companion = DenseMatrix::new(d, entries)?;
        crate::spectral::eigenvalues(&companion)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly, j: usize| p.coeffs.get(j).copied().unwrap_or_default();
        Poly::new((0..n).map(|j| get(self, j) + get(rhs, j)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly, j: usize| p.coeffs.get(j).copied().unwrap_or_default();
        Poly::new((0..n).map(|j| get(self, j) - get(rhs, j)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut c = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Mul<Complex64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * rhs).collect())
    }
}
