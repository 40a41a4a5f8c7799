use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::multipoly::MultiPoly;
use crate::univariate::QPoly;
use crate::Rational;

/// Polynomial in `x` with [`MultiPoly`] coefficients, constant term first.
///
/// Trailing zero coefficients are trimmed, so the last entry is the leading
/// coefficient and the zero polynomial has no entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    nvars: usize,
    coeffs: Vec<MultiPoly>,
}

/// Binomial coefficient by Pascal's recurrence, exact.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i + 1);
        next.push(BigInt::one());
        for j in 1..i {
            next.push(&row[j - 1] + &row[j]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row.swap_remove(k)
}

impl UniPoly {
    pub fn zero(nvars: usize) -> Self {
        UniPoly { nvars, coeffs: Vec::new() }
    }

    pub fn constant(c: MultiPoly) -> Self {
        Self::from_coeffs(c.nvars(), vec![c])
    }

    pub fn x(nvars: usize) -> Self {
        Self::from_coeffs(nvars, vec![MultiPoly::zero(nvars), MultiPoly::one(nvars)])
    }

    /// Builds from coefficients ordered constant term first.
    pub fn from_coeffs(nvars: usize, coeffs: Vec<MultiPoly>) -> Self {
        for c in &coeffs {
            assert_eq!(c.nvars(), nvars, "coefficient has wrong variable count");
        }
        let mut p = UniPoly { nvars, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(MultiPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn checked_add(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_ambient(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_ambient(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_ambient(other)?;
        Ok(self * other)
    }

    fn check_ambient(&self, other: &UniPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut out = UniPoly::constant(MultiPoly::one(self.nvars));
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `H_i(f) = sum_k C(k, i) coeff_k(f) x^(k-i)`.
    pub fn hasse_derivative(&self, i: usize) -> Result<UniPoly> {
        let deg = self.degree().ok_or_else(|| invalid("Hasse derivative of the zero polynomial"))?;
        if i > deg {
            return Err(invalid(format!("Hasse derivative order {i} exceeds degree {deg}")));
        }
        let coeffs = (i..=deg)
            .map(|k| self.coeffs[k].scale(&Rational::from_integer(binomial(k, i))))
            .collect();
        Ok(UniPoly::from_coeffs(self.nvars, coeffs))
    }

    /// Substitutes `a_{j+1} := point[j]` in every coefficient.
    pub fn specialize(&self, point: &[Rational]) -> Result<QPoly> {
        let coeffs = self.coeffs.iter().map(|c| c.specialize(point)).collect::<Result<Vec<_>>>()?;
        Ok(QPoly::new(coeffs))
    }

    pub fn parse(s: &str, nvars: usize) -> Result<UniPoly> {
        crate::text::parse_unipoly(s, nvars)
    }
}

/// `f = x^d + a_1 x^(d-1) + ... + a_(d-1) x`, normalised to vanish at 0.
pub fn generic_casas_polynomial(d: usize) -> Result<UniPoly> {
    if d == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    let nvars = d - 1;
    let mut coeffs = vec![MultiPoly::zero(nvars); d + 1];
    coeffs[d] = MultiPoly::one(nvars);
    for k in 1..d {
        coeffs[d - k] = MultiPoly::var(nvars, k - 1);
    }
    Ok(UniPoly::from_coeffs(nvars, coeffs))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        UniPoly::from_coeffs(self.nvars, coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.nvars);
        }
        let mut coeffs = vec![MultiPoly::zero(self.nvars); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(self.nvars, coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            for (m, coef) in c.terms().rev() {
                crate::text::write_term(f, coef, m.exponents(), k, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(30, 15), BigInt::from(155117520));
    }

    #[test]
    fn generic_polynomials() {
        assert_eq!(generic_casas_polynomial(1).unwrap().to_string(), "x");
        assert_eq!(generic_casas_polynomial(2).unwrap().to_string(), "x^2 + a1*x");
        assert_eq!(generic_casas_polynomial(3).unwrap().to_string(), "x^3 + a1*x^2 + a2*x");
        assert!(generic_casas_polynomial(0).is_err());
    }

    #[test]
    fn hasse_examples() {
        let f = generic_casas_polynomial(3).unwrap();
        assert_eq!(f.hasse_derivative(1).unwrap().to_string(), "3*x^2 + 2*a1*x + a2");
        assert_eq!(f.hasse_derivative(0).unwrap(), f);
        for d in 2..=7 {
            let f = generic_casas_polynomial(d).unwrap();
            assert_eq!(f.hasse_derivative(d - 1).unwrap().to_string(), format!("{d}*x + a1"));
        }
        assert!(f.hasse_derivative(4).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let p = UniPoly::parse("x + a1", 1).unwrap();
        let q = UniPoly::parse("x - a1", 1).unwrap();
        assert_eq!((&p * &q).to_string(), "x^2 - a1^2");
        assert!(p.checked_mul(&UniPoly::x(2)).is_err());
    }
}
