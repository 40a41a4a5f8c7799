use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::Rational;

/// Sparse polynomial in `a_1, ..., a_n` over the rationals.
///
/// Terms are kept in a map keyed by monomial (graded reverse lexicographic
/// iteration order) and zero coefficients are never stored, so structural
/// equality is polynomial equality.
///
/// The arithmetic operators panic on mismatched variable counts; the
/// `checked_*` methods report [`Error::AmbientMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable `a_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        Self::monomial(Monomial::var(nvars, var, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded reverse lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Largest term under graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// `Some(w)` when every term has weighted degree `w` (weight of `a_j` is `j`).
    pub fn isobaric_weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::weighted_degree);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::AmbientMismatch { left: self.nvars, right: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ambient(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ambient(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ambient(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Product that charges one budget step per term pair.
    pub fn mul_budgeted(&self, other: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
        self.check_ambient(other)?;
        budget.charge((self.terms.len() * other.terms.len()) as u64)?;
        Ok(self * other)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
        self.check_ambient(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::InvalidArgument("division by zero polynomial".into())),
        };
        if divisor.terms.len() == 1 {
            let mut q = MultiPoly::zero(self.nvars);
            for (m, c) in &self.terms {
                let qm = lm.divide_into(m).ok_or(Error::InexactDivision)?;
                q.terms.insert(qm, c / &lc);
            }
            return Ok(q);
        }
        let mut rem = self.clone();
        let mut quotient = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = lm.divide_into(m).ok_or(Error::InexactDivision)?;
            let qc = c / &lc;
            budget.charge(divisor.terms.len() as u64)?;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Substitutes `a_{j+1} := point[j]`.
    pub fn specialize(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::AmbientMismatch { left: self.nvars, right: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.exponents().iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(v.clone(), *e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (e, v) in m.exponents().iter().zip(point) {
                    t *= v.powi(*e as i32);
                }
                t
            })
            .sum()
    }

    /// Embeds into a ring with one extra trailing variable.
    pub fn extend_vars(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars + 1,
            terms: self.terms.iter().map(|(m, c)| (m.extend(0), c.clone())).collect(),
        }
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Stable content hash used for cache keys.
    pub fn fingerprint(&self) -> String {
        self.to_string()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count mismatch");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        MultiPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            crate::text::write_term(f, c, m.exponents(), 0, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize, j: usize) -> MultiPoly {
        MultiPoly::var(n, j)
    }

    #[test]
    fn square_of_variable() {
        let a1 = a(2, 0);
        let sq = &a1 * &a1;
        assert_eq!(sq.to_string(), "a1^2");
    }

    #[test]
    fn cancellation_removes_term() {
        let s = &(&a(2, 0) + &a(2, 1)) + &(-&a(2, 0));
        assert_eq!(s, a(2, 1));
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        assert!(matches!(
            a(2, 0).checked_add(&a(3, 0)),
            Err(Error::AmbientMismatch { left: 2, right: 3 })
        ));
        assert!(a(2, 0).checked_mul(&a(3, 0)).is_err());
    }

    #[test]
    fn specialize_example() {
        let p = &(&a(2, 0) * &a(2, 0)) + &a(2, 1);
        let v = [Rational::from_integer(2.into()), Rational::from_integer(3.into())];
        assert_eq!(p.specialize(&v).unwrap(), Rational::from_integer(7.into()));
        assert!(p.specialize(&v[..1]).is_err());
    }

    #[test]
    fn exact_division() {
        let b = Budget::unlimited();
        let x = &a(2, 0) + &a(2, 1);
        let y = &a(2, 0) - &a(2, 1);
        let prod = &x * &y;
        assert_eq!(prod.exact_div(&y, &b).unwrap(), x);
        assert!(matches!(x.exact_div(&y, &b), Err(Error::InexactDivision)));
    }

    #[test]
    fn isobaric() {
        let p = &(&a(2, 0) * &a(2, 0)) + &a(2, 1);
        assert_eq!(p.isobaric_weight(), Some(2));
        assert_eq!((&p + &a(2, 0)).isobaric_weight(), None);
    }
}
