//! Term lists kept sorted under a fixed [`MonomialOrder`], leading term last.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SortedPoly<C = Rational> {
    pub(crate) nvars: usize,
    /// Ascending; the leading term is `terms.last()`.
    pub(crate) terms: Vec<(Monomial, C)>,
}

/// Integer coefficients, used inside the Buchberger engine.
pub(crate) type IntPoly = SortedPoly<BigInt>;

impl<C> SortedPoly<C> {
    pub(crate) fn zero(nvars: usize) -> Self {
        SortedPoly { nvars, terms: Vec::new() }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms.last().expect("leading monomial of zero").0
    }

    pub(crate) fn lc(&self) -> &C {
        &self.terms.last().expect("leading coefficient of zero").1
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

/// Merges `a` and the image of `b` under `f`, combining equal monomials with `add`.
fn merge<C, F>(a: impl Iterator<Item = (Monomial, C)>, b: impl Iterator<Item = (Monomial, C)>, order: &MonomialOrder, add: F) -> Vec<(Monomial, C)>
where
    C: Zero,
    F: Fn(C, C) -> C,
{
    let mut out = Vec::new();
    let mut a = a.peekable();
    let mut b = b.peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (m, c1) = a.next().unwrap();
                let (_, c2) = b.next().unwrap();
                let s = add(c1, c2);
                if !s.is_zero() {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

impl SortedPoly<Rational> {
    pub(crate) fn from_multi(p: &MultiPoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SortedPoly { nvars: p.nvars(), terms }
    }

    pub(crate) fn to_multi(&self) -> MultiPoly {
        MultiPoly::from_terms(self.nvars, self.terms.iter().cloned())
    }

    pub(crate) fn monomial(m: Monomial, c: Rational) -> Self {
        SortedPoly { nvars: m.nvars(), terms: vec![(m, c)] }
    }

    pub(crate) fn scale(&mut self, c: &Rational) {
        for (_, a) in &mut self.terms {
            *a *= c;
        }
    }

    /// `self + c * m * g`, merging in order.
    pub(crate) fn add_scaled(&self, c: &Rational, m: &Monomial, g: &SortedPoly, order: &MonomialOrder) -> SortedPoly {
        let b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c));
        SortedPoly { nvars: self.nvars, terms: merge(self.terms.iter().cloned(), b, order, |x, y| x + y) }
    }
}

impl SortedPoly<BigInt> {
    /// Clears denominators; returns the primitive integer polynomial and the
    /// factor `s` with `result = s * p`.
    pub(crate) fn from_rational(p: &SortedPoly<Rational>) -> (IntPoly, Rational) {
        let den = p.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p.terms.iter().map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom()))).collect();
        let mut q = SortedPoly { nvars: p.nvars, terms };
        let content = q.make_primitive();
        (q, Rational::new(den, content))
    }

    pub(crate) fn to_rational(&self) -> SortedPoly<Rational> {
        SortedPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))).collect() }
    }

    /// Divides by the content and makes the leading coefficient positive;
    /// returns the signed divisor.
    pub(crate) fn make_primitive(&mut self) -> BigInt {
        let Some((_, lc)) = self.terms.last() else { return BigInt::one() };
        let mut g = content(self.terms.iter().map(|(_, c)| c));
        if lc.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
        g
    }

    /// `a * self + b * m * g`.
    pub(crate) fn lin_comb(&self, a: &BigInt, b: &BigInt, m: &Monomial, g: &IntPoly, order: &MonomialOrder) -> IntPoly {
        let left = self.terms.iter().map(|(x, c)| (x.clone(), if a.is_one() { c.clone() } else { c * a }));
        let right = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * b));
        SortedPoly { nvars: self.nvars, terms: merge(left, right, order, |x, y| x + y) }
    }
}

/// Euclidean gcd; much faster than the binary algorithm once the operands
/// reach thousands of bits.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// Gcd of all coefficients, smallest first so that the running gcd shrinks early.
pub(crate) fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut cs: Vec<&BigInt> = coeffs.collect();
    cs.sort_by_key(|c| c.bits());
    let mut g = BigInt::zero();
    for c in cs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// An integer polynomial together with its expression in terms of the
/// input generators (rational cofactors).
#[derive(Clone, Debug)]
pub(crate) struct Tracked {
    pub(crate) poly: IntPoly,
    pub(crate) cofactors: Option<Vec<SortedPoly>>,
}

impl Tracked {
    /// `a * self + b * m * g`.
    pub(crate) fn lin_comb(&mut self, a: &BigInt, b: &BigInt, m: &Monomial, g: &Tracked, order: &MonomialOrder) {
        self.poly = self.poly.lin_comb(a, b, m, &g.poly, order);
        if let (Some(mine), Some(theirs)) = (self.cofactors.as_mut(), g.cofactors.as_ref()) {
            let (ra, rb) = (Rational::from_integer(a.clone()), Rational::from_integer(b.clone()));
            for (h, k) in mine.iter_mut().zip(theirs) {
                h.scale(&ra);
                if !k.is_zero() {
                    *h = h.add_scaled(&rb, m, k, order);
                }
            }
        }
    }

    pub(crate) fn make_primitive(&mut self) {
        let g = self.poly.make_primitive();
        if let Some(cofs) = self.cofactors.as_mut() {
            if !g.is_one() {
                let inv = Rational::new(BigInt::one(), g);
                for h in cofs {
                    h.scale(&inv);
                }
            }
        }
    }

    /// Monic rational form of the polynomial and its cofactors.
    pub(crate) fn into_monic(self) -> (SortedPoly, Option<Vec<SortedPoly>>) {
        let mut p = self.poly.to_rational();
        let mut cofs = self.cofactors;
        if let Some((_, lc)) = p.terms.last() {
            if !lc.is_one() {
                let inv = lc.recip();
                p.scale(&inv);
                if let Some(cs) = cofs.as_mut() {
                    for h in cs {
                        h.scale(&inv);
                    }
                }
            }
        }
        (p, cofs)
    }
}
