//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use alvero_core::{Monomial, MultiPoly, QPoly, Rational, UniPoly};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, e)| e.clone()).collect()).collect();
        let term = &m[0][col] * &cofactor_det(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `lc(f)^deg g * prod g(alpha)` over explicitly known roots `alpha` of `f`.
pub fn root_product_resultant(lc_f: &Rational, roots_f: &[Rational], g: &QPoly) -> Rational {
    let deg_g = g.degree().unwrap_or(0) as i32;
    let mut r = num_traits::pow::Pow::pow(lc_f.clone(), deg_g);
    for a in roots_f {
        r *= g.eval(a);
    }
    r
}

pub fn random_rational<R: Rng>(rng: &mut R, span: i64) -> Rational {
    q(rng.gen_range(-span..=span), rng.gen_range(1..=span.max(1)))
}

pub fn random_point<R: Rng>(rng: &mut R, nvars: usize, span: i64) -> Vec<Rational> {
    (0..nvars).map(|_| random_rational(rng, span)).collect()
}

/// Sparse polynomial with at most `terms` terms, exponents below `max_exp`.
pub fn random_multipoly<R: Rng>(rng: &mut R, nvars: usize, terms: usize, max_exp: u32, span: i64) -> MultiPoly {
    let n = rng.gen_range(0..=terms);
    MultiPoly::from_terms(
        nvars,
        (0..n).map(|_| {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..max_exp)).collect();
            (Monomial::from_exponents(&exps), qi(rng.gen_range(-span..=span)))
        }),
    )
}

pub fn random_unipoly<R: Rng>(rng: &mut R, nvars: usize, degree: usize) -> UniPoly {
    let mut coeffs: Vec<MultiPoly> = (0..degree).map(|_| random_multipoly(rng, nvars, 3, 3, 5)).collect();
    let mut lead = random_multipoly(rng, nvars, 3, 3, 5);
    if lead.is_zero() {
        lead = MultiPoly::one(nvars);
    }
    coeffs.push(lead);
    UniPoly::from_coeffs(nvars, coeffs)
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn arb_monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, nvars).prop_map(|e| Monomial::from_exponents(&e))
}

pub fn arb_multipoly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((arb_monomial(nvars), arb_rational()), 0..6).prop_map(move |t| MultiPoly::from_terms(nvars, t))
}

pub fn arb_unipoly(nvars: usize, max_degree: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(arb_multipoly(nvars), 1..=max_degree + 1).prop_map(move |c| UniPoly::from_coeffs(nvars, c))
}
