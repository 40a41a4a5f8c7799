//! Decision procedures for the radical formulation of the conjecture at a
//! fixed degree, and for its "all but one resultant" variant.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::buchberger::{BuchbergerOptions, GroebnerBasis, GroebnerStats};
use super::cache::BasisCache;
use super::membership::{rabinowitsch_generators, radical_exponent, MembershipCertificate, Witness};
use super::order::MonomialOrder;
use crate::budget::Budget;
use crate::error::{invalid, Result};
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::resultant::{casas_resultants_with_budget, ResultantFamily};

pub const MAX_SUPPORTED_DEGREE: usize = 8;

/// Shared resources for the exact checks.
#[derive(Clone, Copy, Debug)]
pub struct Context<'a> {
    pub budget: &'a Budget,
    pub cache: Option<&'a BasisCache>,
    pub certificates: bool,
    pub exponent_bound: u32,
    pub max_degree: usize,
}

impl<'a> Context<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Context {
            budget,
            cache: None,
            certificates: false,
            exponent_bound: super::DEFAULT_EXPONENT_BOUND,
            max_degree: MAX_SUPPORTED_DEGREE,
        }
    }

    fn check_degree(&self, d: usize, min: usize) -> Result<()> {
        if d < min || d > self.max_degree {
            return Err(invalid(format!("degree {d} outside supported range {min}..={}", self.max_degree)));
        }
        Ok(())
    }

    fn basis(&self, degree: usize, gens: &[MultiPoly], order: &MonomialOrder, certificates: bool) -> Result<GroebnerBasis> {
        let opts = BuchbergerOptions { budget: self.budget, certificates, stop_on_unit: true };
        BasisCache::buchberger(self.cache, degree, gens, order, &opts)
    }

    fn radical(&self, degree: usize, p: &MultiPoly, gens: &[MultiPoly], order: &MonomialOrder) -> Result<(bool, usize)> {
        let ext = rabinowitsch_generators(p, gens)?;
        let gb = self.basis(degree, &ext, &order.extended(p.nvars()), false)?;
        Ok((gb.is_unit(), gb.basis.len()))
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e3 * 1000.0).round() / 1000.0
}

fn var_name(j: usize) -> String {
    format!("a{}", j + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct VariableCheck {
    pub variable: String,
    /// Rabinowitsch verdict: the variable lies in the radical of `(R_1, ..., R_(d-1))`.
    pub in_radical: bool,
    /// Least `N` found with `a_j^N` in the ideal, within the exponent bound.
    pub exponent: Option<u32>,
    pub certificate: Option<MembershipCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub degree: usize,
    pub order: String,
    pub resultants: Vec<String>,
    pub variables: Vec<VariableCheck>,
    /// Every variable is the support of some leading monomial of the reduced basis.
    pub pure_power_condition: bool,
    /// For each variable, the pure-power leading monomial found (printed).
    pub pure_powers: Vec<Option<String>>,
    pub basis_size: usize,
    pub dimension: Option<usize>,
    pub stats: GroebnerStats,
    pub radical_verdict: bool,
    pub verdict: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

impl ConjectureReport {
    pub fn exponents(&self) -> Vec<Option<u32>> {
        self.variables.iter().map(|v| v.exponent).collect()
    }
}

/// Checks `sqrt(R_1, ..., R_(d-1)) = (a_1, ..., a_(d-1))` variable by variable
/// and, separately, the pure-power leading monomial condition on the basis.
pub fn verify_conjecture(d: usize, order: &MonomialOrder, ctx: &Context<'_>) -> Result<ConjectureReport> {
    ctx.check_degree(d, 2)?;
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let family = casas_resultants_with_budget(d, ctx.budget)?;
    timings.insert("resultants".to_string(), ms(t));
    let gens = &family.members;
    let nvars = family.nvars();

    let t = Instant::now();
    let gb = ctx.basis(d, gens, order, ctx.certificates)?;
    timings.insert("groebner".to_string(), ms(t));
    let lms = gb.leading_monomials();
    let pure_powers: Vec<Option<String>> = (0..nvars)
        .map(|j| {
            lms.iter()
                .find(|m| m.pure_power_var() == Some(j))
                .map(|m| MultiPoly::monomial(m.clone(), crate::Rational::from_integer(1.into())).to_string())
        })
        .collect();
    let pure_power_condition = pure_powers.iter().all(Option::is_some);

    let t = Instant::now();
    let variables = (0..nvars)
        .into_par_iter()
        .map(|j| -> Result<VariableCheck> {
            let aj = MultiPoly::var(nvars, j);
            let (in_radical, _) = ctx.radical(d, &aj, gens, order)?;
            let exponent = if in_radical { radical_exponent(&aj, &gb, ctx.exponent_bound, ctx.budget)? } else { None };
            let certificate = match (ctx.certificates, in_radical) {
                (true, true) => {
                    let witness = match exponent {
                        None => Witness::ExponentAboveBound { bound: ctx.exponent_bound },
                        Some(n) => match super::membership::membership_in_basis(&aj.pow(n), &gb, true, ctx.budget)?.witness {
                            Some(Witness::Cofactors { cofactors }) => Witness::Exponent { exponent: n, cofactors: Some(cofactors) },
                            _ => Witness::Exponent { exponent: n, cofactors: None },
                        },
                    };
                    Some(MembershipCertificate { verdict: true, witness: Some(witness) })
                }
                _ => None,
            };
            Ok(VariableCheck { variable: var_name(j), in_radical, exponent, certificate })
        })
        .collect::<Result<Vec<_>>>()?;
    timings.insert("radical".to_string(), ms(t));

    let radical_verdict = variables.iter().all(|v| v.in_radical);
    Ok(ConjectureReport {
        degree: d,
        order: order.tag(),
        resultants: gens.iter().map(|g| g.to_string()).collect(),
        variables,
        pure_power_condition,
        pure_powers,
        basis_size: gb.basis.len(),
        dimension: krull_dimension(&gb),
        stats: gb.stats.clone(),
        radical_verdict,
        verdict: radical_verdict && pure_power_condition,
        timings_ms: timings,
    })
}

/// `{d-3, d-2, d-1}` intersected with `{1, ..., d-1}`.
pub fn main_theorem_indices(d: usize) -> Vec<usize> {
    (d.saturating_sub(3)..d).filter(|&i| i >= 1).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCheck {
    pub index: usize,
    /// Rabinowitsch verdict for `R_i` in the radical of the other resultants.
    pub in_radical: bool,
    pub rabinowitsch_basis_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub degree: usize,
    pub order: String,
    pub checks: Vec<TheoremCheck>,
    /// True when every checked `R_i` lies outside the radical.
    pub verdict: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

/// For each `i` in [`main_theorem_indices`], decides whether `R_i` lies in
/// the radical of the ideal spanned by the other resultants.
pub fn verify_main_theorem(d: usize, order: &MonomialOrder, ctx: &Context<'_>) -> Result<MainTheoremReport> {
    ctx.check_degree(d, 2)?;
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let family = casas_resultants_with_budget(d, ctx.budget)?;
    timings.insert("resultants".to_string(), ms(t));
    let t = Instant::now();
    let checks = main_theorem_indices(d)
        .into_par_iter()
        .map(|i| -> Result<TheoremCheck> {
            let others = others_than(&family, i);
            let (in_radical, size) = ctx.radical(d, family.get(i), &others, order)?;
            Ok(TheoremCheck { index: i, in_radical, rabinowitsch_basis_size: size })
        })
        .collect::<Result<Vec<_>>>()?;
    timings.insert("radical".to_string(), ms(t));
    Ok(MainTheoremReport {
        degree: d,
        order: order.tag(),
        verdict: checks.iter().all(|c| !c.in_radical),
        checks,
        timings_ms: timings,
    })
}

/// The family without `R_i`; the zero ideal is represented by `[0]`.
fn others_than(family: &ResultantFamily, i: usize) -> Vec<MultiPoly> {
    let others: Vec<MultiPoly> =
        family.members.iter().enumerate().filter(|(k, _)| k + 1 != i).map(|(_, p)| p.clone()).collect();
    if others.is_empty() {
        vec![MultiPoly::zero(family.nvars())]
    } else {
        others
    }
}

/// Dimension of the quotient ring: the size of a largest variable subset
/// that contains the support of no leading monomial. `None` for the unit ideal.
pub fn krull_dimension(gb: &GroebnerBasis) -> Option<usize> {
    if gb.is_unit() {
        return None;
    }
    let n = gb.nvars();
    let supports: Vec<u32> = gb.leading_monomials().iter().map(support_mask).collect();
    (0u32..(1 << n))
        .filter(|&s| supports.iter().all(|&sup| sup & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
}

fn support_mask(m: &Monomial) -> u32 {
    m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |acc, (j, _)| acc | (1 << j))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularSequenceReport {
    pub degree: usize,
    pub order: String,
    /// Resultant indices in the order they were adjoined.
    pub permutation: Vec<usize>,
    /// Quotient dimension after each prefix.
    pub dimensions: Vec<Option<usize>>,
    pub expected: Vec<usize>,
    /// First prefix length (1-based) whose dimension is off, if any.
    pub first_failure: Option<usize>,
    pub verdict: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

/// Prefix dimension test: adjoining the k-th resultant of the permuted family
/// must leave a quotient of dimension `d - 1 - k`.
pub fn check_regular_sequence(
    d: usize,
    permutation: &[usize],
    order: &MonomialOrder,
    ctx: &Context<'_>,
) -> Result<RegularSequenceReport> {
    ctx.check_degree(d, 2)?;
    let mut sorted = permutation.to_vec();
    sorted.sort_unstable();
    if sorted != (1..d).collect::<Vec<_>>() {
        return Err(invalid(format!("{permutation:?} is not an ordering of 1..{}", d - 1)));
    }
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let family = casas_resultants_with_budget(d, ctx.budget)?;
    timings.insert("resultants".to_string(), ms(t));
    let t = Instant::now();
    let mut dimensions = Vec::new();
    let mut expected = Vec::new();
    let mut first_failure = None;
    for k in 1..d {
        let prefix: Vec<MultiPoly> = permutation[..k].iter().map(|&i| family.get(i).clone()).collect();
        let gb = ctx.basis(d, &prefix, order, false)?;
        let dim = krull_dimension(&gb);
        let want = d - 1 - k;
        if dim != Some(want) && first_failure.is_none() {
            first_failure = Some(k);
        }
        dimensions.push(dim);
        expected.push(want);
    }
    timings.insert("groebner".to_string(), ms(t));
    Ok(RegularSequenceReport {
        degree: d,
        order: order.tag(),
        permutation: permutation.to_vec(),
        dimensions,
        expected,
        verdict: first_failure.is_none(),
        first_failure,
        timings_ms: timings,
    })
}
