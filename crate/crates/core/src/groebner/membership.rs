use serde::Serialize;

use super::buchberger::{buchberger_with, combination, BuchbergerOptions, GroebnerBasis};
use super::order::MonomialOrder;
use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::multipoly::MultiPoly;

pub const DEFAULT_EXPONENT_BOUND: u32 = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `p = sum cofactors[k] * gens[k]`.
    Cofactors { cofactors: Vec<String> },
    /// `p^exponent` lies in the ideal; cofactors present when requested.
    Exponent { exponent: u32, cofactors: Option<Vec<String>> },
    /// In the radical, but no power up to `bound` was checked to lie in the ideal.
    ExponentAboveBound { bound: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipCertificate {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

/// Whether `p` lies in the ideal generated by `gens`.
///
/// With `certify`, a positive verdict carries cofactors that have already
/// been checked by exact expansion.
pub fn ideal_membership(
    p: &MultiPoly,
    gens: &[MultiPoly],
    order: &MonomialOrder,
    certify: bool,
    budget: &Budget,
) -> Result<MembershipCertificate> {
    let opts = BuchbergerOptions { budget, certificates: certify, stop_on_unit: true };
    let gb = buchberger_with(gens, order, &opts)?;
    membership_in_basis(p, &gb, certify, budget)
}

/// Membership test against an already computed basis.
pub fn membership_in_basis(p: &MultiPoly, gb: &GroebnerBasis, certify: bool, budget: &Budget) -> Result<MembershipCertificate> {
    let div = gb.divide_budgeted(p, budget)?;
    if !div.remainder.is_zero() {
        return Ok(MembershipCertificate { verdict: false, witness: None });
    }
    if !certify {
        return Ok(MembershipCertificate { verdict: true, witness: None });
    }
    let cofs = input_cofactors(&div.quotients, gb)?;
    Ok(MembershipCertificate {
        verdict: true,
        witness: Some(Witness::Cofactors { cofactors: cofs.iter().map(|h| h.to_string()).collect() }),
    })
}

/// Expresses `sum q_k * basis[k]` in terms of the input generators and
/// re-verifies the identity.
fn input_cofactors(quotients: &[MultiPoly], gb: &GroebnerBasis) -> Result<Vec<MultiPoly>> {
    let table = gb.cofactors().ok_or_else(|| invalid("basis was computed without certificates"))?;
    let ngens = gb.generators_in.len();
    let mut out = vec![MultiPoly::zero(gb.nvars()); ngens];
    for (q, row) in quotients.iter().zip(table) {
        if q.is_zero() {
            continue;
        }
        for (l, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out[l] = &out[l] + &(q * c);
            }
        }
    }
    let target = combination(quotients, &gb.basis);
    if combination(&out, &gb.generators_in) != target {
        return Err(Error::InvalidArgument("membership certificate failed re-verification".into()));
    }
    Ok(out)
}

/// Whether `p` lies in the radical of `(gens)`, by the Rabinowitsch trick:
/// adjoin a variable `t` and test `1 in (gens, 1 - t p)`.
pub fn radical_membership(p: &MultiPoly, gens: &[MultiPoly], order: &MonomialOrder, budget: &Budget) -> Result<MembershipCertificate> {
    let gb = rabinowitsch_basis(p, gens, order, budget)?;
    Ok(MembershipCertificate { verdict: gb.is_unit(), witness: None })
}

/// Groebner basis of `(gens, 1 - t p)`; `t` is the new last variable and ranks highest in the order.
pub fn rabinowitsch_basis(p: &MultiPoly, gens: &[MultiPoly], order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let ext = rabinowitsch_generators(p, gens)?;
    let order = order.extended(p.nvars());
    buchberger_with(&ext, &order, &BuchbergerOptions::new(budget))
}

pub fn rabinowitsch_generators(p: &MultiPoly, gens: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    if gens.is_empty() {
        return Err(invalid("empty generator list"));
    }
    let n = p.nvars();
    for g in gens {
        if g.nvars() != n {
            return Err(Error::AmbientMismatch { left: n, right: g.nvars() });
        }
    }
    let t = MultiPoly::var(n + 1, n);
    let mut ext: Vec<MultiPoly> = gens.iter().map(MultiPoly::extend_vars).collect();
    ext.push(&MultiPoly::one(n + 1) - &(&t * &p.extend_vars()));
    Ok(ext)
}

/// Searches `N = 1, 2, 4, ...` up to `bound` for `p^N` in the ideal of `gb`,
/// then narrows down to the least such `N`.
pub fn radical_exponent(p: &MultiPoly, gb: &GroebnerBasis, bound: u32, budget: &Budget) -> Result<Option<u32>> {
    let in_ideal = |n: u32| -> Result<bool> { Ok(gb.divide_budgeted(&p.pow(n), budget)?.remainder.is_zero()) };
    let mut hi = 1u32;
    while !in_ideal(hi)? {
        if hi >= bound {
            return Ok(None);
        }
        hi = (hi * 2).min(bound);
    }
    let mut lo = hi / 2;
    // invariant: p^lo not in ideal (or lo = 0), p^hi in ideal
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if in_ideal(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Radical membership with an explicit exponent witness when one is found
/// within `bound`.
pub fn radical_membership_with_exponent(
    p: &MultiPoly,
    gens: &[MultiPoly],
    order: &MonomialOrder,
    bound: u32,
    certify: bool,
    budget: &Budget,
) -> Result<MembershipCertificate> {
    let verdict = radical_membership(p, gens, order, budget)?;
    if !verdict.verdict {
        return Ok(verdict);
    }
    let opts = BuchbergerOptions { budget, certificates: certify, stop_on_unit: true };
    let gb = buchberger_with(gens, order, &opts)?;
    let witness = match radical_exponent(p, &gb, bound, budget)? {
        None => Witness::ExponentAboveBound { bound },
        Some(n) => {
            let cofactors = if certify {
                let div = gb.divide_budgeted(&p.pow(n), budget)?;
                Some(input_cofactors(&div.quotients, &gb)?.iter().map(|h| h.to_string()).collect())
            } else {
                None
            };
            Witness::Exponent { exponent: n, cofactors }
        }
    };
    Ok(MembershipCertificate { verdict: true, witness: Some(witness) })
}
