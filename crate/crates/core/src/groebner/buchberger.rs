use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::order::MonomialOrder;
use super::sorted::{content, gcd, IntPoly, SortedPoly, Tracked};
use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerStats {
    pub spairs_processed: u64,
    pub spairs_skipped: u64,
    pub reductions: u64,
    pub zero_reductions: u64,
}

#[derive(Clone, Debug)]
pub struct BuchbergerOptions<'a> {
    pub budget: &'a Budget,
    /// Track each basis element as a combination of the inputs.
    pub certificates: bool,
    /// Stop as soon as a non-zero constant shows up (the ideal is the whole ring).
    pub stop_on_unit: bool,
}

impl<'a> BuchbergerOptions<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        BuchbergerOptions { budget, certificates: false, stop_on_unit: true }
    }
}

/// Reduced Groebner basis of the ideal spanned by `generators_in`.
///
/// Basis elements are monic and listed by decreasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    pub generators_in: Vec<MultiPoly>,
    pub basis: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub stats: GroebnerStats,
    cofactors: Option<Vec<Vec<MultiPoly>>>,
    sorted: Vec<SortedPoly>,
}

/// Division result of [`GroebnerBasis::divide`]: `p = sum quotients[k] * basis[k] + remainder`.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<MultiPoly>,
    pub remainder: MultiPoly,
}

pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, order, &BuchbergerOptions::new(&Budget::unlimited()))
}

pub fn buchberger_with(gens: &[MultiPoly], order: &MonomialOrder, opts: &BuchbergerOptions<'_>) -> Result<GroebnerBasis> {
    let nvars = check_gens(gens)?;
    if let Some(p) = &order.perm {
        if p.len() != nvars {
            return Err(invalid(format!("order permutes {} variables, ring has {nvars}", p.len())));
        }
    }
    let mut engine = Engine {
        order,
        budget: opts.budget,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    let ngens = gens.len();
    let mut unit: Option<Tracked> = None;

    for (l, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (poly, scale) = IntPoly::from_rational(&SortedPoly::from_multi(g, order));
        let cofactors = opts.certificates.then(|| {
            (0..ngens)
                .map(|k| if k == l { SortedPoly::monomial(Monomial::one(nvars), scale.clone()) } else { SortedPoly::zero(nvars) })
                .collect()
        });
        let h = engine.reduce(Tracked { poly, cofactors })?;
        if h.poly.is_zero() {
            continue;
        }
        if h.poly.is_constant() && opts.stop_on_unit {
            unit = Some(h);
            break;
        }
        engine.insert(h);
    }

    if unit.is_none() {
        while let Some((i, j)) = engine.next_pair() {
            engine.stats.spairs_processed += 1;
            let s = engine.spoly(i, j)?;
            let h = engine.reduce(s)?;
            if h.poly.is_zero() {
                engine.stats.zero_reductions += 1;
                continue;
            }
            if h.poly.is_constant() && opts.stop_on_unit {
                unit = Some(h);
                break;
            }
            engine.insert(h);
        }
    }

    let reduced: Vec<Tracked> = match unit {
        Some(u) => vec![u],
        None => engine.interreduce()?,
    };
    let stats = engine.stats;
    let (sorted, cofs): (Vec<SortedPoly>, Vec<_>) = reduced.into_iter().map(Tracked::into_monic).unzip();
    let basis = sorted.iter().map(SortedPoly::to_multi).collect();
    let cofactors = if opts.certificates {
        Some(cofs.into_iter().map(|c| c.expect("tracked").iter().map(SortedPoly::to_multi).collect()).collect())
    } else {
        None
    };
    Ok(GroebnerBasis { nvars, generators_in: gens.to_vec(), basis, order: order.clone(), stats, cofactors, sorted })
}

fn check_gens(gens: &[MultiPoly]) -> Result<usize> {
    let first = gens.first().ok_or_else(|| invalid("empty generator list"))?;
    let nvars = first.nvars();
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::AmbientMismatch { left: nvars, right: g.nvars() });
        }
    }
    Ok(nvars)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    budget: &'a Budget,
    polys: Vec<Tracked>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl Engine<'_> {
    fn find_reducer(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        (0..self.polys.len()).find(|&k| self.active[k] && Some(k) != skip && self.polys[k].poly.lm().divides(m))
    }

    /// Full reduction by the active polynomials.
    fn reduce(&mut self, p: Tracked) -> Result<Tracked> {
        self.reduce_skipping(p, None)
    }

    /// Fraction-free full reduction; the result is primitive with a positive
    /// leading coefficient.
    fn reduce_skipping(&mut self, mut p: Tracked, skip: Option<usize>) -> Result<Tracked> {
        let mut done: Vec<(Monomial, BigInt)> = Vec::new();
        let mut since_content = 0u32;
        while let Some((lm, lc)) = p.poly.terms.last() {
            match self.find_reducer(lm, skip) {
                Some(k) => {
                    let g = &self.polys[k];
                    let m = g.poly.lm().divide_into(lm).expect("divides");
                    let q = gcd(lc, g.poly.lc());
                    let a = g.poly.lc() / &q;
                    let b = -(lc / &q);
                    let mut cost = g.poly.len();
                    if !a.is_one() {
                        cost += p.poly.len() + done.len();
                        for (_, c) in &mut done {
                            *c *= &a;
                        }
                    }
                    self.budget.charge(cost as u64 * words(lc, g.poly.lc()))?;
                    self.stats.reductions += 1;
                    p.lin_comb(&a, &b, &m, g, self.order);
                    since_content += 1;
                    if since_content == 16 {
                        since_content = 0;
                        remove_content(&mut p, &mut done);
                    }
                }
                None => done.push(p.poly.terms.pop().expect("non-empty")),
            }
        }
        done.reverse();
        p.poly.terms = done;
        p.make_primitive();
        Ok(p)
    }

    fn spoly(&self, i: usize, j: usize) -> Result<Tracked> {
        let (gi, gj) = (&self.polys[i], &self.polys[j]);
        let lcm = gi.poly.lm().lcm(gj.poly.lm());
        let mi = gi.poly.lm().divide_into(&lcm).expect("lcm");
        let mj = gj.poly.lm().divide_into(&lcm).expect("lcm");
        self.budget.charge((gi.poly.len() + gj.poly.len()) as u64 * words(gi.poly.lc(), gj.poly.lc()))?;
        let q = gcd(gi.poly.lc(), gj.poly.lc());
        let mut s = Tracked {
            poly: IntPoly::zero(gi.poly.nvars),
            cofactors: gi.cofactors.as_ref().map(|c| vec![SortedPoly::zero(gi.poly.nvars); c.len()]),
        };
        let one = BigInt::one();
        s.lin_comb(&one, &(gj.poly.lc() / &q), &mi, gi, self.order);
        s.lin_comb(&one, &-(gi.poly.lc() / &q), &mj, gj, self.order);
        Ok(s)
    }

    fn next_pair(&mut self) -> Option<(usize, usize)> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .total_degree()
                .cmp(&pb.lcm.total_degree())
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        let p = self.pairs.swap_remove(best);
        Some((p.i, p.j))
    }

    /// Adds `h` to the basis, updating pairs with the Gebauer-Moeller criteria.
    fn insert(&mut self, h: Tracked) {
        let hidx = self.polys.len();
        let hlm = h.poly.lm().clone();
        self.polys.push(h);
        self.active.push(false);

        let mut candidates: Vec<(usize, Monomial, bool)> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| {
                let glm = self.polys[g].poly.lm();
                (g, hlm.lcm(glm), hlm.is_coprime(glm))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, lcm, coprime)) = candidates.pop() {
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, other, _)| other.divides(&lcm));
            if coprime || !dominated {
                kept.push((g, lcm, coprime));
            }
        }
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && hlm.lcm(polys[p.i].poly.lm()) != p.lcm
                && hlm.lcm(polys[p.j].poly.lm()) != p.lcm)
        });
        self.stats.spairs_skipped += (before - self.pairs.len()) as u64;
        for (g, lcm, coprime) in kept {
            if coprime {
                self.stats.spairs_skipped += 1;
            } else {
                self.pairs.push(Pair { i: g, j: hidx, lcm });
            }
        }
        for g in 0..hidx {
            if self.active[g] && hlm.divides(self.polys[g].poly.lm()) {
                self.active[g] = false;
            }
        }
        self.active[hidx] = true;
    }

    fn interreduce(&mut self) -> Result<Vec<Tracked>> {
        let mut idx: Vec<usize> = (0..self.polys.len()).filter(|&k| self.active[k]).collect();
        // Drop anything whose leading monomial another element divides.
        let lms: Vec<Monomial> = idx.iter().map(|&k| self.polys[k].poly.lm().clone()).collect();
        let mut keep = vec![true; idx.len()];
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                if a != b && keep[b] && lms[b].divides(&lms[a]) && (lms[a] != lms[b] || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut it = keep.iter();
        idx.retain(|_| *it.next().unwrap());
        for k in 0..self.polys.len() {
            self.active[k] = idx.contains(&k);
        }
        for &k in &idx {
            let p = self.polys[k].clone();
            self.polys[k] = self.reduce_skipping(p, Some(k))?;
        }
        let order = self.order;
        idx.sort_by(|&a, &b| order.cmp(self.polys[b].poly.lm(), self.polys[a].poly.lm()));
        Ok(idx.into_iter().map(|k| self.polys[k].clone()).collect())
    }
}

impl GroebnerBasis {
    /// Rebuilds a basis known to be reduced (for instance, read from cache).
    pub(crate) fn from_parts(nvars: usize, generators_in: Vec<MultiPoly>, basis: Vec<MultiPoly>, order: MonomialOrder) -> Self {
        let sorted = basis.iter().map(|p| SortedPoly::from_multi(p, &order)).collect();
        GroebnerBasis { nvars, generators_in, basis, order, stats: GroebnerStats::default(), cofactors: None, sorted }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0].is_constant()
    }

    /// True when the ideal is zero.
    pub fn is_zero_ideal(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|p| p.lm().clone()).collect()
    }

    /// `basis[k] = sum_l cofactors()[k][l] * generators_in[l]`, when certificates were tracked.
    pub fn cofactors(&self) -> Option<&[Vec<MultiPoly>]> {
        self.cofactors.as_deref()
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        Ok(self.divide(p)?.remainder)
    }

    pub fn divide(&self, p: &MultiPoly) -> Result<Division> {
        self.divide_budgeted(p, &Budget::unlimited())
    }

    pub fn divide_budgeted(&self, p: &MultiPoly, budget: &Budget) -> Result<Division> {
        if p.nvars() != self.nvars {
            return Err(Error::AmbientMismatch { left: self.nvars, right: p.nvars() });
        }
        let order = &self.order;
        let mut cur = SortedPoly::from_multi(p, order);
        let mut quotients = vec![MultiPoly::zero(self.nvars); self.sorted.len()];
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = cur.terms.last() {
            match self.sorted.iter().position(|g| g.lm().divides(lm)) {
                Some(k) => {
                    let g = &self.sorted[k];
                    let m = g.lm().divide_into(lm).expect("divides");
                    let c = lc / g.lc();
                    budget.charge(g.len() as u64)?;
                    quotients[k].add_term(m.clone(), c.clone());
                    cur = cur.add_scaled(&-c, &m, g, order);
                }
                None => rem.push(cur.terms.pop().expect("non-empty")),
            }
        }
        Ok(Division { quotients, remainder: MultiPoly::from_terms(self.nvars, rem) })
    }

    /// Checks that every S-polynomial of the basis reduces to zero and that
    /// the basis is reduced; used by tests and reports.
    pub fn verify_invariants(&self) -> Result<bool> {
        let n = self.sorted.len();
        for (a, p) in self.sorted.iter().enumerate() {
            if !p.lc().is_one() {
                return Ok(false);
            }
            for (b, q) in self.sorted.iter().enumerate() {
                if a != b && p.terms.iter().any(|(m, _)| q.lm().divides(m)) {
                    return Ok(false);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (gi, gj) = (&self.sorted[i], &self.sorted[j]);
                let lcm = gi.lm().lcm(gj.lm());
                let mi = gi.lm().divide_into(&lcm).unwrap();
                let mj = gj.lm().divide_into(&lcm).unwrap();
                let s = SortedPoly::zero(self.nvars)
                    .add_scaled(&Rational::one(), &mi, gi, &self.order)
                    .add_scaled(&-Rational::one(), &mj, gj, &self.order);
                if !self.normal_form(&s.to_multi())?.is_zero() {
                    return Ok(false);
                }
            }
        }
        for g in &self.generators_in {
            if !self.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Size of the larger coefficient in 64-bit words; a term operation on
/// `w`-word coefficients is charged as `w` budget steps.
fn words(a: &BigInt, b: &BigInt) -> u64 {
    1 + a.bits().max(b.bits()) / 64
}

/// Divides the partially reduced `p` (and the already settled `done` terms)
/// by their common content.
fn remove_content(p: &mut Tracked, done: &mut [(Monomial, BigInt)]) {
    let g = content(p.poly.terms.iter().chain(done.iter()).map(|(_, c)| c));
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in p.poly.terms.iter_mut().chain(done.iter_mut()) {
        *c /= &g;
    }
    if let Some(cofs) = p.cofactors.as_mut() {
        let inv = Rational::new(BigInt::one(), g);
        for h in cofs {
            h.scale(&inv);
        }
    }
}

pub(crate) fn combination(cofactors: &[MultiPoly], gens: &[MultiPoly]) -> MultiPoly {
    let nvars = gens.first().map(MultiPoly::nvars).unwrap_or(0);
    cofactors.iter().zip(gens).fold(MultiPoly::zero(nvars), |acc, (h, g)| {
        if h.is_zero() || g.is_zero() {
            acc
        } else {
            &acc + &(h * g)
        }
    })
}
