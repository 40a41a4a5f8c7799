//! Almost counterexamples: real-rooted `f` on `[0, 1]` with `f(0) = f(1) = 0`
//! such that a prescribed root of `H_k(f)` is a root of `f` for every `k`
//! except one level.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::nelder_mead::nelder_mead;
use super::{
    alpha_with_tol, complex_roots, RealRootedPoly, RootProfile, DEFAULT_CLUSTER_TOL, DEFAULT_GAP_THRESHOLD,
};
use crate::error::{invalid, Error, Result};
use crate::unipoly::binomial;

/// Level `i` and the pairs `(k_j, m_j)` covering `{1, ..., d-1} \ {i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AceSpec {
    pub degree: usize,
    pub level: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl AceSpec {
    /// All `m_j = 1`.
    pub fn new(degree: usize, level: usize) -> Result<Self> {
        let pairs = (1..degree).filter(|&k| k != level).map(|k| (k, 1)).collect();
        let spec = AceSpec { degree, level, pairs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_pairs(degree: usize, level: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let spec = AceSpec { degree, level, pairs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.degree;
        if d < 4 {
            return Err(invalid(format!("almost-counterexample search needs degree at least 4, got {d}")));
        }
        if self.level == 0 || self.level >= d {
            return Err(invalid(format!("level {} outside 1..={}", self.level, d - 1)));
        }
        let ks: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
        let want: Vec<usize> = (1..d).filter(|&k| k != self.level).collect();
        if ks != want {
            return Err(invalid(format!("pairs must enumerate {want:?} in order, got {ks:?}")));
        }
        for &(k, m) in &self.pairs {
            if m == 0 || m > d - k {
                return Err(invalid(format!("pair ({k}, {m}) needs 1 <= m <= {}", d - k)));
            }
        }
        Ok(())
    }

    pub fn first_roots_only(&self) -> bool {
        self.pairs.iter().all(|&(_, m)| m == 1)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iter: usize,
    pub residual_target: f64,
    pub cluster_tol: f64,
    pub gap_threshold: f64,
    pub polish_iters: usize,
    pub damping: f64,
    pub step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            restarts: 16,
            max_iter: 4000,
            residual_target: 1e-9,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            gap_threshold: DEFAULT_GAP_THRESHOLD,
            polish_iters: 200,
            damping: 0.5,
            step: 0.15,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AceCandidate {
    /// Roots of `f`; the first is 0 and the last is 1.
    pub profile: RootProfile,
    /// Sum of squared `per_pair_gaps`.
    pub residual: f64,
    /// `|alpha_{k_j, m_j}(f) - nearest root of f|` per pair.
    pub per_pair_gaps: Vec<f64>,
    /// Smallest distance between a root of `H_level(f)` and a root of `f`.
    pub level_gap: f64,
    pub seed: u64,
    pub iterations: usize,
}

/// Best candidate of a search that missed its residual target.
#[derive(Clone, Debug)]
pub struct SearchFailure {
    pub best: AceCandidate,
    pub target: f64,
}

impl std::fmt::Display for SearchFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "best residual {:e} above target {:e}", self.best.residual, self.target)
    }
}

/// Distance to the nearest entry of `roots`; the first index wins ties.
fn nearest(x: f64, roots: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, &r) in roots.iter().enumerate() {
        let d = (x - r).abs();
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

fn coefficients_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        c = next;
    }
    c
}

/// Floating-point `alpha_{k,m}` for every pair; used inside the search loop.
fn fast_alphas(roots: &[f64], spec: &AceSpec) -> Option<Vec<f64>> {
    let c = coefficients_from_roots(roots);
    let d = roots.len();
    spec.pairs
        .iter()
        .map(|&(k, m)| {
            let hk: Vec<f64> = (k..=d).map(|j| c[j] * binomial(j, k).to_string().parse::<f64>().unwrap()).collect();
            let mut re: Vec<f64> = complex_roots(&hk).ok()?.iter().map(|z| z.re).collect();
            re.sort_by(f64::total_cmp);
            re.get(m - 1).copied()
        })
        .collect()
}

fn fast_residual(roots: &[f64], spec: &AceSpec) -> f64 {
    match fast_alphas(roots, spec) {
        Some(alphas) => alphas.iter().map(|&a| nearest(a, roots).1.powi(2)).sum(),
        None => f64::MAX,
    }
}

/// `[0, sorted(clamp(y)), 1]` and the penalty for leaving `[0, 1]` or the order.
fn project(y: &[f64]) -> (Vec<f64>, f64) {
    let mut penalty = 0.0;
    for w in y.windows(2) {
        if w[0] > w[1] {
            penalty += (w[0] - w[1]).powi(2);
        }
    }
    let mut roots = Vec::with_capacity(y.len() + 2);
    roots.push(0.0);
    for &v in y {
        let c = v.clamp(0.0, 1.0);
        penalty += (v - c).powi(2);
        roots.push(c);
    }
    roots.push(1.0);
    roots.sort_by(f64::total_cmp);
    (roots, penalty)
}

fn snap(roots: &mut [f64], tol: f64) {
    let n = roots.len();
    for r in &mut roots[1..n - 1] {
        if r.abs() <= tol {
            *r = 0.0;
        } else if (1.0 - *r).abs() <= tol {
            *r = 1.0;
        }
    }
    roots.sort_by(f64::total_cmp);
}

/// Damped fixed-point step: pull the interior root nearest each
/// `alpha_{k_j, m_j}` towards it.
fn polish(roots: &mut Vec<f64>, spec: &AceSpec, cfg: &SearchConfig) -> usize {
    let mut best = roots.clone();
    let mut best_res = fast_residual(roots, spec);
    let n = roots.len();
    let mut iters = 0;
    for _ in 0..cfg.polish_iters {
        if best_res == 0.0 {
            break;
        }
        iters += 1;
        let Some(alphas) = fast_alphas(roots, spec) else { break };
        for a in alphas {
            let (i, _) = nearest(a, &roots[1..n - 1]);
            let r = &mut roots[1 + i];
            *r = ((1.0 - cfg.damping) * *r + cfg.damping * a).clamp(0.0, 1.0);
        }
        roots.sort_by(f64::total_cmp);
        let res = fast_residual(roots, spec);
        if res < best_res {
            best_res = res;
            best = roots.clone();
        }
    }
    *roots = best;
    iters
}

/// Exact-path metrics of a full root vector.
pub(crate) fn evaluate(roots: &[f64], spec: &AceSpec, cluster_tol: f64, seed: u64, iterations: usize) -> Result<AceCandidate> {
    let f = RealRootedPoly::from_roots(roots)?;
    let profile = RootProfile::from_roots(roots, cluster_tol);
    let per_pair_gaps = spec
        .pairs
        .iter()
        .map(|&(k, m)| Ok(nearest(alpha_with_tol(&f, k, m, cluster_tol)?, &profile.roots).1))
        .collect::<Result<Vec<f64>>>()?;
    let residual = per_pair_gaps.iter().map(|g| g * g).sum();
    let level_gap = f
        .hasse_roots(spec.level, cluster_tol)?
        .iter()
        .map(|&g| nearest(g, &profile.roots).1)
        .fold(f64::INFINITY, f64::min);
    Ok(AceCandidate { profile, residual, per_pair_gaps, level_gap, seed, iterations })
}

fn run_restart(spec: &AceSpec, cfg: &SearchConfig, restart: usize) -> Result<AceCandidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let n = spec.degree - 2;
    let mut y0: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    y0.sort_by(f64::total_cmp);
    let objective = |y: &[f64]| {
        let (roots, penalty) = project(y);
        fast_residual(&roots, spec) + penalty
    };
    let first = nelder_mead(objective, &y0, cfg.step, cfg.max_iter, 1e-30);
    let second = nelder_mead(objective, &first.x, cfg.step * 0.1, cfg.max_iter, 1e-30);
    let (mut roots, _) = project(&second.x);
    snap(&mut roots, cfg.cluster_tol);
    let polish_iters = polish(&mut roots, spec, cfg);
    snap(&mut roots, cfg.cluster_tol);
    evaluate(&roots, spec, cfg.cluster_tol, cfg.seed, first.iterations + second.iterations + polish_iters)
}

/// Multi-start Nelder-Mead over the interior roots followed by a damped
/// fixed-point polish. Restarts are independent (seeded from `cfg.seed` and
/// the restart index) and the lowest residual wins, earliest restart on ties.
///
/// The outer error is for invalid input; the inner one carries the best
/// candidate when no restart reached `cfg.residual_target`.
pub fn find_almost_counterexample(spec: &AceSpec, cfg: &SearchConfig) -> Result<Result<AceCandidate, SearchFailure>> {
    spec.validate()?;
    if cfg.restarts == 0 {
        return Err(invalid("search needs at least one restart"));
    }
    let results = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(spec, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    let iterations: usize = results.iter().map(|c| c.iterations).sum();
    let mut best = results
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.residual.total_cmp(&b.residual).then(i.cmp(j)))
        .map(|(_, c)| c)
        .expect("at least one restart");
    best.iterations = iterations;
    if best.residual < cfg.residual_target {
        Ok(Ok(best))
    } else {
        Ok(Err(SearchFailure { best, target: cfg.residual_target }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub verdict: bool,
    /// For each `j != level`: `(j, distance between roots of H_j(f) and roots of f)`.
    pub shared_root_gaps: Vec<(usize, f64)>,
    pub level_gap: f64,
    pub distinct_roots: usize,
}

/// Shared root with every `H_j(f)`, `j != level`, within `tol`; no shared
/// root with `H_level(f)` (gap above `gap_threshold`); at least two distinct roots.
pub fn verify_level(candidate: &AceCandidate, spec: &AceSpec, tol: f64, gap_threshold: f64) -> Result<LevelReport> {
    spec.validate()?;
    candidate.profile.validate()?;
    if candidate.profile.degree() != spec.degree {
        return Err(invalid("candidate degree does not match the spec"));
    }
    let f = RealRootedPoly::from_profile(&candidate.profile)?;
    let ctol = candidate.profile.cluster_tol;
    let roots = &candidate.profile.roots;
    let gap_for = |j: usize| -> Result<f64> {
        Ok(f.hasse_roots(j, ctol)?.iter().map(|&g| nearest(g, roots).1).fold(f64::INFINITY, f64::min))
    };
    let shared_root_gaps = (1..spec.degree)
        .filter(|&j| j != spec.level)
        .map(|j| Ok((j, gap_for(j)?)))
        .collect::<Result<Vec<_>>>()?;
    let level_gap = gap_for(spec.level)?;
    let distinct_roots = roots.len();
    let verdict =
        shared_root_gaps.iter().all(|&(_, g)| g <= tol) && level_gap > gap_threshold && distinct_roots >= 2;
    Ok(LevelReport { verdict, shared_root_gaps, level_gap, distinct_roots })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub level: usize,
    /// Multiplicity `m` of the root 0 of `f`.
    pub zero_multiplicity: usize,
    /// First strictly positive root of `f`.
    pub beta: f64,
    /// `alpha_{l,1}(f)` for `l = 1, ..., m-1`; all should vanish.
    pub vanishing_alphas: Vec<f64>,
    pub item_i: bool,
    /// First positive root of `H_l(f)` for `l = 1, ..., m-1`.
    pub nested_roots: Vec<f64>,
    pub item_ii: bool,
    pub alpha_m1: f64,
    /// `alpha_{m,1}(f)` lies in `]0, beta^(m-1)[` (with `beta^(0) = beta`).
    pub item_iii: bool,
    /// Distance from `alpha_{m,1}(f)` to the nearest root of `f`.
    pub alpha_m1_gap: f64,
    pub item_iv: bool,
    pub verdict: bool,
}

/// Walks the multiplicity chain at the root 0 for a candidate of level
/// `d-3`, `d-2` or `d-1` with all `m_j = 1`.
pub fn verify_contradiction_chain(candidate: &AceCandidate, spec: &AceSpec, tol: f64) -> Result<ChainReport> {
    spec.validate()?;
    let d = spec.degree;
    if !spec.first_roots_only() {
        return Err(invalid("chain check needs m_j = 1 for every pair"));
    }
    if spec.level + 3 < d {
        return Err(invalid(format!("chain check needs level in {{d-3, d-2, d-1}}, got {}", spec.level)));
    }
    if !verify_level(candidate, spec, tol, DEFAULT_GAP_THRESHOLD)?.verdict {
        return Err(invalid("candidate is not an almost counterexample of this level"));
    }
    let profile = &candidate.profile;
    let ctol = profile.cluster_tol;
    let f = RealRootedPoly::from_profile(profile)?;
    if profile.roots[0].abs() > tol {
        return Err(invalid("candidate does not vanish at 0"));
    }
    let m = profile.multiplicities[0];
    let beta = profile.roots.iter().copied().find(|&r| r > tol).ok_or_else(|| invalid("no positive root"))?;
    let first_positive = |l: usize| -> Result<f64> {
        f.hasse_roots(l, ctol)?.into_iter().find(|&r| r > tol).ok_or_else(|| invalid(format!("H_{l}(f) has no positive root")))
    };

    let vanishing_alphas = (1..m).map(|l| alpha_with_tol(&f, l, 1, ctol)).collect::<Result<Vec<_>>>()?;
    let item_i = vanishing_alphas.iter().all(|a| a.abs() <= tol);

    let nested_roots = (1..m).map(first_positive).collect::<Result<Vec<_>>>()?;
    let mut chain = vec![beta];
    chain.extend(nested_roots.iter().copied());
    let item_ii = chain.windows(2).all(|w| w[1] < w[0]) && chain.last().is_some_and(|&b| b > tol);

    let alpha_m1 = alpha_with_tol(&f, m, 1, ctol)?;
    let upper = *chain.last().expect("non-empty");
    let item_iii = alpha_m1 > tol && alpha_m1 < upper && upper <= beta;
    let alpha_m1_gap = nearest(alpha_m1, &profile.roots).1;
    let item_iv = alpha_m1_gap > tol;
    Ok(ChainReport {
        level: spec.level,
        zero_multiplicity: m,
        beta,
        vanishing_alphas,
        item_i,
        nested_roots,
        item_ii,
        alpha_m1,
        item_iii,
        alpha_m1_gap,
        item_iv,
        verdict: item_i && item_ii && item_iii && item_iv,
    })
}

/// Serialised search result, accepted back for re-verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AceRecord {
    pub degree: usize,
    pub level: usize,
    pub pairs: Vec<(usize, usize)>,
    pub roots: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub residual: f64,
    pub per_pair_gaps: Vec<f64>,
    pub level_gap: f64,
    pub seed: u64,
    pub iterations: usize,
}

impl AceRecord {
    pub fn new(spec: &AceSpec, c: &AceCandidate) -> Self {
        AceRecord {
            degree: spec.degree,
            level: spec.level,
            pairs: spec.pairs.clone(),
            roots: c.profile.roots.clone(),
            multiplicities: c.profile.multiplicities.clone(),
            residual: c.residual,
            per_pair_gaps: c.per_pair_gaps.clone(),
            level_gap: c.level_gap,
            seed: c.seed,
            iterations: c.iterations,
        }
    }

    pub fn into_parts(self, cluster_tol: f64) -> Result<(AceSpec, AceCandidate)> {
        let spec = AceSpec::with_pairs(self.degree, self.level, self.pairs)?;
        let profile = RootProfile { roots: self.roots, multiplicities: self.multiplicities, cluster_tol };
        profile.validate()?;
        let candidate = AceCandidate {
            profile,
            residual: self.residual,
            per_pair_gaps: self.per_pair_gaps,
            level_gap: self.level_gap,
            seed: self.seed,
            iterations: self.iterations,
        };
        Ok((spec, candidate))
    }
}

impl From<SearchFailure> for Error {
    fn from(f: SearchFailure) -> Self {
        Error::InvalidArgument(format!("almost-counterexample search failed: {f}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(AceSpec::new(5, 0).is_err());
        assert!(AceSpec::new(5, 5).is_err());
        assert!(AceSpec::new(3, 2).is_err());
        let s = AceSpec::new(5, 4).unwrap();
        assert_eq!(s.pairs, vec![(1, 1), (2, 1), (3, 1)]);
        assert!(AceSpec::with_pairs(5, 4, vec![(1, 1), (2, 4), (3, 1)]).is_err());
        assert!(AceSpec::with_pairs(5, 4, vec![(1, 1), (3, 1)]).is_err());
        assert!(AceSpec::with_pairs(5, 4, vec![(1, 4), (2, 3), (3, 2)]).is_ok());
    }

    #[test]
    fn nearest_prefers_first_on_ties() {
        assert_eq!(nearest(0.5, &[0.0, 1.0]), (0, 0.5));
    }

    #[test]
    fn projection_penalises_leaving_the_box() {
        let (r, p) = project(&[-0.5, 0.25]);
        assert_eq!(r, vec![0.0, 0.0, 0.25, 1.0]);
        assert!((p - 0.25).abs() < 1e-15);
        let (_, p) = project(&[0.6, 0.4]);
        assert!((p - 0.04).abs() < 1e-12);
    }

    #[test]
    fn pure_power_is_not_an_almost_counterexample() {
        let spec = AceSpec::new(4, 3).unwrap();
        let c = evaluate(&[0.0; 4], &spec, DEFAULT_CLUSTER_TOL, 0, 0);
        assert!(c.is_ok());
        let cand = c.unwrap();
        assert_eq!(cand.level_gap, 0.0);
        assert!(!verify_level(&cand, &spec, 1e-6, DEFAULT_GAP_THRESHOLD).unwrap().verdict);
    }
}
