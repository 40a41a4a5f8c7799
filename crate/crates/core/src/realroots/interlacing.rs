use serde::Serialize;

use rayon::prelude::*;

use super::corpus::interlacing_corpus;
use super::{exact_root_values, RealRootedPoly, RootProfile, IMAG_THRESHOLD};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, Serialize)]
pub struct InterlacingReport {
    pub verdict: bool,
    /// Roots of `f`, with multiplicity.
    pub betas: Vec<f64>,
    /// Roots of `H_1(f)`, with multiplicity.
    pub gammas: Vec<f64>,
    /// 1-based indices `i` where `gamma_i` is misplaced.
    pub failures: Vec<usize>,
}

/// Checks that the roots `gamma_i` of `H_1(f)` sit in the open interval
/// `]beta_i, beta_(i+1)[` when the neighbouring roots of `f` differ by more
/// than `tol`, and within `tol` of `beta_i` when they coincide.
pub fn check_interlacing(profile: &RootProfile, tol: f64) -> Result<InterlacingReport> {
    profile.validate()?;
    if profile.degree() < 2 {
        return Err(invalid("interlacing needs degree at least 2"));
    }
    let f = RealRootedPoly::from_profile(profile)?;
    let betas = f.roots().to_vec();
    let gammas = f.hasse_roots(1, profile.cluster_tol)?;
    if gammas.len() + 1 != betas.len() {
        return Err(invalid("H_1(f) has the wrong number of real roots"));
    }
    let failures: Vec<usize> = gammas
        .iter()
        .enumerate()
        .filter(|&(i, &g)| {
            let (lo, hi) = (betas[i], betas[i + 1]);
            let ok = if hi - lo > tol { lo < g && g < hi } else { (g - lo).abs() <= tol };
            !ok
        })
        .map(|(i, _)| i + 1)
        .collect();
    Ok(InterlacingReport { verdict: failures.is_empty(), betas, gammas, failures })
}

/// Largest imaginary part among the roots of `H_1(f), ..., H_(d-1)(f)`.
pub fn hasse_max_imaginary(f: &RealRootedPoly) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..f.degree() {
        let (_, im) = exact_root_values(&f.hasse(k))?;
        worst = worst.max(im);
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct InterlacingSuiteReport {
    pub count: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub tol: f64,
    pub passed: usize,
    /// Corpus indices failing the interlacing check.
    pub failures: Vec<usize>,
    /// Corpus indices where some `H_k(f)` has a root with imaginary part above the threshold.
    pub complex_hasse: Vec<usize>,
    pub max_imaginary: f64,
    pub with_repeated_roots: usize,
    pub verdict: bool,
}

/// Runs [`check_interlacing`] and [`hasse_max_imaginary`] over a seeded corpus.
pub fn interlacing_suite(count: usize, seed: u64, max_degree: usize, tol: f64) -> Result<InterlacingSuiteReport> {
    if max_degree < 2 {
        return Err(invalid("interlacing corpus needs max degree at least 2"));
    }
    if !(tol >= 0.0) {
        return Err(invalid("tolerance must be non-negative"));
    }
    let corpus = interlacing_corpus(count, seed, max_degree);
    let outcomes = corpus
        .par_iter()
        .map(|roots| -> Result<(bool, f64)> {
            let profile = RootProfile::from_roots(roots, 0.0);
            let report = check_interlacing(&profile, tol)?;
            let im = hasse_max_imaginary(&RealRootedPoly::from_roots(roots)?)?;
            Ok((report.verdict, im))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<usize> = outcomes.iter().enumerate().filter(|(_, o)| !o.0).map(|(i, _)| i).collect();
    let complex_hasse: Vec<usize> =
        outcomes.iter().enumerate().filter(|(_, o)| o.1 >= IMAG_THRESHOLD).map(|(i, _)| i).collect();
    let max_imaginary = outcomes.iter().map(|o| o.1).fold(0.0, f64::max);
    let with_repeated_roots = corpus.iter().filter(|r| r.windows(2).any(|w| w[0] == w[1])).count();
    Ok(InterlacingSuiteReport {
        count,
        seed,
        max_degree,
        tol,
        passed: count - failures.len(),
        verdict: failures.is_empty() && complex_hasse.is_empty(),
        failures,
        complex_hasse,
        max_imaginary,
        with_repeated_roots,
    })
}
