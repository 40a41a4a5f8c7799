//! Real roots of real-rooted polynomials, Hasse-derivative interlacing and
//! the numerical search for almost counterexamples.
//!
//! Roots are computed as eigenvalues of a balanced companion matrix. When a
//! polynomial is known exactly (built from a root vector), its square-free
//! decomposition is taken first so every eigenvalue problem has simple roots
//! and multiplicities are exact.

mod ace;
pub mod corpus;
mod interlacing;
mod nelder_mead;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::univariate::QPoly;
use crate::Rational;

pub use ace::{
    find_almost_counterexample, verify_contradiction_chain, verify_level, AceCandidate, AceRecord, AceSpec,
    ChainReport, LevelReport, SearchConfig, SearchFailure,
};
pub use interlacing::{check_interlacing, hasse_max_imaginary, interlacing_suite, InterlacingReport, InterlacingSuiteReport};
pub use nelder_mead::{nelder_mead, NelderMeadResult};

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-3;
/// Largest imaginary part tolerated on a root of a real-rooted polynomial.
pub const IMAG_THRESHOLD: f64 = 1e-8;

/// Distinct real roots in increasing order with their multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootProfile {
    pub roots: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub cluster_tol: f64,
}

impl RootProfile {
    /// Groups a list of real values into clusters of width at most `cluster_tol`
    /// between neighbours; each cluster is represented by its weighted mean.
    pub fn from_weighted(mut values: Vec<(f64, usize)>, cluster_tol: f64) -> Self {
        values.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut roots: Vec<f64> = Vec::new();
        let mut multiplicities: Vec<usize> = Vec::new();
        let mut sums: Vec<f64> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for (v, m) in values {
            if !roots.is_empty() && v - last <= cluster_tol {
                let k = roots.len() - 1;
                multiplicities[k] += m;
                sums[k] += v * m as f64;
                roots[k] = sums[k] / multiplicities[k] as f64;
            } else {
                roots.push(v);
                multiplicities.push(m);
                sums.push(v * m as f64);
            }
            last = v;
        }
        RootProfile { roots, multiplicities, cluster_tol }
    }

    pub fn from_roots(values: &[f64], cluster_tol: f64) -> Self {
        Self::from_weighted(values.iter().map(|&v| (v, 1)).collect(), cluster_tol)
    }

    pub fn degree(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Roots repeated by multiplicity, weakly increasing.
    pub fn expanded(&self) -> Vec<f64> {
        self.roots
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&r, &m)| std::iter::repeat(r).take(m))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.roots.len() != self.multiplicities.len() || self.roots.is_empty() {
            return Err(invalid("root profile needs one multiplicity per root"));
        }
        if self.multiplicities.iter().any(|&m| m == 0) {
            return Err(invalid("multiplicities must be positive"));
        }
        if self.roots.windows(2).any(|w| !(w[0] < w[1])) || self.roots.iter().any(|r| !r.is_finite()) {
            return Err(invalid("roots must be finite and strictly increasing"));
        }
        if !(self.cluster_tol >= 0.0) {
            return Err(invalid("cluster tolerance must be non-negative"));
        }
        Ok(())
    }
}

/// Number of distinct roots (clusters).
pub fn count_distinct_roots(profile: &RootProfile) -> usize {
    profile.roots.len()
}

/// Parlett-Reinsch balancing with power-of-two scalings.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let g = r / radix;
            while cc < g {
                f *= radix;
                cc *= radix * radix;
            }
            let g = r * radix;
            while cc > g {
                f /= radix;
                cc /= radix * radix;
            }
            if (cc + r / f) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// All complex roots of `sum coeffs[k] x^k`, constant term first.
pub fn complex_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut c = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    if c.iter().any(|v| !v.is_finite()) {
        return Err(invalid("non-finite coefficient"));
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Err(invalid("polynomial of degree 0 has no roots"));
    }
    let zeros = c.iter().take_while(|&&v| v == 0.0).count();
    let mut out = vec![Complex64::zero(); zeros];
    let c = &c[zeros..];
    let n = c.len() - 1;
    let lead = c[n];
    match n {
        0 => {}
        1 => out.push(Complex64::new(-c[0] / lead, 0.0)),
        _ => {
            let mut m = DMatrix::<f64>::zeros(n, n);
            for j in 0..n {
                m[(0, j)] = -c[n - 1 - j] / lead;
            }
            for i in 1..n {
                m[(i, i - 1)] = 1.0;
            }
            balance(&mut m);
            let schur = Schur::try_new(m, f64::EPSILON, 10_000)
                .ok_or_else(|| invalid("eigenvalue iteration did not converge"))?;
            let mut eig: Vec<Complex64> = schur.complex_eigenvalues().iter().cloned().collect();
            for z in eig.iter_mut() {
                if z.im.abs() <= IMAG_THRESHOLD * z.re.abs().max(1.0) {
                    *z = Complex64::new(newton_polish(c, z.re), z.im);
                }
            }
            out.extend(eig);
        }
    }
    Ok(out)
}

/// A few Newton steps on a real root, kept only while they shrink |p(x)|.
fn newton_polish(c: &[f64], x0: f64) -> f64 {
    let eval = |x: f64| {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    let mut x = x0;
    let (mut px, _) = eval(x);
    for _ in 0..3 {
        let (p, dp) = eval(x);
        if dp == 0.0 || p == 0.0 {
            break;
        }
        let nx = x - p / dp;
        let (np, _) = eval(nx);
        if np.abs() < px.abs() {
            x = nx;
            px = np;
        } else {
            break;
        }
    }
    x
}

/// Real roots of a polynomial promised to be real-rooted, from floating-point
/// coefficients. Eigenvalues within `cluster_tol` of each other are merged
/// and the cluster centre must be real to within [`IMAG_THRESHOLD`].
pub fn real_roots(coeffs: &[f64], cluster_tol: f64) -> Result<RootProfile> {
    let roots = complex_roots(coeffs)?;
    let mut sorted = roots;
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for z in sorted {
        match clusters.last_mut() {
            Some(cl) if cl.iter().any(|w| (z - w).norm() <= cluster_tol) => cl.push(z),
            _ => clusters.push(vec![z]),
        }
    }
    let mut max_imag: f64 = 0.0;
    let mut values = Vec::new();
    for cl in clusters {
        let centre = cl.iter().sum::<Complex64>() / cl.len() as f64;
        max_imag = max_imag.max(centre.im.abs());
        values.push((centre.re, cl.len()));
    }
    if max_imag > IMAG_THRESHOLD {
        return Err(Error::NotRealRooted { max_imag });
    }
    Ok(RootProfile::from_weighted(values, cluster_tol))
}

/// Real roots of an exactly known polynomial with exact multiplicities.
pub fn real_roots_exact(p: &QPoly, cluster_tol: f64) -> Result<RootProfile> {
    let (values, max_imag) = exact_root_values(p)?;
    if max_imag > IMAG_THRESHOLD {
        return Err(Error::NotRealRooted { max_imag });
    }
    Ok(RootProfile::from_weighted(values, cluster_tol))
}

/// Roots with multiplicity of each square-free factor, and the largest
/// imaginary part met.
pub(crate) fn exact_root_values(p: &QPoly) -> Result<(Vec<(f64, usize)>, f64)> {
    match p.degree() {
        None => return Err(invalid("roots of the zero polynomial")),
        Some(0) => return Err(invalid("polynomial of degree 0 has no roots")),
        _ => {}
    }
    let mut values = Vec::new();
    let mut max_imag: f64 = 0.0;
    for (factor, mult) in p.square_free() {
        if factor.degree() == Some(1) {
            let r = -factor.coeff(0) / factor.coeff(1);
            values.push((r.to_f64().unwrap_or(f64::NAN), mult));
            continue;
        }
        for z in complex_roots(&factor.to_f64())? {
            max_imag = max_imag.max(z.im.abs());
            values.push((z.re, mult));
        }
    }
    Ok((values, max_imag))
}

/// A real-rooted polynomial held by its root vector, with the exact
/// polynomial over the dyadic rationals those roots denote.
#[derive(Clone, Debug)]
pub struct RealRootedPoly {
    roots: Vec<f64>,
    exact: QPoly,
}

pub(crate) fn exact_rational(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| invalid(format!("{x} is not a finite real")))
}

impl RealRootedPoly {
    pub fn from_roots(roots: &[f64]) -> Result<Self> {
        if roots.is_empty() {
            return Err(invalid("a real-rooted polynomial needs at least one root"));
        }
        let mut sorted = roots.to_vec();
        sorted.sort_by(f64::total_cmp);
        let exact_roots = sorted.iter().map(|&r| exact_rational(r)).collect::<Result<Vec<_>>>()?;
        Ok(RealRootedPoly { exact: QPoly::from_roots(&exact_roots), roots: sorted })
    }

    pub fn from_profile(profile: &RootProfile) -> Result<Self> {
        Self::from_roots(&profile.expanded())
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Roots with multiplicity, weakly increasing.
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn exact(&self) -> &QPoly {
        &self.exact
    }

    pub fn hasse(&self, k: usize) -> QPoly {
        self.exact.hasse_derivative(k)
    }

    /// Roots of `H_k(f)` with multiplicity, weakly increasing.
    pub fn hasse_roots(&self, k: usize, cluster_tol: f64) -> Result<Vec<f64>> {
        if k == 0 || k >= self.degree() {
            return Err(invalid(format!("Hasse order {k} outside 1..{}", self.degree() - 1)));
        }
        Ok(real_roots_exact(&self.hasse(k), cluster_tol)?.expanded())
    }
}

/// `alpha_{k,m}(f)`: the m-th smallest root of `H_k(f)`, with multiplicity.
pub fn alpha(f: &RealRootedPoly, k: usize, m: usize) -> Result<f64> {
    alpha_with_tol(f, k, m, DEFAULT_CLUSTER_TOL)
}

pub fn alpha_with_tol(f: &RealRootedPoly, k: usize, m: usize, cluster_tol: f64) -> Result<f64> {
    let d = f.degree();
    if k == 0 || k >= d {
        return Err(invalid(format!("k = {k} outside 1..={}", d.saturating_sub(1))));
    }
    if m == 0 || m > d - k {
        return Err(invalid(format!("m = {m} outside 1..={}", d - k)));
    }
    Ok(f.hasse_roots(k, cluster_tol)?[m - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_factorisation() {
        let p = real_roots(&[0.0, 0.0, -1.0, 1.0], DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(p.roots, vec![0.0, 1.0]);
        assert_eq!(p.multiplicities, vec![2, 1]);
    }

    #[test]
    fn pure_power() {
        for d in 1..=10 {
            let mut c = vec![0.0; d + 1];
            c[d] = 1.0;
            let p = real_roots(&c, DEFAULT_CLUSTER_TOL).unwrap();
            assert_eq!(p.roots, vec![0.0]);
            assert_eq!(p.multiplicities, vec![d]);
        }
    }

    #[test]
    fn quadratic_formula() {
        // H_1 of x(x-1)(x-2) = 3x^2 - 6x + 2
        let p = real_roots(&[2.0, -6.0, 3.0], DEFAULT_CLUSTER_TOL).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((p.roots[0] - (1.0 - s)).abs() < 1e-14);
        assert!((p.roots[1] - (1.0 + s)).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(real_roots(&[3.0], DEFAULT_CLUSTER_TOL).is_err());
        assert!(real_roots(&[], DEFAULT_CLUSTER_TOL).is_err());
        // x^2 + 1
        assert!(matches!(real_roots(&[1.0, 0.0, 1.0], DEFAULT_CLUSTER_TOL), Err(Error::NotRealRooted { .. })));
    }

    #[test]
    fn exact_path_handles_high_multiplicity() {
        let f = RealRootedPoly::from_roots(&[0.3, 0.3, 0.3, 0.3, 0.7]).unwrap();
        let prof = real_roots_exact(f.exact(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(prof.multiplicities, vec![4, 1]);
        assert_eq!(prof.roots[0], 0.3);
        let h1 = f.hasse_roots(1, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(&h1[..3], &[0.3, 0.3, 0.3]);
    }

    #[test]
    fn alpha_examples() {
        let f = RealRootedPoly::from_roots(&[0.0, 1.0, 2.0]).unwrap();
        let a = alpha(&f, 1, 1).unwrap();
        assert!((a - (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-14);
        assert!(alpha(&f, 1, 3).is_err());
        assert!(alpha(&f, 3, 1).is_err());
        assert!(alpha(&f, 0, 1).is_err());
        let g = RealRootedPoly::from_roots(&[0.0; 5]).unwrap();
        for k in 1..5 {
            for m in 1..=5 - k {
                assert_eq!(alpha(&g, k, m).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn profile_counting() {
        let p = RootProfile::from_roots(&[0.0, 0.0, 1.0], DEFAULT_CLUSTER_TOL);
        assert_eq!(count_distinct_roots(&p), 2);
        assert_eq!(p.degree(), 3);
        assert_eq!(count_distinct_roots(&RootProfile::from_roots(&[0.0; 6], 1e-7)), 1);
    }
}
