use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use serde_json::json;

use alvero_core::groebner::{
    check_regular_sequence, verify_conjecture, verify_main_theorem, BasisCache, Context, RegularSequenceReport,
};
use alvero_core::realroots::{
    find_almost_counterexample, interlacing_suite, verify_contradiction_chain, verify_level, AceRecord, AceSpec,
    SearchConfig,
};
use alvero_core::resultant::casas_resultants_with_budget;
use alvero_core::Budget;

use crate::config::{Format, RunConfig};
use crate::report::Report;
use crate::CliError;

pub struct Output {
    pub text: String,
    pub verdict: bool,
}

fn format_of(cfg: &RunConfig, default: Format) -> Format {
    cfg.format.unwrap_or(default)
}

fn open_cache(cfg: &RunConfig) -> Option<BasisCache> {
    let dir = cfg.cache_dir.as_ref()?;
    match BasisCache::new(dir) {
        Ok(c) => Some(c),
        Err(e) => {
            eprintln!("alvero: cache disabled ({}): {e}", dir.display());
            None
        }
    }
}

fn context<'a>(cfg: &RunConfig, budget: &'a Budget, cache: Option<&'a BasisCache>) -> Context<'a> {
    let mut ctx = Context::new(budget);
    ctx.cache = cache;
    ctx.certificates = cfg.certificates;
    ctx.exponent_bound = cfg.exponent_bound;
    ctx.max_degree = cfg.max_degree;
    ctx
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn pass(v: bool) -> &'static str {
    if v {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(report: Report, text: String, cfg: &RunConfig, default: Format) -> Output {
    let verdict = report.verdict;
    let text = match format_of(cfg, default) {
        Format::Json => report.to_json(),
        Format::Text => text,
    };
    Output { text, verdict }
}

pub fn resultants(degree: usize, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_degree(degree)?;
    let budget = Budget::new(cfg.budget);
    let t = Instant::now();
    let family = if degree < 2 { Vec::new() } else { casas_resultants_with_budget(degree, &budget)?.members };
    let mut text = String::new();
    for (i, r) in family.iter().enumerate() {
        writeln!(text, "R{} = {r}", i + 1).unwrap();
    }
    // each member as a list of [coefficient, exponents] terms, leading term first
    let terms: Vec<Vec<serde_json::Value>> = family
        .iter()
        .map(|r| r.terms().rev().map(|(m, c)| json!([c.to_string(), m.exponents()])).collect())
        .collect();
    let members: Vec<String> = family.iter().map(ToString::to_string).collect();
    let mut report =
        Report::new("resultants", "resultants", true).with_details(json!({ "resultants": members, "terms": terms }));
    report.degree = Some(degree);
    report.budget_used = budget.used();
    report.budget_limit = cfg.budget;
    report.timings.insert("resultants".into(), ms(t));
    Ok(finish(report, text, cfg, Format::Text))
}

pub fn verify(degree: usize, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_degree(degree)?;
    let budget = Budget::new(cfg.budget);
    let cache = open_cache(cfg);
    let r = verify_conjecture(degree, &cfg.order, &context(cfg, &budget, cache.as_ref()))?;

    let mut text = format!("verify degree {degree} ({})\n", r.order);
    for v in &r.variables {
        let power = match (v.in_radical, v.exponent) {
            (false, _) => "not in radical".to_string(),
            (true, Some(n)) => format!("in radical, {}^{n} in ideal", v.variable),
            (true, None) => format!("in radical, exponent above {}", cfg.exponent_bound),
        };
        writeln!(text, "  {}: {power}", v.variable).unwrap();
    }
    let powers: Vec<&str> = r.pure_powers.iter().map(|p| p.as_deref().unwrap_or("-")).collect();
    writeln!(text, "  pure-power leading monomials: {} ({})", powers.join(", "), if r.pure_power_condition { "all present" } else { "missing" }).unwrap();
    let dim = r.dimension.map_or("unit ideal".to_string(), |d| d.to_string());
    writeln!(text, "  reduced basis: {} elements, quotient dimension {dim}", r.basis_size).unwrap();
    writeln!(text, "  budget used: {} of {} steps", budget.used(), cfg.budget).unwrap();
    writeln!(text, "{}", pass(r.verdict)).unwrap();

    let mut report = Report::new("verify", "conjecture", r.verdict);
    report.degree = Some(degree);
    report.order = Some(r.order.clone());
    report.exponents = Some(r.exponents());
    report.budget_used = budget.used();
    report.budget_limit = cfg.budget;
    Ok(finish(report.with_details(&r), text, cfg, Format::Text))
}

pub fn theorem(degree: usize, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_degree(degree)?;
    let budget = Budget::new(cfg.budget);
    let cache = open_cache(cfg);
    let r = verify_main_theorem(degree, &cfg.order, &context(cfg, &budget, cache.as_ref()))?;

    let mut text = format!("theorem degree {degree} ({})\n", r.order);
    for c in &r.checks {
        let status = if c.in_radical { "IN the radical of the others" } else { "not in the radical of the others" };
        writeln!(text, "  R{}: {status}", c.index).unwrap();
    }
    writeln!(text, "  budget used: {} of {} steps", budget.used(), cfg.budget).unwrap();
    writeln!(text, "{}", pass(r.verdict)).unwrap();

    let mut report = Report::new("theorem", "main_theorem", r.verdict);
    report.degree = Some(degree);
    report.order = Some(r.order.clone());
    report.budget_used = budget.used();
    report.budget_limit = cfg.budget;
    Ok(finish(report.with_details(&r), text, cfg, Format::Text))
}

pub fn ace(degree: usize, level: usize, restarts: Option<usize>, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_degree(degree)?;
    let spec = AceSpec::new(degree, level)?;
    let search = SearchConfig {
        seed: cfg.seed,
        restarts: restarts.unwrap_or(cfg.restarts),
        residual_target: cfg.residual_target,
        cluster_tol: cfg.cluster_tol,
        gap_threshold: cfg.gap_threshold,
        ..SearchConfig::default()
    };
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let outcome = find_almost_counterexample(&spec, &search)?;
    timings.insert("search".to_string(), ms(t));
    let converged = outcome.is_ok();
    let candidate = match outcome {
        Ok(c) => c,
        Err(failure) => failure.best,
    };

    let t = Instant::now();
    let level_report = verify_level(&candidate, &spec, cfg.root_tol, cfg.gap_threshold)?;
    let chain_applies = spec.first_roots_only() && spec.level + 3 >= degree;
    let chain = if converged && level_report.verdict && chain_applies {
        Some(verify_contradiction_chain(&candidate, &spec, cfg.root_tol)?)
    } else {
        None
    };
    timings.insert("verify".to_string(), ms(t));
    let verdict = converged && level_report.verdict && chain.as_ref().map_or(true, |c| c.verdict);

    let record = AceRecord::new(&spec, &candidate);
    let mut text = format!("ace degree {degree} level {level} seed {}\n", cfg.seed);
    let roots: Vec<String> =
        record.roots.iter().zip(&record.multiplicities).map(|(r, m)| if *m > 1 { format!("{r} (x{m})") } else { r.to_string() }).collect();
    writeln!(text, "  roots: {}", roots.join(", ")).unwrap();
    writeln!(text, "  residual {:e} (target {:e}), level gap {:e}", record.residual, cfg.residual_target, record.level_gap).unwrap();
    writeln!(text, "  level check: {}", pass(level_report.verdict)).unwrap();
    match &chain {
        Some(c) => writeln!(
            text,
            "  chain: m = {}, beta = {}, alpha_(m,1) = {} ({})",
            c.zero_multiplicity,
            c.beta,
            c.alpha_m1,
            pass(c.verdict)
        )
        .unwrap(),
        None if !chain_applies => writeln!(text, "  chain: not applicable at this level").unwrap(),
        None => writeln!(text, "  chain: skipped, no verified candidate").unwrap(),
    }
    writeln!(text, "{}", pass(verdict)).unwrap();

    let mut report = Report::new("ace", "almost_counterexample", verdict).with_details(json!({
        "converged": converged,
        "record": record,
        "level": level_report,
        "chain": chain,
        "search": { "restarts": search.restarts, "residual_target": search.residual_target, "cluster_tol": search.cluster_tol },
    }));
    report.degree = Some(degree);
    report.timings = timings;
    Ok(finish(report, text, cfg, Format::Json))
}

pub fn interlace(count: usize, max_degree: usize, tol: Option<f64>, cfg: &RunConfig) -> Result<Output, CliError> {
    let tol = tol.unwrap_or(cfg.interlace_tol);
    if !(tol >= 0.0) {
        return Err(CliError::Usage(format!("tolerance must be non-negative, got {tol}")));
    }
    let t = Instant::now();
    let r = interlacing_suite(count, cfg.seed, max_degree, tol)?;
    let mut text = format!("interlace: {count} polynomials (seed {}, degree <= {max_degree}, tol {tol:e})\n", cfg.seed);
    writeln!(text, "  interlacing: {}/{count} pass", r.passed).unwrap();
    writeln!(text, "  with repeated roots: {}", r.with_repeated_roots).unwrap();
    writeln!(text, "  largest imaginary part among Hasse-derivative roots: {:e}", r.max_imaginary).unwrap();
    writeln!(text, "{}", pass(r.verdict)).unwrap();

    let mut report = Report::new("interlace", "interlacing", r.verdict).with_details(&r);
    report.timings.insert("suite".into(), ms(t));
    Ok(finish(report, text, cfg, Format::Text))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn regseq(degree: usize, permutation: Option<Vec<usize>>, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_degree(degree)?;
    let perms = match permutation {
        Some(p) => vec![p],
        None if degree <= 4 => permutations(degree.saturating_sub(1)),
        None => vec![(1..degree).collect()],
    };
    let budget = Budget::new(cfg.budget);
    let cache = open_cache(cfg);
    let ctx = context(cfg, &budget, cache.as_ref());
    let reports = perms
        .iter()
        .map(|p| check_regular_sequence(degree, p, &cfg.order, &ctx))
        .collect::<Result<Vec<RegularSequenceReport>, _>>()?;
    let verdict = reports.iter().all(|r| r.verdict);

    let mut text = format!("regseq degree {degree} ({})\n", cfg.order.tag());
    let mut timings = BTreeMap::new();
    for r in &reports {
        let perm: Vec<String> = r.permutation.iter().map(|i| format!("R{i}")).collect();
        let dims: Vec<String> = r.dimensions.iter().map(|d| d.map_or("unit".into(), |d| d.to_string())).collect();
        writeln!(text, "  ({}): dimensions ({}) {}", perm.join(", "), dims.join(", "), pass(r.verdict)).unwrap();
        let label: Vec<String> = r.permutation.iter().map(ToString::to_string).collect();
        for (k, v) in &r.timings_ms {
            timings.insert(format!("{}:{k}", label.join(",")), *v);
        }
    }
    writeln!(text, "{}", pass(verdict)).unwrap();

    let mut report = Report::new("regseq", "regular_sequence", verdict).with_details(json!({ "orderings": reports }));
    if let Some(list) = report.details.get_mut("orderings").and_then(|v| v.as_array_mut()) {
        for item in list {
            if let Some(obj) = item.as_object_mut() {
                obj.remove("timings_ms");
            }
        }
    }
    report.degree = Some(degree);
    report.order = Some(cfg.order.tag());
    report.budget_used = budget.used();
    report.budget_limit = cfg.budget;
    report.timings = timings;
    Ok(finish(report, text, cfg, Format::Text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_sorted_and_complete() {
        assert_eq!(permutations(2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
