//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use alvero_core::groebner::*;
use alvero_core::realroots::*;
use alvero_core::resultant::bareiss_determinant;
use alvero_core::{casas_resultants, generic_casas_polynomial, sylvester_matrix, Budget, MultiPoly, Rational, UniPoly};
use common::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn d2_exactness() -> Outcome {
    let start = Instant::now();
    let fam = casas_resultants(2).map_err(|e| e.to_string())?;
    let r1 = fam.get(1);
    ensure(format!("R1 = {r1}") == "R1 = -a1^2", || format!("got R1 = {r1}"))?;
    let f = generic_casas_polynomial(2).unwrap();
    let s = sylvester_matrix(&f, &f.hasse_derivative(1).unwrap()).unwrap();
    ensure(&cofactor_det(s.entries()) == r1, || "cofactor expansion disagrees".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let a1 = random_rational(&mut rng, 50);
        let g = f.hasse_derivative(1).unwrap().specialize(&[a1.clone()]).unwrap();
        let expected = root_product_resultant(&Rational::one(), &[Rational::zero(), -a1.clone()], &g);
        ensure(r1.specialize(&[a1.clone()]).unwrap() == expected, || format!("root product differs at a1 = {a1}"))?;
    }
    within(start, Duration::from_secs(1), "d=2")?;
    Ok("R1 = -a1^2; cofactor and 100 root-product checks agree".into())
}

fn conjecture() -> Outcome {
    let b = Budget::unlimited();
    let ctx = Context::new(&b);
    let mut notes = Vec::new();
    for d in 2..=4 {
        let start = Instant::now();
        let limit = Duration::from_secs(if d <= 3 { 10 } else { 600 });
        let mut verdicts = Vec::new();
        for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
            let r = verify_conjecture(d, &order, &ctx).map_err(|e| format!("d={d}: {e}"))?;
            ensure(r.radical_verdict && r.pure_power_condition && r.verdict, || format!("d={d} {} failed", order.tag()))?;
            verdicts.push(r.variables.iter().map(|v| v.in_radical).collect::<Vec<_>>());
            if order.tag() == "grevlex" {
                notes.push(format!("d={d} N={:?}", r.exponents().iter().map(|e| e.unwrap_or(0)).collect::<Vec<_>>()));
            }
        }
        ensure(verdicts[0] == verdicts[1], || format!("d={d}: orders disagree"))?;
        within(start, limit, &format!("d={d}"))?;
    }
    Ok(notes.join(", "))
}

fn main_theorem() -> Outcome {
    let b = Budget::unlimited();
    let ctx = Context::new(&b);
    let mut notes = Vec::new();
    for d in 3..=4 {
        let start = Instant::now();
        for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
            let r = verify_main_theorem(d, &order, &ctx).map_err(|e| format!("d={d}: {e}"))?;
            let idx: Vec<usize> = r.checks.iter().map(|c| c.index).collect();
            ensure(idx == main_theorem_indices(d), || format!("d={d}: indices {idx:?}"))?;
            ensure(r.checks.iter().all(|c| !c.in_radical), || format!("d={d} {}: a resultant is in the radical", order.tag()))?;
        }
        within(start, Duration::from_secs(if d <= 3 { 10 } else { 600 }), &format!("d={d}"))?;
        notes.push(format!("d={d} i in {:?} outside", main_theorem_indices(d)));
    }
    Ok(notes.join(", "))
}

fn regular_sequence() -> Outcome {
    let start = Instant::now();
    let b = Budget::unlimited();
    let ctx = Context::new(&b);
    for perm in [[1, 2], [2, 1]] {
        for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
            let r = check_regular_sequence(3, &perm, &order, &ctx).map_err(|e| e.to_string())?;
            ensure(r.dimensions == vec![Some(1), Some(0)], || format!("{perm:?} {}: {:?}", order.tag(), r.dimensions))?;
        }
    }
    within(start, Duration::from_secs(10), "regseq")?;
    Ok("dims (1, 0) for both orderings".into())
}

fn determinant_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = Budget::unlimited();
    let mut sizes = [0usize; 7];
    for case in 0..100 {
        let size = rng.gen_range(2..=6);
        let m = rng.gen_range(1..size);
        let f = random_unipoly(&mut rng, 2, m);
        let g = random_unipoly(&mut rng, 2, size - m);
        let s = sylvester_matrix(&f, &g).map_err(|e| e.to_string())?;
        let fast = bareiss_determinant(s.entries(), &budget).map_err(|e| e.to_string())?;
        ensure(fast == cofactor_det(s.entries()), || format!("case {case} differs"))?;
        sizes[s.size()] += 1;
    }
    Ok(format!("100 matrices, sizes 2..6 counts {:?}", &sizes[2..]))
}

fn specialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for d in 2..=5 {
        let fam = casas_resultants(d).unwrap();
        let f = generic_casas_polynomial(d).unwrap();
        let hs: Vec<UniPoly> = (1..d).map(|i| f.hasse_derivative(i).unwrap()).collect();
        for _ in 0..100 {
            let v = random_point(&mut rng, d - 1, 9);
            let fv = f.specialize(&v).unwrap();
            for i in 1..d {
                let direct = fv.resultant(&hs[i - 1].specialize(&v).unwrap());
                ensure(fam.get(i).specialize(&v).unwrap() == direct, || format!("d={d} i={i} at {v:?}"))?;
            }
        }
    }
    Ok("d=2..5, 100 points each".into())
}

fn isobaric() -> Outcome {
    for d in 2..=5 {
        let fam = casas_resultants(d).unwrap();
        for i in 1..d {
            let want = (d * (d - i)) as u32;
            let r = fam.get(i);
            ensure(r.terms().all(|(m, _)| m.weighted_degree() == want), || format!("d={d} i={i}"))?;
        }
    }
    Ok("d=2..5".into())
}

fn origin() -> Outcome {
    for d in 2..=6 {
        let fam = casas_resultants(d).unwrap();
        let zero = vec![Rational::zero(); d - 1];
        for i in 1..d {
            ensure(fam.get(i).specialize(&zero).unwrap().is_zero(), || format!("d={d} i={i}"))?;
        }
    }
    Ok("d=2..6".into())
}

fn interlacing() -> Outcome {
    let start = Instant::now();
    let r = interlacing_suite(500, 1, 10, 1e-8).map_err(|e| e.to_string())?;
    ensure(r.passed == 500 && r.failures.is_empty(), || format!("failures {:?}", r.failures))?;
    ensure(r.complex_hasse.is_empty() && r.max_imaginary < IMAG_THRESHOLD, || format!("max imaginary {}", r.max_imaginary))?;
    ensure(r.with_repeated_roots > 0, || "corpus has no repeated roots".into())?;
    within(start, Duration::from_secs(30), "interlacing suite")?;
    Ok(format!("500/500, {} with repeated roots, max imaginary {:.1e}", r.with_repeated_roots, r.max_imaginary))
}

fn ace() -> Outcome {
    let mut notes = Vec::new();
    for (d, level) in [(4, 3), (5, 3), (5, 4), (6, 4), (6, 5), (7, 5), (7, 6)] {
        let start = Instant::now();
        let spec = AceSpec::new(d, level).unwrap();
        let c = find_almost_counterexample(&spec, &SearchConfig::default())
            .map_err(|e| e.to_string())?
            .map_err(|f| format!("({d},{level}): {f}"))?;
        ensure(c.residual < 1e-9 && c.level_gap > 1e-3, || format!("({d},{level}): residual {} gap {}", c.residual, c.level_gap))?;
        let lv = verify_level(&c, &spec, 1e-6, DEFAULT_GAP_THRESHOLD).map_err(|e| e.to_string())?;
        ensure(lv.verdict, || format!("({d},{level}): level check failed"))?;
        let ch = verify_contradiction_chain(&c, &spec, 1e-6).map_err(|e| e.to_string())?;
        ensure(ch.item_i && ch.item_ii && ch.item_iii && ch.item_iv, || format!("({d},{level}): chain {ch:?}"))?;
        ensure(ch.alpha_m1 > 0.0 && ch.alpha_m1 < ch.beta, || format!("({d},{level}): alpha outside ]0, beta["))?;
        within(start, Duration::from_secs(60), &format!("({d},{level})"))?;
        notes.push(format!("({d},{level}) {:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn factorial(i: usize) -> Rational {
    Rational::from_integer((1..=i).fold(BigInt::one(), |a, k| a * BigInt::from(k)))
}

fn hasse_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let deg = rng.gen_range(0..=8);
        let f = random_unipoly(&mut rng, 3, deg);
        let mut iter = f.clone();
        for i in 0..=deg {
            let h = f.hasse_derivative(i).unwrap();
            let scaled = UniPoly::from_coeffs(3, h.coeffs().iter().map(|c: &MultiPoly| c.scale(&factorial(i))).collect());
            ensure(iter == scaled, || format!("case {case}, i={i}"))?;
            if i < deg {
                iter = iter.hasse_derivative(1).unwrap();
            }
        }
    }
    Ok("100 polynomials, degree <= 8".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("d=2 exactness", d2_exactness),
        ("conjecture verification d=2,3,4", conjecture),
        ("main theorem d=3,4", main_theorem),
        ("regular-sequence prefixes d=3", regular_sequence),
        ("determinant oracle equivalence", determinant_oracle),
        ("specialization commutation", specialization),
        ("isobaric weights", isobaric),
        ("origin vanishing", origin),
        ("interlacing suite", interlacing),
        ("almost-counterexample realization", ace),
        ("Hasse identity", hasse_identity),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name} ({secs:.2}s): {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({secs:.2}s): {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
