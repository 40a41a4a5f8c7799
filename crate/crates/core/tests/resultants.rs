mod common;

use alvero_core::resultant::bareiss_determinant;
use alvero_core::text::{parse_multipoly, parse_unipoly};
use alvero_core::{casas_resultants, generic_casas_polynomial, resultant, sylvester_matrix, Budget, MultiPoly, QPoly, Rational, UniPoly};
use common::*;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn up(s: &str, n: usize) -> UniPoly {
    parse_unipoly(s, n).unwrap()
}

fn shown(m: &[Vec<MultiPoly>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

/// Generic point whose specialized polynomial is `x * prod (x - r)`.
fn point_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut all = vec![Rational::zero()];
    all.extend_from_slice(roots);
    let f = QPoly::from_roots(&all);
    let d = all.len();
    (1..d).map(|k| f.coeff(d - k)).collect()
}

#[test]
fn sylvester_examples() {
    let s = sylvester_matrix(&up("x^2 + a1*x", 1), &up("2*x + a1", 1)).unwrap();
    assert_eq!(shown(s.entries()), vec![vec!["1", "a1", "0"], vec!["2", "a1", "0"], vec!["0", "2", "a1"]]);
    let s = sylvester_matrix(&up("x", 0), &up("x", 0)).unwrap();
    assert_eq!(shown(s.entries()), vec![vec!["1", "0"], vec!["1", "0"]]);
    assert!(sylvester_matrix(&up("x^2", 0), &up("3", 0)).is_err());
    assert!(sylvester_matrix(&up("x", 1), &up("x", 2)).is_err());
}

#[test]
fn sylvester_rows_are_shifted_coefficient_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (df, dg) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let f = random_unipoly(&mut rng, 2, df);
        let g = random_unipoly(&mut rng, 2, dg);
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let s = sylvester_matrix(&f, &g).unwrap();
        assert_eq!(s.size(), m + n);
        for (r, row) in s.entries().iter().enumerate() {
            let (src, shift, deg) = if r < n { (&f, r, m) } else { (&g, r - n, n) };
            for (c, e) in row.iter().enumerate() {
                let expected = if c >= shift && c - shift <= deg { src.coeff(deg - (c - shift)) } else { MultiPoly::zero(2) };
                assert_eq!(e, &expected);
            }
        }
    }
}

#[test]
fn resultant_examples() {
    let r = resultant(&up("x^2 + a1*x", 1), &up("2*x + a1", 1)).unwrap();
    assert_eq!(r, parse_multipoly("-a1^2", 1).unwrap());
    let s = sylvester_matrix(&up("x^2 + a1*x", 1), &up("2*x + a1", 1)).unwrap();
    assert_eq!(cofactor_det(s.entries()), r);
    let r = resultant(&up("x - a1", 2), &up("x - a2", 2)).unwrap();
    assert_eq!(r, parse_multipoly("a1 - a2", 2).unwrap());
}

#[test]
fn family_examples() {
    assert!(casas_resultants(1).is_err());
    let fam = casas_resultants(2).unwrap();
    assert_eq!(fam.members.len(), 1);
    assert_eq!(fam.get(1).to_string(), "-a1^2");
    let fam = casas_resultants(3).unwrap();
    let f = generic_casas_polynomial(3).unwrap();
    for i in 1..3 {
        let s = sylvester_matrix(&f, &f.hasse_derivative(i).unwrap()).unwrap();
        assert_eq!(fam.get(i), &cofactor_det(s.entries()));
    }
    assert_eq!(fam.get(2).isobaric_weight(), Some(3));
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let m: Vec<Vec<MultiPoly>> = (0..n).map(|_| (0..n).map(|_| random_multipoly(&mut rng, 2, 2, 2, 3)).collect()).collect();
        assert_eq!(bareiss_determinant(&m, &Budget::unlimited()).unwrap(), cofactor_det(&m));
    }
}

#[test]
fn family_matches_root_product_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..=5 {
        let fam = casas_resultants(d).unwrap();
        let f = generic_casas_polynomial(d).unwrap();
        for _ in 0..20 {
            let roots: Vec<Rational> = (0..d - 1).map(|_| random_rational(&mut rng, 6)).collect();
            let v = point_from_roots(&roots);
            let mut all = vec![Rational::zero()];
            all.extend(roots.iter().cloned());
            for i in 1..d {
                let h = f.hasse_derivative(i).unwrap().specialize(&v).unwrap();
                let expected = root_product_resultant(&Rational::one(), &all, &h);
                assert_eq!(fam.get(i).specialize(&v).unwrap(), expected, "d={d} i={i}");
            }
        }
    }
}

#[test]
fn common_root_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in 2..=5 {
        let fam = casas_resultants(d).unwrap();
        let f = generic_casas_polynomial(d).unwrap();
        let mut zeros = 0;
        for trial in 0..40 {
            let v = if trial % 2 == 0 {
                random_point(&mut rng, d - 1, 5)
            } else {
                // repeated root, so f and H_1(f) share a factor
                let mut roots: Vec<Rational> = (0..d - 1).map(|_| random_rational(&mut rng, 4)).collect();
                roots[0] = roots[roots.len() - 1].clone();
                if d == 2 {
                    roots[0] = Rational::zero();
                }
                point_from_roots(&roots)
            };
            let fv = f.specialize(&v).unwrap();
            for i in 1..d {
                let hv = f.hasse_derivative(i).unwrap().specialize(&v).unwrap();
                let vanishes = fam.get(i).specialize(&v).unwrap().is_zero();
                let shared = fv.gcd(&hv).degree().unwrap_or(0) > 0;
                assert_eq!(vanishes, shared, "d={d} i={i} v={v:?}");
                zeros += vanishes as usize;
            }
        }
        assert!(zeros > 0);
    }
}

#[test]
fn isobaric_weights_and_origin() {
    for d in 2..=5 {
        let fam = casas_resultants(d).unwrap();
        for i in 1..d {
            assert_eq!(fam.get(i).isobaric_weight(), Some((d * (d - i)) as u32), "d={d} i={i}");
        }
    }
    for d in 2..=6 {
        let fam = casas_resultants(d).unwrap();
        let origin = vec![Rational::zero(); d - 1];
        assert!(fam.members.iter().all(|r| r.specialize(&origin).unwrap().is_zero()));
    }
}
