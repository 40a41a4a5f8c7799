//! Seeded random real-rooted polynomials for the interlacing checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Root vectors (sorted, in `[0, 1]`) of `count` polynomials with degrees in
/// `2..=max_degree`. Odd entries get forced repeated roots and every tenth
/// entry is a pure power of a linear factor, so the coincident-root branch of
/// interlacing is always exercised.
pub fn interlacing_corpus(count: usize, seed: u64, max_degree: usize) -> Vec<Vec<f64>> {
    assert!(max_degree >= 2, "corpus needs degree at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let d = rng.gen_range(2..=max_degree);
            let mut roots: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
            if i % 10 == 0 {
                let c = roots[0];
                roots.iter_mut().for_each(|r| *r = c);
            } else if i % 2 == 1 {
                let groups = rng.gen_range(1..=2usize);
                for _ in 0..groups {
                    let mult = rng.gen_range(2..=d.min(4));
                    let src = rng.gen_range(0..d);
                    let value = roots[src];
                    for _ in 1..mult {
                        let dst = rng.gen_range(0..d);
                        roots[dst] = value;
                    }
                }
            }
            roots.sort_by(f64::total_cmp);
            roots
        })
        .collect()
}
