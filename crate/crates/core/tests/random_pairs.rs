//! The transform machinery exercised on randomized Bailey pairs: alpha
//! sequences of signed monomials with (at least) linearly growing
//! exponents, beta derived from the relation, so every pair is sound by
//! construction and every downstream identity must hold.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qtrinom::bailey::{
    check_ab_lemma, sum_pairs, to_trinomial, transform_sides, verify_transform,
    verify_trinomial_pair, AlphaFn, BinomialPair, LhsLimit,
};
use qtrinom::qspecial::Mode;
use qtrinom::series::equal_to_order;
use qtrinom::{qrat, QSeries};

fn random_alpha(rng: &mut StdRng) -> AlphaFn {
    let step = rng.gen_range(1..=3i64);
    let entries: Vec<QSeries> = (0..32)
        .map(|r| {
            let exp_t = 2 * (r * step + rng.gen_range(0..=2));
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            QSeries::monomial(exp_t, qrat(sign))
        })
        .collect();
    Arc::new(move |r| {
        if (0..32).contains(&r) {
            entries[r as usize].clone()
        } else {
            QSeries::zero()
        }
    })
}

#[test]
fn random_pairs_transform_and_trinomial_relation() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let order = 100;
    for case in 0..8 {
        let ell = case % 3;
        let pair =
            BinomialPair::from_alpha(format!("random-{case}"), ell, random_alpha(&mut rng))
                .unwrap();
        for n in [Mode::Zero, Mode::One] {
            for l in 0..=8 {
                let report = verify_transform(&pair, n, l, order);
                assert!(report.passed(), "transform failed (case {case}):\n{report}");
            }
            let tri = to_trinomial(&pair, n);
            let report = verify_trinomial_pair(&tri, 8, order);
            assert!(report.passed(), "tripair failed (case {case}):\n{report}");
            // the corollary beta is the transform left side reindexed
            for l in ell..=8 {
                let (lhs, _) = transform_sides(&pair, n, l, order);
                assert!(
                    equal_to_order(&lhs, &tri.beta(l, order), order).unwrap().is_equal(),
                    "tbeta reindexing mismatch (case {case}, L={l})"
                );
            }
        }
    }
}

#[test]
fn random_pair_sums_stay_trinomial() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let order = 80;
    let a = BinomialPair::from_alpha("rand-a", 0, random_alpha(&mut rng)).unwrap();
    let b = BinomialPair::from_alpha("rand-b", 0, random_alpha(&mut rng)).unwrap();
    for n in [Mode::Zero, Mode::One] {
        let sum = sum_pairs(&to_trinomial(&a, n), &to_trinomial(&b, n)).unwrap();
        let report = verify_trinomial_pair(&sum, 6, order);
        assert!(report.passed(), "sum pair failed:\n{report}");
    }
}

#[test]
fn random_pairs_satisfy_summed_lemma_with_m_cutoff() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let order = 80;
    for ell in 0..=2 {
        let pair =
            BinomialPair::from_alpha(format!("rand-lemma-{ell}"), ell, random_alpha(&mut rng))
                .unwrap();
        for n in [Mode::Zero, Mode::One] {
            let tri = to_trinomial(&pair, n);
            for m in 0..=5 {
                let report = check_ab_lemma(&tri, m, order, LhsLimit::MCutoff).unwrap();
                assert!(report.passed(), "lemma failed (ell={ell}, n={n}, M={m}):\n{report}");
            }
        }
    }
}
