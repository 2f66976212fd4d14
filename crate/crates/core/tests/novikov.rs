use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropical_rank::abelianize::character_lattice;
use tropical_rank::corpus;
use tropical_rank::magnus::DEFAULT_MAX_PASSES;
use tropical_rank::novikov::{
    boundary_matrices, fox_derivative, laurent_rank, laurent_rank_with, novikov_b1, rank_bounds, specialize,
    FreeGroupRingElement, PivotScan,
};
use tropical_rank::{Character, LaurentPoly, Word};
use tropical_rank_oracles::{
    checks, evaluated_rank, random_laurent_matrix, random_presentation, random_primitive_character, random_word,
};

#[test]
fn fox_identity_on_corpus() {
    for (_, p) in corpus::all() {
        for c in character_lattice(&p).unwrap() {
            checks::fox_row_identity(&p, &c).unwrap();
        }
    }
}

#[test]
fn fox_identity_on_random_relators() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(1..=10);
        let w = random_word(&mut rng, n, len);
        let values: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let c = Character::new(values);
        // fundamental formula: Σ_i ∂w/∂g_i · (g_i − 1) = w − 1, specialized
        let total = (0..n).fold(LaurentPoly::zero(), |acc, i| {
            let di = specialize(&fox_derivative(&w, i), &c).unwrap();
            &acc + &(&di * &(&LaurentPoly::monomial(1, c.value(i)) - &LaurentPoly::one()))
        });
        let expected = &LaurentPoly::monomial(1, c.evaluate(&w).unwrap()) - &LaurentPoly::one();
        assert_eq!(total, expected, "word {w:?} along {c}");
    }
}

#[test]
fn fox_identity_in_the_group_ring() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..100 {
        let w = random_word(&mut rng, 3, 8);
        let mut total = FreeGroupRingElement::zero();
        for g in 0..3 {
            let gen = FreeGroupRingElement::from_word(Word::generator(g), 1).add(&FreeGroupRingElement::from_word(Word::identity(), -1));
            total = total.add(&fox_derivative(&w, g).multiply(&gen));
        }
        let expected = FreeGroupRingElement::from_word(w.clone(), 1).add(&FreeGroupRingElement::from_word(Word::identity(), -1));
        assert_eq!(total, expected);
    }
}

#[test]
fn b1_on_corpus_matches_known_values() {
    let p5 = corpus::p5();
    let mut seen = 0;
    for values in grid(4, 2) {
        let c = Character::new(values);
        if c.is_zero() || c.gcd() != 1 {
            continue;
        }
        assert_eq!(novikov_b1(&p5, &c).unwrap(), 2, "{c}");
        seen += 1;
    }
    assert!(seen > 300);
    for values in grid(2, 3) {
        let c = Character::new(values);
        if c.is_zero() || c.gcd() != 1 {
            continue;
        }
        assert_eq!(novikov_b1(&corpus::p1(), &c).unwrap(), 1);
        assert_eq!(novikov_b1(&corpus::p2(), &c).unwrap(), 0);
    }
}

fn grid(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-h..=h).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn b1_is_scale_invariant() {
    for (_, p) in corpus::all() {
        for c in character_lattice(&p).unwrap() {
            for k in [2, 3, 7] {
                assert_eq!(novikov_b1(&p, &c.scaled(k)).unwrap(), novikov_b1(&p, &c).unwrap());
            }
        }
    }
}

#[test]
fn evaluation_points_reach_the_rank_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for (_, p) in corpus::all() {
        for c in character_lattice(&p).unwrap() {
            let (d1, d2) = boundary_matrices(&p, &c).unwrap();
            for m in [d1, d2] {
                let rank = laurent_rank(&m);
                let points: Vec<BigRational> =
                    (0..5).map(|_| BigRational::new(rng.gen_range(2..50).into(), rng.gen_range(1..50).into())).collect();
                let ranks: Vec<usize> = points.iter().map(|t| evaluated_rank(&m, t)).collect();
                assert!(ranks.iter().all(|&r| r <= rank));
                assert!(ranks.contains(&rank), "{m}: {ranks:?} vs {rank}");
            }
        }
    }
}

#[test]
fn random_laurent_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..200 {
        let m = random_laurent_matrix(&mut rng, 5, 6);
        let rank = laurent_rank_with(&m, PivotScan::RowMajor);
        assert_eq!(laurent_rank_with(&m, PivotScan::ColumnMajor), rank, "{m}");
        assert_eq!(laurent_rank(&m.invert_variable()), rank, "{m}");
        assert_eq!(laurent_rank(&m.transpose()), rank, "{m}");
        let best = (0..5)
            .map(|_| {
                let t = BigRational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..30).into());
                if t == BigRational::from_integer(0.into()) {
                    0
                } else {
                    evaluated_rank(&m, &t)
                }
            })
            .max()
            .unwrap();
        assert!(best <= rank, "{m}");
    }
}

#[test]
fn bounds_are_ordered_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut checked = 0;
    while checked < 100 {
        let p = random_presentation(&mut rng, 3, 2, 8);
        let Some(c) = random_primitive_character(&mut rng, &p, 4) else { continue };
        let b = rank_bounds(&p, &c, DEFAULT_MAX_PASSES).unwrap();
        assert!(b.lower <= b.upper, "{p} along {c}: {} > {}", b.lower, b.upper);
        assert_eq!(b.exact, b.lower == b.upper);
        assert!(b.upper < p.rank());
        checked += 1;
    }
}

proptest! {
    #[test]
    fn product_rule(a in prop::collection::vec((0usize..3, prop_oneof![Just(1i64), Just(-1i64)]), 0..8),
                    b in prop::collection::vec((0usize..3, prop_oneof![Just(1i64), Just(-1i64)]), 0..8),
                    g in 0usize..3) {
        let (u, v) = (Word::from_syllables(a), Word::from_syllables(b));
        let lhs = fox_derivative(&u.multiply(&v), g);
        let rhs = fox_derivative(&u, g).add(&FreeGroupRingElement::from_word(u.clone(), 1).multiply(&fox_derivative(&v, g)));
        prop_assert_eq!(lhs, rhs);
    }
}
