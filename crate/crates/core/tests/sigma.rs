use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropical_rank::corpus;
use tropical_rank::sigma::{
    cayley_ball, sigma_analysis, sigma_subgraph, verify_small_cancellation, Oracle, OracleKind, SigmaError,
    DEFAULT_VERTEX_CAP,
};
use tropical_rank::{Character, Presentation, Word};
use tropical_rank_oracles::{free_ball_size, lattice_ball_size, random_presentation, random_word, small_cancellation_brute};

fn oracle(p: &Presentation, kind: OracleKind) -> Oracle {
    Oracle::new(kind, p).unwrap()
}

#[test]
fn free_ball_counts() {
    for k in [1usize, 2] {
        let p = Presentation::parse(if k == 1 { "<a | >" } else { "<a,b | >" }).unwrap();
        let o = oracle(&p, OracleKind::Free);
        for r in 0..=5 {
            let closed: usize = 1 + (1..=r).map(|j| 2 * k * (2 * k - 1).pow(j as u32 - 1)).sum::<usize>();
            let n = cayley_ball(&p, &o, r, DEFAULT_VERTEX_CAP).unwrap().len();
            assert_eq!(n, closed, "rank {k} radius {r}");
            assert_eq!(n, free_ball_size(k, r));
        }
    }
}

#[test]
fn abelian_ball_counts() {
    let p = corpus::p2();
    let o = oracle(&p, OracleKind::FreeAbelian);
    for r in 0..=6 {
        let b = cayley_ball(&p, &o, r, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(b.len(), lattice_ball_size(2, r as i64));
        assert_eq!(b.len(), 2 * r * r + 2 * r + 1);
    }
}

#[test]
fn balls_grow_as_induced_subgraphs() {
    let cases = [(corpus::p1(), OracleKind::Free), (corpus::p2(), OracleKind::FreeAbelian), (corpus::p5(), OracleKind::Dehn)];
    for (p, kind) in cases {
        let o = oracle(&p, kind);
        let max = if kind == OracleKind::Dehn { 2 } else { 4 };
        for r in 0..max {
            let small = cayley_ball(&p, &o, r, DEFAULT_VERTEX_CAP).unwrap();
            let big = cayley_ball(&p, &o, r + 1, DEFAULT_VERTEX_CAP).unwrap();
            assert!(small.len() <= big.len());
            assert_eq!(&big.vertices()[..small.len()], small.vertices());
            let mut induced: Vec<_> =
                big.edges().iter().copied().filter(|&(a, _, z)| a < small.len() && z < small.len()).collect();
            let mut edges = small.edges().to_vec();
            induced.sort();
            edges.sort();
            assert_eq!(induced, edges);
        }
    }
}

#[test]
fn ball_invariants() {
    let p = corpus::p5();
    let o = oracle(&p, OracleKind::Dehn);
    let b = cayley_ball(&p, &o, 2, DEFAULT_VERTEX_CAP).unwrap();
    assert!(b.vertices()[0].is_identity());
    assert!(b.distances().iter().all(|&d| d <= 2));
    for &(a, g, z) in b.edges() {
        let w = o.normalize(&b.vertices()[a].multiply(&Word::generator(g))).unwrap();
        assert!(o.equal(&w, &b.vertices()[z]).unwrap());
        assert!(b.distances()[a].abs_diff(b.distances()[z]) <= 1);
    }
}

#[test]
fn sublevel_edges_follow_vertices() {
    let p = corpus::p2();
    let o = oracle(&p, OracleKind::FreeAbelian);
    let c = Character::new(vec![1, -1]);
    let b = cayley_ball(&p, &o, 4, DEFAULT_VERTEX_CAP).unwrap();
    let sub = sigma_subgraph(&b, &c).unwrap();
    let below = |w: &Word| c.evaluate(w).unwrap() <= 0;
    let expected = b.edges().iter().filter(|&&(a, _, z)| below(&b.vertices()[a]) && below(&b.vertices()[z])).count();
    assert_eq!(sub.edges().len(), expected);
    assert!(sub.vertices().iter().all(below));
    assert_eq!(sub.vertices().len(), b.vertices().iter().filter(|w| below(w)).count());
}

#[test]
fn identity_component_is_monotone() {
    let p = corpus::p1();
    let o = oracle(&p, OracleKind::Free);
    let c = Character::new(vec![1, 0]);
    for r in 1..5 {
        let a = sigma_analysis(&p, &c, r, &o, DEFAULT_VERTEX_CAP).unwrap();
        let b = sigma_analysis(&p, &c, r + 1, &o, DEFAULT_VERTEX_CAP).unwrap();
        for (w, &label) in a.sublevel.vertices().iter().zip(&a.labels) {
            if label == 0 {
                assert_eq!(b.component_of(w), Some(0));
            }
        }
    }
}

#[test]
fn surface_group_at_radius_three() {
    let p = corpus::p5();
    let o = oracle(&p, OracleKind::Dehn);
    let a = sigma_analysis(&p, &Character::new(vec![1, 0, 0, 0]), 3, &o, DEFAULT_VERTEX_CAP).unwrap();
    let r = a.report(&p);
    assert_eq!(r.vertices, 457);
    assert!(r.components >= 1);
    assert!(r.identity_component >= 1);
    // regression values
    assert_eq!((r.sublevel, r.components, r.identity_component), (328, 7, 322));
}

#[test]
fn oracle_rejections() {
    assert!(matches!(Oracle::new(OracleKind::Free, &corpus::p3()), Err(SigmaError::NoApplicableOracle { .. })));
    assert!(matches!(Oracle::new(OracleKind::Dehn, &corpus::p4()), Err(SigmaError::NoApplicableOracle { .. })));
    let p = corpus::p1();
    let o = oracle(&corpus::p2(), OracleKind::FreeAbelian);
    assert_eq!(cayley_ball(&p, &o, 1, 10), Err(SigmaError::OracleMismatch));
}

#[test]
fn small_cancellation_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..200 {
        let n = rng.gen_range(2..5);
        let len = rng.gen_range(6..14);
        let w = random_word(&mut rng, n, len);
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let p = Presentation::new(names, vec![w]).unwrap();
        for (num, den) in [(1, 6), (1, 4), (1, 3)] {
            assert_eq!(
                verify_small_cancellation(&p, Ratio::new(num as i64, den as i64)),
                small_cancellation_brute(&p, num, den),
                "{p} with lambda {num}/{den}"
            );
        }
    }
}

fn all_oracles() -> Vec<(Presentation, Oracle)> {
    vec![
        (corpus::p1(), oracle(&corpus::p1(), OracleKind::Free)),
        (corpus::p2(), oracle(&corpus::p2(), OracleKind::FreeAbelian)),
        (corpus::p5(), oracle(&corpus::p5(), OracleKind::Dehn)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent_and_respects_inverses(seed in any::<u64>(), len in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (p, o) in all_oracles() {
            let w = random_word(&mut rng, p.rank(), len);
            let n = o.normalize(&w).unwrap();
            prop_assert_eq!(o.normalize(&n).unwrap(), n.clone());
            prop_assert!(o.normalize(&w.multiply(&w.inverse())).unwrap().is_identity());
            prop_assert!(n.len() <= w.len());
        }
    }

    #[test]
    fn random_presentations_never_break_validation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 3, 2, 8);
        for kind in [OracleKind::Free, OracleKind::FreeAbelian, OracleKind::Dehn] {
            if let Ok(o) = Oracle::new(kind, &p) {
                let b = cayley_ball(&p, &o, 2, DEFAULT_VERTEX_CAP).unwrap();
                prop_assert!(b.vertices()[0].is_identity());
            }
        }
    }
}
