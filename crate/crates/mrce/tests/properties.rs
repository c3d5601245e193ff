//! Property tests over seeded random instances.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mrce::enumerate::connected_supersets;
use mrce::forge;
use mrce::graph::VertexSet;
use mrce::oracle;
use mrce::ratio::Ratio;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// S ⊆ T implies N[S] ⊆ N[T].
    #[test]
    fn closed_neighborhood_is_monotone(seed in 0u64..10_000, n in 2usize..12) {
        let g = forge::random_connected(n, None, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = forge::random_feasible_set(&g, &mut rng);
        // Random subset of t that keeps the root.
        let mut s = VertexSet::singleton(g.root());
        for v in t.iter() {
            if rng.random_bool(0.6) {
                s.insert(v);
            }
        }
        let ns = g.closed_neighborhood(&s).unwrap();
        let nt = g.closed_neighborhood(&t).unwrap();
        prop_assert!(ns.is_subset(&nt));
    }

    /// |S| <= |N[S]| <= min(n, (Δ+1)·|S|).
    #[test]
    fn coverage_bounds(seed in 0u64..10_000, n in 2usize..12) {
        let g = forge::random_connected(n, None, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0b);
        let s = forge::random_connected_set(&g, &mut rng);
        let cover = g.closed_neighborhood(&s).unwrap().len();
        prop_assert!(s.len() <= cover);
        prop_assert!(cover <= n.min((g.max_degree() + 1) * s.len()));
    }

    /// Enumeration yields exactly the feasible supersets, each once, and in a
    /// stable order.
    #[test]
    fn enumeration_is_exact_and_deterministic(seed in 0u64..10_000, n in 2usize..10) {
        let g = forge::random_connected(n, None, seed).unwrap();
        let seed_set = VertexSet::singleton(g.root());
        let first: Vec<VertexSet> = connected_supersets(&g, &seed_set, n).collect();
        let second: Vec<VertexSet> = connected_supersets(&g, &seed_set, n).collect();
        prop_assert_eq!(&first, &second);
        let mut seen = std::collections::HashSet::new();
        for s in &first {
            prop_assert!(g.is_connected_containing_root(s));
            prop_assert!(seen.insert(s.clone()), "duplicate {:?}", s);
        }
        let mut brute = 0;
        for mask in 1u32..1 << n {
            if mask >> g.root() & 1 == 0 {
                continue;
            }
            let s = VertexSet::from_vec((0..n).filter(|v| mask >> v & 1 == 1).collect());
            if g.is_connected_containing_root(&s) {
                brute += 1;
            }
        }
        prop_assert_eq!(first.len(), brute);
    }

    /// Exact rational ordering agrees with float ordering whenever the float
    /// gap is comfortably larger than rounding noise.
    #[test]
    fn ratio_order_matches_floats(a in 0u64..10_000, b in 1u64..10_000,
                                  c in 0u64..10_000, d in 1u64..10_000) {
        let r1 = Ratio::new(a, b);
        let r2 = Ratio::new(c, d);
        let f1 = a as f64 / b as f64;
        let f2 = c as f64 / d as f64;
        if (f1 - f2).abs() > 1e-9 {
            prop_assert_eq!(r1 > r2, f1 > f2);
        }
    }

    /// Peeling by least contribution never lowers the coverage ratio.
    #[test]
    fn peeling_is_monotone(seed in 0u64..10_000, n in 2usize..12) {
        let g = forge::random_connected(n, None, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3);
        let s = forge::random_connected_set(&g, &mut rng);
        let seq = oracle::peel_least_contribution(&g, &s, 1).unwrap();
        for w in seq.windows(2) {
            prop_assert!(w[1].1 >= w[0].1, "ratio dropped from {} to {}", w[0].1, w[1].1);
        }
    }

    /// Parallel and sequential exact solvers return identical solutions.
    #[test]
    fn exact_parallel_equals_sequential(seed in 0u64..10_000, n in 2usize..11) {
        let g = forge::random_connected(n, None, seed).unwrap();
        prop_assert_eq!(
            oracle::solve_exact(&g, None).unwrap(),
            oracle::solve_exact_seq(&g, None).unwrap()
        );
    }

    /// The exact solver dominates every feasible set.
    #[test]
    fn oracle_dominance(seed in 0u64..10_000, n in 2usize..11) {
        let g = forge::random_connected(n, None, seed).unwrap();
        let best = oracle::solve_exact(&g, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a2);
        for _ in 0..10 {
            let s = forge::random_feasible_set(&g, &mut rng);
            let sol = g.evaluate(&s).unwrap();
            prop_assert!(best.ratio() >= sol.ratio());
        }
        prop_assert!(best.ratio() <= g.max_degree_plus_one_bound());
    }
}

/// The pruned branch-and-bound agrees with a plain enumeration argmax,
/// including tie-breaking, at sizes beyond the bitmask brute force.
#[test]
fn pruned_search_equals_enumeration_argmax() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ea7c4);
    for trial in 0..40u64 {
        let n = rng.random_range(10..=16);
        let max_edges = n * (n - 1) / 2;
        let m = rng.random_range(n - 1..=max_edges.min(3 * n));
        let g = forge::random_connected(n, Some(m), 500_000 + trial).unwrap();
        let seed_set = VertexSet::singleton(g.root());
        let mut best: Option<mrce::graph::Solution> = None;
        for s in connected_supersets(&g, &seed_set, n) {
            let sol = g.evaluate(&s).unwrap();
            if best.as_ref().is_none_or(|b| sol.better_than(b)) {
                best = Some(sol);
            }
        }
        let expected = best.unwrap();
        let fast = oracle::solve_exact(&g, None).unwrap();
        assert_eq!(fast, expected, "trial {trial} (n = {n}, m = {m})");
    }
}

/// The lift transform never lowers the ratio on random split instances.
#[test]
fn lift_to_clique_is_ratio_safe() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11f7);
    for seed in 0..200u64 {
        let n = 2 + (seed % 10) as usize;
        let g = forge::random_split(n, seed);
        let partition = mrce::split::recognize_and_partition(&g)
            .partition()
            .expect("generated split graphs are split");
        for _ in 0..5 {
            let s = forge::random_feasible_set(&g, &mut rng);
            let lifted = mrce::split::lift_to_clique(&g, &partition, &s).unwrap();
            let before = g.evaluate(&s).unwrap().ratio();
            let after = g.evaluate(&lifted).unwrap().ratio();
            assert!(after >= before, "lift lowered ratio on seed {seed}");
        }
    }
}

/// Recognition returns a genuine partition with a maximum clique.
#[test]
fn recognition_matches_brute_force_clique_number() {
    for seed in 0..120u64 {
        let n = 3 + (seed % 10) as usize;
        let g = forge::random_split(n, seed);
        let p = mrce::split::recognize_and_partition(&g)
            .partition()
            .expect("generated split graphs are split");
        assert_eq!(p.clique.len(), common::brute_force_max_clique(&g));
        assert_eq!(p.clique.len() + p.independent.len(), g.n());
        for u in p.clique.iter() {
            for v in p.clique.iter() {
                assert!(u == v || g.has_edge(u, v));
            }
        }
        for u in p.independent.iter() {
            for v in p.independent.iter() {
                assert!(!g.has_edge(u, v));
            }
        }
    }
}
