//! Split-graph recognition, the clique-lift transform, and the size-bounded
//! approximation with a `k/(k+2)` guarantee.

use crate::graph::{FeasibilityError, RootedGraph, Solution, VertexSet};
use crate::oracle::{best_rooted_search, SolveError};

/// A partition of the vertices into a clique of maximum size and an
/// independent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub independent: VertexSet,
}

/// Evidence that a graph is not split: a non-adjacent pair inside the clique
/// candidate or an adjacent pair inside the independent candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitWitness {
    NonAdjacentInClique(usize, usize),
    AdjacentInIndependent(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    Split(SplitPartition),
    NotSplit(SplitWitness),
}

impl SplitVerdict {
    pub fn partition(self) -> Option<SplitPartition> {
        match self {
            SplitVerdict::Split(p) => Some(p),
            SplitVerdict::NotSplit(_) => None,
        }
    }
}

/// Degree-sequence recognition. Sort degrees descending and let
/// `m = max{i : d_i >= i-1}`; the graph is split iff
/// `Σ_{i<=m} d_i = m(m-1) + Σ_{i>m} d_i`, in which case the `m` vertices of
/// largest degree form a clique of size `ω(G)` and the rest are independent.
/// Counting edges inside and outside the candidate shows the identity forces
/// both conditions regardless of how degree ties are broken, so one canonical
/// ordering (degree descending, index ascending) suffices.
pub fn recognize_and_partition(g: &RootedGraph) -> SplitVerdict {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut m = 0;
    for (i, &v) in order.iter().enumerate() {
        if g.degree(v) >= i {
            m = i + 1;
        } else {
            break;
        }
    }
    let clique_degree_sum: usize = order[..m].iter().map(|&v| g.degree(v)).sum();
    let rest_degree_sum: usize = order[m..].iter().map(|&v| g.degree(v)).sum();
    let clique = &order[..m];
    let rest = &order[m..];
    if clique_degree_sum == m * (m - 1) + rest_degree_sum {
        debug_assert!(verify_partition(g, clique, rest).is_none());
        return SplitVerdict::Split(SplitPartition {
            clique: VertexSet::from_vec(clique.to_vec()),
            independent: VertexSet::from_vec(rest.to_vec()),
        });
    }
    let witness = verify_partition(g, clique, rest)
        .expect("degree identity failed, so the candidate partition has a violation");
    SplitVerdict::NotSplit(witness)
}

fn verify_partition(g: &RootedGraph, clique: &[usize], rest: &[usize]) -> Option<SplitWitness> {
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !g.has_edge(u, v) {
                return Some(SplitWitness::NonAdjacentInClique(u.min(v), u.max(v)));
            }
        }
    }
    let mut in_rest = vec![false; g.n()];
    for &v in rest {
        in_rest[v] = true;
    }
    for &v in rest {
        for &w in g.neighbors(v) {
            if w > v && in_rest[w] {
                return Some(SplitWitness::AdjacentInIndependent(v, w));
            }
        }
    }
    None
}

/// Rewrites a feasible solution so that, apart from possibly the root, it
/// uses clique vertices only: every independent member is replaced by its
/// smallest-index neighbor (necessarily a clique vertex). The result is never
/// larger, covers at least as much, and so never has a worse ratio.
pub fn lift_to_clique(
    g: &RootedGraph,
    partition: &SplitPartition,
    s: &VertexSet,
) -> Result<VertexSet, FeasibilityError> {
    g.evaluate(s)?;
    let root = g.root();
    let mut lifted = VertexSet::singleton(root);
    for v in s.iter() {
        if v == root {
            continue;
        }
        if partition.clique.contains(v) {
            lifted.insert(v);
        } else {
            lifted.insert(g.neighbors(v)[0]);
        }
    }
    Ok(lifted)
}

/// Best ratio over all connected root-containing sets of size at most `k+2`.
/// On split graphs this is a `k/(k+2)` approximation of the optimum.
pub fn approximate_split(g: &RootedGraph, k: usize) -> Result<Solution, SolveError> {
    approximate_split_inner(g, k, true)
}

/// Sequential variant of [`approximate_split`].
pub fn approximate_split_seq(g: &RootedGraph, k: usize) -> Result<Solution, SolveError> {
    approximate_split_inner(g, k, false)
}

fn approximate_split_inner(g: &RootedGraph, k: usize, parallel: bool) -> Result<Solution, SolveError> {
    if k < 1 {
        return Err(SolveError::InvalidK);
    }
    Ok(best_rooted_search(g, k + 2, parallel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::Ratio;

    fn brute_force_max_clique(g: &RootedGraph) -> usize {
        assert!(g.n() <= 16);
        let mut best = 0;
        for mask in 1u32..1 << g.n() {
            let members: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
            let is_clique = members
                .iter()
                .enumerate()
                .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            if is_clique {
                best = best.max(members.len());
            }
        }
        best
    }

    #[test]
    fn k3_is_all_clique() {
        let g = RootedGraph::new(3, 0, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = recognize_and_partition(&g).partition().unwrap();
        assert_eq!(p.clique.len(), 3);
        assert!(p.independent.is_empty());
    }

    #[test]
    fn star_partition_has_clique_of_two() {
        let g = RootedGraph::new(4, 0, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = recognize_and_partition(&g).partition().unwrap();
        assert_eq!(p.clique.len(), 2);
        assert!(p.clique.contains(0));
        assert_eq!(p.independent.len(), 2);
        assert_eq!(brute_force_max_clique(&g), 2);
    }

    #[test]
    fn c5_is_not_split() {
        let g = RootedGraph::new(5, 0, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(matches!(
            recognize_and_partition(&g),
            SplitVerdict::NotSplit(_)
        ));
    }

    #[test]
    fn witness_pairs_are_real_violations() {
        let g = RootedGraph::new(5, 0, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        match recognize_and_partition(&g) {
            SplitVerdict::NotSplit(SplitWitness::NonAdjacentInClique(u, v)) => {
                assert!(!g.has_edge(u, v))
            }
            SplitVerdict::NotSplit(SplitWitness::AdjacentInIndependent(u, v)) => {
                assert!(g.has_edge(u, v))
            }
            SplitVerdict::Split(_) => panic!("C5 recognized as split"),
        }
    }

    #[test]
    fn recognized_cliques_are_maximum() {
        for seed in 0..40 {
            let g = crate::forge::random_split(10, seed);
            let p = recognize_and_partition(&g)
                .partition()
                .expect("generated split graph must be recognized");
            assert_eq!(p.clique.len(), brute_force_max_clique(&g));
            assert_eq!(p.clique.len() + p.independent.len(), g.n());
        }
    }

    #[test]
    fn lift_keeps_clique_sets_unchanged() {
        let g = RootedGraph::new(4, 0, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = recognize_and_partition(&g).partition().unwrap();
        // {0,1} with clique {0,1}: already lifted.
        if p.clique.contains(1) {
            let s = VertexSet::from_vec(vec![0, 1]);
            assert_eq!(lift_to_clique(&g, &p, &s).unwrap(), s);
        }
    }

    #[test]
    fn lift_never_lowers_the_ratio() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for seed in 0..40 {
            let g = crate::forge::random_split(9, seed);
            let p = recognize_and_partition(&g).partition().unwrap();
            for _ in 0..25 {
                let s = crate::forge::random_feasible_set(&g, &mut rng);
                let lifted = lift_to_clique(&g, &p, &s).unwrap();
                let before = g.evaluate(&s).unwrap();
                let after = g.evaluate(&lifted).unwrap();
                assert!(after.ratio() >= before.ratio());
                assert!(lifted.len() <= s.len());
                for v in lifted.iter() {
                    assert!(v == g.root() || p.clique.contains(v));
                }
            }
        }
    }

    #[test]
    fn lift_rejects_infeasible_sets() {
        let g = RootedGraph::new(4, 0, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = recognize_and_partition(&g).partition().unwrap();
        assert!(lift_to_clique(&g, &p, &VertexSet::from_vec(vec![1, 2])).is_err());
    }

    #[test]
    fn approximation_basics() {
        assert_eq!(
            approximate_split(&crate::forge::random_split(6, 1), 0),
            Err(SolveError::InvalidK)
        );
        // When the optimum has size <= k+2 the search returns it exactly.
        let edges: Vec<_> = (1..=5).map(|v| (0, v)).collect();
        let star = RootedGraph::new(6, 1, &edges).unwrap();
        let apx = approximate_split(&star, 1).unwrap();
        assert_eq!(apx.ratio(), Ratio::new(6, 2));
    }

    #[test]
    fn guarantee_and_monotonicity_on_random_split_graphs() {
        for seed in 0..30 {
            let g = crate::forge::random_split(9, 7000 + seed);
            let exact = crate::oracle::solve_exact(&g, None).unwrap();
            let mut prev: Option<Ratio> = None;
            for k in 1..=3usize {
                let apx = approximate_split(&g, k).unwrap();
                assert!(apx.ratio().quotient_at_least(
                    exact.ratio(),
                    Ratio::new(k as u64, k as u64 + 2)
                ));
                assert!(apx.ratio() <= exact.ratio());
                if let Some(p) = prev {
                    assert!(apx.ratio() >= p);
                }
                prev = Some(apx.ratio());
            }
        }
    }
}
