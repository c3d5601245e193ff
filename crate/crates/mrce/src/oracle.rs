//! Exact solver, greedy peeling, and the surveillance-number lower bound.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{RootedGraph, Solution, VertexSet};
use crate::par::run_map;
use crate::ratio::Ratio;

/// Largest vertex count the exact solver accepts without an explicit
/// capacity override.
pub const DEFAULT_ORACLE_CAP: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {n} vertices, exceeding the exact-search capacity {cap}")]
    CapacityExceeded { n: usize, cap: usize },
    #[error("target size {target} out of range for a set of {len} vertices")]
    TargetSizeOutOfRange { target: usize, len: usize },
    #[error("k must be at least 1")]
    InvalidK,
}

/// Globally optimal solution over all connected root-containing sets
/// (restricted to `|S| <= size_cap` when given).
///
/// Refuses graphs larger than [`DEFAULT_ORACLE_CAP`] vertices; use
/// [`solve_exact_capped`] to force a different capacity.
pub fn solve_exact(g: &RootedGraph, size_cap: Option<usize>) -> Result<Solution, SolveError> {
    solve_exact_capped(g, size_cap, DEFAULT_ORACLE_CAP)
}

/// Sequential variant of [`solve_exact`]; same result, no thread pool.
pub fn solve_exact_seq(g: &RootedGraph, size_cap: Option<usize>) -> Result<Solution, SolveError> {
    solve_exact_capped_seq(g, size_cap, DEFAULT_ORACLE_CAP)
}

pub fn solve_exact_capped(
    g: &RootedGraph,
    size_cap: Option<usize>,
    max_vertices: usize,
) -> Result<Solution, SolveError> {
    solve_exact_inner(g, size_cap, max_vertices, true)
}

pub fn solve_exact_capped_seq(
    g: &RootedGraph,
    size_cap: Option<usize>,
    max_vertices: usize,
) -> Result<Solution, SolveError> {
    solve_exact_inner(g, size_cap, max_vertices, false)
}

fn solve_exact_inner(
    g: &RootedGraph,
    size_cap: Option<usize>,
    max_vertices: usize,
    parallel: bool,
) -> Result<Solution, SolveError> {
    if g.n() > max_vertices {
        return Err(SolveError::CapacityExceeded {
            n: g.n(),
            cap: max_vertices,
        });
    }
    let cap = size_cap.unwrap_or(g.n()).min(g.n()).max(1);
    Ok(best_rooted_search(g, cap, parallel))
}

fn pack(r: Ratio) -> u64 {
    (r.num() << 32) | r.den()
}

fn unpack(bits: u64) -> (u64, u64) {
    (bits >> 32, bits & 0xffff_ffff)
}

/// Raises the shared incumbent ratio if `r` is strictly larger.
fn raise_incumbent(incumbent: &AtomicU64, r: Ratio) {
    let mut cur = incumbent.load(AtomicOrdering::Relaxed);
    loop {
        let (cn, cd) = unpack(cur);
        if (r.num() as u128) * (cd as u128) <= (cn as u128) * (r.den() as u128) {
            return;
        }
        match incumbent.compare_exchange_weak(
            cur,
            pack(r),
            AtomicOrdering::Relaxed,
            AtomicOrdering::Relaxed,
        ) {
            Ok(_) => return,
            Err(observed) => cur = observed,
        }
    }
}

/// Whether some superset size `t` in `(size, cap]` could still beat the
/// incumbent, assuming each added vertex covers at most `Δ+1` new vertices.
/// The test is exact, so pruning never discards a candidate that ties or
/// beats the final optimum.
fn subtree_can_beat(
    covered: u64,
    size: u64,
    cap: u64,
    n: u64,
    delta_plus_one: u64,
    incumbent: (u64, u64),
) -> bool {
    let (inum, iden) = incumbent;
    for t in size + 1..=cap {
        let cov = (covered + (t - size) * delta_plus_one).min(n);
        if (cov as u128) * (iden as u128) > (inum as u128) * (t as u128) {
            return true;
        }
    }
    false
}

struct SearchCtx<'g> {
    g: &'g RootedGraph,
    closed: Vec<FixedBitSet>,
    n: u64,
    cap: usize,
    delta_plus_one: u64,
    incumbent: AtomicU64,
}

/// Argmax of the exact ratio over connected root-containing sets of size at
/// most `size_cap`, with deterministic tie-breaking. Shared by the exact
/// oracle (full cap) and the split approximation (cap `k+2`).
pub(crate) fn best_rooted_search(g: &RootedGraph, size_cap: usize, parallel: bool) -> Solution {
    let n = g.n();
    let root = g.root();
    let cap = size_cap.min(n).max(1);
    let ctx = SearchCtx {
        g,
        closed: g.closed_adjacency_bits(),
        n: n as u64,
        cap,
        delta_plus_one: g.max_degree() as u64 + 1,
        incumbent: AtomicU64::new(pack(Ratio::new(0, 1))),
    };

    let mut seed_set = FixedBitSet::with_capacity(n);
    seed_set.insert(root);
    let seed_nbhd = ctx.closed[root].clone();
    let seed = solution_from_bits(&seed_set, &seed_nbhd);
    raise_incumbent(&ctx.incumbent, seed.ratio());

    if cap == 1 {
        return seed;
    }

    // One branch per extension of {root}; later branches drop earlier
    // extension vertices from their pool, so no set is visited twice.
    let frontier = g.neighbors(root);
    let branches: Vec<(usize, Vec<usize>)> = (0..frontier.len())
        .map(|i| (frontier[i], frontier[i + 1..].to_vec()))
        .collect();

    let results = run_map(parallel, branches, |(u, rest)| {
        let mut set = seed_set.clone();
        set.insert(u);
        let mut nbhd = seed_nbhd.clone();
        nbhd.union_with(&ctx.closed[u]);
        let fresh: Vec<usize> = ctx
            .g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| !seed_nbhd.contains(w))
            .collect();
        let pool = merge_sorted(&rest, &fresh);
        let mut best = solution_from_bits(&set, &nbhd);
        raise_incumbent(&ctx.incumbent, best.ratio());
        descend(&ctx, &set, &nbhd, 2, &pool, &mut best);
        best
    });

    let mut best = seed;
    for r in results {
        if r.better_than(&best) {
            best = r;
        }
    }
    best
}

fn descend(
    ctx: &SearchCtx<'_>,
    set: &FixedBitSet,
    nbhd: &FixedBitSet,
    size: usize,
    pool: &[usize],
    best: &mut Solution,
) {
    if size >= ctx.cap {
        return;
    }
    for (i, &u) in pool.iter().enumerate() {
        let mut child_set = set.clone();
        child_set.insert(u);
        let mut child_nbhd = nbhd.clone();
        child_nbhd.union_with(&ctx.closed[u]);
        let covered = child_nbhd.count_ones(..) as u64;
        let ratio = Ratio::new(covered, size as u64 + 1);
        consider(ctx, &child_set, covered, ratio, best);
        let inc = unpack(ctx.incumbent.load(AtomicOrdering::Relaxed));
        if subtree_can_beat(
            covered,
            size as u64 + 1,
            ctx.cap as u64,
            ctx.n,
            ctx.delta_plus_one,
            inc,
        ) {
            let fresh: Vec<usize> = ctx
                .g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !nbhd.contains(w))
                .collect();
            let child_pool = merge_sorted(&pool[i + 1..], &fresh);
            descend(ctx, &child_set, &child_nbhd, size + 1, &child_pool, best);
        }
    }
}

fn consider(
    ctx: &SearchCtx<'_>,
    set: &FixedBitSet,
    covered: u64,
    ratio: Ratio,
    best: &mut Solution,
) {
    let size = set.count_ones(..);
    let replace = match ratio.cmp(&best.ratio()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            size < best.set().len()
                || (size == best.set().len() && {
                    let members = VertexSet::from_bits(set);
                    members < *best.set()
                })
        }
    };
    if replace {
        *best = Solution::from_parts(VertexSet::from_bits(set), covered as usize);
        raise_incumbent(&ctx.incumbent, ratio);
    }
}

fn solution_from_bits(set: &FixedBitSet, nbhd: &FixedBitSet) -> Solution {
    Solution::from_parts(VertexSet::from_bits(set), nbhd.count_ones(..))
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Repeatedly removes the vertex with the fewest exclusive neighbors
/// (`p(u) = |N[S]| - |N[S \ {u}]|`, ties to the smallest index) until
/// `target_size` vertices remain. Returns the whole sequence from the input
/// set downward, each with its exact coverage ratio.
///
/// The input set need not contain the root or be connected, and the root may
/// be removed along the way; the ratios are raw `|N[S]|/|S|` values.
pub fn peel_least_contribution(
    g: &RootedGraph,
    s: &VertexSet,
    target_size: usize,
) -> Result<Vec<(VertexSet, Ratio)>, SolveError> {
    if target_size < 1 || target_size > s.len() {
        return Err(SolveError::TargetSizeOutOfRange {
            target: target_size,
            len: s.len(),
        });
    }
    let n = g.n();
    let closed = g.closed_adjacency_bits();
    let coverage = |members: &[usize]| -> u64 {
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in members {
            bits.union_with(&closed[v]);
        }
        bits.count_ones(..) as u64
    };

    let mut current: Vec<usize> = s.as_slice().to_vec();
    let mut out = Vec::with_capacity(s.len() - target_size + 1);
    loop {
        let cov = coverage(&current);
        out.push((
            VertexSet::from_sorted_vec(current.clone()),
            Ratio::new(cov, current.len() as u64),
        ));
        if current.len() == target_size {
            break;
        }
        let mut argmin = 0usize;
        let mut min_p = u64::MAX;
        for (idx, &_u) in current.iter().enumerate() {
            let mut rest: Vec<usize> = current.clone();
            rest.remove(idx);
            let p = cov - coverage(&rest);
            if p < min_p {
                min_p = p;
                argmin = idx;
            }
        }
        current.remove(argmin);
    }
    Ok(out)
}

/// `⌈(|N[S]| - 1) / |S|⌉`: a lower bound on the surveillance number derived
/// from any feasible solution.
pub fn surveillance_lower_bound(sol: &Solution) -> u64 {
    let c = sol.closed_nbhd_size() as u64;
    let s = sol.set().len() as u64;
    (c - 1).div_ceil(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn brute_force_best(g: &RootedGraph) -> Solution {
        assert!(g.n() <= 20);
        let mut best: Option<Solution> = None;
        for mask in 1u32..1 << g.n() {
            if mask >> g.root() & 1 == 0 {
                continue;
            }
            let s = VertexSet::from_vec((0..g.n()).filter(|v| mask >> v & 1 == 1).collect());
            if let Ok(sol) = g.evaluate(&s) {
                if best.as_ref().is_none_or(|b| sol.better_than(b)) {
                    best = Some(sol);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn path4_optimum_is_the_root_alone() {
        // Brute force over the four feasible sets gives 2/1, 3/2, 4/3, 4/4.
        let g = RootedGraph::new(4, 0, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let sol = solve_exact(&g, None).unwrap();
        assert_eq!(sol.ratio(), Ratio::new(2, 1));
        assert_eq!(sol.set(), &VertexSet::singleton(0));
        assert_eq!(brute_force_best(&g).ratio(), Ratio::new(2, 1));
    }

    #[test]
    fn star_rooted_at_a_leaf() {
        for m in 3..=6usize {
            let edges: Vec<_> = (1..=m).map(|v| (0, v)).collect();
            let g = RootedGraph::new(m + 1, 1, &edges).unwrap();
            let sol = solve_exact(&g, None).unwrap();
            assert_eq!(sol.ratio(), Ratio::new(m as u64 + 1, 2));
            if m == 3 {
                // (m+1)/2 ties with the leaf's own 2/1; the smaller set wins.
                assert_eq!(sol.set(), &VertexSet::singleton(1));
            } else {
                assert_eq!(sol.set(), &VertexSet::from_vec(vec![0, 1]));
            }
            assert_eq!(sol.ratio(), brute_force_best(&g).ratio());
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..60 {
            let n = rng.random_range(2..=9);
            let g = crate::forge::random_connected(n, None, 900 + trial).unwrap();
            let fast = solve_exact(&g, None).unwrap();
            let slow = brute_force_best(&g);
            assert_eq!(fast.ratio(), slow.ratio());
            assert_eq!(fast.set(), slow.set());
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for seed in 0..25 {
            let g = crate::forge::random_connected(10, None, seed).unwrap();
            let a = solve_exact(&g, None).unwrap();
            let b = solve_exact_seq(&g, None).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn size_cap_restricts_the_search() {
        let edges: Vec<_> = (1..=5).map(|v| (0, v)).collect();
        let g = RootedGraph::new(6, 1, &edges).unwrap();
        let capped = solve_exact(&g, Some(1)).unwrap();
        assert_eq!(capped.ratio(), Ratio::new(2, 1));
        let full = solve_exact(&g, Some(2)).unwrap();
        assert_eq!(full.ratio(), Ratio::new(6, 2));
    }

    #[test]
    fn capacity_guard() {
        let n = 30;
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        let g = RootedGraph::new(n, 0, &edges).unwrap();
        assert_eq!(
            solve_exact(&g, None),
            Err(SolveError::CapacityExceeded { n: 30, cap: 26 })
        );
        assert!(solve_exact_capped(&g, Some(2), 32).is_ok());
    }

    #[test]
    fn ratio_never_exceeds_degree_bound() {
        for seed in 0..20 {
            let g = crate::forge::random_connected(9, None, 5000 + seed).unwrap();
            let sol = solve_exact(&g, None).unwrap();
            assert!(sol.ratio() <= g.max_degree_plus_one_bound());
        }
    }

    #[test]
    fn peel_trivial_and_small_cases() {
        let g = RootedGraph::new(4, 0, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        // |S| == target: a single entry and no peeling.
        let s = VertexSet::from_vec(vec![0, 1]);
        let seq = peel_least_contribution(&g, &s, 2).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0].0, s);

        // Star rooted at the center: leaves have no exclusive neighbors, so
        // the ratio sequence never decreases as they peel away.
        let s = VertexSet::from_vec(vec![0, 1, 2]);
        let seq = peel_least_contribution(&g, &s, 1).unwrap();
        assert_eq!(seq.len(), 3);
        for w in seq.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
        assert_eq!(seq.last().unwrap().1, Ratio::new(4, 1));

        // K3 from the full set down to one vertex.
        let k3 = RootedGraph::new(3, 0, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let seq =
            peel_least_contribution(&k3, &VertexSet::from_vec(vec![0, 1, 2]), 1).unwrap();
        assert_eq!(seq.first().unwrap().1, Ratio::new(1, 1));
        assert_eq!(seq.last().unwrap().1, Ratio::new(3, 1));
    }

    #[test]
    fn peel_rejects_bad_targets() {
        let g = RootedGraph::new(2, 0, &[(0, 1)]).unwrap();
        let s = VertexSet::from_vec(vec![0, 1]);
        assert!(peel_least_contribution(&g, &s, 0).is_err());
        assert!(peel_least_contribution(&g, &s, 3).is_err());
    }

    #[test]
    fn surveillance_bound_examples() {
        let mk = |c: usize, s: usize| {
            Solution::from_parts(VertexSet::from_vec((0..s).collect()), c)
        };
        assert_eq!(surveillance_lower_bound(&mk(9, 2)), 4);
        assert_eq!(surveillance_lower_bound(&mk(1, 1)), 0);
        assert_eq!(surveillance_lower_bound(&mk(4, 3)), 1);
    }
}
