//! Shared helpers for integration tests: an implementation-independent
//! brute-force solver and set samplers.
#![allow(dead_code)] // each test binary uses a subset

use mrce::graph::{RootedGraph, Solution, VertexSet};

/// Exhaustive maximization over all bitmask subsets containing the root.
/// Deliberately ignores the library's enumeration and pruning machinery.
pub fn brute_force_best(g: &RootedGraph) -> Solution {
    assert!(g.n() <= 20, "brute force oracle is for desk-size graphs");
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
    best.expect("the root alone is always feasible")
}

/// Largest clique size by exhaustive subset check.
pub fn brute_force_max_clique(g: &RootedGraph) -> usize {
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
