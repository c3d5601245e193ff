//! General-graph approximation pipeline: leaf augmentation of the root,
//! greedy dominating set with profits, a rooted quota Steiner tree
//! 2-approximation built on Goemans–Williamson moat growing, and the
//! quota-sweep solver that combines them.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::enumerate::connected_supersets;
use crate::graph::{RootedGraph, Solution, VertexSet};
use crate::oracle::SolveError;
use crate::par::run_map;

/// Per-vertex nonnegative integer profits. Positive exactly on the members
/// of the dominating set that earned them; profits over all vertices sum to
/// the number of vertices dominated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfitMap(Vec<u64>);

impl ProfitMap {
    pub fn new(values: Vec<u64>) -> Self {
        ProfitMap(values)
    }

    pub fn get(&self, v: usize) -> u64 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }
}

/// A tree containing the root, under unit edge costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    vertices: VertexSet,
    edges: Vec<(usize, usize)>,
    root: usize,
    profit: u64,
}

impl SteinerTree {
    fn new(root: usize, vertices: VertexSet, mut edges: Vec<(usize, usize)>, p: &ProfitMap) -> Self {
        edges.sort_unstable();
        let profit = vertices.iter().map(|v| p.get(v)).sum();
        let t = SteinerTree {
            vertices,
            edges,
            root,
            profit,
        };
        debug_assert!(t.is_valid());
        t
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains_root(&self) -> bool {
        self.vertices.contains(self.root)
    }

    /// Unit edge costs: the cost is the edge count.
    pub fn cost(&self) -> usize {
        self.edges.len()
    }

    pub fn profit(&self) -> u64 {
        self.profit
    }

    /// Connected, acyclic, contains the root, and every edge joins members.
    pub fn is_valid(&self) -> bool {
        if !self.contains_root() {
            return false;
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let index: HashMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) else {
                return false;
            };
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertices.len()
    }
}

/// The result of a quota Steiner tree computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RqstOutcome {
    Tree(SteinerTree),
    /// The quota exceeds the total available profit.
    Infeasible,
}

impl RqstOutcome {
    pub fn tree(self) -> Option<SteinerTree> {
        match self {
            RqstOutcome::Tree(t) => Some(t),
            RqstOutcome::Infeasible => None,
        }
    }
}

/// Attaches `n²` fresh degree-1 vertices to the root. Original indices are
/// preserved; the new leaves take indices `n..n+n²`.
pub fn augment_with_leaves(g: &RootedGraph) -> RootedGraph {
    let n = g.n();
    let extra = n * n;
    let root = g.root();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    adj[root].extend(n..n + extra);
    adj.extend((0..extra).map(|_| vec![root]));
    // The root's list stays sorted: all new indices exceed the old ones.
    RootedGraph::from_adjacency_unchecked(n + extra, root, adj)
}

/// Greedy dominating set. Each round picks the vertex (not yet chosen, ties
/// to the smallest index) that dominates the most still-undominated vertices,
/// records that count as its profit, and marks those vertices dominated.
///
/// Returns the picks in selection order together with the profit map.
pub fn greedy_dominating_set(g: &RootedGraph) -> (Vec<usize>, ProfitMap) {
    let n = g.n();
    let mut undominated = vec![true; n];
    let mut remaining = n;
    let mut chosen = vec![false; n];
    let mut profits = vec![0u64; n];
    let mut picks = Vec::new();
    while remaining > 0 {
        let mut best = usize::MAX;
        let mut best_count = 0usize;
        for v in 0..n {
            if chosen[v] {
                continue;
            }
            let mut count = usize::from(undominated[v]);
            for &w in g.neighbors(v) {
                count += usize::from(undominated[w]);
            }
            if count > best_count {
                best_count = count;
                best = v;
            }
        }
        debug_assert!(best != usize::MAX && best_count > 0);
        profits[best] = best_count as u64;
        if undominated[best] {
            undominated[best] = false;
            remaining -= 1;
        }
        for &w in g.neighbors(best) {
            if undominated[w] {
                undominated[w] = false;
                remaining -= 1;
            }
        }
        chosen[best] = true;
        picks.push(best);
    }
    (picks, ProfitMap(profits))
}

// ---------------------------------------------------------------------------
// Rooted prize-collecting moat growth.
// ---------------------------------------------------------------------------

struct MoatState {
    parent: Vec<usize>,
    potential: Vec<f64>,
    used: Vec<f64>,
    has_root: Vec<bool>,
}

impl MoatState {
    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = v;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn active(&mut self, v: usize) -> bool {
        let r = self.find(v);
        !self.has_root[r] && self.used[r] < self.potential[r]
    }
}

/// One Goemans–Williamson growth phase on unit edge costs. Components not
/// containing the root grow uniform moats while they have potential left;
/// an edge merges two components once the moats on its sides have paid for
/// it. Returns the merge edges and the root component's vertex set.
fn grow_rooted_moats(g: &RootedGraph, potential: &[f64]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let n = g.n();
    let root = g.root();
    let edges = g.edges();
    let mut load = vec![0.0f64; edges.len()];
    let mut st = MoatState {
        parent: (0..n).collect(),
        potential: potential.to_vec(),
        used: vec![0.0; n],
        has_root: (0..n).map(|v| v == root).collect(),
    };
    let mut merges = Vec::new();

    // Each iteration fires one event (a merge or an exhaustion), so the loop
    // is bounded; exhausted components only revive by merging.
    let max_events = 4 * n + 16;
    for _ in 0..max_events {
        let mut any_active = false;
        for v in 0..n {
            if st.active(v) {
                any_active = true;
                break;
            }
        }
        if !any_active {
            break;
        }

        // Earliest edge event.
        let mut edge_event: Option<(f64, usize)> = None;
        for (ei, &(u, v)) in edges.iter().enumerate() {
            let (cu, cv) = (st.find(u), st.find(v));
            if cu == cv {
                continue;
            }
            let rate = usize::from(st.active(u)) + usize::from(st.active(v));
            if rate == 0 {
                continue;
            }
            let dt = (1.0 - load[ei]).max(0.0) / rate as f64;
            if edge_event.is_none_or(|(best, _)| dt < best) {
                edge_event = Some((dt, ei));
            }
        }
        // Earliest exhaustion event.
        let mut comp_event: Option<(f64, usize)> = None;
        for v in 0..n {
            if st.find(v) == v && st.active(v) {
                let dt = (st.potential[v] - st.used[v]).max(0.0);
                if comp_event.is_none_or(|(best, _)| dt < best) {
                    comp_event = Some((dt, v));
                }
            }
        }

        let (delta, fire_edge) = match (edge_event, comp_event) {
            (Some((de, _)), Some((dc, _))) => (de.min(dc), de <= dc),
            (Some((de, _)), None) => (de, true),
            (None, Some((dc, _))) => (dc, false),
            (None, None) => break,
        };

        // Advance time: moats grow, cross edges absorb dual from each active
        // side.
        for v in 0..n {
            if st.find(v) == v && st.active(v) {
                st.used[v] += delta;
            }
        }
        for (ei, &(u, v)) in edges.iter().enumerate() {
            let (cu, cv) = (st.find(u), st.find(v));
            if cu == cv {
                continue;
            }
            let rate = usize::from(st.active(u)) + usize::from(st.active(v));
            if rate > 0 {
                load[ei] += rate as f64 * delta;
            }
        }

        if fire_edge {
            let ei = edge_event.unwrap().1;
            let (u, v) = edges[ei];
            load[ei] = 1.0;
            let (cu, cv) = (st.find(u), st.find(v));
            if cu != cv {
                merges.push((u.min(v), u.max(v)));
                st.parent[cu] = cv;
                st.potential[cv] += st.potential[cu];
                st.used[cv] += st.used[cu];
                st.has_root[cv] = st.has_root[cv] || st.has_root[cu];
            }
        } else {
            let c = comp_event.unwrap().1;
            st.used[c] = st.potential[c];
        }
    }

    let root_comp = st.find(root);
    let members: Vec<usize> = (0..n).filter(|&v| st.find(v) == root_comp).collect();
    let tree_edges: Vec<(usize, usize)> = merges
        .into_iter()
        .filter(|&(u, _)| st.find(u) == root_comp)
        .collect();
    debug_assert_eq!(tree_edges.len() + 1, members.len());
    (tree_edges, members)
}

/// Drops leaves that are free (zero profit) or affordable (the quota still
/// holds without them), cheapest profit first.
fn prune_leaves(
    root: usize,
    members: &[usize],
    edges: &[(usize, usize)],
    p: &ProfitMap,
    quota: u64,
) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut keep: Vec<usize> = members.to_vec();
    let mut alive_edges: Vec<(usize, usize)> = edges.to_vec();
    let mut profit: u64 = keep.iter().map(|&v| p.get(v)).sum();
    loop {
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &(u, v) in &alive_edges {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let mut candidate: Option<usize> = None;
        for &v in &keep {
            if v == root || degree.get(&v).copied().unwrap_or(0) != 1 {
                continue;
            }
            let pv = p.get(v);
            let removable = pv == 0 || (profit >= quota && profit - pv >= quota);
            if removable && candidate.is_none_or(|c| (pv, v) < (p.get(c), c)) {
                candidate = Some(v);
            }
        }
        match candidate {
            None => break,
            Some(v) => {
                profit -= p.get(v);
                keep.retain(|&w| w != v);
                alive_edges.retain(|&(a, b)| a != v && b != v);
            }
        }
    }
    (keep, alive_edges)
}

/// Rooted quota Steiner tree with unit edge costs.
///
/// Prizes are scaled by a parameter λ and fed to the rooted moat growth;
/// the smallest λ whose tree meets the quota is approached by bisection over
/// `[0, n]` (λ = n always reaches the whole graph, since a component holding
/// one unit of profit can afford n units of growth). The cheapest
/// quota-meeting tree observed anywhere during the search is returned, after
/// pruning leaves the quota does not need. Returns `Infeasible` if the quota
/// exceeds the total profit.
pub fn rqst_2apx(g: &RootedGraph, p: &ProfitMap, quota: u64) -> RqstOutcome {
    assert_eq!(p.len(), g.n());
    let total: u64 = (0..g.n()).map(|v| p.get(v)).sum();
    if quota > total {
        return RqstOutcome::Infeasible;
    }
    let root = g.root();

    let eval = |lambda: f64| -> (u64, Vec<usize>, Vec<(usize, usize)>) {
        let potential: Vec<f64> = (0..g.n())
            .map(|v| {
                if v == root {
                    0.0
                } else {
                    lambda * p.get(v) as f64
                }
            })
            .collect();
        let (edges, members) = grow_rooted_moats(g, &potential);
        let (members, edges) = prune_leaves(root, &members, &edges, p, quota);
        let profit = members.iter().map(|&v| p.get(v)).sum();
        (profit, members, edges)
    };

    type Candidate = (usize, Vec<usize>, Vec<(usize, usize)>);
    fn record(
        best: &mut Option<Candidate>,
        quota: u64,
        profit: u64,
        members: Vec<usize>,
        edges: Vec<(usize, usize)>,
    ) -> bool {
        if profit < quota {
            return false;
        }
        if best.as_ref().is_none_or(|(c, _, _)| edges.len() < *c) {
            *best = Some((edges.len(), members, edges));
        }
        true
    }

    let mut best: Option<Candidate> = None;

    let (profit, members, edges) = eval(0.0);
    if record(&mut best, quota, profit, members, edges) {
        // The root alone meets the quota; nothing can be cheaper.
        let (_, members, edges) = best.unwrap();
        return RqstOutcome::Tree(SteinerTree::new(
            root,
            VertexSet::from_vec(members),
            edges,
            p,
        ));
    }

    let mut lo = 0.0f64;
    let mut hi = g.n() as f64;
    let (profit, members, edges) = eval(hi);
    let hi_feasible = record(&mut best, quota, profit, members, edges);
    debug_assert!(hi_feasible, "λ = n sweeps every profitable vertex");
    if !hi_feasible {
        // Pathological float behavior: push λ until the sweep completes.
        let mut boost = hi;
        for _ in 0..40 {
            boost *= 2.0;
            let (profit, members, edges) = eval(boost);
            if record(&mut best, quota, profit, members, edges) {
                break;
            }
        }
    }

    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        let (profit, members, edges) = eval(mid);
        if record(&mut best, quota, profit, members, edges) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let (_, members, edges) = best.expect("the upper λ bracket is always feasible");
    RqstOutcome::Tree(SteinerTree::new(
        root,
        VertexSet::from_vec(members),
        edges,
        p,
    ))
}

/// Exact minimum-cost rooted quota tree for auditing, by enumeration of
/// connected root-containing vertex sets (the cost of spanning a set with
/// unit edges is its size minus one). Guarded to 16 vertices.
pub fn exact_rqst_oracle(
    g: &RootedGraph,
    p: &ProfitMap,
    quota: u64,
) -> Result<RqstOutcome, SolveError> {
    const ORACLE_CAP: usize = 16;
    if g.n() > ORACLE_CAP {
        return Err(SolveError::CapacityExceeded {
            n: g.n(),
            cap: ORACLE_CAP,
        });
    }
    let total: u64 = (0..g.n()).map(|v| p.get(v)).sum();
    if quota > total {
        return Ok(RqstOutcome::Infeasible);
    }
    let seed = VertexSet::singleton(g.root());
    let mut best: Option<VertexSet> = None;
    for s in connected_supersets(g, &seed, g.n()) {
        let profit: u64 = s.iter().map(|v| p.get(v)).sum();
        if profit >= quota && best.as_ref().is_none_or(|b| s.len() < b.len()) {
            best = Some(s);
        }
    }
    let members = best.expect("quota is within the total profit");
    let edges = bfs_spanning_tree(g, &members);
    Ok(RqstOutcome::Tree(SteinerTree::new(
        g.root(),
        members,
        edges,
        p,
    )))
}

fn bfs_spanning_tree(g: &RootedGraph, members: &VertexSet) -> Vec<(usize, usize)> {
    let bits = members.to_bits(g.n());
    let mut seen = FixedBitSet::with_capacity(g.n());
    let mut queue = std::collections::VecDeque::new();
    let mut edges = Vec::with_capacity(members.len().saturating_sub(1));
    seen.insert(g.root());
    queue.push_back(g.root());
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if bits.contains(w) && !seen.contains(w) {
                seen.insert(w);
                edges.push((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    edges
}

/// Conservative integer floor of `(1 - 1/e) * q`, always strictly below the
/// true product so a tree matching the target is never excluded.
pub fn quota_floor(q: u64) -> u64 {
    q * 632_120_558 / 1_000_000_000
}

/// Greedy expansion solver for general graphs.
///
/// Runs the greedy dominating set on the root-leaf-augmented graph, restricts
/// the profits back to the original graph (the root keeps only the profit it
/// earned on real vertices), then sweeps every domination guess `q` in
/// `1..=n`, asks the quota tree for `⌊(1-1/e)·q⌋` profit, and returns the
/// candidate tree with the best exact expansion ratio.
pub fn greedy_mrce(g: &RootedGraph) -> Solution {
    greedy_mrce_inner(g, true)
}

/// Sequential variant of [`greedy_mrce`].
pub fn greedy_mrce_seq(g: &RootedGraph) -> Solution {
    greedy_mrce_inner(g, false)
}

fn greedy_mrce_inner(g: &RootedGraph, parallel: bool) -> Solution {
    let n = g.n();
    let augmented = augment_with_leaves(g);
    let (picks, profits) = greedy_dominating_set(&augmented);
    debug_assert_eq!(picks.first(), Some(&g.root()));

    // Keep only the profit earned on vertices of the original graph: the
    // root's count includes its n² synthetic leaves, which do not exist (and
    // cover nothing) here.
    let leaf_bonus = (n * n) as u64;
    assert!(profits.get(g.root()) > leaf_bonus);
    let mut restricted: Vec<u64> = (0..n).map(|v| profits.get(v)).collect();
    restricted[g.root()] -= leaf_bonus;
    let restricted = ProfitMap::new(restricted);

    let mut quotas: Vec<u64> = (1..=n as u64).map(quota_floor).collect();
    quotas.sort_unstable();
    quotas.dedup();

    let trees = run_map(parallel, quotas, |quota| {
        rqst_2apx(g, &restricted, quota)
    });

    let mut best: Option<Solution> = None;
    for outcome in trees {
        let RqstOutcome::Tree(tree) = outcome else {
            continue;
        };
        let sol = g
            .evaluate(tree.vertices())
            .expect("quota trees are connected and contain the root");
        if best.as_ref().is_none_or(|b| sol.better_than(b)) {
            best = Some(sol);
        }
    }
    best.expect("the zero quota always yields the root tree")
}
