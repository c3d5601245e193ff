//! Rooted graphs, vertex sets and exact ratio evaluation.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::ratio::Ratio;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("root {root} out of range (n = {n})")]
    RootOutOfRange { root: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
}

/// Why a vertex set fails to be a feasible solution.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeasibilityError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("root missing")]
    RootMissing,
    #[error("disconnected")]
    Disconnected,
}

/// A sorted, duplicate-free set of vertex indices.
///
/// The derived `Ord` is lexicographic on the sorted index list, which is the
/// tie-breaking order used by every solver.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    /// Sorts and deduplicates the input.
    pub fn from_vec(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// The input must already be sorted strictly ascending.
    pub(crate) fn from_sorted_vec(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Inserts `v`, returning `false` if it was already present.
    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    /// Removes `v`, returning `false` if it was absent.
    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::from_vec(out)
    }

    pub(crate) fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in self.iter() {
            bits.insert(v);
        }
        bits
    }

    pub(crate) fn from_bits(bits: &FixedBitSet) -> VertexSet {
        VertexSet(bits.ones().collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// A simple, connected, undirected graph with a distinguished root vertex.
///
/// Vertices are dense indices `0..n`; adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedGraph {
    n: usize,
    root: usize,
    adj: Vec<Vec<usize>>,
}

impl RootedGraph {
    /// Builds a graph from an edge list, validating simplicity, range and
    /// connectivity.
    pub fn new(n: usize, root: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if root >= n {
            return Err(GraphError::RootOutOfRange { root, n });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let dup = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(GraphError::DuplicateEdge(v.min(dup), v.max(dup)));
            }
        }
        let g = RootedGraph { n, root, adj };
        if !g.whole_graph_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Construction bypass for generators that build valid adjacency directly.
    pub(crate) fn from_adjacency_unchecked(n: usize, root: usize, adj: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert!(root < n);
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        RootedGraph { n, root, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    fn whole_graph_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Per-vertex closed neighborhood bitsets (`N[v]` including `v`).
    pub(crate) fn closed_adjacency_bits(&self) -> Vec<FixedBitSet> {
        let mut rows = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = FixedBitSet::with_capacity(self.n);
            row.insert(v);
            for &w in &self.adj[v] {
                row.insert(w);
            }
            rows.push(row);
        }
        rows
    }

    /// `N[s] = s` together with every vertex adjacent to a member of `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for v in s.iter() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            bits.insert(v);
            for &w in &self.adj[v] {
                bits.insert(w);
            }
        }
        Ok(VertexSet::from_bits(&bits))
    }

    /// `true` iff `s` contains the root and induces a connected subgraph.
    /// The empty set and sets with out-of-range indices return `false`.
    pub fn is_connected_containing_root(&self, s: &VertexSet) -> bool {
        if !s.contains(self.root) || s.iter().any(|v| v >= self.n) {
            return false;
        }
        self.induced_connected(s)
    }

    fn induced_connected(&self, s: &VertexSet) -> bool {
        let members = s.to_bits(self.n);
        let mut seen = FixedBitSet::with_capacity(self.n);
        let start = s.as_slice()[0];
        let mut stack = vec![start];
        seen.insert(start);
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if members.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == s.len()
    }

    /// Evaluates a feasible set into a [`Solution`] with its exact ratio.
    pub fn evaluate(&self, s: &VertexSet) -> Result<Solution, FeasibilityError> {
        for v in s.iter() {
            if v >= self.n {
                return Err(FeasibilityError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if !s.contains(self.root) {
            return Err(FeasibilityError::RootMissing);
        }
        if !self.induced_connected(s) {
            return Err(FeasibilityError::Disconnected);
        }
        let nbhd = self.closed_neighborhood(s).expect("indices validated");
        Ok(Solution::from_parts(s.clone(), nbhd.len()))
    }

    /// `(Δ+1)/1`: an upper bound on every expansion ratio, since each set
    /// member contributes at most `Δ+1` covered vertices.
    pub fn max_degree_plus_one_bound(&self) -> Ratio {
        Ratio::new(self.max_degree() as u64 + 1, 1)
    }
}

/// A feasible set together with its closed-neighborhood size and exact ratio.
///
/// The ratio is stored reduced; the raw numerator and denominator remain
/// available as `closed_nbhd_size()` and `set().len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    set: VertexSet,
    closed_nbhd_size: usize,
    ratio: Ratio,
}

impl Solution {
    pub(crate) fn from_parts(set: VertexSet, closed_nbhd_size: usize) -> Self {
        let ratio = Ratio::new(closed_nbhd_size as u64, set.len() as u64);
        Solution {
            set,
            closed_nbhd_size,
            ratio,
        }
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn closed_nbhd_size(&self) -> usize {
        self.closed_nbhd_size
    }

    pub fn ratio(&self) -> Ratio {
        self.ratio
    }

    /// Preference order used everywhere: higher ratio, then smaller set, then
    /// lexicographically smaller vertex list.
    pub fn better_than(&self, other: &Solution) -> bool {
        match self.ratio.cmp(&other.ratio) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match self.set.len().cmp(&other.set.len()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.set < other.set,
            },
        }
    }
}
