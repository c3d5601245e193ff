//! Instance generators: the CNF-based split family with analytically known
//! optima, plus seeded random split / interval / general instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{RootedGraph, VertexSet};
use crate::interval::{Frac, IntervalRealization};
use crate::ratio::Ratio;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("formula has no clauses")]
    NoClauses,
    #[error("formula declares no variables")]
    NoVariables,
    #[error("literal {literal} in clause {clause} references an undeclared variable")]
    LiteralOutOfRange { clause: usize, literal: i32 },
    #[error("literal 0 is not allowed inside a clause")]
    ZeroLiteral,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("cannot build a connected graph: need {need} edges, got {got}")]
    TooFewEdges { need: usize, got: usize },
    #[error("too many edges: at most {max} possible, got {got}")]
    TooManyEdges { max: usize, got: usize },
    #[error("n must be at least 1")]
    EmptyGraph,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("reduction requires #variables == #clauses; got {variables} and {clauses}")]
pub struct UnequalCountsError {
    pub variables: usize,
    pub clauses: usize,
}

/// A CNF formula whose clauses each hold exactly three literals.
/// Literals are signed 1-based variable indices; repeats inside a clause are
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self, CnfError> {
        if num_vars == 0 {
            return Err(CnfError::NoVariables);
        }
        if clauses.is_empty() {
            return Err(CnfError::NoClauses);
        }
        for (ci, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 {
                    return Err(CnfError::ZeroLiteral);
                }
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(CnfError::LiteralOutOfRange {
                        clause: ci,
                        literal: lit,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }
}

/// Pads a formula so that it has as many clauses as variables while keeping
/// satisfiability: missing clauses are copies of the first clause, missing
/// variables are fresh and unused.
pub fn equalize(f: &CnfFormula) -> CnfFormula {
    let mut clauses = f.clauses.clone();
    let mut num_vars = f.num_vars;
    if clauses.len() < num_vars {
        let filler = clauses[0];
        clauses.resize(num_vars, filler);
    } else if num_vars < clauses.len() {
        num_vars = clauses.len();
    }
    CnfFormula { num_vars, clauses }
}

/// What each vertex of a reduction graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    Root,
    /// The literal `x_var` (or its negation) for a 1-based variable index.
    Literal { var: usize, negated: bool },
    /// The j-th clause, 1-based.
    ClauseNode { index: usize },
    /// The j-th pendant vertex of variable `var`, 1-based.
    Leaf { var: usize, index: usize },
}

impl std::fmt::Display for VertexRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexRole::Root => write!(f, "root"),
            VertexRole::Literal { var, negated } => {
                write!(f, "literal {} {}", var, if *negated { "neg" } else { "pos" })
            }
            VertexRole::ClauseNode { index } => write!(f, "clause {index}"),
            VertexRole::Leaf { var, index } => write!(f, "leaf {var} {index}"),
        }
    }
}

/// A reduction instance: the graph, the role of every vertex, and the ratio
/// threshold `(1 + 5n + 3n²) / (1 + n)` that separates satisfiable from
/// unsatisfiable source formulas.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub graph: RootedGraph,
    pub roles: Vec<VertexRole>,
    pub threshold: Ratio,
}

/// Index layout of the reduction graph for a formula with `n` variables.
/// Fixed so that role maps are reproducible: root 0, then literal pairs,
/// then clause vertices, then leaf rows.
#[derive(Clone, Copy, Debug)]
pub struct ReductionLayout {
    pub n: usize,
}

impl ReductionLayout {
    pub fn positive_literal(self, var: usize) -> usize {
        2 * var - 1
    }

    pub fn negative_literal(self, var: usize) -> usize {
        2 * var
    }

    pub fn clause(self, index: usize) -> usize {
        2 * self.n + index
    }

    pub fn leaf(self, var: usize, index: usize) -> usize {
        3 * self.n + (var - 1) * (3 * self.n + 2) + index
    }

    pub fn total_vertices(self) -> usize {
        1 + 5 * self.n + 3 * self.n * self.n
    }
}

/// Builds the split graph of the hardness construction for a formula with
/// equally many variables and clauses.
///
/// The root joins all `2n` literal vertices, the literal vertices form a
/// clique, each literal joins the clauses it appears in, and `3n+2` pendant
/// vertices hang off every literal pair. A clause edge is emitted once per
/// distinct literal in the clause, so a clause whose three slots name only
/// two distinct literals contributes two edges.
pub fn reduce_to_split_mrce(f: &CnfFormula) -> Result<ReductionOutput, UnequalCountsError> {
    let n = f.num_vars;
    if f.clauses.len() != n {
        return Err(UnequalCountsError {
            variables: n,
            clauses: f.clauses.len(),
        });
    }
    let layout = ReductionLayout { n };
    let total = layout.total_vertices();
    let mut edges = Vec::with_capacity(8 * n * n + 8 * n);
    let mut roles = vec![VertexRole::Root; total];

    let mut literals = Vec::with_capacity(2 * n);
    for var in 1..=n {
        let pos = layout.positive_literal(var);
        let neg = layout.negative_literal(var);
        roles[pos] = VertexRole::Literal { var, negated: false };
        roles[neg] = VertexRole::Literal { var, negated: true };
        edges.push((0, pos));
        edges.push((0, neg));
        literals.push(pos);
        literals.push(neg);
    }
    for (i, &u) in literals.iter().enumerate() {
        for &v in &literals[i + 1..] {
            edges.push((u.min(v), u.max(v)));
        }
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let cv = layout.clause(j + 1);
        roles[cv] = VertexRole::ClauseNode { index: j + 1 };
        let mut seen = Vec::new();
        for &lit in clause {
            let var = lit.unsigned_abs() as usize;
            let lv = if lit > 0 {
                layout.positive_literal(var)
            } else {
                layout.negative_literal(var)
            };
            if !seen.contains(&lv) {
                seen.push(lv);
                edges.push((lv.min(cv), lv.max(cv)));
            }
        }
    }
    for var in 1..=n {
        let pos = layout.positive_literal(var);
        let neg = layout.negative_literal(var);
        for j in 1..=3 * n + 2 {
            let leaf = layout.leaf(var, j);
            roles[leaf] = VertexRole::Leaf { var, index: j };
            edges.push((pos, leaf));
            edges.push((neg, leaf));
        }
    }

    let graph = RootedGraph::new(total, 0, &edges).expect("reduction layout is a valid graph");
    let threshold = Ratio::new(total as u64, 1 + n as u64);
    Ok(ReductionOutput {
        graph,
        roles,
        threshold,
    })
}

// Per-generator seed mixers so different kinds draw distinct streams from
// the same user seed.
const SPLIT_SEED_TAG: u64 = 0x73706c69;
const INTERVAL_SEED_TAG: u64 = 0x696e7476;
const GENERAL_SEED_TAG: u64 = 0x67656e72;

/// Random connected split graph: a random clique, with every remaining vertex
/// attached to a nonempty random subset of the clique. Labels and root are
/// shuffled by the seed; the same seed reproduces the same instance.
pub fn random_split(n: usize, seed: u64) -> RootedGraph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SPLIT_SEED_TAG);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let clique_size = rng.random_range(1..=n);
    let clique = &perm[..clique_size];
    let mut edges = Vec::new();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            edges.push((u.min(v), u.max(v)));
        }
    }
    for &w in &perm[clique_size..] {
        let mut attached = false;
        for &c in clique {
            if rng.random_bool(0.4) {
                edges.push((w.min(c), w.max(c)));
                attached = true;
            }
        }
        if !attached {
            let c = clique[rng.random_range(0..clique_size)];
            edges.push((w.min(c), w.max(c)));
        }
    }
    let root = rng.random_range(0..n);
    RootedGraph::new(n, root, &edges).expect("construction is connected and simple")
}

/// A generated interval instance: the raw intervals as written to disk, the
/// canonical realization, and the intersection graph.
#[derive(Clone, Debug)]
pub struct IntervalInstance {
    pub graph: RootedGraph,
    pub realization: IntervalRealization,
    pub raw: Vec<(Frac, Frac)>,
}

/// Random connected interval instance with integer endpoints. Samples until
/// the intersection graph is connected, which converges quickly at the spans
/// used; the sampling sequence is fully determined by the seed.
pub fn random_interval(n: usize, seed: u64) -> IntervalInstance {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ INTERVAL_SEED_TAG);
    let span = (3 * n).max(4) as i64;
    for _ in 0..10_000 {
        let raw: Vec<(Frac, Frac)> = (0..n)
            .map(|_| {
                let lo = rng.random_range(0..span);
                let len = rng.random_range(1..=span / 2);
                (Frac::integer(lo), Frac::integer(lo + len))
            })
            .collect();
        let realization =
            IntervalRealization::canonicalize(&raw).expect("generated intervals are non-trivial");
        let root = rng.random_range(0..n);
        if let Ok(graph) = realization.intersection_graph(root) {
            return IntervalInstance {
                graph,
                realization,
                raw,
            };
        }
    }
    // Overlapping chain; connectivity holds by construction.
    let raw: Vec<(Frac, Frac)> = (0..n as i64)
        .map(|i| (Frac::integer(2 * i), Frac::integer(2 * i + 3)))
        .collect();
    let realization = IntervalRealization::canonicalize(&raw).unwrap();
    let graph = realization.intersection_graph(0).unwrap();
    IntervalInstance {
        graph,
        realization,
        raw,
    }
}

/// Random connected graph with exactly `target_edges` edges (default: about
/// 1.6·n, clamped to the feasible range): a random spanning tree plus random
/// extra edges.
pub fn random_connected(
    n: usize,
    target_edges: Option<usize>,
    seed: u64,
) -> Result<RootedGraph, GenError> {
    if n == 0 {
        return Err(GenError::EmptyGraph);
    }
    let max_edges = n * (n - 1) / 2;
    let m = target_edges.unwrap_or_else(|| ((n * 16) / 10).clamp(n - 1, max_edges));
    if m < n - 1 {
        return Err(GenError::TooFewEdges { need: n - 1, got: m });
    }
    if m > max_edges {
        return Err(GenError::TooManyEdges {
            max: max_edges,
            got: m,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ GENERAL_SEED_TAG);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.random_range(0..i);
        let (u, v) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
        edges.push((u, v));
    }
    let mut non_edges: Vec<(usize, usize)> = Vec::with_capacity(max_edges - edges.len());
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) {
                non_edges.push((u, v));
            }
        }
    }
    non_edges.shuffle(&mut rng);
    edges.extend(non_edges.into_iter().take(m - (n - 1)));
    let root = rng.random_range(0..n);
    RootedGraph::new(n, root, &edges).map_err(|_| unreachable!("tree construction is connected"))
}

/// Random feasible solution: grow from the root by repeatedly adding a random
/// neighbor of the current set.
pub fn random_feasible_set<R: Rng>(g: &RootedGraph, rng: &mut R) -> VertexSet {
    let mut set = VertexSet::singleton(g.root());
    let extra = rng.random_range(0..g.n());
    for _ in 0..extra {
        let frontier: Vec<usize> = set
            .iter()
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&w| !set.contains(w))
            .collect();
        if frontier.is_empty() {
            break;
        }
        let pick = frontier[rng.random_range(0..frontier.len())];
        set.insert(pick);
    }
    set
}

/// Random connected set that need not contain the root: grow from a random
/// start vertex.
pub fn random_connected_set<R: Rng>(g: &RootedGraph, rng: &mut R) -> VertexSet {
    let start = rng.random_range(0..g.n());
    let mut set = VertexSet::singleton(start);
    let extra = rng.random_range(0..g.n());
    for _ in 0..extra {
        let frontier: Vec<usize> = set
            .iter()
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&w| !set.contains(w))
            .collect();
        if frontier.is_empty() {
            break;
        }
        let pick = frontier[rng.random_range(0..frontier.len())];
        set.insert(pick);
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::{recognize_and_partition, SplitVerdict};

    fn clause(a: i32, b: i32, c: i32) -> [i32; 3] {
        [a, b, c]
    }

    #[test]
    fn formula_validation() {
        assert_eq!(CnfFormula::new(0, vec![clause(1, 1, 1)]), Err(CnfError::NoVariables));
        assert_eq!(CnfFormula::new(1, vec![]), Err(CnfError::NoClauses));
        assert!(matches!(
            CnfFormula::new(1, vec![clause(1, 2, 1)]),
            Err(CnfError::LiteralOutOfRange { .. })
        ));
        assert_eq!(
            CnfFormula::new(1, vec![clause(1, 0, 1)]),
            Err(CnfError::ZeroLiteral)
        );
    }

    #[test]
    fn equalize_pads_both_directions() {
        let f = CnfFormula::new(2, vec![clause(1, -2, 1), clause(2, 2, -1)]).unwrap();
        assert_eq!(equalize(&f), f);

        let f = CnfFormula::new(3, vec![clause(1, 2, 3)]).unwrap();
        let eq = equalize(&f);
        assert_eq!(eq.num_vars(), 3);
        assert_eq!(eq.clauses().len(), 3);
        assert!(eq.clauses().iter().all(|c| *c == clause(1, 2, 3)));

        let f = CnfFormula::new(1, vec![clause(1, 1, 1); 3]).unwrap();
        let eq = equalize(&f);
        assert_eq!(eq.num_vars(), 3);
        assert_eq!(eq.clauses().len(), 3);
    }

    #[test]
    fn reduction_counts_for_single_variable() {
        // One variable, clause (x1 ∨ x1 ∨ x1): 9 vertices; the clause edge
        // collapses to a single incidence, giving 14 edges.
        let f = CnfFormula::new(1, vec![clause(1, 1, 1)]).unwrap();
        let out = reduce_to_split_mrce(&f).unwrap();
        assert_eq!(out.graph.n(), 9);
        assert_eq!(out.graph.edge_count(), 14);
        assert_eq!(out.threshold, Ratio::new(9, 2));
        assert!(matches!(
            recognize_and_partition(&out.graph),
            SplitVerdict::Split(_)
        ));
    }

    #[test]
    fn reduction_counts_for_two_variables() {
        // Tautological clauses with three distinct literals each: the closed
        // forms 1+5n+3n² and 8n²+8n hold exactly.
        let f = CnfFormula::new(2, vec![clause(1, -1, 2), clause(2, -2, 1)]).unwrap();
        let out = reduce_to_split_mrce(&f).unwrap();
        assert_eq!(out.graph.n(), 23);
        assert_eq!(out.graph.edge_count(), 48);
        assert_eq!(out.threshold, Ratio::new(23, 3));
    }

    #[test]
    fn reduction_rejects_unequal_counts() {
        let f = CnfFormula::new(3, vec![clause(1, 2, 3)]).unwrap();
        assert!(reduce_to_split_mrce(&f).is_err());
    }

    #[test]
    fn reduction_closed_neighborhood_of_root() {
        let f = CnfFormula::new(1, vec![clause(1, 1, 1)]).unwrap();
        let out = reduce_to_split_mrce(&f).unwrap();
        let nb = out
            .graph
            .closed_neighborhood(&VertexSet::singleton(0))
            .unwrap();
        // Root plus the two literal vertices: 1 + 2n.
        assert_eq!(nb.len(), 3);
        assert_eq!(nb.as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn reduction_roles_are_consistent() {
        let f = CnfFormula::new(2, vec![clause(1, -1, 2), clause(2, -2, 1)]).unwrap();
        let out = reduce_to_split_mrce(&f).unwrap();
        assert_eq!(out.roles[0], VertexRole::Root);
        assert_eq!(out.roles[1], VertexRole::Literal { var: 1, negated: false });
        assert_eq!(out.roles[2], VertexRole::Literal { var: 1, negated: true });
        assert_eq!(out.roles[5], VertexRole::ClauseNode { index: 1 });
        let leaf_count = out
            .roles
            .iter()
            .filter(|r| matches!(r, VertexRole::Leaf { .. }))
            .count();
        assert_eq!(leaf_count, 2 * (3 * 2 + 2));
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_split(12, 7), random_split(12, 7));
        assert_eq!(
            random_connected(12, Some(20), 7).unwrap(),
            random_connected(12, Some(20), 7).unwrap()
        );
        let a = random_interval(9, 7);
        let b = random_interval(9, 7);
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.raw, b.raw);
    }

    #[test]
    fn random_split_outputs_are_split() {
        for seed in 0..50 {
            let g = random_split(11, seed);
            assert!(matches!(
                recognize_and_partition(&g),
                SplitVerdict::Split(_)
            ));
        }
    }

    #[test]
    fn random_interval_graph_matches_raw_overlaps() {
        for seed in 0..50 {
            let inst = random_interval(8, seed);
            for u in 0..8 {
                for v in u + 1..8 {
                    let raw_overlap =
                        inst.raw[u].0 <= inst.raw[v].1 && inst.raw[v].0 <= inst.raw[u].1;
                    assert_eq!(inst.graph.has_edge(u, v), raw_overlap);
                }
            }
        }
    }

    #[test]
    fn random_connected_respects_edge_bounds() {
        assert!(matches!(
            random_connected(5, Some(3), 0),
            Err(GenError::TooFewEdges { .. })
        ));
        assert!(matches!(
            random_connected(5, Some(11), 0),
            Err(GenError::TooManyEdges { .. })
        ));
        let g = random_connected(5, Some(7), 0).unwrap();
        assert_eq!(g.edge_count(), 7);
    }
}
