//! Optimal solver for interval graphs given a realization.
//!
//! The realization is canonicalized to distinct integer endpoints, the
//! vertices are partitioned by their position relative to the root interval,
//! and candidate solutions are built by expanding greedily leftward and
//! rightward from the root and from each maximal containing interval,
//! combining the best prefixes of both expansions.

use std::cmp::Ordering;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{GraphError, RootedGraph, Solution, VertexSet};
use crate::par::run_map;
use crate::ratio::Ratio;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("no intervals given")]
    Empty,
    #[error("interval {0} is a single point")]
    PointInterval(usize),
    #[error("interval {0} has its endpoints reversed")]
    InvertedInterval(usize),
    #[error("realization does not match the graph: {0}")]
    RealizationMismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An exact rational coordinate, reduced, with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i64(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Frac {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn integer(v: i64) -> Self {
        Frac { num: v, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }
}

fn gcd_i64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid coordinate {0:?}")]
pub struct ParseFracError(String);

impl FromStr for Frac {
    type Err = ParseFracError;

    /// Accepts integers (`-3`), fractions (`7/3`) and decimals (`2.5`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseFracError(s.to_string());
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|_| bad())?;
            let den: i64 = b.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Frac::new(num, den));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || frac_part.len() > 15 || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.trim_start().starts_with('-');
            let whole: i64 = if int_part == "-" || int_part.is_empty() {
                0
            } else {
                int_part.trim().parse().map_err(|_| bad())?
            };
            let scale = 10i64.pow(frac_part.len() as u32);
            let frac_digits: i64 = frac_part.parse().map_err(|_| bad())?;
            let magnitude = whole.unsigned_abs() as i128 * scale as i128 + frac_digits as i128;
            if magnitude > i64::MAX as i128 {
                return Err(bad());
            }
            let num = if negative {
                -(magnitude as i64)
            } else {
                magnitude as i64
            };
            return Ok(Frac::new(num, scale));
        }
        let v: i64 = s.trim().parse().map_err(|_| bad())?;
        Ok(Frac::integer(v))
    }
}

/// A canonical realization: per-vertex closed intervals whose `2n` endpoints
/// are the distinct integers `1..=2n`, order-isomorphic to the raw input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRealization {
    intervals: Vec<(u32, u32)>,
}

impl IntervalRealization {
    /// Remaps raw rational intervals onto distinct integer endpoints.
    ///
    /// At equal raw coordinates, left endpoints come before right endpoints —
    /// this keeps closed intervals that merely touch adjacent — and remaining
    /// ties order by vertex index. The intersection graph is unchanged.
    pub fn canonicalize(raw: &[(Frac, Frac)]) -> Result<Self, IntervalError> {
        if raw.is_empty() {
            return Err(IntervalError::Empty);
        }
        for (v, &(lo, hi)) in raw.iter().enumerate() {
            match lo.cmp(&hi) {
                Ordering::Equal => return Err(IntervalError::PointInterval(v)),
                Ordering::Greater => return Err(IntervalError::InvertedInterval(v)),
                Ordering::Less => {}
            }
        }
        // side 0 = left endpoint, 1 = right endpoint.
        let mut events: Vec<(Frac, u8, usize)> = Vec::with_capacity(2 * raw.len());
        for (v, &(lo, hi)) in raw.iter().enumerate() {
            events.push((lo, 0, v));
            events.push((hi, 1, v));
        }
        events.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut intervals = vec![(0u32, 0u32); raw.len()];
        for (pos, &(_, side, v)) in events.iter().enumerate() {
            let coord = pos as u32 + 1;
            if side == 0 {
                intervals[v].0 = coord;
            } else {
                intervals[v].1 = coord;
            }
        }
        debug_assert!(intervals.iter().all(|&(l, r)| l < r));
        Ok(IntervalRealization { intervals })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn left(&self, v: usize) -> u32 {
        self.intervals[v].0
    }

    pub fn right(&self, v: usize) -> u32 {
        self.intervals[v].1
    }

    fn overlaps(&self, u: usize, v: usize) -> bool {
        self.left(u) < self.right(v) && self.left(v) < self.right(u)
    }

    /// The graph whose vertices are the intervals, with an edge whenever two
    /// intervals intersect. Fails if that graph is disconnected.
    pub fn intersection_graph(&self, root: usize) -> Result<RootedGraph, GraphError> {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.overlaps(u, v) {
                    edges.push((u, v));
                }
            }
        }
        RootedGraph::new(n, root, &edges)
    }
}

/// The position classes of every non-root vertex relative to the root
/// interval. Together with the root they partition the vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealLinePartition {
    /// Strictly left of the root interval.
    pub strictly_left: VertexSet,
    /// Intersects the root interval from the left.
    pub overlap_left: VertexSet,
    /// Properly contained in the root interval.
    pub nested_inside: VertexSet,
    /// Properly contains the root interval.
    pub containing: VertexSet,
    /// Intersects the root interval from the right.
    pub overlap_right: VertexSet,
    /// Strictly right of the root interval.
    pub strictly_right: VertexSet,
}

/// Classifies every vertex other than the root; on a canonical realization
/// the six predicates are exhaustive and mutually exclusive.
pub fn partition_by_root(r: &IntervalRealization, root: usize) -> RealLinePartition {
    let (rl, rr) = (r.left(root), r.right(root));
    let mut p = RealLinePartition::default();
    for v in 0..r.n() {
        if v == root {
            continue;
        }
        let (l, rt) = (r.left(v), r.right(v));
        if rt < rl {
            p.strictly_left.insert(v);
        } else if l > rr {
            p.strictly_right.insert(v);
        } else if l < rl && rt > rr {
            p.containing.insert(v);
        } else if l > rl && rt < rr {
            p.nested_inside.insert(v);
        } else if l < rl {
            debug_assert!(rl < rt && rt < rr);
            p.overlap_left.insert(v);
        } else {
            debug_assert!(l > rl && l < rr && rt > rr);
            p.overlap_right.insert(v);
        }
    }
    p
}

/// The core: containing intervals that are not themselves properly contained
/// in another containing interval.
pub fn core(r: &IntervalRealization, partition: &RealLinePartition) -> VertexSet {
    let members: Vec<usize> = partition.containing.iter().collect();
    members
        .iter()
        .copied()
        .filter(|&v| {
            !members.iter().any(|&u| {
                u != v && r.left(u) < r.left(v) && r.right(u) > r.right(v)
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Nested prefixes of a greedy directional expansion: entry `t` is the start
/// vertex plus the first `t` picks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionVector {
    entries: Vec<VertexSet>,
}

impl ExpansionVector {
    pub fn entries(&self) -> &[VertexSet] {
        &self.entries
    }
}

/// Greedy directional expansion. From the current vertex, consider intervals
/// that intersect it strictly on the given side (containment in either
/// direction is excluded by the relation) and pick the one reaching farthest:
/// the smallest left endpoint going left, the largest right endpoint going
/// right. Each pick strictly advances the frontier, so the process stops
/// after at most `n` steps. Ties cannot occur on a canonical realization.
pub fn expand(r: &IntervalRealization, direction: Direction, start: usize) -> ExpansionVector {
    let mut entries = vec![VertexSet::singleton(start)];
    let mut current = start;
    loop {
        let (cl, cr) = (r.left(current), r.right(current));
        let mut pick: Option<usize> = None;
        for v in 0..r.n() {
            if v == current {
                continue;
            }
            let (l, rt) = (r.left(v), r.right(v));
            let qualifies = match direction {
                Direction::Left => l < cl && cl < rt && rt < cr,
                Direction::Right => rt > cr && cl < l && l < cr,
            };
            if !qualifies {
                continue;
            }
            let better = match (direction, pick) {
                (_, None) => true,
                (Direction::Left, Some(p)) => l < r.left(p),
                (Direction::Right, Some(p)) => rt > r.right(p),
            };
            if better {
                pick = Some(v);
            }
        }
        match pick {
            None => break,
            Some(v) => {
                let mut next = entries.last().unwrap().clone();
                next.insert(v);
                entries.push(next);
                current = v;
            }
        }
    }
    ExpansionVector { entries }
}

/// Best ratio over `base ∪ l ∪ r` for every pair of left and right expansion
/// prefixes (including the trivial prefixes, hence the base alone).
///
/// Coverage and size are evaluated through cumulative bitset unions, so the
/// whole pass over the `|left| × |right|` grid costs O(n³/w) per call.
pub fn combine(
    g: &RootedGraph,
    base: &VertexSet,
    left: &ExpansionVector,
    right: &ExpansionVector,
) -> Solution {
    let n = g.n();
    let closed = g.closed_adjacency_bits();
    let cover_of = |s: &VertexSet| {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in s.iter() {
            bits.union_with(&closed[v]);
        }
        bits
    };
    let base_bits = base.to_bits(n);
    let base_cover = cover_of(base);

    let prefixes = |vec: &ExpansionVector| -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
        let mut sets = Vec::with_capacity(vec.entries.len());
        let mut covers = Vec::with_capacity(vec.entries.len());
        for entry in &vec.entries {
            sets.push(entry.to_bits(n));
            covers.push(cover_of(entry));
        }
        (sets, covers)
    };
    let (lsets, lcovers) = prefixes(left);
    let (rsets, rcovers) = prefixes(right);

    let mut best: Option<(Ratio, usize, usize, usize)> = None; // ratio, size, (t, s)
    let mut scratch_set = FixedBitSet::with_capacity(n);
    let mut scratch_cover = FixedBitSet::with_capacity(n);
    for (t, (lset, lcover)) in lsets.iter().zip(&lcovers).enumerate() {
        for (s, (rset, rcover)) in rsets.iter().zip(&rcovers).enumerate() {
            scratch_set.clone_from(&base_bits);
            scratch_set.union_with(lset);
            scratch_set.union_with(rset);
            scratch_cover.clone_from(&base_cover);
            scratch_cover.union_with(lcover);
            scratch_cover.union_with(rcover);
            let size = scratch_set.count_ones(..);
            let ratio = Ratio::new(scratch_cover.count_ones(..) as u64, size as u64);
            let replace = match &best {
                None => true,
                Some((br, bsize, bt, bs)) => match ratio.cmp(br) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => match size.cmp(bsize) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => {
                            // Materialize only on a full tie.
                            let cand = VertexSet::from_bits(&scratch_set);
                            let mut prev = base_bits.clone();
                            prev.union_with(&lsets[*bt]);
                            prev.union_with(&rsets[*bs]);
                            cand < VertexSet::from_bits(&prev)
                        }
                    },
                },
            };
            if replace {
                best = Some((ratio, size, t, s));
            }
        }
    }
    let (ratio, _, t, s) = best.expect("expansion vectors are never empty");
    let winner = base.union(&left.entries[t]).union(&right.entries[s]);
    let sol = g
        .evaluate(&winner)
        .expect("combined candidates are connected and contain the root");
    debug_assert_eq!(sol.ratio(), ratio);
    sol
}

/// Optimal solution for an interval graph with the given realization.
///
/// Expands left and right from the root alone and from the root paired with
/// each core vertex, combining the prefix grids; the best candidate over all
/// starting bases is optimal.
pub fn solve_interval(g: &RootedGraph, r: &IntervalRealization) -> Result<Solution, IntervalError> {
    solve_interval_inner(g, r, true)
}

/// Sequential variant of [`solve_interval`].
pub fn solve_interval_seq(
    g: &RootedGraph,
    r: &IntervalRealization,
) -> Result<Solution, IntervalError> {
    solve_interval_inner(g, r, false)
}

fn solve_interval_inner(
    g: &RootedGraph,
    r: &IntervalRealization,
    parallel: bool,
) -> Result<Solution, IntervalError> {
    if r.n() != g.n() {
        return Err(IntervalError::RealizationMismatch(format!(
            "{} intervals for {} vertices",
            r.n(),
            g.n()
        )));
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if r.overlaps(u, v) != g.has_edge(u, v) {
                return Err(IntervalError::RealizationMismatch(format!(
                    "adjacency of {u} and {v} disagrees with interval overlap"
                )));
            }
        }
    }
    let root = g.root();
    let partition = partition_by_root(r, root);
    let core_set = core(r, &partition);

    let mut bases: Vec<(VertexSet, usize)> = vec![(VertexSet::singleton(root), root)];
    for c in core_set.iter() {
        bases.push((VertexSet::from_vec(vec![root, c]), c));
    }
    let candidates = run_map(parallel, bases, |(base, start)| {
        let left = expand(r, Direction::Left, start);
        let right = expand(r, Direction::Right, start);
        combine(g, &base, &left, &right)
    });
    let mut best: Option<Solution> = None;
    for c in candidates {
        if best.as_ref().is_none_or(|b| c.better_than(b)) {
            best = Some(c);
        }
    }
    Ok(best.expect("at least the root base is always present"))
}
