//! Duplicate-free enumeration of connected supersets of a seed set.
//!
//! Growth is root-anchored: each frame owns a pool of frontier vertices, and
//! branching on a pool vertex removes it from the pool handed to the later
//! branches. A vertex re-enters no pool because new frontier candidates are
//! drawn from outside the closed neighborhood of the current set. This yields
//! every connected superset exactly once, in depth-first order with extension
//! candidates visited in ascending index order.

use fixedbitset::FixedBitSet;

use crate::graph::{RootedGraph, VertexSet};

/// Streams every connected superset `T ⊇ seed` with `|T| <= max_size`,
/// each exactly once, in a deterministic order starting with the seed.
///
/// Panics if the seed is not connected or does not contain the root. If
/// `max_size < seed.len()` the stream is empty.
pub fn connected_supersets<'g>(
    g: &'g RootedGraph,
    seed: &VertexSet,
    max_size: usize,
) -> ConnectedSupersets<'g> {
    assert!(
        g.is_connected_containing_root(seed),
        "enumeration seed must be connected and contain the root"
    );
    ConnectedSupersets::new(g, seed, max_size)
}

struct Frame {
    set: FixedBitSet,
    nbhd: FixedBitSet,
    size: usize,
    pool: Vec<usize>,
    pos: usize,
    yielded: bool,
}

pub struct ConnectedSupersets<'g> {
    g: &'g RootedGraph,
    max_size: usize,
    stack: Vec<Frame>,
}

impl<'g> ConnectedSupersets<'g> {
    fn new(g: &'g RootedGraph, seed: &VertexSet, max_size: usize) -> Self {
        let mut stack = Vec::new();
        if max_size >= seed.len() {
            let n = g.n();
            let set = seed.to_bits(n);
            let mut nbhd = set.clone();
            for v in seed.iter() {
                for &w in g.neighbors(v) {
                    nbhd.insert(w);
                }
            }
            let pool: Vec<usize> = nbhd.ones().filter(|&w| !set.contains(w)).collect();
            stack.push(Frame {
                set,
                nbhd,
                size: seed.len(),
                pool,
                pos: 0,
                yielded: false,
            });
        }
        ConnectedSupersets { g, max_size, stack }
    }
}

impl Iterator for ConnectedSupersets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            let top = self.stack.last_mut()?;
            if !top.yielded {
                top.yielded = true;
                return Some(VertexSet::from_bits(&top.set));
            }
            if top.size == self.max_size || top.pos >= top.pool.len() {
                self.stack.pop();
                continue;
            }
            let u = top.pool[top.pos];
            top.pos += 1;
            let mut set = top.set.clone();
            set.insert(u);
            let mut nbhd = top.nbhd.clone();
            // Frontier vertices introduced by u: neighbors outside the
            // parent's closed neighborhood.
            let fresh: Vec<usize> = self
                .g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !top.nbhd.contains(w))
                .collect();
            for &w in &fresh {
                nbhd.insert(w);
            }
            let mut pool = Vec::with_capacity(top.pool.len() - top.pos + fresh.len());
            // Merge the remaining pool with the fresh frontier, both sorted.
            let rest = &top.pool[top.pos..];
            let (mut i, mut j) = (0, 0);
            while i < rest.len() && j < fresh.len() {
                if rest[i] < fresh[j] {
                    pool.push(rest[i]);
                    i += 1;
                } else {
                    pool.push(fresh[j]);
                    j += 1;
                }
            }
            pool.extend_from_slice(&rest[i..]);
            pool.extend_from_slice(&fresh[j..]);
            let size = top.size + 1;
            self.stack.push(Frame {
                set,
                nbhd,
                size,
                pool,
                pos: 0,
                yielded: false,
            });
        }
    }
}
