//! Solvers and generators for the Maximum Rooted Connected Expansion problem:
//! given a connected graph with a root vertex, find a connected vertex set `S`
//! containing the root that maximizes the expansion ratio `|N[S]| / |S|`,
//! where `N[S]` is the closed neighborhood of `S`.
//!
//! The crate provides
//! - an exact branch-and-bound solver for small graphs ([`oracle`]),
//! - a size-bounded enumeration achieving a `k/(k+2)` guarantee on split
//!   graphs ([`split`]),
//! - a greedy-domination + rooted quota Steiner tree pipeline for general
//!   graphs ([`steiner`]),
//! - an optimal cubic-time algorithm for interval graphs given a realization
//!   ([`interval`]),
//! - instance generators, including a CNF-based family with analytically
//!   known optima ([`forge`]),
//! - plain-text instance and solution formats ([`io`]).
//!
//! All ratio comparisons are exact rational arithmetic; no solver decision
//! ever goes through floating point. With the default `parallel` feature the
//! heavy loops run on rayon; every solver also has a `_seq` variant that is
//! always sequential, and both variants return identical results.

pub mod enumerate;
pub mod forge;
pub mod graph;
pub mod interval;
pub mod io;
pub mod oracle;
mod par;
pub mod ratio;
pub mod split;
pub mod steiner;

pub use graph::{FeasibilityError, GraphError, RootedGraph, Solution, VertexSet};
pub use oracle::{solve_exact, surveillance_lower_bound, SolveError};
pub use ratio::Ratio;
