//! Exact tools for k-critical graphs.
//!
//! A graph is k-critical when its chromatic number is k and deleting any edge
//! makes it (k-1)-colorable. This crate provides the machinery to work with
//! such graphs at desk scale, all of it exact:
//!
//! * [`graph`] — dense bitset graphs, graph6 serialization, structural queries
//!   (cliques, triangles, heavy edges / 2-paths / 4-cycles);
//! * [`coloring`] — a complete branch-and-bound k-colorability solver and
//!   chromatic number computation with certificates;
//! * [`criticality`] — criticality verdicts with per-edge coloring evidence,
//!   and extraction of k-critical cores;
//! * [`constructions`] — the classical dense critical graphs (Toft, Dirac
//!   join, Turán, odd cycles, wheels) plus small helpers;
//! * [`witness`] — the recoloring lemma as an executable witness extractor:
//!   induced matchings between a common neighborhood W and a partner set W';
//! * [`extremal`] — exact evaluation of the known upper/lower bounds on the
//!   maximum edge count of k-critical graphs, and inequality checkers;
//! * [`search`] — canonical forms and isomorph-free exhaustive enumeration of
//!   k-critical graphs at small n, giving the extremal function exactly.
//!
//! Everything is deterministic: identical inputs produce identical outputs,
//! including tie-breaks in all maximizer searches.

pub mod coloring;
pub mod constructions;
pub mod criticality;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod witness;

pub use coloring::Coloring;
pub use graph::Graph;

/// Serialize a [`Graph`] field as its graph6 string.
pub(crate) fn serde_graph6<S: serde::Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_graph6())
}
