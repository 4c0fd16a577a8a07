//! Pushing DAGs towards a single source, and brute-force DAG pushability.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{full_mask, OrientedGraph, PushSequence, VertexSet};

/// Largest vertex count accepted by [`find_dag_push_set`].
pub const DAG_SEARCH_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PushDagError {
    #[error("orientation contains a directed cycle")]
    NotADag,
    #[error("vertex {0} is not a source")]
    NotASource(usize),
    #[error("every vertex is already reachable from {0}")]
    AlreadyFullyReachable(usize),
    #[error("{0} vertices is above the exhaustive search cap of {DAG_SEARCH_MAX_VERTICES}")]
    TooLarge(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// Split of the vertex set by reachability from a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityPartition {
    pub source: usize,
    pub reachable: VertexSet,
    pub unreachable: VertexSet,
    /// Unreachable vertices with an out-neighbour among the reachable ones.
    pub frontier: VertexSet,
}

impl ReachabilityPartition {
    pub fn of(og: &OrientedGraph, source: usize) -> Self {
        let reachable = og.reach(VertexSet::singleton(source));
        let unreachable = VertexSet(full_mask(og.n()) & !reachable.0);
        let frontier = unreachable.iter().filter(|&y| !(og.out_set(y) & reachable).is_empty()).collect();
        ReachabilityPartition { source, reachable, unreachable, frontier }
    }
}

/// Pushes every vertex not reachable from the source `u`.
///
/// In a DAG this keeps the graph acyclic and `u` a source, keeps everything
/// reachable, and makes the frontier reachable as well.
pub fn extend_reachability(og: &OrientedGraph, u: usize) -> Result<PushSequence, PushDagError> {
    if u >= og.n() {
        return Err(PushDagError::VertexOutOfRange(u));
    }
    if !og.is_acyclic() {
        return Err(PushDagError::NotADag);
    }
    if !og.in_set(u).is_empty() {
        return Err(PushDagError::NotASource(u));
    }
    let part = ReachabilityPartition::of(og, u);
    if part.unreachable.is_empty() {
        return Err(PushDagError::AlreadyFullyReachable(u));
    }
    Ok(PushSequence::new(part.unreachable.to_vec()))
}

/// Result of [`normalize_single_source`].
#[derive(Debug, Clone)]
pub struct Normalized {
    pub graph: OrientedGraph,
    pub pushes: PushSequence,
    pub source: usize,
    pub rounds: usize,
}

/// Repeats [`extend_reachability`] from the lowest-id source until that
/// source reaches every vertex.
pub fn normalize_single_source(og: &OrientedGraph) -> Result<Normalized, PushDagError> {
    if !og.is_acyclic() {
        return Err(PushDagError::NotADag);
    }
    let source = og.sources().min().expect("a DAG has a source");
    let mut graph = og.clone();
    let mut pushes = PushSequence::default();
    let mut rounds = 0;
    loop {
        match extend_reachability(&graph, source) {
            Ok(step) => {
                graph = graph.push_set(step.parity_set());
                pushes.extend(&step);
                rounds += 1;
            }
            Err(PushDagError::AlreadyFullyReachable(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(Normalized { graph, pushes, source, rounds })
}

/// Acyclicity on raw out-masks by repeatedly peeling sinks.
pub(crate) fn masks_acyclic(out: &[u64]) -> bool {
    let mut remaining = full_mask(out.len());
    loop {
        let mut sinks = 0u64;
        for v in VertexSet(remaining).iter() {
            if out[v] & remaining == 0 {
                sinks |= 1 << v;
            }
        }
        if sinks == 0 {
            return remaining == 0;
        }
        remaining &= !sinks;
    }
}

/// Searches the push class for an acyclic member.
///
/// Among all vertex sets whose push yields a DAG, returns the one whose
/// sorted vertex list is lexicographically smallest: the empty set when the
/// graph is already acyclic, otherwise a set containing vertex 0.
pub fn find_dag_push_set(og: &OrientedGraph) -> Result<Option<PushSequence>, PushDagError> {
    let n = og.n();
    if n > DAG_SEARCH_MAX_VERTICES {
        return Err(PushDagError::TooLarge(n));
    }
    if og.is_acyclic() {
        return Ok(Some(PushSequence::default()));
    }
    let base = og.parity();
    let size = og.push_class().size();
    let full = full_mask(n);
    // `t << 1` is a set without vertex 0; its complement is the same push and
    // contains 0, so it always sorts first.
    let candidate = |t: u64| -> Option<Vec<usize>> {
        let g = og.with_parity(base ^ (t << 1));
        let out: Vec<u64> = (0..n).map(|v| g.out_set(v).0).collect();
        masks_acyclic(&out).then(|| VertexSet(full & !(t << 1)).to_vec())
    };
    let best = if size <= 1 << 12 {
        (1..size).filter_map(candidate).min()
    } else {
        (1..size).into_par_iter().filter_map(candidate).min()
    };
    Ok(best.map(PushSequence::new))
}
