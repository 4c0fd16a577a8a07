//! Underlying graphs, orientations stored as push parity over a fixed
//! reference, and the basic digraph queries used by every other module.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported vertex count; vertex sets are single `u64` masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0}->{1}")]
    DuplicateEdge(usize, usize),
    #[error("arcs {0}->{1} and {1}->{0} form a 2-cycle")]
    TwoCycle(usize, usize),
    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex 0")]
    Disconnected { unreached: usize },
}

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A simple, connected, undirected graph with a canonical edge order.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; an
/// edge's position in that list is its index in every edge bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnderlyingGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    nbr: Vec<u64>,
}

impl UnderlyingGraph {
    /// Builds a graph from unordered pairs; rejects loops, repeated pairs,
    /// out-of-range vertices and disconnected inputs.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Self::new_unchecked_connectivity(n, pairs)?;
        if let Some(unreached) = g.first_unreached() {
            return Err(GraphError::Disconnected { unreached });
        }
        Ok(g)
    }

    /// Like [`UnderlyingGraph::new`] but accepts disconnected graphs. Only used
    /// by enumeration code that filters connectivity itself.
    pub(crate) fn new_unchecked_connectivity(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut nbr = vec![0u64; n];
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if nbr[a] >> b & 1 == 1 {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            nbr[a] |= 1 << b;
            nbr[b] |= 1 << a;
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        Ok(UnderlyingGraph { n, edges, nbr })
    }

    fn first_unreached(&self) -> Option<usize> {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier).iter() {
                next |= self.nbr[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        let missing = full_mask(self.n) & !seen;
        (missing != 0).then(|| missing.trailing_zeros() as usize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.nbr[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbr[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.nbr[u] >> v & 1 == 1
    }

    /// Index of edge `{u, v}` in the canonical order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub(crate) fn neighbor_masks(&self) -> &[u64] {
        &self.nbr
    }

    /// BFS distances over the underlying graph.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v).iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from `from` to the nearest vertex of `targets`, ties
    /// broken towards lower vertex ids. Includes both endpoints.
    pub fn shortest_path_to(&self, from: usize, targets: VertexSet) -> Option<Vec<usize>> {
        if targets.contains(from) {
            return Some(vec![from]);
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v).iter() {
                if parent[w] != usize::MAX {
                    continue;
                }
                parent[w] = v;
                if targets.contains(w) {
                    let mut path = vec![w];
                    let mut cur = w;
                    while cur != from {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// BFS spanning tree rooted at 0: `parent[v]` for every `v != 0`, plus the
    /// BFS visiting order.
    pub(crate) fn bfs_tree(&self) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n];
        parent[0] = 0;
        let mut order = vec![0];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in self.neighbors(v).iter() {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        (parent, order)
    }
}

/// Reference arc directions for every edge of a graph, with the derived
/// per-vertex out-neighbour masks.
#[derive(Debug, PartialEq, Eq, Hash)]
struct Reference {
    /// `true` means edge `(u, v)`, `u < v`, points `v -> u`.
    reversed: Vec<bool>,
    out: Vec<u64>,
}

impl Reference {
    fn new(graph: &UnderlyingGraph, reversed: Vec<bool>) -> Self {
        let mut out = vec![0u64; graph.n()];
        for (&(u, v), &rev) in graph.edges().iter().zip(&reversed) {
            if rev {
                out[v] |= 1 << u;
            } else {
                out[u] |= 1 << v;
            }
        }
        Reference { reversed, out }
    }
}

/// Orientation of a fixed graph: reference directions XOR push parity.
///
/// Edge `(u, v)` currently points against its reference direction iff
/// `parity[u] ^ parity[v]`. `parity` bit 0 is always clear: pushing every
/// vertex is the identity, so each orientation has exactly one such parity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    reference: Arc<Reference>,
    parity: u64,
}

/// An oriented graph: shared immutable structure plus a small orientation.
#[derive(Clone)]
pub struct OrientedGraph {
    graph: Arc<UnderlyingGraph>,
    orientation: Orientation,
}

/// Flip the parity of `v` and renormalise so vertex 0 has parity 0.
pub(crate) fn push_parity(parity: u64, v: usize, n: usize) -> u64 {
    normalize_parity(parity ^ (1 << v), n)
}

pub(crate) fn normalize_parity(parity: u64, n: usize) -> u64 {
    if parity & 1 == 1 {
        !parity & full_mask(n)
    } else {
        parity
    }
}

/// Current out-neighbour mask of `v` given reference out-masks and a parity.
#[inline]
pub(crate) fn out_mask_with(ref_out: u64, nbr: u64, parity: u64, v: usize) -> u64 {
    let flip = if parity >> v & 1 == 1 { !parity } else { parity };
    ref_out ^ (nbr & flip)
}

impl OrientedGraph {
    /// Validates an arc list: simple, loop-free, no 2-cycles, connected.
    /// The input arcs become the reference orientation; parity starts at 0.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut seen = vec![0u64; n];
        for &(a, b) in arcs {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if seen[a] >> b & 1 == 1 {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            if seen[b] >> a & 1 == 1 {
                return Err(GraphError::TwoCycle(b, a));
            }
            seen[a] |= 1 << b;
        }
        let graph = UnderlyingGraph::new(n, arcs)?;
        let reversed = graph.edges().iter().map(|&(u, v)| seen[v] >> u & 1 == 1).collect();
        Ok(Self::with_reference(Arc::new(graph), reversed))
    }

    /// Orientation of `graph` given per-edge reversal bits in canonical order.
    pub fn from_edge_bits(graph: Arc<UnderlyingGraph>, reversed: Vec<bool>) -> Self {
        assert_eq!(reversed.len(), graph.m(), "one direction bit per edge");
        Self::with_reference(graph, reversed)
    }

    /// The orientation pointing every edge from its lower to its higher id.
    pub fn ascending(graph: Arc<UnderlyingGraph>) -> Self {
        let m = graph.m();
        Self::with_reference(graph, vec![false; m])
    }

    fn with_reference(graph: Arc<UnderlyingGraph>, reversed: Vec<bool>) -> Self {
        let reference = Arc::new(Reference::new(&graph, reversed));
        OrientedGraph { graph, orientation: Orientation { reference, parity: 0 } }
    }

    pub fn graph(&self) -> &UnderlyingGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<UnderlyingGraph> {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// Push parity relative to the reference; bit 0 is always clear.
    pub fn parity(&self) -> u64 {
        self.orientation.parity
    }

    /// Dense index of this orientation inside its push class.
    pub fn class_index(&self) -> u64 {
        self.orientation.parity >> 1
    }

    /// The member of this push class with the given dense index.
    pub fn with_class_index(&self, index: u64) -> Self {
        debug_assert!(index < self.push_class().size());
        self.with_parity(index << 1)
    }

    pub(crate) fn with_parity(&self, parity: u64) -> Self {
        OrientedGraph {
            graph: Arc::clone(&self.graph),
            orientation: Orientation {
                reference: Arc::clone(&self.orientation.reference),
                parity: normalize_parity(parity, self.n()),
            },
        }
    }

    pub(crate) fn reference_out(&self) -> &[u64] {
        &self.orientation.reference.out
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Reverses every arc incident to `v`.
    pub fn push(&self, v: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        Ok(self.with_parity(push_parity(self.parity(), v, self.n())))
    }

    /// Pushes every vertex of `set` once.
    pub fn push_set(&self, set: VertexSet) -> Self {
        self.with_parity(self.parity() ^ set.0)
    }

    pub fn apply(&self, seq: &PushSequence) -> Result<Self, GraphError> {
        for &v in seq.vertices() {
            self.check(v)?;
        }
        Ok(self.push_set(seq.parity_set()))
    }

    /// Out-neighbours of `v`. Panics if `v` is out of range.
    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet(out_mask_with(self.reference_out()[v], self.graph.neighbor_masks()[v], self.parity(), v))
    }

    pub fn in_set(&self, v: usize) -> VertexSet {
        VertexSet(self.graph.neighbor_masks()[v] & !self.out_set(v).0)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_set(v).len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_set(v).len()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        from < self.n() && self.out_set(from).contains(to)
    }

    /// `(out-neighbours, in-neighbours)` of `v`.
    pub fn neighborhoods(&self, v: usize) -> Result<(VertexSet, VertexSet), GraphError> {
        self.check(v)?;
        Ok((self.out_set(v), self.in_set(v)))
    }

    /// Current direction of every edge, in canonical edge order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.graph.edges().iter().map(|&(u, v)| if self.has_arc(u, v) { (u, v) } else { (v, u) }).collect()
    }

    /// Per-edge reversal bits (relative to `u < v`) of the current orientation.
    pub fn edge_bits(&self) -> Vec<bool> {
        self.graph.edges().iter().map(|&(u, v)| !self.has_arc(u, v)).collect()
    }

    pub fn is_dag(&self) -> DagCheck {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for w in self.out_set(v).iter() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() == n {
            return DagCheck::Acyclic(order);
        }
        // Every leftover vertex has an in-neighbour among the leftovers, so
        // walking backwards must close a cycle.
        let placed: VertexSet = order.iter().copied().collect();
        let remaining = VertexSet(full_mask(n) & !placed.0);
        let start = remaining.min().expect("leftover vertices exist");
        let mut pos_in_walk = vec![usize::MAX; n];
        let mut walk = Vec::new();
        let mut cur = start;
        while pos_in_walk[cur] == usize::MAX {
            pos_in_walk[cur] = walk.len();
            walk.push(cur);
            cur = (self.in_set(cur) & remaining).min().expect("leftover vertex has a leftover in-neighbour");
        }
        let mut cycle: Vec<usize> = walk[pos_in_walk[cur]..].to_vec();
        cycle.reverse();
        let min_pos = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
        cycle.rotate_left(min_pos);
        DagCheck::Cyclic(cycle)
    }

    pub fn is_acyclic(&self) -> bool {
        matches!(self.is_dag(), DagCheck::Acyclic(_))
    }

    /// Vertices reachable from `u` along arcs, `u` included.
    pub fn reachable_from(&self, u: usize) -> Result<VertexSet, GraphError> {
        self.check(u)?;
        Ok(self.reach(VertexSet::singleton(u)))
    }

    pub(crate) fn reach(&self, start: VertexSet) -> VertexSet {
        let mut seen = start;
        let mut frontier = start;
        while !frontier.is_empty() {
            let mut next = 0;
            for v in frontier.iter() {
                next |= self.out_set(v).0;
            }
            frontier = VertexSet(next & !seen.0);
            seen = VertexSet(seen.0 | next);
        }
        seen
    }

    pub fn is_trapped(&self, v: usize) -> Result<bool, GraphError> {
        self.check(v)?;
        Ok(self.out_set(v).is_empty())
    }

    /// True iff `set` is contained in the closed out-neighbourhood of `v`.
    pub fn is_source_in(&self, v: usize, set: VertexSet) -> Result<bool, GraphError> {
        self.check(v)?;
        if let Some(bad) = set.iter().find(|&w| w >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n() });
        }
        let closed = self.out_set(v) | VertexSet::singleton(v);
        Ok(set.is_subset(closed))
    }

    pub fn is_dominating(&self, v: usize) -> bool {
        self.out_set(v).len() + 1 == self.n()
    }

    pub fn sources(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.in_set(v).is_empty()).collect()
    }

    pub fn push_class(&self) -> PushClass {
        PushClass { vertices: self.n() }
    }

    /// Class representative: the member whose BFS-tree edges (rooted at 0)
    /// all point from parent to child.
    pub fn class_representative(&self) -> OrientedGraph {
        let (parent, order) = self.graph.bfs_tree();
        let mut g = self.clone();
        for &c in order.iter().skip(1) {
            if !g.has_arc(parent[c], c) {
                g = g.push_set(VertexSet::singleton(c));
            }
        }
        g
    }

    /// Identifier of this orientation's push class among all `2^(m-n+1)`
    /// classes of the underlying graph: the direction bits of the non-tree
    /// edges of the class representative, in canonical edge order.
    pub fn class_id(&self) -> u64 {
        let rep = self.class_representative();
        let (parent, _) = self.graph.bfs_tree();
        let mut id = 0u64;
        let mut bit = 0;
        for (&(u, v), rev) in self.graph.edges().iter().zip(rep.edge_bits()) {
            if parent[v] == u || parent[u] == v {
                continue;
            }
            if rev {
                id |= 1 << bit;
            }
            bit += 1;
        }
        id
    }

    /// Same underlying graph and same current arcs.
    pub fn same_arcs(&self, other: &OrientedGraph) -> bool {
        self.graph == other.graph && (0..self.n()).all(|v| self.out_set(v) == other.out_set(v))
    }

    /// True when `other` orients the same graph with the same reference, so
    /// class indices are comparable.
    pub fn same_frame(&self, other: &OrientedGraph) -> bool {
        self.graph == other.graph && self.orientation.reference == other.orientation.reference
    }
}

impl PartialEq for OrientedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.same_arcs(other)
    }
}

impl Eq for OrientedGraph {}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n(), self.arcs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DagCheck {
    /// Topological order, smallest available id first.
    Acyclic(Vec<usize>),
    /// A directed cycle starting at its smallest vertex.
    Cyclic(Vec<usize>),
}

/// The set of orientations reachable by pushes from a given one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushClass {
    vertices: usize,
}

impl PushClass {
    /// `2^(n-1)` for a connected graph.
    pub fn size(&self) -> u64 {
        1u64 << (self.vertices - 1)
    }

    pub fn index_of_parity(&self, parity: u64) -> u64 {
        normalize_parity(parity, self.vertices) >> 1
    }

    pub fn parity_of_index(&self, index: u64) -> u64 {
        index << 1
    }
}

/// An ordered list of vertices to push.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PushSequence(Vec<usize>);

impl PushSequence {
    pub fn new(vertices: Vec<usize>) -> Self {
        PushSequence(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, other: &PushSequence) {
        self.0.extend_from_slice(&other.0);
    }

    /// XOR of the characteristic vectors: the vertices pushed an odd number
    /// of times.
    pub fn parity_set(&self) -> VertexSet {
        VertexSet(self.0.iter().fold(0u64, |acc, &v| acc ^ (1 << v)))
    }

    /// Ascending list of the odd-count vertices.
    pub fn reduced(&self) -> PushSequence {
        PushSequence(self.parity_set().to_vec())
    }
}

impl fmt::Display for PushSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}
