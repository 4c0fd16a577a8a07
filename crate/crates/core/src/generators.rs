//! Graph families, exhaustive enumeration and random orientations.
//!
//! Vertex numbering per family:
//! - `circulant(n, offsets)`: `i` is adjacent to `i ± o (mod n)`.
//! - `complete_multipartite(sizes)`: parts are numbered consecutively.
//! - `hypercube(d)`: vertices are `d`-bit words, adjacent when one bit differs.
//! - `grid(rows, cols)`: vertex `r * cols + c`.
//! - `path(n)`, `cycle(n)`: `0, 1, ..., n-1` in order.
//!
//! The reference orientation of a generated graph points every edge from the
//! lower to the higher id, except for `cycle` and `circulant`, where edge
//! `{i, i+o}` points `i -> i+o (mod n)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph, UnderlyingGraph, VertexSet};

pub const ENUMERATE_MAX_VERTICES: usize = 7;
pub const ENUMERATE_MAX_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("bad family parameters: {0}")]
    BadFamilyParams(String),
    #[error("too large to enumerate: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::BadFamilyParams(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Circulant { n: usize, offsets: Vec<usize> },
    CompleteMultipartite(Vec<usize>),
    Hypercube(usize),
    Grid { rows: usize, cols: usize },
    Octahedron,
    Complete(usize),
    Path(usize),
    Cycle(usize),
}

impl Family {
    /// Parses a family name with comma-separated integer parameters, e.g.
    /// `circulant` with `8,1,2` (n first, then offsets).
    pub fn parse(name: &str, params: &str) -> Result<Self, GeneratorError> {
        let nums: Vec<usize> = params
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad(format!("`{t}` is not a non-negative integer"))))
            .collect::<Result<_, _>>()?;
        let one = |what: &str| -> Result<usize, GeneratorError> {
            match nums.as_slice() {
                [v] => Ok(*v),
                _ => Err(bad(format!("{name} takes one parameter ({what})"))),
            }
        };
        Ok(match name {
            "circulant" => match nums.split_first() {
                Some((&n, offs)) if !offs.is_empty() => Family::Circulant { n, offsets: offs.to_vec() },
                _ => return Err(bad("circulant takes n followed by at least one offset")),
            },
            "complete_multipartite" | "multipartite" => {
                if nums.is_empty() {
                    return Err(bad("complete_multipartite takes the part sizes"));
                }
                Family::CompleteMultipartite(nums)
            }
            "hypercube" => Family::Hypercube(one("dimension")?),
            "grid" => match nums.as_slice() {
                [r, c] => Family::Grid { rows: *r, cols: *c },
                _ => return Err(bad("grid takes rows,cols")),
            },
            "octahedron" => {
                if !nums.is_empty() {
                    return Err(bad("octahedron takes no parameters"));
                }
                Family::Octahedron
            }
            "complete" => Family::Complete(one("n")?),
            "path" => Family::Path(one("n")?),
            "cycle" => Family::Cycle(one("n")?),
            other => return Err(bad(format!("unknown family `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Circulant { .. } => "circulant",
            Family::CompleteMultipartite(_) => "complete_multipartite",
            Family::Hypercube(_) => "hypercube",
            Family::Grid { .. } => "grid",
            Family::Octahedron => "octahedron",
            Family::Complete(_) => "complete",
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
        }
    }

    pub fn build(&self) -> Result<UnderlyingGraph, GeneratorError> {
        self.reference().map(|og| og.graph().clone())
    }

    /// The family's graph in its reference orientation.
    pub fn reference(&self) -> Result<OrientedGraph, GeneratorError> {
        match self {
            Family::Circulant { n, offsets } => circulant_oriented(*n, offsets),
            Family::CompleteMultipartite(parts) => ascending(complete_multipartite(parts)?),
            Family::Hypercube(d) => ascending(hypercube(*d)?),
            Family::Grid { rows, cols } => ascending(grid(*rows, *cols)?),
            Family::Octahedron => ascending(octahedron()),
            Family::Complete(n) => ascending(complete(*n)?),
            Family::Path(n) => ascending(path(*n)?),
            Family::Cycle(n) => circulant_oriented(*n, &[1]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Family::Circulant { n, offsets } => write!(f, "circulant({n};{})", list(offsets)),
            Family::CompleteMultipartite(p) => write!(f, "complete_multipartite({})", list(p)),
            Family::Hypercube(d) => write!(f, "hypercube({d})"),
            Family::Grid { rows, cols } => write!(f, "grid({rows},{cols})"),
            Family::Octahedron => write!(f, "octahedron"),
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Path(n) => write!(f, "path({n})"),
            Family::Cycle(n) => write!(f, "cycle({n})"),
        }
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    /// `name` or `name:params`, e.g. `circulant:8,1,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((name, params)) => Family::parse(name.trim(), params),
            None => Family::parse(s.trim(), ""),
        }
    }
}

fn ascending(g: UnderlyingGraph) -> Result<OrientedGraph, GeneratorError> {
    Ok(OrientedGraph::ascending(Arc::new(g)))
}

fn circulant_arcs(n: usize, offsets: &[usize]) -> Result<Vec<(usize, usize)>, GeneratorError> {
    if n < 3 {
        return Err(bad("circulant needs n >= 3"));
    }
    let mut seen = Vec::new();
    for &o in offsets {
        if o == 0 || 2 * o >= n {
            return Err(bad(format!("offset {o} must satisfy 0 < o < n/2 = {}", n as f64 / 2.0)));
        }
        if seen.contains(&o) {
            return Err(bad(format!("offset {o} repeated")));
        }
        seen.push(o);
    }
    Ok(offsets.iter().flat_map(|&o| (0..n).map(move |i| (i, (i + o) % n))).collect())
}

fn circulant_oriented(n: usize, offsets: &[usize]) -> Result<OrientedGraph, GeneratorError> {
    let arcs = circulant_arcs(n, offsets)?;
    Ok(OrientedGraph::from_arcs(n, &arcs)?)
}

pub fn circulant(n: usize, offsets: &[usize]) -> Result<UnderlyingGraph, GeneratorError> {
    Ok(circulant_oriented(n, offsets)?.graph().clone())
}

pub fn complete_multipartite(parts: &[usize]) -> Result<UnderlyingGraph, GeneratorError> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(bad("complete_multipartite needs at least two non-empty parts"));
    }
    let mut part_of = Vec::new();
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let n = part_of.len();
    let pairs: Vec<_> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| part_of[u] != part_of[v]).collect();
    Ok(UnderlyingGraph::new(n, &pairs)?)
}

pub fn octahedron() -> UnderlyingGraph {
    complete_multipartite(&[2, 2, 2]).expect("valid parts")
}

pub fn hypercube(d: usize) -> Result<UnderlyingGraph, GeneratorError> {
    if d > 6 {
        return Err(bad("hypercube dimension above 6 exceeds 64 vertices"));
    }
    let n = 1usize << d;
    let pairs: Vec<_> = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
    Ok(UnderlyingGraph::new(n, &pairs)?)
}

pub fn grid(rows: usize, cols: usize) -> Result<UnderlyingGraph, GeneratorError> {
    if rows == 0 || cols == 0 {
        return Err(bad("grid needs positive dimensions"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(UnderlyingGraph::new(rows * cols, &pairs)?)
}

pub fn complete(n: usize) -> Result<UnderlyingGraph, GeneratorError> {
    if n == 0 {
        return Err(bad("complete graph needs n >= 1"));
    }
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(UnderlyingGraph::new(n, &pairs)?)
}

pub fn path(n: usize) -> Result<UnderlyingGraph, GeneratorError> {
    if n == 0 {
        return Err(bad("path needs n >= 1"));
    }
    let pairs: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Ok(UnderlyingGraph::new(n, &pairs)?)
}

pub fn cycle(n: usize) -> Result<UnderlyingGraph, GeneratorError> {
    circulant(n, &[1])
}

/// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Result<OrientedGraph, GeneratorError> {
    circulant_oriented(n, &[1])
}

/// All connected labeled graphs on `n` vertices with maximum degree at most
/// `max_degree`, in increasing order of their edge bitmask over the pairs of
/// `K_n` in lexicographic order.
pub fn enumerate_connected_graphs(
    n: usize,
    max_degree: usize,
) -> Result<impl Iterator<Item = UnderlyingGraph>, GeneratorError> {
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    if n > ENUMERATE_MAX_VERTICES {
        return Err(GeneratorError::TooLarge(format!("n = {n} > {ENUMERATE_MAX_VERTICES}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let mut deg = [0usize; ENUMERATE_MAX_VERTICES];
        let mut nbr = [0u64; ENUMERATE_MAX_VERTICES];
        let chosen: Vec<(usize, usize)> = VertexSet(mask).iter().map(|i| pairs[i]).collect();
        for &(u, v) in &chosen {
            deg[u] += 1;
            deg[v] += 1;
            nbr[u] |= 1 << v;
            nbr[v] |= 1 << u;
        }
        if deg[..n].iter().any(|&d| d > max_degree) {
            return None;
        }
        let full = (1u64 << n) - 1;
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier).iter() {
                next |= nbr[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        (seen & full == full).then(|| UnderlyingGraph::new(n, &chosen).expect("connected by construction"))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationMode {
    /// All `2^m` orientations.
    All,
    /// One per push class: the class representative.
    Classes,
}

/// Orientations of `g` by reversal mask relative to the ascending one.
pub fn enumerate_orientations(
    g: Arc<UnderlyingGraph>,
    mode: OrientationMode,
) -> Result<Box<dyn Iterator<Item = OrientedGraph>>, GeneratorError> {
    let m = g.m();
    if m > ENUMERATE_MAX_EDGES {
        return Err(GeneratorError::TooLarge(format!("m = {m} > {ENUMERATE_MAX_EDGES}")));
    }
    let base = OrientedGraph::ascending(g.clone());
    match mode {
        OrientationMode::All => {
            Ok(Box::new((0..1u64 << m).map(move |mask| {
                OrientedGraph::from_edge_bits(g.clone(), (0..m).map(|e| mask >> e & 1 == 1).collect())
            })))
        }
        OrientationMode::Classes => {
            let (parent, _) = g.bfs_tree();
            let non_tree: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| parent[v] != u && parent[u] != v)
                .map(|(e, _)| e)
                .collect();
            let rep = base.class_representative();
            let rep_bits = rep.edge_bits();
            Ok(Box::new((0..1u64 << non_tree.len()).map(move |id| {
                let mut bits = rep_bits.clone();
                for (j, &e) in non_tree.iter().enumerate() {
                    bits[e] = id >> j & 1 == 1;
                }
                OrientedGraph::from_edge_bits(g.clone(), bits)
            })))
        }
    }
}

/// Each edge independently uniform, reproducible from the seed.
pub fn random_orientation(g: Arc<UnderlyingGraph>, seed: u64) -> OrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits = (0..g.m()).map(|_| rng.gen::<bool>()).collect();
    OrientedGraph::from_edge_bits(g, bits)
}

/// Greedy minimum-degree peeling. Returns the peel order when every peeled
/// vertex had at most `k` remaining neighbours.
pub fn is_k_degenerate(g: &UnderlyingGraph, k: usize) -> (bool, Vec<usize>) {
    let n = g.n();
    let mut remaining = VertexSet::full(n);
    let mut order = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let v = remaining.iter().min_by_key(|&v| ((g.neighbors(v) & remaining).len(), v)).expect("non-empty");
        if (g.neighbors(v) & remaining).len() > k {
            return (false, order);
        }
        order.push(v);
        remaining.remove(v);
    }
    (true, order)
}

/// Checks a peel order: each vertex has at most `k` neighbours later in it.
pub fn check_degeneracy_witness(g: &UnderlyingGraph, k: usize, order: &[usize]) -> bool {
    let mut remaining = VertexSet::full(g.n());
    if order.len() != g.n() {
        return false;
    }
    for &v in order {
        if !remaining.contains(v) || (g.neighbors(v) & remaining).len() > k {
            return false;
        }
        remaining.remove(v);
    }
    true
}

/// A connected random graph: a random spanning tree plus each remaining pair
/// with probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Result<UnderlyingGraph, GeneratorError> {
    if n == 0 || n > 64 {
        return Err(bad("n must be in 1..=64"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !pairs.contains(&(u, v)) && rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Ok(UnderlyingGraph::new(n, &pairs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        let c8 = circulant(8, &[1, 2]).unwrap();
        assert_eq!((c8.n(), c8.m(), c8.regular_degree()), (8, 16, Some(4)));
        assert_eq!(octahedron().regular_degree(), Some(4));
        assert_eq!(octahedron().n(), 6);
        assert_eq!(hypercube(3).unwrap().regular_degree(), Some(3));
        assert_eq!(grid(2, 3).unwrap().m(), 7);
        assert_eq!(complete(5).unwrap().regular_degree(), Some(4));
        assert!(matches!(circulant(8, &[4]), Err(GeneratorError::BadFamilyParams(_))));
        assert!(matches!(circulant(8, &[1, 1]), Err(GeneratorError::BadFamilyParams(_))));
    }

    #[test]
    fn cycle_reference_is_directed() {
        let c = directed_cycle(4).unwrap();
        assert!(!c.is_acyclic());
        assert!((0..4).all(|v| c.out_set(v) == VertexSet::singleton((v + 1) % 4)));
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_connected_graphs(2, 4).unwrap().count(), 1);
        assert_eq!(enumerate_connected_graphs(3, 4).unwrap().count(), 4);
        assert!(matches!(enumerate_connected_graphs(8, 4), Err(GeneratorError::TooLarge(_))));
    }

    #[test]
    fn orientation_counts() {
        let tri = Arc::new(complete(3).unwrap());
        assert_eq!(enumerate_orientations(tri.clone(), OrientationMode::All).unwrap().count(), 8);
        assert_eq!(enumerate_orientations(tri, OrientationMode::Classes).unwrap().count(), 2);
        let k4 = Arc::new(complete(4).unwrap());
        let reps: Vec<_> = enumerate_orientations(k4, OrientationMode::Classes).unwrap().collect();
        assert_eq!(reps.len(), 8);
        let mut ids: Vec<u64> = reps.iter().map(|g| g.class_id()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 8);
    }

    #[test]
    fn random_orientation_is_seeded() {
        let g = Arc::new(complete(6).unwrap());
        assert_eq!(random_orientation(g.clone(), 3), random_orientation(g, 3));
    }

    #[test]
    fn degeneracy() {
        assert!(!is_k_degenerate(&octahedron(), 3).0);
        assert!(is_k_degenerate(&path(5).unwrap(), 1).0);
        let g = grid(3, 3).unwrap();
        let (ok, order) = is_k_degenerate(&g, 2);
        assert!(ok);
        assert!(check_degeneracy_witness(&g, 2, &order));
    }
}
