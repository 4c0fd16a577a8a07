use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use proptest::prelude::*;
use pushcops::format::{read_oriented, write_arc_list};
use pushcops::generators::{enumerate_connected_graphs, random_connected_graph, random_orientation};
use pushcops::graph::{OrientedGraph, PushSequence, VertexSet};

/// A random connected oriented graph on 1..=10 vertices.
fn oriented() -> impl Strategy<Value = OrientedGraph> {
    (1usize..=10, 0.0f64..0.7, any::<u64>(), any::<u64>()).prop_map(|(n, p, gs, os)| {
        let g = Arc::new(random_connected_graph(n, p, gs).unwrap());
        random_orientation(g, os)
    })
}

fn arc_set(og: &OrientedGraph) -> HashSet<(usize, usize)> {
    og.arcs().into_iter().collect()
}

/// Reverses every arc touching `v`, on plain arc lists.
fn naive_push(arcs: &HashSet<(usize, usize)>, v: usize) -> HashSet<(usize, usize)> {
    arcs.iter().map(|&(a, b)| if a == v || b == v { (b, a) } else { (a, b) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn push_is_an_involution(og in oriented(), v in 0usize..10) {
        let v = v % og.n();
        prop_assert_eq!(og.push(v).unwrap().push(v).unwrap(), og);
    }

    #[test]
    fn pushes_commute(og in oriented(), u in 0usize..10, v in 0usize..10) {
        let (u, v) = (u % og.n(), v % og.n());
        prop_assert_eq!(og.push(u).unwrap().push(v).unwrap(), og.push(v).unwrap().push(u).unwrap());
    }

    #[test]
    fn pushing_everything_is_identity(og in oriented()) {
        prop_assert_eq!(og.push_set(VertexSet::full(og.n())), og.clone());
        let all = PushSequence::new((0..og.n()).collect());
        prop_assert_eq!(og.apply(&all).unwrap(), og);
    }

    #[test]
    fn parity_formula_matches_naive_flips(og in oriented(), seq in proptest::collection::vec(0usize..10, 0..12)) {
        let seq: Vec<usize> = seq.into_iter().map(|v| v % og.n()).collect();
        let mut arcs = arc_set(&og);
        for &v in &seq {
            arcs = naive_push(&arcs, v);
        }
        let pushed = og.apply(&PushSequence::new(seq.clone())).unwrap();
        prop_assert_eq!(arc_set(&pushed), arcs);
        // The reduced sequence has the same effect.
        prop_assert_eq!(og.apply(&PushSequence::new(seq).reduced()).unwrap(), pushed);
    }

    #[test]
    fn degrees_are_conserved(og in oriented(), v in 0usize..10) {
        let p = og.push(v % og.n()).unwrap();
        let mut total = 0;
        for w in 0..og.n() {
            prop_assert_eq!(p.out_degree(w) + p.in_degree(w), og.graph().degree(w));
            prop_assert_eq!(p.out_set(w) | p.in_set(w), og.graph().neighbors(w));
            total += p.out_degree(w);
        }
        prop_assert_eq!(total, og.m());
    }

    #[test]
    fn arc_list_round_trips(og in oriented()) {
        let back = read_oriented(&write_arc_list(&og)).unwrap();
        prop_assert_eq!(arc_set(&back), arc_set(&og));
    }

    #[test]
    fn class_index_stays_in_range(og in oriented(), seq in proptest::collection::vec(0usize..10, 0..12)) {
        let seq: Vec<usize> = seq.into_iter().map(|v| v % og.n()).collect();
        let p = og.apply(&PushSequence::new(seq)).unwrap();
        prop_assert!(p.class_index() < og.push_class().size());
        prop_assert_eq!(p.class_id(), og.class_id());
        prop_assert!(p.same_arcs(&og.with_class_index(p.class_index())));
    }

    #[test]
    fn dag_witnesses_are_valid(og in oriented()) {
        match og.is_dag() {
            pushcops::graph::DagCheck::Acyclic(order) => {
                let mut pos = vec![0; og.n()];
                for (i, &v) in order.iter().enumerate() {
                    pos[v] = i;
                }
                prop_assert_eq!(order.len(), og.n());
                for (a, b) in og.arcs() {
                    prop_assert!(pos[a] < pos[b]);
                }
            }
            pushcops::graph::DagCheck::Cyclic(cycle) => {
                prop_assert!(cycle.len() >= 3);
                for i in 0..cycle.len() {
                    prop_assert!(og.has_arc(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
        }
    }

    #[test]
    fn reachability_is_closed(og in oriented(), u in 0usize..10) {
        let u = u % og.n();
        let r = og.reachable_from(u).unwrap();
        prop_assert!(r.contains(u));
        for w in r.iter() {
            prop_assert!(og.out_set(w).is_subset(r));
        }
    }
}

/// Breadth-first search over single pushes visits exactly `2^(n-1)` arc sets.
#[test]
fn push_class_size_by_search() {
    for seed in 0..20u64 {
        let n = 2 + (seed as usize % 6);
        let g = Arc::new(random_connected_graph(n, 0.4, seed).unwrap());
        let start = random_orientation(g, seed + 100);
        let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start.arcs());
        while let Some(og) = queue.pop_front() {
            for v in 0..n {
                let p = og.push(v).unwrap();
                if seen.insert(p.arcs()) {
                    queue.push_back(p);
                }
            }
        }
        assert_eq!(seen.len() as u64, start.push_class().size(), "n = {n}");
    }
}

/// Counts by a second, independent method: union-find connectivity over
/// every edge subset of `K_n`.
fn recount_connected(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut count = 0;
    for mask in 0u32..1 << pairs.len() {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        if (0..n).all(|v| find(&mut parent, v) == root) {
            count += 1;
        }
    }
    count
}

#[test]
fn connected_graph_counts() {
    // Labeled connected graphs: 1, 1, 4, 38, 728.
    let frozen = [1, 1, 4, 38, 728];
    for n in 1..=5 {
        let ours = enumerate_connected_graphs(n, usize::MAX).unwrap().count();
        assert_eq!(ours, frozen[n - 1]);
        assert_eq!(ours, recount_connected(n));
    }
}

#[test]
fn small_graph_examples() {
    let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let pushed = tri.push(0).unwrap();
    assert_eq!(arc_set(&pushed), HashSet::from([(1, 0), (1, 2), (0, 2)]));
    assert_eq!(pushed.is_dag(), pushcops::graph::DagCheck::Acyclic(vec![1, 0, 2]));
    assert_eq!(tri.is_dag(), pushcops::graph::DagCheck::Cyclic(vec![0, 1, 2]));
    assert_eq!(tri.neighborhoods(1).unwrap(), (VertexSet::singleton(2), VertexSet::singleton(0)));
    let p1 = tri.push(1).unwrap();
    assert_eq!(arc_set(&p1), HashSet::from([(1, 0), (2, 1), (2, 0)]));
    assert_eq!(p1.neighborhoods(1).unwrap(), (VertexSet::singleton(0), VertexSet::singleton(2)));
    assert_eq!(pushed.reachable_from(1).unwrap(), VertexSet::full(3));
    assert_eq!(pushed.reachable_from(2).unwrap(), VertexSet::singleton(2));
    assert!(pushed.is_trapped(2).unwrap());
    assert!(!pushed.is_trapped(1).unwrap());
    assert!(!tri.is_source_in(0, [1, 2].into_iter().collect()).unwrap());
    assert_eq!(tri.push_class().size(), 4);
    assert!(OrientedGraph::from_arcs(2, &[(0, 1), (1, 0)]).is_err());
    assert!(OrientedGraph::from_arcs(4, &[(0, 1), (2, 3)]).is_err());
}
