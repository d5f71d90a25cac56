mod common;

use leafkernel::graph::{self, Graph, VertexSet};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn removal_keeps_invariants(g in arb_graph(9), pick in any::<prop::sample::Index>()) {
        let mut h = g.clone();
        let v = pick.index(g.vertex_count());
        let nbrs = h.remove_vertex(v).unwrap();
        prop_assert_eq!(nbrs.len(), g.degree(v));
        prop_assert!(h.check_invariants().is_ok());
        prop_assert_eq!(h.edge_count(), g.edge_count() - g.degree(v));
        prop_assert!(!h.contains(v));
    }

    #[test]
    fn blocks_partition_edges(g in arb_graph(9)) {
        let (blocks, cuts, bridges) = graph::blocks_from(&g, g.vertices());
        for (u, v) in g.edges() {
            let owners = blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(owners, 1);
        }
        for &(u, v) in &bridges {
            prop_assert!(blocks.iter().any(|b| b == &vec![u.min(v), u.max(v)]));
        }
        for v in g.vertices() {
            let before = graph::connected_components(&g).len();
            let after = graph::component_count_without(&g, &VertexSet::from([v]));
            prop_assert_eq!(cuts.contains(&v), after > before);
        }
    }

    #[test]
    fn nonseparating_matches_definition(g in arb_graph(8), mask in any::<u16>()) {
        let set: VertexSet = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        let rest: VertexSet = g.vertices().filter(|v| !set.contains(v)).collect();
        let expected = graph::is_independent(&g, &set) && (rest.is_empty() || graph::induces_connected(&g, &rest));
        prop_assert_eq!(graph::is_nonseparating_independent(&g, &set), expected);
    }

    #[test]
    fn induced_keeps_exactly_inner_edges(g in arb_graph(9), mask in any::<u16>()) {
        let keep: VertexSet = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        let (h, ids) = g.induced(&keep);
        prop_assert_eq!(h.vertex_count(), keep.len());
        let inner = g.edges().filter(|(u, v)| keep.contains(u) && keep.contains(v)).count();
        prop_assert_eq!(h.edge_count(), inner);
        for (a, b) in h.edges() {
            prop_assert!(g.has_edge(ids[a], ids[b]));
        }
    }
}

#[test]
fn fixture_graphs_are_connected() {
    let all = common::connected_le8();
    assert_eq!(all.len(), 12113);
    assert!(all.iter().all(|(g, _)| graph::is_connected(g)));
}
