use proptest::prelude::*;

use crate::graph::Graph;

/// Arbitrary simple graph on `1..=max_n` vertices.
pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let edges = pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| *e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Arbitrary connected graph: a random spanning tree plus random extra edges.
pub(crate) fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        (parents, proptest::collection::vec(any::<bool>(), m)).prop_map(move |(par, bits)| {
            let tree = par.into_iter().enumerate().map(|(i, p)| (p, i + 1));
            let extra = pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| *e);
            Graph::from_edges(n, tree.chain(extra)).unwrap()
        })
    })
}
