//! Isomorphism classes of small connected graphs.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding a vertex
//! with every nonempty neighbourhood; every connected graph has a non-cut
//! vertex, so this reaches all classes. Duplicates are removed with a
//! canonical code.

use std::collections::BTreeSet;

use crate::graph::iso::{canonical_code, decode};
use crate::graph::Graph;

/// Largest order [`connected_graphs`] will generate.
pub const MAX_CORPUS_ORDER: usize = 9;

/// All connected graphs on exactly `n` vertices up to isomorphism, in a
/// fixed order (ascending canonical code). `n = 0` yields nothing.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= MAX_CORPUS_ORDER,
        "corpus generation is limited to {MAX_CORPUS_ORDER} vertices"
    );
    let mut layer: BTreeSet<u64> = BTreeSet::new();
    if n == 0 {
        return Vec::new();
    }
    layer.insert(0);
    for k in 2..=n {
        let prev: Vec<Graph> = layer.iter().map(|&c| decode(k - 1, c)).collect();
        layer = prev
            .iter()
            .flat_map(|g| {
                (1u32..1 << (k - 1)).map(move |mask| {
                    let edges = g
                        .edges()
                        .chain((0..k - 1).filter(|i| mask >> i & 1 == 1).map(|i| (i, k - 1)));
                    canonical_code(&Graph::from_edges(k, edges).expect("valid"))
                })
            })
            .collect();
    }
    layer.into_iter().map(|c| decode(n, c)).collect()
}

/// Connected graphs on `1..=max_n` vertices, grouped by order.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}
