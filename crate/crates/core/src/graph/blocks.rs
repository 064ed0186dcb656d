use serde::Serialize;

use super::{Graph, GraphError};
use crate::vertex_set::VertexSet;

/// Biconnected components of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Blocks sorted by their ascending vertex lists.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// Every block is a clique, every cut vertex lies in exactly two blocks,
    /// and the blocks form a chain in which only neighbours intersect.
    pub is_clique_path: bool,
    /// Indices into `blocks` along the chain, when `is_clique_path`.
    pub block_order: Option<Vec<usize>>,
}

impl BlockDecomposition {
    /// Every block is complete.
    pub fn is_block_graph(&self, g: &Graph) -> bool {
        self.blocks.iter().all(|b| g.is_clique(b))
    }
}

impl Graph {
    pub fn block_decomposition(&self) -> Result<BlockDecomposition, GraphError> {
        if !self.is_connected() || self.n == 0 {
            return Err(GraphError::Disconnected);
        }
        let mut blocks = self.biconnected_components();
        blocks.sort_by(|a, b| a.iter().cmp(b.iter()));

        let mut membership = vec![0usize; self.n];
        for b in &blocks {
            for v in b.iter() {
                membership[v] += 1;
            }
        }
        let cut_vertices = VertexSet::from_indices(self.n, (0..self.n).filter(|&v| membership[v] >= 2));

        let block_order = self.clique_path_order(&blocks, &cut_vertices, &membership);
        Ok(BlockDecomposition {
            is_clique_path: block_order.is_some(),
            blocks,
            cut_vertices,
            block_order,
        })
    }

    /// Whether the graph is a Cohen-Macaulay closed graph, i.e. a chain of
    /// cliques glued consecutively at single vertices.
    pub fn is_cm_closed(&self) -> Result<bool, GraphError> {
        Ok(self.block_decomposition()?.is_clique_path)
    }

    /// Whether the graph is a connected block graph.
    pub fn is_block_graph(&self) -> bool {
        self.block_decomposition()
            .map(|d| d.is_block_graph(self))
            .unwrap_or(false)
    }

    fn clique_path_order(&self, blocks: &[VertexSet], cuts: &VertexSet, membership: &[usize]) -> Option<Vec<usize>> {
        if !blocks.iter().all(|b| self.is_clique(b)) {
            return None;
        }
        if cuts.iter().any(|v| membership[v] != 2) {
            return None;
        }
        let cuts_in: Vec<VertexSet> = blocks.iter().map(|b| b.intersection(cuts)).collect();
        if cuts_in.iter().any(|c| c.len() > 2) {
            return None;
        }
        // Block-cut tree is now a path; walk it from an end block.
        let start = (0..blocks.len()).find(|&i| cuts_in[i].len() <= 1)?;
        let mut order = vec![start];
        let mut used = vec![false; blocks.len()];
        used[start] = true;
        let mut cur = start;
        loop {
            let next = (0..blocks.len()).find(|&j| !used[j] && !cuts_in[cur].is_disjoint(&blocks[j]));
            match next {
                Some(j) => {
                    used[j] = true;
                    order.push(j);
                    cur = j;
                }
                None => break,
            }
        }
        (order.len() == blocks.len()).then_some(order)
    }

    /// Hopcroft–Tarjan biconnected components with an explicit DFS stack.
    fn biconnected_components(&self) -> Vec<VertexSet> {
        let n = self.n;
        let adj: Vec<Vec<usize>> = self.rows.iter().map(VertexSet::to_vec).collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut timer = 0;

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if adj[root].is_empty() {
                out.push(VertexSet::from_indices(n, [root]));
                disc[root] = timer;
                timer += 1;
                continue;
            }
            let mut vstack: Vec<usize> = vec![root];
            // (vertex, parent, next neighbour position)
            let mut call: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;

            while let Some(&mut (u, parent, ref mut pos)) = call.last_mut() {
                if *pos < adj[u].len() {
                    let w = adj[u][*pos];
                    *pos += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        vstack.push(w);
                        call.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    call.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] >= disc[parent] {
                            let mut block = VertexSet::new(n);
                            block.insert(parent);
                            while let Some(x) = vstack.pop() {
                                block.insert(x);
                                if x == u {
                                    break;
                                }
                            }
                            out.push(block);
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, v.iter().copied())
    }

    #[test]
    fn path_is_chain_of_edges() {
        let d = Graph::path(5).block_decomposition().unwrap();
        assert_eq!(d.blocks.len(), 4);
        assert!(d.is_clique_path);
        assert_eq!(d.cut_vertices, set(5, &[1, 2, 3]));
        assert_eq!(d.block_order, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn complete_graph_single_block() {
        let d = Graph::complete(4).block_decomposition().unwrap();
        assert_eq!(d.blocks, vec![VertexSet::full(4)]);
        assert!(d.is_clique_path);
        assert!(Graph::complete(1).is_cm_closed().unwrap());
    }

    #[test]
    fn star_is_not_cm_closed() {
        let d = Graph::star(3).block_decomposition().unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(!d.is_clique_path);
        assert!(d.is_block_graph(&Graph::star(3)));
    }

    #[test]
    fn cycle_is_one_non_clique_block() {
        let g = Graph::cycle(5);
        let d = g.block_decomposition().unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert!(!d.is_clique_path);
        assert!(!g.is_block_graph());
    }

    #[test]
    fn glued_triangles_chain() {
        // triangle 0-1-2, edge 2-3, triangle 3-4-5
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let d = g.block_decomposition().unwrap();
        assert!(d.is_clique_path);
        let order = d.block_order.unwrap();
        let ordered: Vec<_> = order.iter().map(|&i| d.blocks[i].to_vec()).collect();
        assert!(
            ordered == vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5]]
                || ordered == vec![vec![3, 4, 5], vec![2, 3], vec![0, 1, 2]]
        );
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(Graph::empty(2).block_decomposition(), Err(GraphError::Disconnected));
    }
}
