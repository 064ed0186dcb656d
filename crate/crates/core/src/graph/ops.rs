use std::collections::VecDeque;

use super::{Diameter, Graph, GraphError};
use crate::vertex_set::VertexSet;

/// Correspondence between the vertices of a graph and of an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    /// `old_to_new[v]` is `None` for deleted vertices.
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl Graph {
    /// Connected components of `G \ removed`, each as a vertex set of `G`,
    /// ordered by their minimum vertex.
    pub fn components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut unseen = removed.complement();
        let mut out = Vec::new();
        while let Some(start) = unseen.first() {
            let comp = self.reach(start, &unseen);
            unseen = unseen.difference(&comp);
            out.push(comp);
        }
        out
    }

    /// Number of connected components of `G \ removed` (ω in the literature).
    pub fn component_count(&self, removed: &VertexSet) -> usize {
        let mut unseen = removed.complement();
        let mut count = 0;
        while let Some(start) = unseen.first() {
            let comp = self.reach(start, &unseen);
            unseen = unseen.difference(&comp);
            count += 1;
        }
        count
    }

    /// Vertices reachable from `start` inside `allowed`.
    fn reach(&self, start: usize, allowed: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::new(self.n);
        comp.insert(start);
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            for w in self.rows[u].intersection(allowed).difference(&comp).iter() {
                comp.insert(w);
                frontier.push(w);
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_count(&self.empty_set()) == 1
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.rows[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Infinite,
                }
            }
        }
        Diameter::Finite(best)
    }

    /// `G_v`: adds every edge between two neighbours of `v`.
    pub fn cliquify(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let nbhd = &self.rows[v];
        let mut rows = self.rows.clone();
        for u in nbhd.iter() {
            rows[u].union_with(nbhd);
            rows[u].remove(u);
        }
        Ok(Graph::from_rows(rows).relabeled_like(self))
    }

    /// Induced subgraph on the complement of `removed`, compacted to `0..n'`
    /// in ascending order of the surviving vertices.
    pub fn delete(&self, removed: &VertexSet) -> (Graph, IndexMap) {
        let keep = removed.complement();
        let new_to_old = keep.to_vec();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let m = new_to_old.len();
        let rows = new_to_old
            .iter()
            .map(|&old| VertexSet::from_indices(m, self.rows[old].iter().filter_map(|w| old_to_new[w])))
            .collect();
        let mut g = Graph::from_rows(rows);
        if let Some(labels) = &self.labels {
            g.labels = Some(new_to_old.iter().map(|&o| labels[o].clone()).collect());
        }
        (g, IndexMap { old_to_new, new_to_old })
    }

    /// Block-diagonal union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self.edges().chain(other.edges().map(|(a, b)| (a + off, b + off)));
        let g = Graph::from_edges(self.n + other.n, edges).expect("union edges are valid");
        g.merge_labels(self, other, &[])
    }

    /// Disjoint union plus all edges between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n;
        let cross = (0..self.n).flat_map(|a| (0..other.n).map(move |b| (a, b + off)));
        let edges = self
            .edges()
            .chain(other.edges().map(|(a, b)| (a + off, b + off)))
            .chain(cross);
        let g = Graph::from_edges(self.n + other.n, edges).expect("join edges are valid");
        g.merge_labels(self, other, &[])
    }

    /// `v * G`: a new apex, index `n`, adjacent to every vertex.
    pub fn cone(&self) -> Graph {
        let g = self.join(&Graph::complete(1));
        match &self.labels {
            Some(l) => {
                let mut l = l.clone();
                l.push("apex".into());
                g.with_labels(l).expect("label count matches")
            }
            None => g,
        }
    }

    /// Vertices whose neighbourhood induces a clique.
    pub fn simplicial_vertices(&self) -> VertexSet {
        VertexSet::from_indices(self.n, (0..self.n).filter(|&v| self.is_clique(&self.rows[v])))
    }

    /// Number of non-simplicial vertices.
    pub fn internal_vertex_count(&self) -> usize {
        self.n - self.simplicial_vertices().len()
    }

    fn relabeled_like(mut self, src: &Graph) -> Graph {
        self.labels = src.labels.clone();
        self
    }

    fn merge_labels(self, a: &Graph, b: &Graph, extra: &[String]) -> Graph {
        if a.labels.is_none() && b.labels.is_none() {
            return self;
        }
        let mut labels: Vec<String> = (0..a.n).map(|v| a.label(v)).collect();
        labels.extend((0..b.n).map(|v| b.label(v)));
        labels.extend(extra.iter().cloned());
        self.with_labels(labels).expect("label count matches")
    }
}
