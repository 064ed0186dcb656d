//! Immutable simple graphs over contiguous vertex indices `0..n`.
//!
//! Adjacency is stored as one [`VertexSet`] row per vertex, so neighbourhood
//! tests and component searches are word-parallel.

mod blocks;
pub mod format;
pub(crate) mod iso;
mod ops;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::vertex_set::VertexSet;

pub use blocks::BlockDecomposition;
pub use iso::{is_isomorphic_small, is_isomorphic_with_bound, DEFAULT_ISO_BOUND};
pub use ops::IndexMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {n} vertices, above the configured bound of {bound}")]
    SizeBound { n: usize, bound: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Graph on `n` vertices with the given edges. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![VertexSet::new(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph { n, rows, labels: None })
    }

    /// Trusted constructor for rows that are already symmetric and loop-free.
    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Graph {
        debug_assert!(rows
            .iter()
            .enumerate()
            .all(|(u, r)| !r.contains(u) && r.iter().all(|v| rows[v].contains(u))));
        Graph {
            n: rows.len(),
            rows,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, ascending by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.rows[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Adjacency rows as 64-bit masks, or `None` above 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        self.rows.iter().map(VertexSet::to_mask).collect()
    }

    // --- named families ------------------------------------------------

    pub fn empty(n: usize) -> Graph {
        Graph::from_rows(vec![VertexSet::new(n); n])
    }

    pub fn complete(n: usize) -> Graph {
        let rows = (0..n)
            .map(|v| {
                let mut r = VertexSet::full(n);
                r.remove(v);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices; smaller `n` degrade to the path.
    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, edges).expect("cycle edges are valid")
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Graph {
        Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.len() + 1 == self.n)
    }

    /// Whether the induced subgraph on `set` is complete.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|u| {
            let mut need = set.clone();
            need.remove(u);
            need.is_subset(&self.rows[u])
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Largest BFS distance over all vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(k) => Some(k),
            Diameter::Infinite => None,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(k) => write!(f, "{k}"),
            Diameter::Infinite => write!(f, "inf"),
        }
    }
}

// Finite diameters serialize as integers, infinite as null.
impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}
