//! Cutset enumeration and the combinatorial decision procedures built on it.
//!
//! `T` is a cutset when it is empty or every `v ∈ T` touches at least two
//! components of `G \ T` (adding `v` back merges them). Simplicial vertices
//! never qualify, so the search runs over non-simplicial vertices only,
//! one 64-bit mask per candidate subset.

use std::collections::HashSet;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default cap on the vertex count accepted by the enumerator.
pub const DEFAULT_BOUND: usize = 24;

/// Masks are 64 bits wide, so no bound can exceed this.
pub const MAX_BOUND: usize = 64;

// Subsets are split across workers by their top bits.
const PREFIX_BITS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutsetError {
    #[error("graph has {n} vertices, above the enumeration bound of {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("vertex set over {got} vertices, graph has {expected}")]
    Capacity { expected: usize, got: usize },
    #[error("vertex set is not a cutset")]
    NotCutset,
}

/// Every cutset of a graph together with the verdicts derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetReport {
    pub n: usize,
    /// Sorted by size, then lexicographically.
    pub cutsets: Vec<VertexSet>,
    pub per_cutset_components: Vec<usize>,
    /// `ω(G)`.
    pub base_components: usize,
    /// `ω(G \ T) = |T| + ω(G)` for every listed cutset.
    pub is_unmixed: bool,
    /// First listed cutset breaking the unmixed count.
    pub unmixed_witness: Option<VertexSet>,
    pub is_accessible_system: bool,
    /// `|V| + max (ω(G \ T) − |T|)` over listed cutsets.
    pub oracle_dimension: usize,
    /// Set for disconnected graphs, where unmixedness uses `|T| + ω(G)`.
    pub extension: bool,
    /// Only cutsets up to this size were listed; verdicts cover those only.
    pub size_cap: Option<usize>,
}

impl CutsetReport {
    pub fn is_accessible(&self) -> bool {
        self.is_unmixed && self.is_accessible_system
    }

    /// One JSON object per cutset, one per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Line<'a> {
            cutset: &'a VertexSet,
            components: usize,
        }
        for (t, &c) in self.cutsets.iter().zip(&self.per_cutset_components) {
            serde_json::to_writer(
                &mut out,
                &Line {
                    cutset: t,
                    components: c,
                },
            )?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn check_bound(g: &Graph, bound: usize) -> Result<(), CutsetError> {
    let bound = bound.min(MAX_BOUND);
    if g.n() > bound {
        return Err(CutsetError::SizeBound { n: g.n(), bound });
    }
    Ok(())
}

fn check_capacity(g: &Graph, t: &VertexSet) -> Result<(), CutsetError> {
    if t.capacity() != g.n() {
        return Err(CutsetError::Capacity {
            expected: g.n(),
            got: t.capacity(),
        });
    }
    Ok(())
}

/// Whether `t` is a cutset of `g`. Entries of `t` beyond `g.n()` are ignored.
pub fn is_cutset(g: &Graph, t: &VertexSet) -> bool {
    if t.is_empty() {
        return true;
    }
    let removed = VertexSet::from_indices(g.n(), t.iter().filter(|&v| v < g.n()));
    let comps = g.components(&removed);
    removed
        .iter()
        .all(|v| comps.iter().filter(|c| !c.is_disjoint(g.neighbors(v))).take(2).count() == 2)
}

/// Mask-based view of a graph with at most 64 vertices.
struct MaskGraph {
    all: u64,
    adj: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let adj = g.adjacency_masks().expect("at most 64 vertices");
        let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        MaskGraph { all, adj }
    }

    fn components(&self, removed: u64, out: &mut Vec<u64>) {
        out.clear();
        let mut left = self.all & !removed;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                frontier = next & left & !comp;
                comp |= frontier;
            }
            left &= !comp;
            out.push(comp);
        }
    }

    /// `Some(ω(G \ t))` when `t` is a cutset.
    fn cutset_components(&self, t: u64, scratch: &mut Vec<u64>) -> Option<usize> {
        let outside = self.all & !t;
        let mut rest = t;
        // cheap necessary condition: two neighbours outside t
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[v] & outside).count_ones() < 2 {
                return None;
            }
        }
        self.components(t, scratch);
        let mut rest = t;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let touched = scratch.iter().filter(|&&c| c & self.adj[v] != 0).take(2).count();
            if touched < 2 {
                return None;
            }
        }
        Some(scratch.len())
    }
}

/// Spreads the low bits of `sub` over the positions listed in `cand`.
fn spread(sub: u64, cand: &[usize]) -> u64 {
    let mut mask = 0;
    let mut s = sub;
    while s != 0 {
        let i = s.trailing_zeros() as usize;
        s &= s - 1;
        mask |= 1u64 << cand[i];
    }
    mask
}

/// [`enumerate_cutsets_bounded`] with [`DEFAULT_BOUND`].
pub fn enumerate_cutsets(g: &Graph, size_cap: Option<usize>) -> Result<CutsetReport, CutsetError> {
    enumerate_cutsets_bounded(g, size_cap, DEFAULT_BOUND)
}

pub fn enumerate_cutsets_bounded(
    g: &Graph,
    size_cap: Option<usize>,
    bound: usize,
) -> Result<CutsetReport, CutsetError> {
    check_bound(g, bound)?;
    let mg = MaskGraph::new(g);
    let cand = g.simplicial_vertices().complement().to_vec();
    let k = cand.len();
    let cap = size_cap.unwrap_or(usize::MAX);
    let high = PREFIX_BITS.min(k);
    let low = k - high;

    let mut found: Vec<(u64, usize)> = (0u64..1 << high)
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut scratch = Vec::new();
            let mut local = Vec::new();
            for suffix in 0u64..1 << low {
                let sub = prefix << low | suffix;
                if sub.count_ones() as usize > cap {
                    continue;
                }
                let t = spread(sub, &cand);
                if t == 0 {
                    mg.components(0, &mut scratch);
                    local.push((0, scratch.len()));
                } else if let Some(c) = mg.cutset_components(t, &mut scratch) {
                    local.push((t, c));
                }
            }
            local
        })
        .collect();
    // Same size: the set with the smaller first differing vertex comes first,
    // which for masks means the larger bit-reversed value.
    found.sort_by(|a, b| {
        a.0.count_ones()
            .cmp(&b.0.count_ones())
            .then(b.0.reverse_bits().cmp(&a.0.reverse_bits()))
    });

    let base_components = found.first().map_or(0, |&(_, c)| c);
    let masks: HashSet<u64> = found.iter().map(|&(t, _)| t).collect();
    let mut unmixed_witness = None;
    let mut is_accessible_system = true;
    let mut best = i64::MIN;
    for &(t, c) in &found {
        let size = t.count_ones() as usize;
        if unmixed_witness.is_none() && c != size + base_components {
            unmixed_witness = Some(t);
        }
        best = best.max(c as i64 - size as i64);
        if t != 0 && is_accessible_system {
            let mut rest = t;
            let mut ok = false;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if masks.contains(&(t & !bit)) {
                    ok = true;
                    break;
                }
            }
            is_accessible_system = ok;
        }
    }

    let n = g.n();
    Ok(CutsetReport {
        n,
        cutsets: found.iter().map(|&(t, _)| VertexSet::from_mask(n, t)).collect(),
        per_cutset_components: found.iter().map(|&(_, c)| c).collect(),
        base_components,
        is_unmixed: unmixed_witness.is_none(),
        unmixed_witness: unmixed_witness.map(|t| VertexSet::from_mask(n, t)),
        is_accessible_system,
        oracle_dimension: (n as i64 + best) as usize,
        extension: base_components > 1,
        size_cap,
    })
}

pub fn is_unmixed(g: &Graph) -> Result<bool, CutsetError> {
    Ok(enumerate_cutsets(g, None)?.is_unmixed)
}

pub fn is_accessible_system(g: &Graph) -> Result<bool, CutsetError> {
    Ok(enumerate_cutsets(g, None)?.is_accessible_system)
}

pub fn is_accessible(g: &Graph) -> Result<bool, CutsetError> {
    Ok(enumerate_cutsets(g, None)?.is_accessible())
}

/// Krull dimension of the quotient by the binomial edge ideal, read off the
/// minimal primes: `|V| + max_{T ∈ 𝒞(G)} (ω(G \ T) − |T|)`.
pub fn dimension_oracle(g: &Graph) -> Result<usize, CutsetError> {
    Ok(enumerate_cutsets(g, None)?.oracle_dimension)
}

/// A removal order `t₁, t₂, …` such that `T`, `T \ t₁`, `T \ {t₁,t₂}`, …
/// are all cutsets, or `None` when no such order exists. Vertices are tried
/// in ascending order.
pub fn accessibility_witness_chain(g: &Graph, t: &VertexSet) -> Result<Option<Vec<usize>>, CutsetError> {
    accessibility_witness_chain_bounded(g, t, DEFAULT_BOUND)
}

pub fn accessibility_witness_chain_bounded(
    g: &Graph,
    t: &VertexSet,
    bound: usize,
) -> Result<Option<Vec<usize>>, CutsetError> {
    check_bound(g, bound)?;
    check_capacity(g, t)?;
    let mg = MaskGraph::new(g);
    let mask = t.to_mask().expect("within bound");
    let mut scratch = Vec::new();
    if mask != 0 && mg.cutset_components(mask, &mut scratch).is_none() {
        return Err(CutsetError::NotCutset);
    }
    let mut dead = HashSet::new();
    let mut chain = Vec::new();
    Ok(chain_from(&mg, mask, &mut dead, &mut chain, &mut scratch).then_some(chain))
}

fn chain_from(mg: &MaskGraph, t: u64, dead: &mut HashSet<u64>, chain: &mut Vec<usize>, scratch: &mut Vec<u64>) -> bool {
    if t == 0 {
        return true;
    }
    if dead.contains(&t) {
        return false;
    }
    let mut rest = t;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let smaller = t & !(1u64 << v);
        if smaller == 0 || mg.cutset_components(smaller, scratch).is_some() {
            chain.push(v);
            if chain_from(mg, smaller, dead, chain, scratch) {
                return true;
            }
            chain.pop();
        }
    }
    dead.insert(t);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corona::CoronaSpec;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, v.iter().copied())
    }

    /// Definitional check on every subset: removing any v from T must lower ω.
    fn naive_cutsets(g: &Graph) -> Vec<VertexSet> {
        let n = g.n();
        let mut out: Vec<VertexSet> = (0u64..1 << n)
            .map(|m| VertexSet::from_mask(n, m))
            .filter(|t| {
                let w = g.component_count(t);
                t.iter().all(|v| {
                    let mut smaller = t.clone();
                    smaller.remove(v);
                    g.component_count(&smaller) < w
                })
            })
            .collect();
        out.sort();
        out
    }

    fn tailed_square_base() -> Graph {
        Graph::from_edges(6, [(0, 3), (0, 1), (1, 2), (2, 3), (0, 4), (3, 5)]).unwrap()
    }

    fn tailed_square_corona() -> Graph {
        CoronaSpec::new(tailed_square_base(), set(6, &[1, 2]), Graph::complete(2))
            .unwrap()
            .build()
            .graph
    }

    #[test]
    fn complete_graph_has_only_empty_cutset() {
        let r = enumerate_cutsets(&Graph::complete(4), None).unwrap();
        assert_eq!(r.cutsets, vec![VertexSet::new(4)]);
        assert!(r.is_accessible());
        assert_eq!(r.oracle_dimension, 5);
        assert!(!is_cutset(&Graph::complete(4), &set(4, &[1])));
    }

    #[test]
    fn small_paths() {
        let r = enumerate_cutsets(&Graph::path(3), None).unwrap();
        assert_eq!(r.cutsets, vec![set(3, &[]), set(3, &[1])]);
        let r = enumerate_cutsets(&Graph::path(4), None).unwrap();
        assert_eq!(r.cutsets, vec![set(4, &[]), set(4, &[1]), set(4, &[2])]);
        assert!(r.is_accessible());
        assert_eq!(
            accessibility_witness_chain(&Graph::path(4), &set(4, &[1])).unwrap(),
            Some(vec![1])
        );
        assert_eq!(
            accessibility_witness_chain(&Graph::path(4), &set(4, &[])).unwrap(),
            Some(vec![])
        );
        assert_eq!(
            accessibility_witness_chain(&Graph::path(4), &set(4, &[1, 2])),
            Err(CutsetError::NotCutset)
        );
    }

    #[test]
    fn sorted_by_size_then_lex() {
        let r = enumerate_cutsets(&Graph::path(6), None).unwrap();
        let lists: Vec<Vec<usize>> = r.cutsets.iter().map(VertexSet::to_vec).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 3],
                vec![1, 4],
                vec![2, 4],
            ]
        );
    }

    #[test]
    fn tailed_square_base_and_corona() {
        let g = tailed_square_base();
        let r = enumerate_cutsets(&g, None).unwrap();
        assert_eq!(r.cutsets, naive_cutsets(&g));
        assert!(r.is_unmixed);
        assert!(r.cutsets.contains(&set(6, &[0])) && r.cutsets.contains(&set(6, &[3])));

        let c = tailed_square_corona();
        let r = enumerate_cutsets(&c, None).unwrap();
        assert!(!r.is_unmixed);
        assert!(!r.is_accessible());
        assert_eq!(r.unmixed_witness, Some(set(10, &[0, 2])));
        assert!(is_cutset(&c, &set(10, &[0, 2])));
        let chains: Vec<_> = r
            .cutsets
            .iter()
            .map(|t| accessibility_witness_chain(&c, t).unwrap())
            .collect();
        assert!(chains.iter().any(Option::is_some));
    }

    #[test]
    fn chain_fails_on_non_accessible_cutset() {
        // opposite corners of C4 form a cutset, neither corner alone does
        let g = Graph::cycle(4);
        let t = set(4, &[0, 2]);
        assert!(is_cutset(&g, &t));
        assert_eq!(accessibility_witness_chain(&g, &t).unwrap(), None);
        assert!(!is_accessible_system(&g).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let p = CoronaSpec::complete_base(2, 1, Graph::path(3)).unwrap().build();
        assert_eq!(dimension_oracle(&p.graph).unwrap(), 6);
        for (n, h) in [(2, Graph::complete(2)), (3, Graph::path(3)), (2, Graph::path(4))] {
            let nh = n * h.n();
            let p = crate::corona::corona(&Graph::complete(n), &h).unwrap();
            assert_eq!(dimension_oracle(&p.graph).unwrap(), n + nh + 1);
        }
    }

    #[test]
    fn bound_enforced() {
        assert_eq!(
            enumerate_cutsets(&Graph::path(25), None),
            Err(CutsetError::SizeBound { n: 25, bound: 24 })
        );
        assert!(enumerate_cutsets_bounded(&Graph::path(25), Some(1), 30).is_ok());
        assert_eq!(
            enumerate_cutsets_bounded(&Graph::path(65), None, 100),
            Err(CutsetError::SizeBound { n: 65, bound: 64 })
        );
    }

    #[test]
    fn size_cap_truncates() {
        let r = enumerate_cutsets(&Graph::path(6), Some(1)).unwrap();
        assert_eq!(r.cutsets.len(), 5);
        assert_eq!(r.size_cap, Some(1));
    }

    #[test]
    fn disconnected_uses_extension() {
        let g = Graph::path(3).disjoint_union(&Graph::path(3));
        let r = enumerate_cutsets(&g, None).unwrap();
        assert!(r.extension);
        assert_eq!(r.base_components, 2);
        assert!(r.is_unmixed);
        assert_eq!(r.oracle_dimension, 8);
    }

    #[test]
    fn jsonl_lines() {
        let r = enumerate_cutsets(&Graph::path(3), None).unwrap();
        let mut buf = Vec::new();
        r.write_jsonl(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"cutset\":[],\"components\":1}\n{\"cutset\":[1],\"components\":2}\n"
        );
    }

    proptest! {
        #[test]
        fn enumerator_matches_naive(g in arb_graph(8)) {
            let r = enumerate_cutsets(&g, None).unwrap();
            prop_assert_eq!(&r.cutsets, &naive_cutsets(&g));
            for (t, &c) in r.cutsets.iter().zip(&r.per_cutset_components) {
                prop_assert_eq!(g.component_count(t), c);
                prop_assert!(t.is_disjoint(&g.simplicial_vertices()));
                prop_assert!(is_cutset(&g, t));
            }
        }

        #[test]
        fn witness_chains_are_valid(g in arb_graph(7)) {
            let r = enumerate_cutsets(&g, None).unwrap();
            for t in &r.cutsets {
                if let Some(chain) = accessibility_witness_chain(&g, t).unwrap() {
                    let mut cur = t.clone();
                    for v in chain {
                        prop_assert!(cur.remove(v));
                        prop_assert!(is_cutset(&g, &cur));
                    }
                    prop_assert!(cur.is_empty());
                }
            }
        }
    }
}
