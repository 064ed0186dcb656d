//! Corona and L-corona products, their cutset decomposition, and the
//! diameter gadgets built from them.
//!
//! Product vertices are laid out base-first: `0..m` are the base vertices,
//! followed by one block of `h` consecutive vertices per attachment vertex,
//! in ascending order of the attachment vertex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cutsets::is_cutset;
use crate::graph::format::{from_graph6, to_graph6, FormatError};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoronaError {
    #[error("base graph is empty")]
    EmptyBase,
    #[error("attachment set is empty")]
    EmptyAttachSet,
    #[error("attachment vertex {vertex} out of range for a base graph on {n} vertices")]
    AttachOutOfRange { vertex: usize, n: usize },
    #[error("{0} graph is disconnected")]
    Disconnected(&'static str),
    #[error("vertex set over {got} vertices, product has {expected}")]
    IndexOutOfRange { expected: usize, got: usize },
    #[error("vertex set is not a nonempty cutset of the product")]
    NotCutset,
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid corona spec JSON: {0}")]
    Json(String),
}

/// `G ∘_L H`: base `G`, attachment set `L ⊆ V(G)`, pendant `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoronaSpec {
    base: Graph,
    attach: VertexSet,
    pendant: Graph,
}

impl CoronaSpec {
    /// Validated spec: `L` nonempty, base and pendant connected.
    pub fn new(base: Graph, attach: VertexSet, pendant: Graph) -> Result<Self, CoronaError> {
        let spec = Self::relaxed(base, attach, pendant)?;
        if !spec.base.is_connected() {
            return Err(CoronaError::Disconnected("base"));
        }
        if !spec.pendant.is_connected() {
            return Err(CoronaError::Disconnected("pendant"));
        }
        Ok(spec)
    }

    /// Like [`CoronaSpec::new`] but allows disconnected base or pendant.
    pub fn relaxed(base: Graph, attach: VertexSet, pendant: Graph) -> Result<Self, CoronaError> {
        if base.n() == 0 {
            return Err(CoronaError::EmptyBase);
        }
        if attach.capacity() != base.n() {
            if let Some(v) = attach.iter().find(|&v| v >= base.n()) {
                return Err(CoronaError::AttachOutOfRange { vertex: v, n: base.n() });
            }
        }
        let attach = VertexSet::from_indices(base.n(), attach.iter().filter(|&v| v < base.n()));
        if attach.is_empty() {
            return Err(CoronaError::EmptyAttachSet);
        }
        Ok(CoronaSpec { base, attach, pendant })
    }

    /// The usual corona `G ∘ H` (`L = V(G)`).
    pub fn full(base: Graph, pendant: Graph) -> Result<Self, CoronaError> {
        let all = base.vertex_set();
        Self::new(base, all, pendant)
    }

    /// `K_n ∘_ℓ H` with `L = {0, .., ℓ-1}`.
    pub fn complete_base(n: usize, l: usize, pendant: Graph) -> Result<Self, CoronaError> {
        Self::new(Graph::complete(n), VertexSet::from_indices(n, 0..l.min(n)), pendant)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn attach(&self) -> &VertexSet {
        &self.attach
    }

    pub fn pendant(&self) -> &Graph {
        &self.pendant
    }

    pub fn is_full(&self) -> bool {
        self.attach.len() == self.base.n()
    }

    pub fn product_order(&self) -> usize {
        self.base.n() + self.attach.len() * self.pendant.n()
    }

    pub fn build(&self) -> CoronaProduct {
        l_corona(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpecJson {
            base: to_graph6(&self.base),
            attach: self.attach.to_vec(),
            pendant: to_graph6(&self.pendant),
        })
        .expect("spec serializes")
    }

    /// Parses `{"base": graph6, "L": [indices], "pendant": graph6}`.
    pub fn from_json(text: &str) -> Result<Self, CoronaError> {
        let raw: SpecJson = serde_json::from_str(text).map_err(|e| CoronaError::Json(e.to_string()))?;
        let base = from_graph6(&raw.base)?;
        let pendant = from_graph6(&raw.pendant)?;
        if let Some(&v) = raw.attach.iter().find(|&&v| v >= base.n()) {
            return Err(CoronaError::AttachOutOfRange { vertex: v, n: base.n() });
        }
        let attach = VertexSet::from_indices(base.n(), raw.attach);
        Self::new(base, attach, pendant)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    base: String,
    #[serde(rename = "L")]
    attach: Vec<usize>,
    pendant: String,
}

/// Where a product vertex comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Base(usize),
    /// Vertex `local` of the pendant copy attached at base vertex `anchor`.
    Pendant {
        anchor: usize,
        local: usize,
    },
}

/// Index bookkeeping for a corona product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoronaLayout {
    base_n: usize,
    pendant_n: usize,
    anchors: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl CoronaLayout {
    fn new(spec: &CoronaSpec) -> Self {
        let anchors = spec.attach.to_vec();
        let mut slot = vec![None; spec.base.n()];
        for (i, &a) in anchors.iter().enumerate() {
            slot[a] = Some(i);
        }
        CoronaLayout {
            base_n: spec.base.n(),
            pendant_n: spec.pendant.n(),
            anchors,
            slot,
        }
    }

    pub fn order(&self) -> usize {
        self.base_n + self.anchors.len() * self.pendant_n
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    pub fn part(&self, v: usize) -> Part {
        assert!(v < self.order(), "vertex {v} outside the product");
        if v < self.base_n {
            Part::Base(v)
        } else {
            let off = v - self.base_n;
            Part::Pendant {
                anchor: self.anchors[off / self.pendant_n],
                local: off % self.pendant_n,
            }
        }
    }

    /// Product index of pendant vertex `local` in the copy at `anchor`.
    pub fn pendant_vertex(&self, anchor: usize, local: usize) -> Option<usize> {
        let slot = (*self.slot.get(anchor)?)?;
        (local < self.pendant_n).then(|| self.base_n + slot * self.pendant_n + local)
    }

    /// All product vertices of the copy attached at `anchor`.
    pub fn copy_vertices(&self, anchor: usize) -> VertexSet {
        VertexSet::from_indices(
            self.order(),
            (0..self.pendant_n).filter_map(|j| self.pendant_vertex(anchor, j)),
        )
    }

    pub fn base_vertices(&self) -> VertexSet {
        VertexSet::from_indices(self.order(), 0..self.base_n)
    }
}

/// A constructed product together with its layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoronaProduct {
    pub spec: CoronaSpec,
    pub graph: Graph,
    pub layout: CoronaLayout,
}

/// `G ∘ H`. Fails only on an empty base.
pub fn corona(base: &Graph, pendant: &Graph) -> Result<CoronaProduct, CoronaError> {
    if base.n() == 0 {
        return Err(CoronaError::EmptyBase);
    }
    let spec = CoronaSpec::relaxed(base.clone(), base.vertex_set(), pendant.clone())?;
    Ok(l_corona(&spec))
}

/// `G ∘_L H`: only vertices of `L` receive a coned copy of `H`.
pub fn l_corona(spec: &CoronaSpec) -> CoronaProduct {
    let layout = CoronaLayout::new(spec);
    let h = spec.pendant.n();
    let mut edges: Vec<(usize, usize)> = spec.base.edges().collect();
    for &a in &layout.anchors {
        let at = |j: usize| layout.pendant_vertex(a, j).expect("anchor in layout");
        edges.extend(spec.pendant.edges().map(|(x, y)| (at(x), at(y))));
        edges.extend((0..h).map(|j| (a, at(j))));
    }
    let mut graph = Graph::from_edges(layout.order(), edges).expect("corona edges are valid");
    if spec.base.labels().is_some() || spec.pendant.labels().is_some() {
        let mut labels: Vec<String> = (0..spec.base.n()).map(|v| spec.base.label(v)).collect();
        for &a in &layout.anchors {
            let anchor = spec.base.label(a);
            labels.extend((0..h).map(|j| format!("{anchor}.{}", spec.pendant.label(j))));
        }
        graph = graph.with_labels(labels).expect("label count matches");
    }
    CoronaProduct {
        spec: spec.clone(),
        graph,
        layout,
    }
}

/// A subset `T` of the product split as `T₀ ∪ ⋃ T_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoronaDecomposition {
    /// `T ∩ V(G)`, over the base graph.
    pub t0: VertexSet,
    /// `T ∩ V(H_v)` for every `v ∈ L`, in pendant-local indices.
    pub tv: BTreeMap<usize, VertexSet>,
    /// `{v ∈ L : T_v ≠ ∅}`, over the base graph.
    pub nonempty_set: VertexSet,
    /// Component count of the product minus `T` predicted from the parts.
    pub predicted_components: usize,
}

impl CoronaDecomposition {
    /// Reassembles `T` in product indices.
    pub fn reassemble(&self, layout: &CoronaLayout) -> VertexSet {
        let mut t = VertexSet::from_indices(layout.order(), self.t0.iter());
        for (&a, tv) in &self.tv {
            for j in tv.iter() {
                t.insert(layout.pendant_vertex(a, j).expect("anchor in layout"));
            }
        }
        t
    }
}

impl CoronaProduct {
    fn check_capacity(&self, t: &VertexSet) -> Result<(), CoronaError> {
        if t.capacity() != self.graph.n() {
            return Err(CoronaError::IndexOutOfRange {
                expected: self.graph.n(),
                got: t.capacity(),
            });
        }
        Ok(())
    }

    /// Splits any subset `T` and predicts `ω(G∘_L H \ T)` as
    ///
    /// `ω(G\T₀) + Σ_{v∈N∩T₀} ω(H_v\T_v) + |T₀∩L| − |N∩T₀|`.
    ///
    /// For cutsets `N ⊆ T₀`, so this is the usual `N`-indexed count. Copies
    /// whose anchor survives hang off the anchor and add nothing, which is
    /// why the sum runs over `N ∩ T₀` for arbitrary subsets.
    pub fn decompose(&self, t: &VertexSet) -> Result<CoronaDecomposition, CoronaError> {
        self.check_capacity(t)?;
        let spec = &self.spec;
        let m = spec.base.n();
        let h = spec.pendant.n();
        let t0 = VertexSet::from_indices(m, t.iter().filter(|&v| v < m));
        let mut tv = BTreeMap::new();
        let mut nonempty = VertexSet::new(m);
        for &a in self.layout.anchors() {
            let local = VertexSet::from_indices(
                h,
                (0..h).filter(|&j| t.contains(self.layout.pendant_vertex(a, j).unwrap())),
            );
            if !local.is_empty() {
                nonempty.insert(a);
            }
            tv.insert(a, local);
        }
        let removed_anchors = t0.intersection(&spec.attach);
        let cut_copies = nonempty.intersection(&t0);
        let copy_components: usize = cut_copies.iter().map(|a| spec.pendant.component_count(&tv[&a])).sum();
        let predicted = spec.base.component_count(&t0) + copy_components + removed_anchors.len() - cut_copies.len();
        Ok(CoronaDecomposition {
            t0,
            tv,
            nonempty_set: nonempty,
            predicted_components: predicted,
        })
    }

    /// Evaluates the seven structural assertions on a nonempty cutset.
    pub fn check_cutset_structure(&self, t: &VertexSet) -> Result<Vec<AssertionVerdict>, CoronaError> {
        self.check_capacity(t)?;
        if t.is_empty() || !is_cutset(&self.graph, t) {
            return Err(CoronaError::NotCutset);
        }
        let spec = &self.spec;
        let base = &spec.base;
        let l = &spec.attach;
        let d = self.decompose(t)?;
        let t0 = &d.t0;
        let proper = !spec.is_full();
        let empty_tv = |a: usize| d.tv[&a].is_empty();
        let base_simplicial = base.simplicial_vertices().intersection(t0);

        let mut out = Vec::with_capacity(7);

        let nonempty = !t0.is_empty();
        let strict = !proper || t0.len() < base.n();
        out.push(AssertionVerdict::new(
            1,
            "T0 is nonempty and, for proper L, a proper subset of V(G)",
            nonempty && strict,
            false,
        ));

        let outside: Vec<usize> = l.difference(t0).to_vec();
        out.push(AssertionVerdict::new(
            2,
            "T_v is empty for every v in L outside T0",
            outside.iter().all(|&a| empty_tv(a)),
            outside.is_empty(),
        ));

        let inside: Vec<usize> = l.intersection(t0).to_vec();
        out.push(AssertionVerdict::new(
            3,
            "for v in T0 with a copy, T_v is empty or a cutset of H",
            inside
                .iter()
                .all(|&a| empty_tv(a) || is_cutset(&spec.pendant, &d.tv[&a])),
            inside.is_empty(),
        ));

        let enclosed: Vec<usize> = inside
            .iter()
            .copied()
            .filter(|&a| base.neighbors(a).is_subset(t0))
            .collect();
        out.push(AssertionVerdict::new(
            4,
            "T_v is nonempty for v in L ∩ T0 with N_G(v) ⊆ T0",
            enclosed.iter().all(|&a| !empty_tv(a)),
            enclosed.is_empty(),
        ));

        let actual = self.graph.component_count(t);
        out.push(AssertionVerdict::new(
            5,
            "component count matches the decomposition formula",
            actual == d.predicted_components,
            false,
        ));

        out.push(AssertionVerdict::new(
            6,
            "simplicial vertices of G in T0 lie in L",
            base_simplicial.is_subset(l),
            base_simplicial.is_empty(),
        ));

        let disjoint = t0.is_disjoint(l);
        let holds7 = !disjoint || (d.nonempty_set.is_empty() && is_cutset(base, t0) && base_simplicial.is_empty());
        out.push(AssertionVerdict::new(
            7,
            "if T0 misses L then T = T0 is a cutset of G free of simplicial vertices",
            holds7,
            !disjoint,
        ));
        Ok(out)
    }
}

/// Outcome of one structural assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssertionVerdict {
    pub index: u8,
    pub statement: &'static str,
    pub holds: bool,
    /// The hypothesis of the assertion was not met.
    pub vacuous: bool,
}

impl AssertionVerdict {
    fn new(index: u8, statement: &'static str, holds: bool, vacuous: bool) -> Self {
        AssertionVerdict {
            index,
            statement,
            holds,
            vacuous,
        }
    }
}

/// `cone(v, {w} ⊔ H)`: `H` keeps indices `0..h`, `w = h`, apex `v = h + 1`.
pub fn gadget_d2(h: &Graph) -> Graph {
    h.disjoint_union(&Graph::complete(1)).cone()
}

/// `K₃ ∘_{w₁,w₂} H` with `w₁ = 0, w₂ = 1, w₃ = 2`, copies at `3..3+h` and
/// `3+h..3+2h`.
pub fn gadget_d3(h: &Graph) -> CoronaProduct {
    let spec = CoronaSpec::relaxed(Graph::complete(3), VertexSet::from_indices(3, [0, 1]), h.clone())
        .expect("nonempty attachment set");
    l_corona(&spec)
}
