//! Closed-form dimension, depth, regularity, projective dimension,
//! CM-defect and extremal-Betti positions for coronas over complete and
//! Cohen-Macaulay closed base graphs.
//!
//! Every formula is driven by [`BaseInvariants`] of the pendant graph `H`.
//! All arithmetic is exact integer arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::corona::CoronaSpec;
use crate::cutsets::{enumerate_cutsets_bounded, CutsetError, DEFAULT_BOUND};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("parameters out of range: {0}")]
    Range(String),
    #[error("unproved range: {0}")]
    UnprovedRange(String),
    #[error("invalid base invariants: {0}")]
    InvalidBase(String),
    #[error("graph is not a connected block graph")]
    NotBlockGraph,
    #[error("block graph contains a flower at vertex {0}; reg = iv + 1 is not available")]
    Flower(usize),
    #[error("base graph is not a Cohen-Macaulay closed graph")]
    NotCmClosed,
    #[error("pendant graph is complete; no extremal Betti statement applies")]
    CompletePendant,
    #[error("r_H required: the pendant's extremal Betti offset is unknown")]
    RequiresRH,
    #[error("no extremal Betti statement for {0}")]
    NoStatement(String),
    #[error(transparent)]
    Cutsets(#[from] CutsetError),
}

/// Origin of a pendant's invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
    UserSupplied,
}

/// Invariants of `S_H / J_H` for the pendant graph `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseInvariants {
    pub h: usize,
    pub dim_q: usize,
    pub depth_q: usize,
    pub reg_q: usize,
    pub pd: usize,
    /// Offset `r_H ≥ 2` of the extremal Betti number `β_{p_H, p_H + r_H}`.
    pub r_extremal: Option<usize>,
    pub is_complete: bool,
    pub is_unmixed: bool,
    pub is_cm: Option<bool>,
    pub is_accessible: Option<bool>,
    pub provenance: Provenance,
}

impl BaseInvariants {
    /// Builds and validates; `pd` is derived as `2h − depth_q`.
    pub fn new(
        h: usize,
        dim_q: usize,
        depth_q: usize,
        reg_q: usize,
        is_complete: bool,
        is_unmixed: bool,
        provenance: Provenance,
    ) -> Result<Self, InvariantError> {
        let pd = (2 * h)
            .checked_sub(depth_q)
            .ok_or_else(|| InvariantError::InvalidBase(format!("depth {depth_q} exceeds 2h = {}", 2 * h)))?;
        let b = BaseInvariants {
            h,
            dim_q,
            depth_q,
            reg_q,
            pd,
            r_extremal: None,
            is_complete,
            is_unmixed,
            is_cm: Some(dim_q == depth_q),
            is_accessible: None,
            provenance,
        };
        b.validate()?;
        Ok(b)
    }

    /// Invariants of `K_h`.
    pub fn complete(h: usize) -> Self {
        BaseInvariants::new(h, h + 1, h + 1, 1, true, true, Provenance::ClosedForm)
            .expect("complete graph invariants are consistent")
            .with_accessible(true)
    }

    pub fn with_r_extremal(mut self, r: usize) -> Result<Self, InvariantError> {
        if r < 2 {
            return Err(InvariantError::InvalidBase(format!("r_H = {r} < 2")));
        }
        self.r_extremal = Some(r);
        Ok(self)
    }

    pub fn with_accessible(mut self, accessible: bool) -> Self {
        self.is_accessible = Some(accessible);
        self
    }

    pub fn with_cm(mut self, cm: Option<bool>) -> Self {
        self.is_cm = cm;
        self
    }

    pub fn cmdef(&self) -> usize {
        self.dim_q - self.depth_q
    }

    pub fn validate(&self) -> Result<(), InvariantError> {
        let h = self.h;
        let fail = |m: String| Err(InvariantError::InvalidBase(m));
        if h == 0 {
            return fail("pendant graph is empty".into());
        }
        if self.pd + self.depth_q != 2 * h {
            return fail(format!("pd {} + depth {} != 2h = {}", self.pd, self.depth_q, 2 * h));
        }
        if self.pd + 1 < h {
            return fail(format!("pd {} < h - 1 = {}", self.pd, h - 1));
        }
        if self.depth_q > self.dim_q {
            return fail(format!("depth {} > dim {}", self.depth_q, self.dim_q));
        }
        if self.dim_q < h + 1 {
            return fail(format!("dim {} < h + 1 = {}", self.dim_q, h + 1));
        }
        if self.is_complete && (self.reg_q != 1 || self.depth_q != h + 1 || self.dim_q != h + 1) {
            return fail("complete pendant needs reg 1 and depth = dim = h + 1".into());
        }
        if let Some(r) = self.r_extremal {
            if r < 2 {
                return fail(format!("r_H = {r} < 2"));
            }
        }
        if self.is_cm == Some(true) && (self.dim_q != self.depth_q || !self.is_unmixed) {
            return fail("Cohen-Macaulay pendant needs dim = depth and unmixed".into());
        }
        if self.is_accessible == Some(true) && !self.is_unmixed {
            return fail("accessible pendant must be unmixed".into());
        }
        Ok(())
    }
}

/// Whether some vertex of a block graph carries a flower: three petals,
/// each a triangle through it or an induced `K_{1,3}` hanging off it.
fn flower_vertex(g: &Graph, blocks: &[VertexSet]) -> Option<usize> {
    let mut membership = vec![0usize; g.n()];
    for b in blocks {
        for v in b.iter() {
            membership[v] += 1;
        }
    }
    (0..g.n()).find(|&v| {
        let petals = blocks
            .iter()
            .filter(|b| b.contains(v))
            .filter(|b| b.len() >= 3 || b.iter().any(|c| c != v && membership[c] >= 3))
            .count();
        petals >= 3
    })
}

/// Invariants of a connected, flower-free block graph: depth `|V| + 1`,
/// reg `iv + 1`. It is Cohen-Macaulay exactly when every vertex lies in at
/// most two blocks; otherwise the dimension comes from the cutset oracle.
pub fn base_invariants_block_graph(g: &Graph) -> Result<BaseInvariants, InvariantError> {
    let d = g.block_decomposition().map_err(|_| InvariantError::NotBlockGraph)?;
    if !d.is_block_graph(g) {
        return Err(InvariantError::NotBlockGraph);
    }
    if let Some(v) = flower_vertex(g, &d.blocks) {
        return Err(InvariantError::Flower(v));
    }
    let n = g.n();
    let mut membership = vec![0usize; n];
    for b in &d.blocks {
        for v in b.iter() {
            membership[v] += 1;
        }
    }
    let cm = membership.iter().all(|&m| m <= 2);
    let depth = n + 1;
    let reg = g.internal_vertex_count() + 1;
    let (dim, provenance) = if cm {
        (depth, Provenance::ClosedForm)
    } else {
        let r = enumerate_cutsets_bounded(g, None, DEFAULT_BOUND)?;
        (r.oracle_dimension, Provenance::Oracle)
    };
    let complete = g.is_complete();
    let mut b = BaseInvariants::new(n, dim, depth, reg, complete, cm, provenance)?.with_accessible(cm);
    if cm && !complete {
        // Cohen-Macaulay: the last Betti number sits at (pd, pd + reg).
        b = b.with_r_extremal(reg)?;
    }
    Ok(b)
}

/// Citation attached to a formula value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Formula(&'static str),
    ClosedForm(&'static str),
    Oracle,
    UserSupplied,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Formula(c) => write!(f, "formula({c})"),
            Source::ClosedForm(c) => write!(f, "closed-form({c})"),
            Source::Oracle => write!(f, "oracle"),
            Source::UserSupplied => write!(f, "user-supplied"),
        }
    }
}

impl Serialize for Source {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const DIM: &str = "dimension of l-corona over complete base";
const ONE: &str = "depth and regularity of 1-corona over complete base";
const T_CORONA: &str = "depth and regularity of l-corona over complete base";
const FULL: &str = "depth and regularity of corona over complete base";
const CM_CLOSED: &str = "depth and regularity of corona over Cohen-Macaulay closed base";
const PATH: &str = "depth and regularity of corona over path";
const AB: &str = "Auslander-Buchsbaum";
const CMDEF: &str = "dimension minus depth";
const BLOCK: &str = "block graph";

/// A number together with where it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sourced {
    pub value: usize,
    pub provenance: Source,
}

impl Sourced {
    fn new(value: usize, provenance: Source) -> Self {
        Sourced { value, provenance }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    LCoronaComplete,
    FullCoronaComplete,
    CoronaCmClosed,
    CoronaPath,
}

/// A yes/no/unknown verdict with the rule that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: Option<bool>,
    pub rule: &'static str,
}

impl Verdict {
    fn known(value: bool, rule: &'static str) -> Self {
        Verdict {
            value: Some(value),
            rule,
        }
    }

    fn unknown(rule: &'static str) -> Self {
        Verdict { value: None, rule }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub unmixed: Verdict,
    pub accessible: Verdict,
    pub cm: Verdict,
}

impl Verdicts {
    fn all(value: Option<bool>, rule: &'static str) -> Self {
        let v = Verdict { value, rule };
        Verdicts {
            unmixed: v,
            accessible: v,
            cm: v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub family: Family,
    /// Order of the base graph (`n`, or `b` for closed bases).
    pub n: usize,
    pub l: usize,
    pub base: String,
    pub product_order: usize,
    pub pendant: BaseInvariants,
    pub dim: Option<Sourced>,
    pub depth: Sourced,
    pub reg: Sourced,
    pub pd: Sourced,
    pub cmdef: Option<Sourced>,
    /// `(p, p + j)` of an extremal Betti number.
    pub extremal_position: Option<(usize, usize)>,
    pub verdicts: Verdicts,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `dim S/J_G = n − ℓ + 1 + ℓ·dim_q` for `G = K_n ∘_ℓ H` with `ℓ < n`.
///
/// For `ℓ = n` the value is `n·dim_q + 1` only when `dim_q = h + 1`. A
/// larger `dim_q` is attained by removing every base vertex together with
/// the best cutset of each copy, which gives `n·dim_q`.
pub fn dim_l_corona(n: usize, l: usize, base: &BaseInvariants) -> Result<usize, InvariantError> {
    if l == 0 || l > n {
        return Err(InvariantError::Range(format!("need 1 <= l <= n, got n = {n}, l = {l}")));
    }
    if l == n {
        return Ok(n * base.dim_q + usize::from(base.dim_q == base.h + 1));
    }
    Ok(n - l + 1 + l * base.dim_q)
}

fn excess_dim_note(n: usize, l: usize, base: &BaseInvariants, notes: &mut Vec<String>) {
    if l == n && base.dim_q > base.h + 1 {
        notes.push("dim_q > h + 1: dim = n·dim_q instead of n·dim_q + 1".to_string());
    }
}

/// Depth and regularity of `K_n ∘_ℓ H`, picking the branch that covers
/// `(n, ℓ)`: `ℓ = n` (full corona), `ℓ = 1 < n`, or `1 < ℓ < n`.
pub fn depth_reg_corona_complete(n: usize, l: usize, base: &BaseInvariants) -> Result<InvariantReport, InvariantError> {
    base.validate()?;
    if n == 0 || l == 0 || l > n {
        return Err(InvariantError::Range(format!("need 1 <= l <= n, got n = {n}, l = {l}")));
    }
    if l == n {
        full_corona(n, base)
    } else if l == 1 {
        one_corona(n, base)
    } else {
        t_corona(n, l, base)
    }
}

/// `K_n ∘_1 H` for `n ≥ 2`.
pub fn one_corona(n: usize, base: &BaseInvariants) -> Result<InvariantReport, InvariantError> {
    base.validate()?;
    if n < 2 {
        return Err(InvariantError::UnprovedRange(format!("1-corona needs n >= 2, got {n}")));
    }
    let depth = n + base.depth_q;
    let reg = if base.is_complete { 2 } else { 1 + base.reg_q };
    complete_report(n, 1, base, depth, reg, Source::Formula(ONE), Vec::new())
}

/// `K_n ∘_ℓ H` for `1 ≤ ℓ < n`. The statement covers `n ≥ 3`; `n = 2` is
/// evaluated but flagged.
pub fn t_corona(n: usize, l: usize, base: &BaseInvariants) -> Result<InvariantReport, InvariantError> {
    base.validate()?;
    if l == 0 || l >= n || n < 2 {
        return Err(InvariantError::UnprovedRange(format!(
            "l-corona needs 1 <= l < n and n >= 3, got n = {n}, l = {l}"
        )));
    }
    let mut notes = Vec::new();
    if n == 2 {
        notes.push("statement-range ambiguity: stated for n >= 3, evaluated at n = 2".to_string());
    }
    let depth = n - l + 1 + l * base.depth_q;
    let reg = 1 + l * base.reg_q;
    complete_report(n, l, base, depth, reg, Source::Formula(T_CORONA), notes)
}

/// `K_n ∘ H` for `n ≥ 1`.
pub fn full_corona(n: usize, base: &BaseInvariants) -> Result<InvariantReport, InvariantError> {
    base.validate()?;
    if n == 0 {
        return Err(InvariantError::Range("n must be at least 1".into()));
    }
    let mut notes = Vec::new();
    let depth = if base.is_complete {
        1 + n * base.depth_q
    } else {
        n * base.depth_q
    };
    let (reg, reg_src) = match (base.is_complete, n) {
        (true, 1) => {
            notes.push("K_1 ∘ K_h is complete: reg = iv + 1 = 1 instead of n + 1".to_string());
            (1, Source::ClosedForm(BLOCK))
        }
        (true, _) => (n + 1, Source::Formula(FULL)),
        (false, _) => (n * base.reg_q, Source::Formula(FULL)),
    };
    let mut r = complete_report(n, n, base, depth, reg, Source::Formula(FULL), notes)?;
    r.reg.provenance = reg_src;
    Ok(r)
}

fn complete_report(
    n: usize,
    l: usize,
    base: &BaseInvariants,
    depth: usize,
    reg: usize,
    src: Source,
    mut notes: Vec<String>,
) -> Result<InvariantReport, InvariantError> {
    let order = n + l * base.h;
    let dim = dim_l_corona(n, l, base)?;
    excess_dim_note(n, l, base, &mut notes);
    let pd = 2 * order - depth;
    let family = if l == n {
        Family::FullCoronaComplete
    } else {
        Family::LCoronaComplete
    };
    let extremal_position = extremal_or_note(family, n, l, base, &mut notes);
    Ok(InvariantReport {
        family,
        n,
        l,
        base: format!("K{n}"),
        product_order: order,
        pendant: base.clone(),
        dim: Some(Sourced::new(dim, Source::Formula(DIM))),
        depth: Sourced::new(depth, src),
        reg: Sourced::new(reg, src),
        pd: Sourced::new(pd, Source::Formula(AB)),
        cmdef: Some(Sourced::new(dim - depth, Source::Formula(CMDEF))),
        extremal_position,
        verdicts: classify_complete_base(n, l, base),
        notes,
    })
}

fn extremal_or_note(
    family: Family,
    n: usize,
    l: usize,
    base: &BaseInvariants,
    notes: &mut Vec<String>,
) -> Option<(usize, usize)> {
    match extremal_betti_position(family, n, l, base) {
        Ok(pos) => Some(pos),
        Err(InvariantError::CompletePendant) => None,
        Err(e) => {
            notes.push(format!("extremal position unavailable: {e}"));
            None
        }
    }
}

/// Depth and regularity of `B ∘ H` for a Cohen-Macaulay closed graph `B`.
///
/// A complete `B` is handled by the full-corona formulas. Otherwise the
/// dimension is taken from `oracle_dim` when supplied and reported missing
/// if not.
pub fn depth_reg_corona_cm_closed(
    b_graph: &Graph,
    base: &BaseInvariants,
    oracle_dim: Option<usize>,
) -> Result<InvariantReport, InvariantError> {
    cm_closed_report(b_graph, base, oracle_dim, Family::CoronaCmClosed, CM_CLOSED)
}

/// `P_n ∘ H`, the path case of the closed-base formulas.
pub fn depth_reg_corona_path(
    n: usize,
    base: &BaseInvariants,
    oracle_dim: Option<usize>,
) -> Result<InvariantReport, InvariantError> {
    if n == 0 {
        return Err(InvariantError::Range("path needs at least one vertex".into()));
    }
    cm_closed_report(&Graph::path(n), base, oracle_dim, Family::CoronaPath, PATH)
}

fn cm_closed_report(
    b_graph: &Graph,
    base: &BaseInvariants,
    oracle_dim: Option<usize>,
    family: Family,
    cite: &'static str,
) -> Result<InvariantReport, InvariantError> {
    base.validate()?;
    if !b_graph.is_cm_closed().unwrap_or(false) {
        return Err(InvariantError::NotCmClosed);
    }
    if b_graph.is_complete() {
        // The closed-base statements reduce to the full corona here.
        let mut r = full_corona(b_graph.n(), base)?;
        r.family = family;
        r.base = describe(b_graph);
        if let Ok(stated) = extremal_betti_position(family, b_graph.n(), b_graph.n(), base) {
            if r.extremal_position != Some(stated) {
                r.notes.push(format!(
                    "closed-base statement puts the extremal Betti number at {stated:?}; full-corona value kept"
                ));
            }
        }
        return Ok(r);
    }
    let b = b_graph.n();
    let order = b + b * base.h;
    let mut notes = Vec::new();
    let depth = if base.is_complete {
        1 + b * base.depth_q
    } else {
        b * base.depth_q
    };
    let src = Source::Formula(cite);
    let reg = if base.is_complete { b + 1 } else { b * base.reg_q };
    let dim = oracle_dim.map(|d| Sourced::new(d, Source::Oracle));
    if dim.is_none() {
        notes.push("dim: oracle-unavailable".to_string());
    }
    let extremal_position = extremal_or_note(family, b, b, base, &mut notes);
    Ok(InvariantReport {
        family,
        n: b,
        l: b,
        base: describe(b_graph),
        product_order: order,
        pendant: base.clone(),
        cmdef: dim.map(|d| Sourced::new(d.value - depth, Source::Formula(CMDEF))),
        dim,
        depth: Sourced::new(depth, src),
        reg: Sourced::new(reg, src),
        pd: Sourced::new(2 * order - depth, Source::Formula(AB)),
        extremal_position,
        verdicts: Verdicts::all(Some(false), BOTH_COMPLETE),
        notes,
    })
}

fn describe(g: &Graph) -> String {
    let n = g.n();
    if g.is_complete() {
        format!("K{n}")
    } else if *g == Graph::path(n) {
        format!("P{n}")
    } else {
        format!("graph6:{}", crate::graph::format::to_graph6(g))
    }
}

/// CM-defect of `K_n ∘_ℓ H` from the pendant's defect. For `ℓ = n` and a
/// non-complete pendant the extra `+1` applies only when `dim_q = h + 1`.
pub fn cmdef_report(n: usize, l: usize, base: &BaseInvariants) -> Result<usize, InvariantError> {
    base.validate()?;
    if n == 0 || l == 0 || l > n {
        return Err(InvariantError::Range(format!("need 1 <= l <= n, got n = {n}, l = {l}")));
    }
    Ok(if l < n {
        l * base.cmdef()
    } else if base.is_complete {
        0
    } else {
        usize::from(base.dim_q == base.h + 1) + l * base.cmdef()
    })
}

/// Position `(p, p + j)` of an extremal Betti number of the product.
///
/// `n` is the base order (`b` for closed bases); `l` matters only for
/// [`Family::LCoronaComplete`].
pub fn extremal_betti_position(
    family: Family,
    n: usize,
    l: usize,
    base: &BaseInvariants,
) -> Result<(usize, usize), InvariantError> {
    if base.is_complete {
        return Err(InvariantError::CompletePendant);
    }
    let r = base.r_extremal.ok_or(InvariantError::RequiresRH)?;
    let ph = base.pd;
    let (p, j) = match family {
        Family::LCoronaComplete => {
            if l == 0 || l >= n || n < 2 {
                return Err(InvariantError::Range(format!("need 1 <= l < n, got n = {n}, l = {l}")));
            }
            let p = n + l - 1 + l * ph;
            (p, l * r + usize::from(n >= 3))
        }
        Family::FullCoronaComplete => match n {
            0 => return Err(InvariantError::Range("n must be at least 1".into())),
            1 => return Err(InvariantError::NoStatement("the full corona with n = 1".into())),
            _ => (2 * n + n * ph, n * r + usize::from(n >= 3)),
        },
        Family::CoronaCmClosed | Family::CoronaPath => {
            if n == 0 {
                return Err(InvariantError::Range("b must be at least 1".into()));
            }
            (2 * n + n * ph, n * r + 1)
        }
    };
    Ok((p, p + j))
}

const COMBINED: &str = "l-corona over complete base with l < n inherits the pendant's verdict";
const BOTH_COMPLETE: &str =
    "corona over a base with at least two vertices is unmixed or CM only if both graphs are complete";
const BLOCK_CM: &str = "complete base and complete pendant give a Cohen-Macaulay block graph";
const CONE: &str = "cone over a non-complete pendant: outside proved families";
const UNMIXED_NEEDS_H: &str = "unmixed proper L-corona forces an unmixed pendant";
const UNMIXED_NEEDS_CONNECTED: &str = "unmixed proper L-corona keeps G minus every subset of L connected";
const ACC_NEEDS_H: &str = "accessible L-corona forces an accessible pendant";
const OUTSIDE: &str = "outside proved families";

fn classify_complete_base(n: usize, l: usize, base: &BaseInvariants) -> Verdicts {
    if n >= 2 && l < n {
        return Verdicts {
            unmixed: Verdict::known(base.is_unmixed, COMBINED),
            accessible: Verdict {
                value: base.is_accessible,
                rule: COMBINED,
            },
            cm: Verdict {
                value: base.is_cm,
                rule: COMBINED,
            },
        };
    }
    if base.is_complete {
        Verdicts::all(Some(true), BLOCK_CM)
    } else if n >= 2 {
        Verdicts::all(Some(false), BOTH_COMPLETE)
    } else {
        Verdicts::all(None, CONE)
    }
}

/// Largest `|L|` for which every subset of `L` is tried.
const SUBSET_SCAN_LIMIT: usize = 20;

/// Unmixed / accessible / Cohen-Macaulay verdicts for a corona from the
/// pendant's verdicts, using only proved rules. Anything else is unknown.
pub fn classify(spec: &CoronaSpec, base: &BaseInvariants) -> Verdicts {
    let g = spec.base();
    let n = g.n();
    let l = spec.attach().len();
    if g.is_complete() {
        return classify_complete_base(n, l, base);
    }
    if spec.is_full() {
        return Verdicts::all(Some(false), BOTH_COMPLETE);
    }
    if !base.is_unmixed {
        return Verdicts::all(Some(false), UNMIXED_NEEDS_H);
    }
    if l <= SUBSET_SCAN_LIMIT {
        let anchors = spec.attach().to_vec();
        let disconnects = (1u64..1 << l).any(|m| {
            let l0 = VertexSet::from_indices(n, (0..l).filter(|i| m >> i & 1 == 1).map(|i| anchors[i]));
            g.component_count(&l0) > 1
        });
        if disconnects {
            return Verdicts::all(Some(false), UNMIXED_NEEDS_CONNECTED);
        }
    }
    if base.is_accessible == Some(false) {
        return Verdicts {
            unmixed: Verdict::unknown(OUTSIDE),
            accessible: Verdict::known(false, ACC_NEEDS_H),
            cm: Verdict::known(false, ACC_NEEDS_H),
        };
    }
    Verdicts::all(None, OUTSIDE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corona::{corona, CoronaSpec};
    use crate::cutsets::{dimension_oracle, enumerate_cutsets};

    fn p3() -> BaseInvariants {
        base_invariants_block_graph(&Graph::path(3)).unwrap()
    }

    #[test]
    fn block_graph_bases() {
        for h in 1..=5 {
            let b = base_invariants_block_graph(&Graph::complete(h)).unwrap();
            assert_eq!((b.dim_q, b.depth_q, b.reg_q, b.pd), (h + 1, h + 1, 1, h - 1));
            assert_eq!(b, BaseInvariants::complete(h));
        }
        let b = p3();
        assert_eq!((b.dim_q, b.depth_q, b.reg_q, b.pd), (4, 4, 2, 2));
        assert_eq!(b.dim_q, dimension_oracle(&Graph::path(3)).unwrap());
        assert_eq!(b.r_extremal, Some(2));
        assert_eq!(base_invariants_block_graph(&Graph::path(4)).unwrap().reg_q, 3);
        assert_eq!(
            base_invariants_block_graph(&Graph::cycle(4)),
            Err(InvariantError::NotBlockGraph)
        );
    }

    #[test]
    fn star_is_block_graph_but_not_cm() {
        let b = base_invariants_block_graph(&Graph::star(3)).unwrap();
        assert_eq!(b.depth_q, 5);
        assert_eq!(b.dim_q, 6);
        assert_eq!(b.is_cm, Some(false));
        assert!(!b.is_unmixed);
        assert_eq!(b.provenance, Provenance::Oracle);
        assert_eq!(b.reg_q, 2);
    }

    #[test]
    fn three_triangles_form_a_flower() {
        let g = Graph::from_edges(
            7,
            [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)],
        )
        .unwrap();
        assert_eq!(base_invariants_block_graph(&g), Err(InvariantError::Flower(0)));
    }

    #[test]
    fn base_validation() {
        assert!(BaseInvariants::new(3, 4, 5, 2, false, true, Provenance::UserSupplied).is_err());
        assert!(BaseInvariants::new(3, 4, 4, 2, true, true, Provenance::UserSupplied).is_err());
        assert!(BaseInvariants::new(3, 3, 3, 2, false, true, Provenance::UserSupplied).is_err());
        assert!(p3().with_r_extremal(1).is_err());
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_l_corona(1, 1, &BaseInvariants::complete(1)).unwrap(), 3);
        assert_eq!(dim_l_corona(2, 1, &p3()).unwrap(), 6);
        for n in 1..=4 {
            for h in 1..=3 {
                let k = BaseInvariants::complete(h);
                assert_eq!(dim_l_corona(n, n, &k).unwrap(), n + n * h + 1);
            }
        }
        assert!(dim_l_corona(2, 3, &p3()).is_err());
        assert!(dim_l_corona(2, 0, &p3()).is_err());
    }

    #[test]
    fn coronas_over_a_star() {
        let star = Graph::star(3);
        let b = base_invariants_block_graph(&star).unwrap();
        assert_eq!(b.dim_q, 6);
        for n in 1..=3 {
            let g = corona(&Graph::complete(n), &star).unwrap().graph;
            let oracle = dimension_oracle(&g).unwrap();
            assert_eq!(oracle, 6 * n);
            assert_eq!(dim_l_corona(n, n, &b).unwrap(), oracle);
            let r = full_corona(n, &b).unwrap();
            assert_eq!(r.cmdef.unwrap().value, cmdef_report(n, n, &b).unwrap());
            assert!(r.notes.iter().any(|x| x.starts_with("dim_q > h + 1")));
        }
        let g = CoronaSpec::complete_base(3, 2, star).unwrap().build().graph;
        assert_eq!(dim_l_corona(3, 2, &b).unwrap(), dimension_oracle(&g).unwrap());
    }

    #[test]
    fn full_corona_examples() {
        for (n, h) in [(1, 1), (2, 3), (3, 2), (4, 4)] {
            let r = depth_reg_corona_complete(n, n, &BaseInvariants::complete(h)).unwrap();
            assert_eq!(r.depth.value, 1 + n * (h + 1));
            assert_eq!(r.reg.value, if n == 1 { 1 } else { n + 1 });
            assert_eq!(r.cmdef.unwrap().value, 0);
        }
        let r = depth_reg_corona_complete(2, 2, &p3()).unwrap();
        assert_eq!((r.depth.value, r.reg.value, r.dim.unwrap().value), (8, 4, 9));
        assert_eq!(r.cmdef.unwrap().value, 1);
        assert_eq!(r.pd.value, 2 * 8 - 8);
        assert_eq!(r.family, Family::FullCoronaComplete);
    }

    #[test]
    fn one_corona_examples() {
        let r = depth_reg_corona_complete(2, 1, &p3()).unwrap();
        assert_eq!((r.depth.value, r.reg.value), (6, 3));
        let r = depth_reg_corona_complete(3, 1, &BaseInvariants::complete(2)).unwrap();
        assert_eq!(r.reg.value, 2);
        assert!(one_corona(1, &p3()).is_err());
    }

    #[test]
    fn t_corona_agrees_with_one_corona_at_l_1() {
        for n in 3..=5 {
            for b in [p3(), BaseInvariants::complete(3)] {
                let one = one_corona(n, &b).unwrap();
                let t = t_corona(n, 1, &b).unwrap();
                assert_eq!(
                    (one.depth.value, one.reg.value, one.extremal_position),
                    (t.depth.value, t.reg.value, t.extremal_position)
                );
            }
        }
        let r = t_corona(2, 1, &p3()).unwrap();
        assert!(r.notes.iter().any(|s| s.contains("statement-range ambiguity")));
        assert!(matches!(t_corona(1, 1, &p3()), Err(InvariantError::UnprovedRange(_))));
    }

    #[test]
    fn cm_closed_matches_complete() {
        let r = depth_reg_corona_cm_closed(&Graph::path(2), &p3(), None).unwrap();
        assert_eq!((r.depth.value, r.reg.value), (8, 4));
        assert_eq!(r.extremal_position, Some((8, 12)));
        assert!(r.notes.iter().any(|s| s.contains("(8, 13)")));
        let r = depth_reg_corona_cm_closed(&Graph::path(3), &BaseInvariants::complete(2), None).unwrap();
        assert_eq!((r.depth.value, r.reg.value), (10, 4));
        let product = corona(&Graph::path(3), &Graph::complete(2)).unwrap().graph;
        let block = base_invariants_block_graph(&product).unwrap();
        assert_eq!((block.depth_q, block.reg_q), (10, 4));
        assert!(r.dim.is_none());
        assert!(r.notes.iter().any(|s| s == "dim: oracle-unavailable"));
        assert_eq!(
            depth_reg_corona_cm_closed(&Graph::star(3), &p3(), None),
            Err(InvariantError::NotCmClosed)
        );
    }

    #[test]
    fn cmdef_branches() {
        assert_eq!(cmdef_report(3, 3, &BaseInvariants::complete(2)).unwrap(), 0);
        assert_eq!(cmdef_report(2, 2, &p3()).unwrap(), 1);
        assert_eq!(cmdef_report(1, 1, &p3()).unwrap(), 1);
        // K2 ∘ P3 is almost Cohen-Macaulay; use it as a pendant with l = 2 < n = 3
        let full = depth_reg_corona_complete(2, 2, &p3()).unwrap();
        let h2 = BaseInvariants::new(8, 9, 8, 4, false, false, Provenance::UserSupplied).unwrap();
        assert_eq!(full.dim.unwrap().value, 9);
        assert_eq!(cmdef_report(3, 2, &h2).unwrap(), 2);
        let pendant = corona(&Graph::complete(2), &Graph::path(3)).unwrap().graph;
        assert_eq!(dimension_oracle(&pendant).unwrap(), 9);
        let product = CoronaSpec::complete_base(3, 2, pendant).unwrap().build().graph;
        let dim = dimension_oracle(&product).unwrap();
        let depth = t_corona(3, 2, &h2).unwrap().depth.value;
        assert_eq!(dim - depth, 2);
    }

    #[test]
    fn extremal_positions() {
        let b = p3();
        let (ph, r) = (b.pd, 2);
        assert_eq!(
            extremal_betti_position(Family::FullCoronaComplete, 2, 2, &b).unwrap(),
            (4 + 2 * ph, 4 + 2 * ph + 2 * r)
        );
        assert_eq!(
            extremal_betti_position(Family::FullCoronaComplete, 3, 3, &b).unwrap(),
            (6 + 3 * ph, 6 + 3 * ph + 3 * r + 1)
        );
        assert_eq!(
            extremal_betti_position(Family::CoronaCmClosed, 2, 2, &b).unwrap(),
            (4 + 2 * ph, 4 + 2 * ph + 2 * r + 1)
        );
        assert_eq!(
            extremal_betti_position(Family::CoronaCmClosed, 3, 3, &b).unwrap(),
            (6 + 3 * ph, 6 + 3 * ph + 3 * r + 1)
        );
        assert_eq!(
            extremal_betti_position(Family::LCoronaComplete, 2, 1, &b).unwrap(),
            (2 + ph, 2 + ph + r)
        );
        assert_eq!(
            extremal_betti_position(Family::FullCoronaComplete, 2, 2, &BaseInvariants::complete(2)),
            Err(InvariantError::CompletePendant)
        );
        let no_r = BaseInvariants::new(3, 4, 4, 2, false, true, Provenance::UserSupplied).unwrap();
        assert_eq!(
            extremal_betti_position(Family::FullCoronaComplete, 2, 2, &no_r),
            Err(InvariantError::RequiresRH)
        );
        assert!(matches!(
            extremal_betti_position(Family::FullCoronaComplete, 1, 1, &b),
            Err(InvariantError::NoStatement(_))
        ));
    }

    #[test]
    fn extremal_p_is_pd() {
        for n in 2..=5 {
            for l in 1..=n {
                let r = depth_reg_corona_complete(n, l, &p3()).unwrap();
                assert_eq!(r.extremal_position.unwrap().0, r.pd.value, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let p4 = base_invariants_block_graph(&Graph::path(4)).unwrap();
        let spec = CoronaSpec::complete_base(3, 2, Graph::path(4)).unwrap();
        assert_eq!(classify(&spec, &p4).cm.value, Some(true));

        let spec = CoronaSpec::complete_base(2, 2, Graph::path(3)).unwrap();
        let v = classify(&spec, &p3());
        assert_eq!((v.unmixed.value, v.cm.value), (Some(false), Some(false)));
        assert!(!enumerate_cutsets(&spec.build().graph, None).unwrap().is_unmixed);

        let spec = CoronaSpec::complete_base(3, 3, Graph::complete(2)).unwrap();
        assert_eq!(classify(&spec, &BaseInvariants::complete(2)).cm.value, Some(true));

        // no proved rule covers L = {v, w}; L = {u} holds a cut vertex
        let g = Graph::from_edges(6, [(0, 3), (0, 1), (1, 2), (2, 3), (0, 4), (3, 5)]).unwrap();
        let spec = CoronaSpec::new(g.clone(), VertexSet::from_indices(6, [1, 2]), Graph::complete(2)).unwrap();
        assert_eq!(classify(&spec, &BaseInvariants::complete(2)).unmixed.value, None);
        let spec = CoronaSpec::new(g, VertexSet::from_indices(6, [0]), Graph::complete(2)).unwrap();
        assert_eq!(classify(&spec, &BaseInvariants::complete(2)).unmixed.value, Some(false));
    }

    #[test]
    fn report_json_has_provenance() {
        let json = depth_reg_corona_complete(2, 2, &p3()).unwrap().to_json();
        assert!(json.contains("\"provenance\": \"formula(dimension of l-corona over complete base)\""));
        assert!(json.contains("\"family\": \"full_corona_complete\""));
        assert!(json.contains("\"provenance\": \"closed-form\""));
    }
}
