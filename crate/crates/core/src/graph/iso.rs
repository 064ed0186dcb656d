use super::{Graph, GraphError};

/// Default vertex cap for [`is_isomorphic_small`].
pub const DEFAULT_ISO_BOUND: usize = 12;

/// Exact isomorphism test by backtracking, capped at [`DEFAULT_ISO_BOUND`] vertices.
pub fn is_isomorphic_small(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    is_isomorphic_with_bound(a, b, DEFAULT_ISO_BOUND)
}

pub fn is_isomorphic_with_bound(a: &Graph, b: &Graph, bound: usize) -> Result<bool, GraphError> {
    for g in [a, b] {
        if g.n() > bound {
            return Err(GraphError::SizeBound { n: g.n(), bound });
        }
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    let deg_a = da.clone();
    let deg_b = db.clone();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    // Map high-degree vertices of `a` first; they constrain the search most.
    let mut order: Vec<usize> = (0..a.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg_a[v]));
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    Ok(extend(a, b, &order, 0, &deg_a, &deg_b, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    depth: usize,
    deg_a: &[usize],
    deg_b: &[usize],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    for cand in 0..b.n() {
        if used[cand] || deg_b[cand] != deg_a[u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&prev| a.has_edge(u, prev) == b.has_edge(cand, map[prev]));
        if !consistent {
            continue;
        }
        map[u] = cand;
        used[cand] = true;
        if extend(a, b, order, depth + 1, deg_a, deg_b, map, used) {
            return true;
        }
        used[cand] = false;
        map[u] = usize::MAX;
    }
    false
}

/// Canonical code: the lexicographically largest upper-triangle adjacency
/// bitstring over all vertex orders that list vertices by non-increasing
/// degree. Only meant for tiny graphs (n <= 11).
pub(crate) fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical_code supports at most 11 vertices");
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for v in by_deg {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    permute_classes(g, &classes, 0, &mut perm, &mut best);
    best
}

fn permute_classes(g: &Graph, classes: &[Vec<usize>], ci: usize, perm: &mut Vec<usize>, best: &mut u64) {
    if ci == classes.len() {
        let code = encode(g, perm);
        if code > *best {
            *best = code;
        }
        return;
    }
    let k = classes[ci].len();
    heap_permutations(k, &mut classes[ci].clone(), &mut |p| {
        let base = perm.len();
        perm.extend_from_slice(p);
        permute_classes(g, classes, ci + 1, perm, best);
        perm.truncate(base);
    });
}

fn heap_permutations(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, items, f);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, items, f);
}

fn encode(g: &Graph, perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..perm.len() {
        for i in 0..j {
            code = code << 1 | g.has_edge(perm[i], perm[j]) as u64;
        }
    }
    code
}

/// Rebuilds a graph from a canonical code on `n` vertices.
pub(crate) fn decode(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit = total;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("decoded edges are valid")
}
