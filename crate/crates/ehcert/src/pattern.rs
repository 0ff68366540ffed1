//! Exact induced-copy machinery: labeled copy counting, first-copy search,
//! edge-addition chains, extension counts, and rainbow copy search against
//! blockades.
//!
//! Copies are counted labeled (as isomorphisms onto induced subgraphs). The
//! clique-counting route counts vertex sets, which is smaller by a factor of
//! `k!`; every inequality consumed downstream is a lower bound, so labeled
//! counting preserves all of them.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;

/// An injective vertex map witnessing an isomorphism from `pattern` onto an
/// induced subgraph of some host: `map[u]` is the host image of pattern
/// vertex `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyMap {
    pub pattern: Graph,
    pub map: Vec<usize>,
}

impl CopyMap {
    /// Re-verifies the induced condition edge by edge in `host`.
    pub fn violations(&self, host: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.pattern.n();
        if self.map.len() != k {
            out.push(format!("map has {} entries for a {k}-vertex pattern", self.map.len()));
            return out;
        }
        let mut seen = std::collections::HashSet::new();
        for (u, &w) in self.map.iter().enumerate() {
            if w >= host.n() {
                out.push(format!("image {w} of {u} outside host"));
                return out;
            }
            if !seen.insert(w) {
                out.push(format!("map not injective at host vertex {w}"));
                return out;
            }
        }
        for u in 0..k {
            for v in (u + 1)..k {
                let pe = self.pattern.has_edge(u, v);
                let he = host.has_edge(self.map[u], self.map[v]);
                if pe != he {
                    out.push(format!(
                        "pair ({u},{v}) -> ({},{}) pattern edge {pe} host edge {he}",
                        self.map[u], self.map[v]
                    ));
                }
            }
        }
        out
    }

    pub fn verify(&self, host: &Graph) -> bool {
        self.violations(host).is_empty()
    }
}

fn density_weights<'a>(h: &'a Graph, g: &Graph) -> impl Fn(usize, usize) -> f64 + 'a {
    let n = g.n();
    let pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
    let rho = if pairs == 0 {
        0.5
    } else {
        (g.edge_count() as f64 / pairs as f64).clamp(0.05, 0.95)
    };
    move |u: usize, v: usize| {
        if h.has_edge(u, v) {
            rho
        } else {
            1.0 - rho
        }
    }
}

/// Orders pattern vertices so the most constraining (rarest in the host)
/// pairs appear earliest; for counting, the two vertices whose exclusion
/// leaves the rarest residual pattern go last.
fn counting_order(h: &Graph, g: &Graph) -> Vec<usize> {
    let k = h.n();
    let w = density_weights(h, g);
    // pick {p,q} maximizing the weight mass of pairs they touch
    let mut best: (f64, usize, usize) = (f64::INFINITY, 0, 1.max(k - 1));
    for p in 0..k {
        for q in (p + 1)..k {
            let mut resid = 0.0;
            for a in 0..k {
                for b in (a + 1)..k {
                    if a == p || a == q || b == p || b == q {
                        continue;
                    }
                    resid += w(a, b).ln();
                }
            }
            // smaller residual product = fewer expected partial maps
            if resid < best.0 - 1e-12 {
                best = (resid, p, q);
            }
        }
    }
    let (_, p, q) = best;
    let rest: Vec<usize> = (0..k).filter(|&v| v != p && v != q).collect();
    let mut order = greedy_constraint_order(h, g, &rest);
    order.push(p);
    order.push(q);
    order
}

fn greedy_constraint_order(h: &Graph, g: &Graph, verts: &[usize]) -> Vec<usize> {
    let w = density_weights(h, g);
    let mut remaining: Vec<usize> = verts.to_vec();
    let mut order = Vec::with_capacity(verts.len());
    while !remaining.is_empty() {
        let mut best_i = 0;
        let mut best_score = f64::INFINITY;
        for (i, &v) in remaining.iter().enumerate() {
            // product of weights against already-placed vertices: smaller is
            // more constraining. First pick: against all other pattern verts.
            let others: Box<dyn Iterator<Item = usize>> = if order.is_empty() {
                Box::new(verts.iter().copied().filter(move |&u| u != v))
            } else {
                Box::new(order.iter().copied())
            };
            let score: f64 = others.map(|u| w(u, v).ln()).sum();
            if score < best_score - 1e-12 {
                best_score = score;
                best_i = i;
            }
        }
        order.push(remaining.remove(best_i));
    }
    order
}

/// Candidate host vertices for pattern vertex `u`, given the placed prefix.
fn candidates(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    images: &[usize],
    u: usize,
    used: &Bits,
    base: Option<&Bits>,
) -> Bits {
    let mut cand = match base {
        Some(b) => b.clone(),
        None => Bits::full(g.n()),
    };
    cand.and_not_assign(used);
    for (pos, &a) in order.iter().enumerate().take(images.len()) {
        let w = images[pos];
        if h.has_edge(u, a) {
            cand.and_assign(g.neighbors(w));
        } else {
            cand.and_not_assign(g.neighbors(w));
        }
    }
    cand
}

fn check_count_limits(h: &Graph, g: &Graph, limits: &SearchLimits) -> Result<()> {
    // the cost guard is caller-visible and distinct from bad input: above
    // the ceiling the count is unknown, not wrong
    if h.n() > limits.count_pattern_ceiling {
        return Err(Error::SearchExhausted(format!(
            "ind_count: pattern with {} vertices exceeds ceiling {}",
            h.n(),
            limits.count_pattern_ceiling
        )));
    }
    if g.n() > limits.count_host_ceiling {
        return Err(Error::SearchExhausted(format!(
            "ind_count: host with {} vertices exceeds ceiling {}",
            g.n(),
            limits.count_host_ceiling
        )));
    }
    Ok(())
}

/// Exact number of labeled induced copies of `h` in `g`.
pub fn ind_count(h: &Graph, g: &Graph, limits: &SearchLimits) -> Result<u128> {
    check_count_limits(h, g, limits)?;
    let k = h.n();
    let n = g.n();
    if k == 0 {
        return Ok(1);
    }
    if k > n {
        return Ok(0);
    }
    if k == 1 {
        return Ok(n as u128);
    }
    let order = counting_order(h, g);
    let p = order[k - 2];
    let q = order[k - 1];
    let jorder = &order[..k - 2];
    let mut used = Bits::new(n);
    let mut images: Vec<usize> = Vec::with_capacity(k - 2);
    let mut total = 0u128;
    count_rec(
        g, h, jorder, p, q, &mut images, &mut used, &mut total,
    );
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn count_rec(
    g: &Graph,
    h: &Graph,
    jorder: &[usize],
    p: usize,
    q: usize,
    images: &mut Vec<usize>,
    used: &mut Bits,
    total: &mut u128,
) {
    if images.len() == jorder.len() {
        let pc = candidates(g, h, jorder, images, p, used, None);
        if pc.is_empty() {
            return;
        }
        let qc = candidates(g, h, jorder, images, q, used, None);
        if qc.is_empty() {
            return;
        }
        let qcount = qc.count() as u128;
        if h.has_edge(p, q) {
            for u in pc.iter() {
                *total += g.neighbors(u).and_count(&qc) as u128;
            }
        } else {
            for u in pc.iter() {
                let adj = g.neighbors(u).and_count(&qc) as u128;
                let selfhit = qc.contains(u) as u128;
                *total += qcount - adj - selfhit;
            }
        }
        return;
    }
    let u = jorder[images.len()];
    let cand = candidates(g, h, jorder, images, u, used, None);
    for w in cand.iter() {
        images.push(w);
        used.insert(w);
        count_rec(g, h, jorder, p, q, images, used, total);
        used.remove(w);
        images.pop();
    }
}

/// First induced copy of `h` in `g`, in deterministic search order, or `None`
/// with the guarantee that no copy exists. Exceeding the node budget is a
/// distinguished error, never a false negative.
pub fn find_copy(h: &Graph, g: &Graph, limits: &SearchLimits) -> Result<Option<CopyMap>> {
    let k = h.n();
    if k == 0 {
        return Ok(Some(CopyMap {
            pattern: h.clone(),
            map: Vec::new(),
        }));
    }
    if k > g.n() {
        return Ok(None);
    }
    let all: Vec<usize> = (0..k).collect();
    let order = greedy_constraint_order(h, g, &all);
    let mut images = Vec::with_capacity(k);
    let mut used = Bits::new(g.n());
    let mut budget = limits.find_copy_budget;
    let found = find_rec(g, h, &order, &mut images, &mut used, &mut budget)?;
    if !found {
        return Ok(None);
    }
    let mut map = vec![0usize; k];
    for (pos, &a) in order.iter().enumerate() {
        map[a] = images[pos];
    }
    let cm = CopyMap {
        pattern: h.clone(),
        map,
    };
    debug_assert!(cm.verify(g));
    Ok(Some(cm))
}

fn find_rec(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    images: &mut Vec<usize>,
    used: &mut Bits,
    budget: &mut u64,
) -> Result<bool> {
    if images.len() == order.len() {
        return Ok(true);
    }
    if *budget == 0 {
        return Err(Error::SearchExhausted(
            "find_copy: node budget exhausted".into(),
        ));
    }
    *budget -= 1;
    let u = order[images.len()];
    let cand = candidates(g, h, order, images, u, used, None);
    for w in cand.iter() {
        images.push(w);
        used.insert(w);
        if find_rec(g, h, order, images, used, budget)? {
            return Ok(true);
        }
        used.remove(w);
        images.pop();
    }
    Ok(false)
}

/// The edge-addition chain `H_0, ..., H_m` on the vertex set of `h`:
/// `H_0` edgeless, `H_m` complete, each step adds one edge, and
/// `H_{index_of_h} = h` with equality of labels. Going down from `h`, its
/// edges are removed in descending lexicographic order (so `H_j` keeps the
/// lexicographically first `j` edges); going up, non-edges are added in
/// ascending lexicographic order.
#[derive(Clone, Debug)]
pub struct EdgeChain {
    pub graphs: Vec<Graph>,
    pub index_of_h: usize,
    /// `added[i-1]` is the edge added in the step from `H_{i-1}` to `H_i`.
    pub added: Vec<(usize, usize)>,
}

pub fn edge_chain(h: &Graph) -> EdgeChain {
    let k = h.n();
    let m = k * (k - 1) / 2;
    let hedges = h.edges();
    let idx = hedges.len();
    let mut nonedges = Vec::with_capacity(m - idx);
    for u in 0..k {
        for v in (u + 1)..k {
            if !h.has_edge(u, v) {
                nonedges.push((u, v));
            }
        }
    }
    let mut added = Vec::with_capacity(m);
    added.extend_from_slice(&hedges);
    added.extend_from_slice(&nonedges);
    let mut graphs = Vec::with_capacity(m + 1);
    for i in 0..=m {
        graphs.push(Graph::from_edges(k, &added[..i]).expect("chain edges are valid"));
    }
    EdgeChain {
        graphs,
        index_of_h: idx,
        added,
    }
}

/// Extension data for a copy `psi` of `J = H_i minus {p, q}` where `pq` is
/// the edge added at step `i` of the chain.
#[derive(Clone, Debug)]
pub struct ExtensionCounts {
    /// Extensions of `psi` to copies of `H_i` (the `pq` edge present).
    pub x: u128,
    /// Extensions of `psi` to copies of `H_{i-1}` (the `pq` edge absent).
    pub y: u128,
    /// Valid images for `p` alone.
    pub p_set: Vec<usize>,
    /// Valid images for `q` alone.
    pub q_set: Vec<usize>,
    /// True when `p` and `q` have identical adjacency into `J`, which forces
    /// `P = Q`; otherwise `P` and `Q` are disjoint.
    pub same_row: bool,
}

/// Sorted vertex list of `J = V(h) minus {p, q}`.
pub fn chain_j_vertices(k: usize, p: usize, q: usize) -> Vec<usize> {
    (0..k).filter(|&v| v != p && v != q).collect()
}

pub fn extension_counts(
    chain: &EdgeChain,
    i: usize,
    g: &Graph,
    psi: &CopyMap,
) -> Result<ExtensionCounts> {
    if i == 0 || i >= chain.graphs.len() {
        return Err(Error::Precondition(format!(
            "extension_counts: step {i} outside 1..={}",
            chain.graphs.len() - 1
        )));
    }
    let hi = &chain.graphs[i];
    let (p, q) = chain.added[i - 1];
    let k = hi.n();
    let jverts = chain_j_vertices(k, p, q);
    let (jgraph, _) = hi.induced(&jverts).expect("valid vertex subset");
    if psi.pattern != jgraph {
        return Err(Error::Precondition(
            "extension_counts: psi is not a copy of H_i minus {p,q}".into(),
        ));
    }
    if !psi.verify(g) {
        return Err(Error::Precondition(
            "extension_counts: psi does not verify in the host".into(),
        ));
    }
    let mut used = Bits::new(g.n());
    for &w in &psi.map {
        used.insert(w);
    }
    let build = |x: usize| -> Bits {
        let mut cand = Bits::full(g.n());
        cand.and_not_assign(&used);
        for (pos, &a) in jverts.iter().enumerate() {
            let w = psi.map[pos];
            if hi.has_edge(x, a) {
                cand.and_assign(g.neighbors(w));
            } else {
                cand.and_not_assign(g.neighbors(w));
            }
        }
        cand
    };
    let pc = build(p);
    let qc = build(q);
    let same_row = jverts.iter().all(|&a| hi.has_edge(p, a) == hi.has_edge(q, a));
    debug_assert!(if same_row { pc == qc } else { pc.is_disjoint(&qc) });
    let qcount = qc.count() as u128;
    let mut x = 0u128;
    let mut y = 0u128;
    for u in pc.iter() {
        let adj = g.neighbors(u).and_count(&qc) as u128;
        x += adj;
        y += qcount - adj - qc.contains(u) as u128;
    }
    Ok(ExtensionCounts {
        x,
        y,
        p_set: pc.to_vec(),
        q_set: qc.to_vec(),
        same_row,
    })
}

/// Searches for a copy of the forest `f` whose image lies in the union of the
/// blocks and meets each block at most once. `None` is an exhaustive-search
/// guarantee; above the ceilings the search reports
/// [`Error::SearchExhausted`] instead of guessing.
pub fn rainbow_find(
    f: &Graph,
    blocks: &[Vec<usize>],
    g: &Graph,
    limits: &SearchLimits,
) -> Result<Option<CopyMap>> {
    if !f.is_acyclic() {
        return Err(Error::Precondition("rainbow_find: pattern is not a forest".into()));
    }
    if g.n() > limits.rainbow_host_ceiling || f.n() > limits.rainbow_forest_ceiling {
        return Err(Error::SearchExhausted(format!(
            "rainbow_find: host {} / forest {} above ceilings {}/{}",
            g.n(),
            f.n(),
            limits.rainbow_host_ceiling,
            limits.rainbow_forest_ceiling
        )));
    }
    let mut block_of = vec![usize::MAX; g.n()];
    for (bi, block) in blocks.iter().enumerate() {
        for &v in block {
            if v >= g.n() {
                return Err(Error::Precondition(format!(
                    "rainbow_find: block vertex {v} outside host"
                )));
            }
            if block_of[v] != usize::MAX {
                return Err(Error::Precondition(format!(
                    "rainbow_find: blocks overlap at vertex {v}"
                )));
            }
            block_of[v] = bi;
        }
    }
    let k = f.n();
    if k == 0 {
        return Ok(Some(CopyMap {
            pattern: f.clone(),
            map: Vec::new(),
        }));
    }
    if k > blocks.len() {
        return Ok(None);
    }
    // parent-first order within each component, components by smallest root
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    for comp in f.components() {
        let root = comp[0];
        let mut queue = std::collections::VecDeque::from([root]);
        placed[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in f.neighbors(u).iter() {
                if !placed[v] {
                    placed[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut avail = Bits::new(g.n());
    for block in blocks {
        for &v in block {
            avail.insert(v);
        }
    }
    let mut images: Vec<usize> = Vec::with_capacity(k);
    let mut budget = limits.rainbow_budget;
    let found = rainbow_rec(
        g, f, blocks, &block_of, &order, &mut images, &mut avail, &mut budget,
    )?;
    if !found {
        return Ok(None);
    }
    let mut map = vec![0usize; k];
    for (pos, &a) in order.iter().enumerate() {
        map[a] = images[pos];
    }
    let cm = CopyMap {
        pattern: f.clone(),
        map,
    };
    debug_assert!(cm.verify(g));
    Ok(Some(cm))
}

#[allow(clippy::too_many_arguments)]
fn rainbow_rec(
    g: &Graph,
    f: &Graph,
    blocks: &[Vec<usize>],
    block_of: &[usize],
    order: &[usize],
    images: &mut Vec<usize>,
    avail: &mut Bits,
    budget: &mut u64,
) -> Result<bool> {
    if images.len() == order.len() {
        return Ok(true);
    }
    if *budget == 0 {
        return Err(Error::SearchExhausted(
            "rainbow_find: node budget exhausted".into(),
        ));
    }
    *budget -= 1;
    let u = order[images.len()];
    let mut cand = avail.clone();
    for (pos, &a) in order.iter().enumerate().take(images.len()) {
        let w = images[pos];
        if f.has_edge(u, a) {
            cand.and_assign(g.neighbors(w));
        } else {
            cand.and_not_assign(g.neighbors(w));
        }
    }
    for w in cand.to_vec() {
        let b = block_of[w];
        let removed: Vec<usize> = blocks[b].iter().copied().filter(|&v| avail.contains(v)).collect();
        for &v in &removed {
            avail.remove(v);
        }
        images.push(w);
        if rainbow_rec(g, f, blocks, block_of, order, images, avail, budget)? {
            return Ok(true);
        }
        images.pop();
        for &v in &removed {
            avail.insert(v);
        }
    }
    Ok(false)
}
