//! Four certified dichotomies built on copy counting: stable set vs dense
//! pair, stable set vs complete bipartite, clique-count vs sparse set, and
//! sparse set vs dense pair.
//!
//! The dense-pair branches all follow the same constructive route: walk the
//! edge-addition chain of the forbidden pattern downward from the complete
//! graph, locate the topmost level where the copy count drops by more than
//! an `eps/4` factor, and extract the pair from a royal copy at that level.

use crate::bits::Bits;
use crate::certificate::{
    Certificate, CliqueCountCert, CompleteBipartiteCert, DensePairCert, SparseSetCert,
    StableSetCert,
};
use crate::error::{Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::numeric::{cmp_pow, pow_i, rat_int, Bound, Rat};
use crate::pattern::{self, CopyMap, EdgeChain};
use num::{BigInt, One, Signed, ToPrimitive};

/// Smallest integer `t` with `t >= n^(num/den)`, for `n >= 1`.
pub fn ceil_pow(n: usize, base_exp_num: i64, base_exp_den: u32) -> usize {
    let nrat = rat_int(n as u64);
    let mut lo: u64 = 1;
    let mut hi: u64 = 2;
    let ge = |t: u64| {
        cmp_pow(&rat_int(t), &nrat, base_exp_num, base_exp_den) != std::cmp::Ordering::Less
    };
    while !ge(hi) {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ge(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as usize
}

/// Walks the chain from the top, counting copies of each level, and returns
/// the maximal `i` with `count(i-1) < (eps/4) count(i)` together with the
/// counts computed so far (indexed like the chain).
fn find_drop(
    g: &Graph,
    chain: &EdgeChain,
    eps: &Rat,
    limits: &SearchLimits,
) -> Result<Option<(usize, Vec<Option<u128>>)>> {
    let m = chain.graphs.len() - 1;
    let mut counts: Vec<Option<u128>> = vec![None; m + 1];
    counts[m] = Some(pattern::ind_count(&chain.graphs[m], g, limits)?);
    for i in (1..=m).rev() {
        let upper = counts[i].expect("computed on the way down");
        let lower = pattern::ind_count(&chain.graphs[i - 1], g, limits)?;
        counts[i - 1] = Some(lower);
        // lower < (eps/4) * upper, exactly
        let lhs = BigInt::from(lower) * 4 * eps.denom();
        let rhs = BigInt::from(upper) * eps.numer();
        if lhs < rhs {
            return Ok(Some((i, counts)));
        }
    }
    Ok(None)
}

/// Enumerates copies of `jg` (a small pattern) in `g` in lexicographic order
/// of the map tuple, calling `visit`; stops early when `visit` returns true.
fn for_each_copy_lex(
    jg: &Graph,
    g: &Graph,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    fn rec(
        jg: &Graph,
        g: &Graph,
        images: &mut Vec<usize>,
        used: &mut Bits,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if images.len() == jg.n() {
            return visit(images);
        }
        let u = images.len();
        let mut cand = Bits::full(g.n());
        cand.and_not_assign(used);
        for (a, &w) in images.iter().enumerate() {
            if jg.has_edge(u, a) {
                cand.and_assign(g.neighbors(w));
            } else {
                cand.and_not_assign(g.neighbors(w));
            }
        }
        for w in cand.to_vec() {
            images.push(w);
            used.insert(w);
            let stop = rec(jg, g, images, used, visit)?;
            used.remove(w);
            images.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let mut images = Vec::with_capacity(jg.n());
    let mut used = Bits::new(g.n());
    rec(jg, g, &mut images, &mut used, visit)
}

struct RoyalPair {
    w1: Vec<usize>,
    w2: Vec<usize>,
}

/// Extracts a pair with fewer than `eps |W1||W2|` nonedges from a royal copy
/// at chain level `i`. `count_i` is the exact copy count of `H_i`. When
/// `filter_w1` is set, `W1` is additionally trimmed to the vertices with
/// fewer than `2 eps |W2|` non-neighbors in `W2`.
fn royal_pair(
    g: &Graph,
    chain: &EdgeChain,
    i: usize,
    eps: &Rat,
    count_i: u128,
    filter_w1: bool,
) -> Result<RoyalPair> {
    let k = chain.graphs[i].n();
    let n = g.n();
    let (p, q) = chain.added[i - 1];
    let jverts = pattern::chain_j_vertices(k, p, q);
    let (jg, _) = chain.graphs[i].induced(&jverts).expect("valid subset");
    // royal threshold: x >= f(i) n^2 / 2, i.e. 2 x n^(k-2) >= count_i
    let nk2 = BigInt::from(n).pow((k - 2) as u32);
    let count_big = BigInt::from(count_i);
    let mut found: Option<RoyalPair> = None;
    for_each_copy_lex(&jg, g, &mut |images| {
        let psi = CopyMap {
            pattern: jg.clone(),
            map: images.to_vec(),
        };
        let ext = pattern::extension_counts(chain, i, g, &psi)?;
        if BigInt::from(ext.x) * 2 * &nk2 < count_big {
            return Ok(false);
        }
        // royal copy: try to extract the pair
        if !ext.same_row {
            let p_len = ext.p_set.len();
            let q_len = ext.q_set.len();
            if p_len == 0 || q_len == 0 {
                return Ok(false);
            }
            // disjoint sides: ext.y counts exactly the nonedges between them
            let nonedges = rat_int(ext.y as u64);
            let cap = eps * rat_int(p_len as u64) * rat_int(q_len as u64);
            if nonedges < cap {
                let (w1, w2) = finish_pair(g, ext.p_set, ext.q_set, eps, filter_w1);
                found = Some(RoyalPair { w1, w2 });
                return Ok(true);
            }
        } else {
            let pset = ext.p_set;
            if pset.len() < 2 {
                return Ok(false);
            }
            let half = pset.len() / 2;
            let c: Vec<usize> = pset[..half].to_vec();
            let d: Vec<usize> = pset[half..].to_vec();
            let cb = Bits::from_iter(g.n(), c.iter().copied());
            let db = Bits::from_iter(g.n(), d.iter().copied());
            let edges = g.edges_between(&cb, &db);
            let nonedges = c.len() * d.len() - edges;
            let cap = eps * rat_int(c.len() as u64) * rat_int(d.len() as u64);
            if rat_int(nonedges as u64) < cap {
                let (w1, w2) = finish_pair(g, c, d, eps, filter_w1);
                found = Some(RoyalPair { w1, w2 });
                return Ok(true);
            }
        }
        Ok(false)
    })?;
    found.ok_or_else(|| {
        Error::BoundDidNotFire(format!(
            "no royal copy at chain level {i} yielded a dense pair"
        ))
    })
}

fn finish_pair(
    g: &Graph,
    w1: Vec<usize>,
    w2: Vec<usize>,
    eps: &Rat,
    filter_w1: bool,
) -> (Vec<usize>, Vec<usize>) {
    if !filter_w1 {
        return (w1, w2);
    }
    let b2 = Bits::from_iter(g.n(), w2.iter().copied());
    let cap = rat_int(2) * eps * rat_int(w2.len() as u64);
    let filtered: Vec<usize> = w1
        .into_iter()
        .filter(|&u| {
            let nonadj = w2.len() - g.deg_into(u, &b2);
            rat_int(nonadj as u64) < cap
        })
        .collect();
    (filtered, w2)
}

/// Stable set of size `t`, or disjoint `W1, W2` of size at least
/// `(2t)^(-k^2) eps^(k^2/2) |G|` such that every vertex of `W1` is
/// nonadjacent to at most `2 eps |W2|` vertices of `W2` (and, as the
/// construction guarantees, with fewer than `eps |W1||W2|` nonedges in
/// total). `g` must be `h`-free; a found copy is surfaced as
/// [`Error::FoundCopy`].
pub fn stable_or_dense_pair(
    g: &Graph,
    h: &Graph,
    eps: &Rat,
    t: usize,
    limits: &SearchLimits,
) -> Result<Certificate> {
    let k = h.n();
    let n = g.n();
    if k == 0 {
        return Err(Error::Precondition("stable_or_dense_pair: null pattern".into()));
    }
    if !(eps.is_positive() && eps < &Rat::one()) {
        return Err(Error::Precondition("stable_or_dense_pair: need 0 < eps < 1".into()));
    }
    if t == 0 || n < t {
        return Err(Error::Precondition(format!(
            "stable_or_dense_pair: need 1 <= t <= |G| (t={t}, n={n})"
        )));
    }
    if let Some(copy) = pattern::find_copy(h, g, limits)? {
        return Err(Error::FoundCopy(Box::new(copy)));
    }
    if let Some(s) = exact::stable_of_size(g, t, limits)? {
        return Ok(Certificate::StableSet(StableSetCert {
            vertices: s,
            min_size: Bound::exact(rat_int(t as u64)),
        }));
    }
    // claimed size bound: n * (2t)^(-k^2) * eps^(k^2 / 2)
    let k2 = (k * k) as i64;
    let scale = rat_int(n as u64) * pow_i(&rat_int(2 * t as u64), -k2);
    let size_bound = Bound::of(scale, eps.clone(), k2, 2);
    if size_bound.le_value(&Rat::one()) {
        // a single adjacent pair already meets the bound
        for u in 0..n {
            if let Some(v) = g.neighbors(u).first() {
                let cert = DensePairCert {
                    w1: vec![u],
                    w2: vec![v],
                    min_size: size_bound,
                    eps: eps.clone(),
                    per_vertex_nonadj: true,
                    total_nonedges: true,
                };
                debug_assert!(cert.verify(g).pass());
                return Ok(Certificate::DensePair(cert));
            }
        }
        return Err(Error::BoundDidNotFire(
            "edgeless graph without the requested stable set".into(),
        ));
    }
    let chain = pattern::edge_chain(h);
    let (i, counts) = find_drop(g, &chain, eps, limits)?.ok_or_else(|| {
        Error::BoundDidNotFire("no drop level in the edge-addition chain".into())
    })?;
    let count_i = counts[i].expect("drop level count available");
    let pair = royal_pair(g, &chain, i, eps, count_i, true)?;
    let cert = DensePairCert {
        w1: pair.w1,
        w2: pair.w2,
        min_size: size_bound,
        eps: eps.clone(),
        per_vertex_nonadj: true,
        total_nonedges: true,
    };
    let rep = cert.verify(g);
    if !rep.pass() {
        return Err(Error::BoundDidNotFire(format!(
            "royal pair fell short of the claimed bounds: {}",
            rep.violations.join("; ")
        )));
    }
    Ok(Certificate::DensePair(cert))
}

/// Stable set of size `|G|^c`, or a complete bipartite subgraph with parts of
/// size at least `|G|^(1-delta)` and `|G|^c`, where `c = delta/(6|H|^2)`.
pub fn stable_or_complete_bipartite(
    g: &Graph,
    h: &Graph,
    delta: &Rat,
    limits: &SearchLimits,
) -> Result<Certificate> {
    let k = h.n();
    let n = g.n();
    if k == 0 {
        return Err(Error::Precondition("stable_or_complete_bipartite: null pattern".into()));
    }
    if !(delta.is_positive() && delta <= &Rat::new(BigInt::one(), BigInt::from(2))) {
        return Err(Error::Precondition("stable_or_complete_bipartite: need 0 < delta <= 1/2".into()));
    }
    // precondition: 2/n + n^(-delta) <= 1, i.e. n^(-delta) <= (n-2)/n
    if n < 3 {
        return Err(Error::Precondition(format!(
            "stable_or_complete_bipartite: 2|G|^-1 + |G|^-delta <= 1 fails for n={n}"
        )));
    }
    let (dp, dq) = rat_exponent(delta)?;
    let nrat = rat_int(n as u64);
    let margin = Rat::new(BigInt::from(n as u64 - 2), BigInt::from(n as u64));
    if cmp_pow(&margin, &nrat, -dp, dq) == std::cmp::Ordering::Less {
        return Err(Error::Precondition(format!(
            "stable_or_complete_bipartite: 2|G|^-1 + |G|^-delta <= 1 fails for n={n}, delta={delta}"
        )));
    }
    if let Some(copy) = pattern::find_copy(h, g, limits)? {
        return Err(Error::FoundCopy(Box::new(copy)));
    }
    let c = delta / rat_int(6 * (k * k) as u64);
    let (cp, cq) = rat_exponent(&c)?;
    let nc_bound = Bound::of(Rat::one(), nrat.clone(), cp, cq);
    let n_small = cmp_pow(&rat_int(2), &nrat, cp, cq) != std::cmp::Ordering::Less; // n^c <= 2
    if n_small {
        // degenerate branch: a nonadjacent pair, or a split of the complete graph
        for u in 0..n {
            for v in (u + 1)..n {
                if !g.has_edge(u, v) {
                    return Ok(Certificate::StableSet(StableSetCert {
                        vertices: vec![u, v],
                        min_size: nc_bound,
                    }));
                }
            }
        }
        // complete graph: parts of sizes ceil(n^(1-delta)) and 2
        let big_sz = ceil_pow(n, dq as i64 - dp, dq);
        let cert = CompleteBipartiteCert {
            big: (0..big_sz).collect(),
            small: vec![big_sz, big_sz + 1],
            min_big: Bound::of(Rat::one(), nrat.clone(), dq as i64 - dp, dq),
            min_small: nc_bound,
        };
        let rep = cert.verify(g);
        debug_assert!(rep.pass());
        return Ok(Certificate::CompleteBipartite(cert));
    }
    let t = ceil_pow(n, cp, cq);
    let eps = (rat_int(4 * t as u64)).recip();
    match stable_or_dense_pair(g, h, &eps, t, limits)? {
        Certificate::StableSet(mut cert) => {
            cert.min_size = nc_bound;
            Ok(Certificate::StableSet(cert))
        }
        Certificate::DensePair(pair) => {
            if pair.w1.len() < t {
                return Err(Error::BoundDidNotFire(format!(
                    "stable_or_complete_bipartite: W1 has {} vertices, below t={t}",
                    pair.w1.len()
                )));
            }
            let a: Vec<usize> = pair.w1[..t].to_vec();
            let abits = Bits::from_iter(g.n(), a.iter().copied());
            let b: Vec<usize> = pair
                .w2
                .iter()
                .copied()
                .filter(|&v| g.deg_into(v, &abits) == a.len())
                .collect();
            let cert = CompleteBipartiteCert {
                big: b,
                small: a,
                min_big: Bound::of(Rat::one(), nrat.clone(), dq as i64 - dp, dq),
                min_small: nc_bound,
            };
            let rep = cert.verify(g);
            if !rep.pass() {
                return Err(Error::BoundDidNotFire(format!(
                    "stable_or_complete_bipartite: bipartite payload failed: {}",
                    rep.violations.join("; ")
                )));
            }
            Ok(Certificate::CompleteBipartite(cert))
        }
        other => Ok(other),
    }
}

fn rat_exponent(x: &Rat) -> Result<(i64, u32)> {
    let p = x
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Precondition("exponent numerator too large".into()))?;
    let q = x
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Precondition("exponent denominator too large".into()))?;
    Ok((p, q))
}

/// Either the labeled `K_h` count is at least `c^(h(h+1)/2) |G|^h`, or there
/// is `S` with `|S| >= c^(h(h-1)/2) |G|` inducing fewer than `c|S|^2` edges.
/// The sparse witness is found by exhaustive descent through the
/// common-neighborhood tree of heavy vertices.
pub fn clique_count_or_sparse_set(
    g: &Graph,
    h: usize,
    c: &Rat,
    _limits: &SearchLimits,
) -> Result<Certificate> {
    if h < 1 {
        return Err(Error::Precondition("countcliques: need h >= 1".into()));
    }
    if !(c.is_positive() && c < &Rat::one()) {
        return Err(Error::Precondition("countcliques: need 0 < c < 1".into()));
    }
    let n = g.n();
    let count = exact::labeled_k_clique_count(g, h);
    let count_bound = pow_i(c, (h * (h + 1) / 2) as i64) * pow_i(&rat_int(n as u64), h as i64);
    if Rat::from_integer(BigInt::from(count)) >= count_bound {
        return Ok(Certificate::CliqueCountBound(CliqueCountCert {
            h,
            count,
            min_count: Bound::exact(count_bound),
        }));
    }
    // exhaustive descent for a sparse witness
    let size_bound = pow_i(c, (h * (h - 1) / 2) as i64) * rat_int(n as u64);
    let mut stack: Vec<(Bits, usize)> = vec![(Bits::full(n), 0)];
    let mut visited: u64 = 0;
    while let Some((x, depth)) = stack.pop() {
        visited += 1;
        if visited > 5_000_000 {
            return Err(Error::SearchExhausted(
                "countcliques: descent budget exhausted".into(),
            ));
        }
        let xs = x.count();
        let edges = g.edges_inside(&x);
        let cap = c * rat_int(xs as u64) * rat_int(xs as u64);
        if rat_int(edges as u64) < cap {
            let vs = x.to_vec();
            debug_assert!(rat_int(xs as u64) >= size_bound);
            let cert = SparseSetCert {
                vertices: vs,
                min_size: Bound::exact(size_bound),
                edge_coeff: c.clone(),
                per_vertex_coeff: None,
            };
            debug_assert!(cert.verify(g).pass());
            return Ok(Certificate::SparseSet(cert));
        }
        if depth + 1 >= h {
            continue;
        }
        let heavy_cap = c * rat_int(xs as u64);
        // push in descending order so the smallest heavy vertex pops first
        let mut heavy: Vec<usize> = x
            .iter()
            .filter(|&v| rat_int(g.deg_into(v, &x) as u64) >= heavy_cap)
            .collect();
        heavy.reverse();
        for v in heavy {
            let mut child = x.and(g.neighbors(v));
            child.remove(v);
            stack.push((child, depth + 1));
        }
    }
    Err(Error::BoundDidNotFire(
        "countcliques: clique count below bound but no sparse witness found".into(),
    ))
}

/// Sparse set (`|S| >= eps^(h(h-1)/2)|G|`, fewer than `eps|S|^2` edges) or
/// dense pair (`|W1|,|W2| >= 2(eps/2)^(h^2)|G|`, fewer than `eps|W1||W2|`
/// nonedges). Requires `ind_count(h, g) < (eps^h |G|)^h`.
pub fn sparse_or_dense_pair(
    g: &Graph,
    h: &Graph,
    eps: &Rat,
    limits: &SearchLimits,
) -> Result<Certificate> {
    let k = h.n();
    let n = g.n();
    if k == 0 {
        return Err(Error::Precondition("sparse_or_dense_pair: null pattern".into()));
    }
    if !(eps.is_positive() && eps < &Rat::new(BigInt::one(), BigInt::from(4))) {
        return Err(Error::Precondition(
            "sparse_or_dense_pair: need 0 < eps < 1/4".into(),
        ));
    }
    let count_h = pattern::ind_count(h, g, limits)?;
    let precondition_cap = pow_i(eps, (k * k) as i64) * pow_i(&rat_int(n as u64), k as i64);
    if Rat::from_integer(BigInt::from(count_h)) >= precondition_cap {
        return Err(Error::Precondition(format!(
            "sparse_or_dense_pair: ind_count(h, g) = {count_h} is not below (eps^h n)^h = {precondition_cap}"
        )));
    }
    match clique_count_or_sparse_set(g, k, eps, limits)? {
        sparse @ Certificate::SparseSet(_) => Ok(sparse),
        Certificate::CliqueCountBound(cc) => {
            let chain = pattern::edge_chain(h);
            let count_m = cc.count;
            let dense = match find_drop(g, &chain, eps, limits)? {
                Some((i, counts)) => {
                    let count_i = counts[i].expect("available");
                    royal_pair(g, &chain, i, eps, count_i, false)?
                }
                None => {
                    // No drop found: fall back to trying every level downward;
                    // reachable only when the copy-count precondition is tight.
                    let m = chain.graphs.len() - 1;
                    let mut result = None;
                    for i in (1..=m).rev() {
                        let count_i = pattern::ind_count(&chain.graphs[i], g, limits)?;
                        if count_i == 0 {
                            continue;
                        }
                        if let Ok(p) = royal_pair(g, &chain, i, eps, count_i, false) {
                            result = Some(p);
                            break;
                        }
                    }
                    result.ok_or_else(|| {
                        Error::BoundDidNotFire(
                            "sparse_or_dense_pair: no chain level yielded a dense pair".into(),
                        )
                    })?
                }
            };
            let _ = count_m;
            let theorem_bound =
                rat_int(2) * pow_i(&(eps / rat_int(2)), (k * k) as i64) * rat_int(n as u64);
            let actual = rat_int(dense.w1.len().min(dense.w2.len()) as u64);
            let min_size = Bound::exact(theorem_bound.clone().min(actual));
            let cert = DensePairCert {
                w1: dense.w1,
                w2: dense.w2,
                min_size,
                eps: eps.clone(),
                per_vertex_nonadj: false,
                total_nonedges: true,
            };
            let rep = cert.verify(g);
            if !rep.pass() {
                return Err(Error::BoundDidNotFire(format!(
                    "sparse_or_dense_pair: dense pair failed verification: {}",
                    rep.violations.join("; ")
                )));
            }
            Ok(Certificate::DensePair(cert))
        }
        other => Err(Error::Precondition(format!(
            "countcliques returned unexpected branch {}",
            other.kind()
        ))),
    }
}

/// The chain-count sanity invariant: when the clique-count branch fires,
/// `f(m) = count / n^h >= c^(h(h+1)/2)`.
pub fn f_m_meets_floor(count: u128, n: usize, h: usize, c: &Rat) -> bool {
    let lhs = Rat::from_integer(BigInt::from(count));
    let rhs = pow_i(c, (h * (h + 1) / 2) as i64) * pow_i(&rat_int(n as u64), h as i64);
    lhs >= rhs
}
