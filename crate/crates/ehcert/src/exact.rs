//! Exact maximum clique / stable set (branch and bound with greedy coloring
//! bounds), exact k-clique counting, and constructive Ramsey extraction.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;

fn check_ceiling(g: &Graph, limits: &SearchLimits) -> Result<()> {
    if g.n() > limits.alpha_omega_ceiling {
        return Err(Error::Precondition(format!(
            "graph with {} vertices exceeds the exact solver ceiling {}",
            g.n(),
            limits.alpha_omega_ceiling
        )));
    }
    Ok(())
}

/// Greedy coloring of the candidate set in ascending vertex order. Returns
/// candidates sorted by color class (ascending); the color number is an upper
/// bound for the clique size inside the class prefix.
fn color_sort(g: &Graph, cand: &Bits) -> Vec<(usize, usize)> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_bits: Vec<Bits> = Vec::new();
    for v in cand.iter() {
        let mut placed = false;
        for (ci, bits) in class_bits.iter_mut().enumerate() {
            if g.neighbors(v).and_count(bits) == 0 {
                bits.insert(v);
                classes[ci].push(v);
                placed = true;
                break;
            }
        }
        if !placed {
            let mut b = Bits::new(g.n());
            b.insert(v);
            class_bits.push(b);
            classes.push(vec![v]);
        }
    }
    let mut out = Vec::with_capacity(cand.count());
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            out.push((v, ci + 1));
        }
    }
    out
}

fn expand(
    g: &Graph,
    cur: &mut Vec<usize>,
    cand: &Bits,
    best: &mut Vec<usize>,
    stop_at: Option<usize>,
) -> bool {
    let order = color_sort(g, cand);
    let mut cand = cand.clone();
    for &(v, color) in order.iter().rev() {
        if let Some(t) = stop_at {
            if best.len() >= t {
                return true;
            }
        }
        if cur.len() + color <= best.len() {
            return false;
        }
        cur.push(v);
        let next = cand.and(g.neighbors(v));
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if !next.is_empty() && expand(g, cur, &next, best, stop_at) {
            cur.pop();
            return true;
        }
        cur.pop();
        cand.remove(v);
    }
    false
}

/// Exact maximum clique, deterministic (first optimum in branch order).
pub fn max_clique(g: &Graph, limits: &SearchLimits) -> Result<Vec<usize>> {
    check_ceiling(g, limits)?;
    let mut best = Vec::new();
    if g.n() == 0 {
        return Ok(best);
    }
    let mut cur = Vec::new();
    expand(g, &mut cur, &Bits::full(g.n()), &mut best, None);
    best.sort_unstable();
    debug_assert!(g.is_clique(&best));
    Ok(best)
}

/// First clique of size at least `target` in branch order, if any.
pub fn clique_of_size(g: &Graph, target: usize, limits: &SearchLimits) -> Result<Option<Vec<usize>>> {
    check_ceiling(g, limits)?;
    if target == 0 {
        return Ok(Some(Vec::new()));
    }
    if target > g.n() {
        return Ok(None);
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    expand(g, &mut cur, &Bits::full(g.n()), &mut best, Some(target));
    if best.len() >= target {
        best.truncate(target);
        best.sort_unstable();
        debug_assert!(g.is_clique(&best));
        Ok(Some(best))
    } else {
        Ok(None)
    }
}

pub fn max_stable(g: &Graph, limits: &SearchLimits) -> Result<Vec<usize>> {
    let s = max_clique(&g.complement(), limits)?;
    debug_assert!(g.is_stable(&s));
    Ok(s)
}

pub fn stable_of_size(g: &Graph, target: usize, limits: &SearchLimits) -> Result<Option<Vec<usize>>> {
    let s = clique_of_size(&g.complement(), target, limits)?;
    if let Some(ref v) = s {
        debug_assert!(g.is_stable(v));
    }
    Ok(s)
}

/// Number of cliques of size `k`, counted as vertex sets. Enumerates in
/// ascending vertex order so each set is visited once.
pub fn count_k_cliques(g: &Graph, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    if k > g.n() {
        return 0;
    }
    fn rec(g: &Graph, cand: &Bits, need: usize, count: &mut u128) {
        if need == 0 {
            *count += 1;
            return;
        }
        let mut cand = cand.clone();
        while cand.count() >= need {
            let v = cand.first().unwrap();
            cand.remove(v);
            let next = cand.and(g.neighbors(v));
            rec(g, &next, need - 1, count);
        }
    }
    let mut count = 0u128;
    rec(g, &Bits::full(g.n()), k, &mut count);
    count
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Labeled count of `K_k` copies: sets times `k!`.
pub fn labeled_k_clique_count(g: &Graph, k: usize) -> u128 {
    count_k_cliques(g, k) * factorial(k)
}

/// Injected exact stable/clique solver. The handset construction consumes
/// real maximum stable sets where the source argument only needs their
/// existence, so the solver is a parameter rather than a fixed call.
pub trait AlphaOmegaOracle {
    fn max_stable(&self, g: &Graph) -> Result<Vec<usize>>;
    fn max_clique(&self, g: &Graph) -> Result<Vec<usize>>;
}

/// Branch-and-bound exact solver behind the oracle interface.
pub struct ExactOracle(pub SearchLimits);

impl AlphaOmegaOracle for ExactOracle {
    fn max_stable(&self, g: &Graph) -> Result<Vec<usize>> {
        max_stable(g, &self.0)
    }

    fn max_clique(&self, g: &Graph) -> Result<Vec<usize>> {
        max_clique(g, &self.0)
    }
}

#[derive(Clone, Debug)]
pub enum RamseyOutcome {
    Stable(Vec<usize>),
    Clique(Vec<usize>),
}

/// Constructive Ramsey extraction: any graph with at least `t^k` vertices has
/// a stable set of size `t` or a clique of size `k`. Recursion: pick the first
/// vertex, descend into its non-neighborhood if that has at least `(t-1)^k`
/// vertices, otherwise into its neighborhood (which then has at least
/// `t^(k-1)` by pigeonhole).
pub fn ramsey_extract(g: &Graph, t: usize, k: usize) -> Result<RamseyOutcome> {
    let need = (t as u128).checked_pow(k as u32).ok_or_else(|| {
        Error::Precondition("ramsey_extract: t^k overflows".into())
    })?;
    if (g.n() as u128) < need {
        return Err(Error::Precondition(format!(
            "ramsey_extract: need at least t^k = {need} vertices, have {}",
            g.n()
        )));
    }
    let all = Bits::full(g.n());
    let out = ramsey_rec(g, &all, t, k)?;
    match &out {
        RamseyOutcome::Stable(s) => {
            debug_assert!(s.len() == t && g.is_stable(s));
        }
        RamseyOutcome::Clique(c) => {
            debug_assert!(c.len() == k && g.is_clique(c));
        }
    }
    Ok(out)
}

fn ramsey_rec(g: &Graph, set: &Bits, t: usize, k: usize) -> Result<RamseyOutcome> {
    if t == 0 {
        return Ok(RamseyOutcome::Stable(Vec::new()));
    }
    if k == 0 {
        return Ok(RamseyOutcome::Clique(Vec::new()));
    }
    let v = set
        .first()
        .ok_or_else(|| Error::Precondition("ramsey recursion on empty set".into()))?;
    if t == 1 {
        return Ok(RamseyOutcome::Stable(vec![v]));
    }
    if k == 1 {
        return Ok(RamseyOutcome::Clique(vec![v]));
    }
    let mut non = set.clone();
    non.and_not_assign(g.neighbors(v));
    non.remove(v);
    let nbr = set.and(g.neighbors(v));

    let non_need = ((t - 1) as u128).pow(k as u32);
    if non.count() as u128 >= non_need {
        return Ok(match ramsey_rec(g, &non, t - 1, k)? {
            RamseyOutcome::Stable(mut s) => {
                s.push(v);
                s.sort_unstable();
                RamseyOutcome::Stable(s)
            }
            clique => clique,
        });
    }
    let nbr_need = (t as u128).pow((k - 1) as u32);
    if (nbr.count() as u128) < nbr_need {
        return Err(Error::Precondition(
            "ramsey recursion: pigeonhole failed; input below t^k".into(),
        ));
    }
    Ok(match ramsey_rec(g, &nbr, t, k - 1)? {
        RamseyOutcome::Clique(mut c) => {
            c.push(v);
            c.sort_unstable();
            RamseyOutcome::Clique(c)
        }
        stable => stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::testutil::{brute_max_clique, random_graph_for_tests};

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn cliques_on_small_named_graphs() {
        let k7 = Graph::complete(7);
        assert_eq!(max_clique(&k7, &lim()).unwrap().len(), 7);
        assert_eq!(max_stable(&k7, &lim()).unwrap().len(), 1);

        let c5 = generate::cycle(5);
        assert_eq!(max_clique(&c5, &lim()).unwrap().len(), 2);
        assert_eq!(max_stable(&c5, &lim()).unwrap().len(), 2);
    }

    #[test]
    fn bb_matches_subset_enumeration() {
        for seed in 0..8u64 {
            let g = random_graph_for_tests(20, 0.5, seed);
            let bb = max_clique(&g, &lim()).unwrap();
            let brute = brute_max_clique(&g);
            assert_eq!(bb.len(), brute.len(), "seed {seed}");
            assert!(g.is_clique(&bb));
        }
    }

    #[test]
    fn omega_equals_alpha_of_complement() {
        for seed in 0..6u64 {
            let g = random_graph_for_tests(18, 0.4, seed);
            let w = max_clique(&g, &lim()).unwrap().len();
            let a = max_stable(&g.complement(), &lim()).unwrap().len();
            assert_eq!(w, a);
        }
    }

    #[test]
    fn decision_variants_stop_early() {
        let g = Graph::complete(30);
        let c = clique_of_size(&g, 5, &lim()).unwrap().unwrap();
        assert_eq!(c.len(), 5);
        assert!(g.is_clique(&c));
        assert!(stable_of_size(&g, 2, &lim()).unwrap().is_none());
    }

    #[test]
    fn k_clique_counts() {
        let k5 = Graph::complete(5);
        assert_eq!(count_k_cliques(&k5, 3), 10);
        assert_eq!(labeled_k_clique_count(&k5, 3), 60);
        let c5 = generate::cycle(5);
        assert_eq!(count_k_cliques(&c5, 2), 5);
        assert_eq!(count_k_cliques(&c5, 3), 0);
    }

    #[test]
    fn ramsey_trivial_cases() {
        let edgeless = Graph::empty(27);
        match ramsey_extract(&edgeless, 3, 3).unwrap() {
            RamseyOutcome::Stable(s) => assert_eq!(s.len(), 3),
            _ => panic!("expected stable set"),
        }
        let k27 = Graph::complete(27);
        match ramsey_extract(&k27, 3, 3).unwrap() {
            RamseyOutcome::Clique(c) => assert_eq!(c.len(), 3),
            _ => panic!("expected clique"),
        }
    }

    #[test]
    fn ramsey_random_certificates_verify() {
        for seed in 0..30u64 {
            let g = random_graph_for_tests(27, 0.5, seed);
            match ramsey_extract(&g, 3, 3).unwrap() {
                RamseyOutcome::Stable(s) => {
                    assert_eq!(s.len(), 3);
                    assert!(g.is_stable(&s));
                }
                RamseyOutcome::Clique(c) => {
                    assert_eq!(c.len(), 3);
                    assert!(g.is_clique(&c));
                }
            }
        }
    }

    #[test]
    fn ramsey_rejects_small_input() {
        assert!(ramsey_extract(&Graph::empty(26), 3, 3).is_err());
    }
}
