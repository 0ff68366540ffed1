//! From a y-sparse h-free graph, either a much sparser large subset or a
//! sequence of dense pairs that are pairwise sparse to each other.
//!
//! The driver repeatedly applies the sparse-set/dense-pair dichotomy to the
//! residual graph (pairs found so far removed, together with every vertex
//! attached too strongly to them), trims each dense pair to an exact size by
//! averaging, and finishes with a cleaning pass that enforces the cross-pair
//! sparsity.

use crate::bits::Bits;
use crate::certificate::{Certificate, SparseSetCert, VerifyReport};
use crate::constants::ConstantSheet;
use crate::error::{Error, Result};
use crate::dichotomies::sparse_or_dense_pair;
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::numeric::{ceil_usize, rat_int, Bound, Rat};
use crate::pattern;

/// Sequence of dense pairs `(A_i, B_i)`, pairwise sparse across pairs.
#[derive(Clone, Debug)]
pub struct DensePairSequence {
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub y: Rat,
    pub h_size: usize,
    /// Exact claimed cardinality of every `A_i` and `B_i`.
    pub pair_size: usize,
    /// Nonedges between `A_i` and `B_i` are at most `coeff * |A_i||B_i|`.
    pub nonedge_coeff: Rat,
    /// Every vertex of one set has at most `cross_coeff * |other|` neighbors
    /// in any set of a different pair.
    pub cross_coeff: Bound,
    /// The length the driver aimed for.
    pub length_target: usize,
}

#[derive(Clone, Debug)]
pub enum SparseDenseOutcome {
    /// Large much-sparser subset: the hypothesis-failure branch, which
    /// callers treat as the descend-in-y signal.
    Sparse(SparseSetCert),
    Sequence(DensePairSequence),
}

#[derive(Clone, Debug)]
pub struct SparseDenseResult {
    pub outcome: SparseDenseOutcome,
    pub diagnostics: Vec<String>,
}

/// Exponent of the cross-pair sparsity coefficient `y^(1/6)` (override slot
/// `cross_exp`), as a `(num, den)` pair for exact comparisons.
fn cross_exponent(sheet: &ConstantSheet) -> (i64, u32) {
    exponent_slot(sheet, "cross_exp", (1, 6))
}

/// Exponent of the attachment threshold `y^(1/2)` (override slot `inner_exp`).
fn inner_exponent(sheet: &ConstantSheet) -> (i64, u32) {
    exponent_slot(sheet, "inner_exp", (1, 2))
}

fn exponent_slot(sheet: &ConstantSheet, name: &str, default: (i64, u32)) -> (i64, u32) {
    use num::ToPrimitive;
    if let Some(v) = sheet.override_value(name) {
        if let (Some(p), Some(q)) = (v.numer().to_i64(), v.denom().to_u32()) {
            return (p, q);
        }
    }
    default
}

/// Vertices of `set` too strongly attached to `target`: at least
/// `y^(inner_exp) * |target|` neighbors.
fn attached(g: &Graph, set: &Bits, target: &Bits, y: &Rat, exp: (i64, u32)) -> Vec<usize> {
    let thr = Bound::of(rat_int(target.count() as u64), y.clone(), exp.0, exp.1);
    set.iter()
        .filter(|&v| thr.le_value(&rat_int(g.deg_into(v, target) as u64)))
        .collect()
}

/// Trims `(w1, w2)` to subsets of exact size `q` whose nonedge count keeps
/// the fraction of the original pair: greedy removal of the worst row or
/// column, with an exhaustive lexicographic-first fallback when both sides
/// are small.
fn trim_pair(g: &Graph, w1: &[usize], w2: &[usize], q: usize) -> (Vec<usize>, Vec<usize>) {
    fn choose_count(n: usize, k: usize) -> u128 {
        let mut r: u128 = 1;
        for i in 0..k.min(n - k) {
            r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
            if r > 1 << 60 {
                return u128::MAX;
            }
        }
        r
    }
    let small = w1.len() <= 24
        && w2.len() <= 24
        && choose_count(w1.len(), q) <= 2000
        && choose_count(w2.len(), q) <= 2000;
    if small {
        // lexicographically-first pair of subsets meeting the average bound
        let orig_nonedges = {
            let b1 = Bits::from_iter(g.n(), w1.iter().copied());
            let b2 = Bits::from_iter(g.n(), w2.iter().copied());
            w1.len() * w2.len() - g.edges_between(&b1, &b2)
        };
        // target fraction: nonedges(X,Y)/q^2 <= orig/(|w1||w2|)
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let xs = subsets_lex(w1, q);
        let ys = subsets_lex(w2, q);
        'outer: for x in &xs {
            let xb = Bits::from_iter(g.n(), x.iter().copied());
            for yv in &ys {
                let yb = Bits::from_iter(g.n(), yv.iter().copied());
                let ne = q * q - g.edges_between(&xb, &yb);
                if ne * w1.len() * w2.len() <= orig_nonedges * q * q {
                    best = Some((x.clone(), yv.clone()));
                    break 'outer;
                }
            }
        }
        if let Some(pair) = best {
            return pair;
        }
    }
    let mut a: Vec<usize> = w1.to_vec();
    let mut b: Vec<usize> = w2.to_vec();
    while a.len() > q {
        let bb = Bits::from_iter(g.n(), b.iter().copied());
        let (idx, _) = a
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, b.len() - g.deg_into(v, &bb)))
            .max_by(|x, y| x.1.cmp(&y.1).then(a[x.0].cmp(&a[y.0])))
            .unwrap();
        a.remove(idx);
    }
    while b.len() > q {
        let ab = Bits::from_iter(g.n(), a.iter().copied());
        let (idx, _) = b
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, a.len() - g.deg_into(v, &ab)))
            .max_by(|x, y| x.1.cmp(&y.1).then(b[x.0].cmp(&b[y.0])))
            .unwrap();
        b.remove(idx);
    }
    (a, b)
}

fn subsets_lex(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(set: &[usize], start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(set, 0, k, &mut cur, &mut out);
    out
}

/// Either a sparse witness (`|S| >= sparse_coeff * |G|`, per-vertex
/// `y^2`-sparse) or a sequence of `length_target` dense pairs meeting the
/// sequence invariants. Preconditions: `g` is `y`-sparse and `h`-free.
pub fn sparse_dense_sequence(
    g: &Graph,
    h: &Graph,
    y: &Rat,
    sheet: &ConstantSheet,
    limits: &SearchLimits,
) -> Result<SparseDenseResult> {
    use num::Signed;
    if !(y.is_positive() && *y < Rat::from_integer(1.into())) {
        return Err(Error::Precondition("sparse_dense: need 0 < y < 1".into()));
    }
    if !g.is_x_sparse(y) {
        return Err(Error::Precondition(
            "sparse_dense: input graph is not y-sparse".into(),
        ));
    }
    if let Some(copy) = pattern::find_copy(h, g, limits)? {
        return Err(Error::FoundCopy(Box::new(copy)));
    }
    let mut diagnostics = Vec::new();
    let n = g.n();
    let hs = h.n();
    let pair_coeff = sheet.sd_pair_coeff(y, hs);
    let q_half = ceil_usize(&(&pair_coeff * rat_int(n as u64))).max(1);
    let q_full = ceil_usize(&(rat_int(2) * &pair_coeff * rat_int(n as u64))).max(1);
    let eps_in = sheet.sd_eps(y);
    let k_target = sheet.sd_length_target(y);
    let sparse_coeff = sheet.sd_sparse_coeff(y, hs);
    let inner_exp = inner_exponent(sheet);
    let cross_exp = cross_exponent(sheet);
    let y2 = y * y;

    let mut xs: Vec<Bits> = Vec::new();
    let mut ys: Vec<Bits> = Vec::new();
    while xs.len() < k_target {
        // residual graph: remove the pairs and everything attached to them
        let mut removed = Bits::new(n);
        for (x, yv) in xs.iter().zip(&ys) {
            removed.or_assign(x);
            removed.or_assign(yv);
        }
        let mut residual = Bits::full(n);
        residual.and_not_assign(&removed);
        for (x, yv) in xs.iter().zip(&ys) {
            for v in attached(g, &residual, x, y, inner_exp) {
                removed.insert(v);
            }
            for v in attached(g, &residual, yv, y, inner_exp) {
                removed.insert(v);
            }
            residual = Bits::full(n);
            residual.and_not_assign(&removed);
        }
        // shrink invariant: |G'| >= (1 - 4 y^(1/4)) |G| while below target
        let shed = (n - residual.count()) as u64;
        let shed_cap = Bound::of(rat_int(4 * n as u64), y.clone(), 1, 4);
        if shed_cap.lt_value(&rat_int(shed)) {
            diagnostics.push(format!(
                "residual shrank by {shed} vertices, above the 4 y^(1/4) |G| budget"
            ));
        }
        if residual.is_empty() {
            return Err(Error::BoundDidNotFire(format!(
                "sparse_dense: residual graph empty after {} pairs (target {k_target})",
                xs.len()
            )));
        }
        let (sub, map) = g.induced_bits(&residual);
        let cert = sparse_or_dense_pair(&sub, h, &eps_in, limits)?;
        match cert {
            Certificate::SparseSet(s) => {
                // drop the high-degree half to get a per-vertex-sparse subset
                let sbits = Bits::from_iter(sub.n(), s.vertices.iter().copied());
                let ssz = s.vertices.len();
                let cap = &y2 * rat_int(ssz as u64) / rat_int(2);
                let kept: Vec<usize> = s
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| rat_int(sub.deg_into(v, &sbits) as u64) < cap)
                    .collect();
                if kept.len() * 2 < ssz {
                    diagnostics.push(format!(
                        "sparse filter kept {} of {} vertices, below half",
                        kept.len(),
                        ssz
                    ));
                }
                let lifted: Vec<usize> = kept.iter().map(|&v| map[v]).collect();
                let threshold = &sparse_coeff * rat_int(n as u64);
                let actual = rat_int(lifted.len() as u64);
                if actual < threshold {
                    diagnostics.push(format!(
                        "sparse witness of size {} below the y^(h^2) |G| threshold {threshold}",
                        lifted.len()
                    ));
                }
                let min_size = Bound::exact(threshold.min(actual));
                let cert = SparseSetCert {
                    vertices: lifted,
                    min_size,
                    edge_coeff: y2.clone(),
                    per_vertex_coeff: Some(y2.clone()),
                };
                let rep = cert.verify(g);
                if !rep.pass() {
                    return Err(Error::BoundDidNotFire(format!(
                        "sparse witness failed verification: {}",
                        rep.violations.join("; ")
                    )));
                }
                return Ok(SparseDenseResult {
                    outcome: SparseDenseOutcome::Sparse(cert),
                    diagnostics,
                });
            }
            Certificate::DensePair(dp) => {
                if dp.w1.len() < q_full || dp.w2.len() < q_full {
                    return Err(Error::BoundDidNotFire(format!(
                        "sparse_dense: dense pair of sizes {}x{} below the trim size {q_full}",
                        dp.w1.len(),
                        dp.w2.len()
                    )));
                }
                let w1: Vec<usize> = dp.w1.iter().map(|&v| map[v]).collect();
                let w2: Vec<usize> = dp.w2.iter().map(|&v| map[v]).collect();
                let (x, yv) = trim_pair(g, &w1, &w2, q_full);
                xs.push(Bits::from_iter(n, x));
                ys.push(Bits::from_iter(n, yv));
            }
            other => {
                return Err(Error::Precondition(format!(
                    "sparse_dense: unexpected dichotomy branch {}",
                    other.kind()
                )))
            }
        }
    }

    // cleaning pass: keep vertices with small attachment to all later pairs
    let keep_cap = |target: &Bits| {
        Bound::of(
            Rat::new(num::BigInt::from(target.count()), num::BigInt::from(2)),
            y.clone(),
            cross_exp.0,
            cross_exp.1,
        )
    };
    let k = xs.len();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(k);
    for i in 0..k {
        let survives = |v: usize| {
            (i + 1..k).all(|j| {
                let dx = rat_int(g.deg_into(v, &xs[j]) as u64);
                let dy = rat_int(g.deg_into(v, &ys[j]) as u64);
                !keep_cap(&xs[j]).lt_value(&dx) && !keep_cap(&ys[j]).lt_value(&dy)
            })
        };
        let a_surv: Vec<usize> = xs[i].iter().filter(|&v| survives(v)).collect();
        let b_surv: Vec<usize> = ys[i].iter().filter(|&v| survives(v)).collect();
        if a_surv.len() * 2 < xs[i].count() || b_surv.len() * 2 < ys[i].count() {
            diagnostics.push(format!(
                "cleaning pass at pair {i} kept {}/{} and {}/{}, below half",
                a_surv.len(),
                xs[i].count(),
                b_surv.len(),
                ys[i].count()
            ));
        }
        if a_surv.len() < q_half || b_surv.len() < q_half {
            return Err(Error::BoundDidNotFire(format!(
                "sparse_dense: cleaning left {} and {} vertices at pair {i}, need {q_half}",
                a_surv.len(),
                b_surv.len()
            )));
        }
        pairs.push((a_surv[..q_half].to_vec(), b_surv[..q_half].to_vec()));
    }

    let seq = DensePairSequence {
        pairs,
        y: y.clone(),
        h_size: hs,
        pair_size: q_half,
        nonedge_coeff: rat_int(4) * &eps_in,
        cross_coeff: Bound::of(Rat::from_integer(1.into()), y.clone(), cross_exp.0, cross_exp.1),
        length_target: k_target,
    };
    let rep = verify_sequence(&seq, g);
    if !rep.pass() {
        return Err(Error::BoundDidNotFire(format!(
            "sparse_dense: emitted sequence failed verification: {}",
            rep.violations.join("; ")
        )));
    }
    Ok(SparseDenseResult {
        outcome: SparseDenseOutcome::Sequence(seq),
        diagnostics,
    })
}

/// Recomputes all four invariant families of a sequence from adjacency:
/// disjointness, equicardinality, per-pair nonedge bounds, and cross-pair
/// sparsity in both directions.
pub fn verify_sequence(seq: &DensePairSequence, g: &Graph) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let n = g.n();
    let mut seen = std::collections::HashSet::new();
    for (i, (a, b)) in seq.pairs.iter().enumerate() {
        for &v in a.iter().chain(b) {
            if v >= n {
                rep.violation(format!("pair {i}: vertex {v} outside host"));
                return rep;
            }
            if !seen.insert(v) {
                rep.violation(format!("pair {i}: vertex {v} appears twice"));
            }
        }
        if a.len() != seq.pair_size || b.len() != seq.pair_size {
            rep.violation(format!(
                "pair {i} has sizes {}x{}, claimed exactly {}",
                a.len(),
                b.len(),
                seq.pair_size
            ));
        }
    }
    let bits: Vec<(Bits, Bits)> = seq
        .pairs
        .iter()
        .map(|(a, b)| {
            (
                Bits::from_iter(n, a.iter().copied()),
                Bits::from_iter(n, b.iter().copied()),
            )
        })
        .collect();
    for (i, ((a, b), (ab, bb))) in seq.pairs.iter().zip(&bits).enumerate() {
        let nonedges = a.len() * b.len() - g.edges_between(ab, bb);
        let cap = &seq.nonedge_coeff * rat_int(a.len() as u64) * rat_int(b.len() as u64);
        if rat_int(nonedges as u64) > cap {
            rep.violation(format!(
                "pair {i} has {nonedges} nonedges, above coeff*|A||B| = {cap}"
            ));
        }
    }
    for i in 0..bits.len() {
        for j in 0..bits.len() {
            if i == j {
                continue;
            }
            for (si, source) in [(0, &bits[i].0), (1, &bits[i].1)] {
                for (ti, target) in [(0, &bits[j].0), (1, &bits[j].1)] {
                    let cap = Bound {
                        scale: &seq.cross_coeff.scale * rat_int(target.count() as u64),
                        base: seq.cross_coeff.base.clone(),
                        num: seq.cross_coeff.num,
                        den: seq.cross_coeff.den,
                    };
                    for v in source.iter() {
                        let d = rat_int(g.deg_into(v, target) as u64);
                        if cap.lt_value(&d) {
                            rep.violation(format!(
                                "vertex {v} of pair {i} side {si} has {d} neighbors in pair {j} side {ti}, above {cap}"
                            ));
                        }
                    }
                }
            }
        }
    }
    if seq.pairs.is_empty() {
        rep.warning("sequence is empty");
    }
    if seq.pairs.len() < seq.length_target {
        rep.warning(format!(
            "sequence length {} below target {}",
            seq.pairs.len(),
            seq.length_target
        ));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ConstantSheet;
    use crate::numeric::rat;

    fn sheet_with(overrides: &[(&str, Rat)]) -> ConstantSheet {
        let mut sheet = ConstantSheet::empty();
        for (k, v) in overrides {
            sheet.set_override(k, v.clone());
        }
        sheet
    }

    #[test]
    fn edgeless_gives_sparse_branch() {
        let g = Graph::empty(40);
        let h = crate::generate::path(3);
        let sheet = sheet_with(&[]);
        let r = sparse_dense_sequence(&g, &h, &rat(1, 4), &sheet, &SearchLimits::default()).unwrap();
        match r.outcome {
            SparseDenseOutcome::Sparse(s) => {
                assert_eq!(s.vertices.len(), 40);
                assert!(s.verify(&g).pass());
            }
            _ => panic!("expected sparse branch"),
        }
    }

    #[test]
    fn rejects_non_sparse_input() {
        let g = Graph::complete(10);
        let h = crate::generate::path(3);
        let sheet = sheet_with(&[]);
        assert!(matches!(
            sparse_dense_sequence(&g, &h, &rat(1, 8), &sheet, &SearchLimits::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verifier_rejects_merged_pairs() {
        let g = Graph::empty(10);
        let seq = DensePairSequence {
            pairs: vec![(vec![0, 1], vec![2, 3]), (vec![0, 1], vec![4, 5])],
            y: rat(1, 4),
            h_size: 3,
            pair_size: 2,
            nonedge_coeff: rat(1, 1),
            cross_coeff: Bound::exact(rat(1, 1)),
            length_target: 2,
        };
        let rep = verify_sequence(&seq, &g);
        assert!(!rep.pass());
        assert!(rep.violations.iter().any(|v| v.contains("appears twice")));
    }

    #[test]
    fn empty_sequence_flagged_below_length() {
        let g = Graph::empty(4);
        let seq = DensePairSequence {
            pairs: vec![],
            y: rat(1, 4),
            h_size: 3,
            pair_size: 1,
            nonedge_coeff: rat(1, 2),
            cross_coeff: Bound::exact(rat(1, 1)),
            length_target: 2,
        };
        let rep = verify_sequence(&seq, &g);
        assert!(rep.pass());
        assert!(!rep.warnings.is_empty());
    }
}
