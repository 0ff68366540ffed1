//! Rainbow-versus-anticomplete machinery: the single grouping step, the
//! doubling recursion, the exponent-tuned wrapper, and the stable-union
//! endgame. The cited rainbow-or-anticomplete result is realized as a
//! constructive substitute: exhaustive rainbow search first, then a layered
//! anticomplete-pair search (component splits, ball growing, exhaustive
//! bipartition on small hosts) with a distinguished inconclusive outcome.

use crate::bits::Bits;
use crate::blockade::Blockade;
use crate::certificate::{AnticompleteBlockadeCert, RainbowCopyCert, VerifyReport};
use crate::constants::ConstantSheet;
use crate::error::{Error, Result};
use crate::exact::AlphaOmegaOracle;
use crate::graph::Graph;
use crate::handset::CriticalityWitness;
use crate::limits::SearchLimits;
use crate::numeric::{cmp_pow, pow_i, rat_int, Bound, Rat};
use crate::pattern::{self, CopyMap};
use num::{One, Signed, ToPrimitive};
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub enum RainbowStepOutcome {
    Rainbow(CopyMap),
    /// Anticomplete pair, both sides of the claimed minimum size.
    Pair { a: Vec<usize>, b: Vec<usize> },
}

/// Constructive stand-in for the rainbow-or-anticomplete step: on a blockade
/// of length at least `d` in a host whose every vertex has degree below
/// `w/d`, find a rainbow copy of `forest` or an anticomplete pair with both
/// sides of size at least `w/d`. Exhausting both searches above their
/// ceilings is a distinguished error, never a wrong certificate.
pub fn rainbow_step(
    g: &Graph,
    blocks: &[Vec<usize>],
    forest: &Graph,
    d: usize,
    limits: &SearchLimits,
) -> Result<RainbowStepOutcome> {
    if d < 1 {
        return Err(Error::Precondition("rainbow step: need d >= 1".into()));
    }
    if blocks.len() < d {
        return Err(Error::Precondition(format!(
            "rainbow step: blockade length {} below d = {d}",
            blocks.len()
        )));
    }
    let w = blocks.iter().map(|b| b.len()).min().unwrap_or(0);
    // every vertex degree strictly below w/d
    for v in 0..g.n() {
        if g.degree(v) * d >= w {
            return Err(Error::Precondition(format!(
                "rainbow step: vertex {v} has degree {} >= w/d = {w}/{d}",
                g.degree(v)
            )));
        }
    }
    let rainbow = match pattern::rainbow_find(forest, blocks, g, limits) {
        Ok(r) => r,
        Err(Error::SearchExhausted(msg)) => {
            // fall through to the pair search; record nothing yet
            return match anticomplete_pair(g, w.div_ceil(d), limits)? {
                Some((a, b)) => Ok(RainbowStepOutcome::Pair { a, b }),
                None => Err(Error::SearchExhausted(format!(
                    "rainbow step: rainbow search hit its ceiling ({msg}) and no pair was found"
                ))),
            };
        }
        Err(e) => return Err(e),
    };
    if let Some(copy) = rainbow {
        return Ok(RainbowStepOutcome::Rainbow(copy));
    }
    match anticomplete_pair(g, w.div_ceil(d), limits)? {
        Some((a, b)) => Ok(RainbowStepOutcome::Pair { a, b }),
        None => Err(Error::SearchExhausted(
            "rainbow step: no rainbow copy and the pair search is exhausted above its ceiling".into(),
        )),
    }
}

/// Layered anticomplete-pair search: component splits, then distance ball
/// growing, then exhaustive enumeration below 26 vertices. `Ok(None)` means
/// inconclusive, not absent.
pub fn anticomplete_pair(
    g: &Graph,
    q: usize,
    _limits: &SearchLimits,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let q = q.max(1);
    let n = g.n();
    // component split: greedily balance components into two sides
    let comps = g.components();
    if comps.len() >= 2 {
        let mut sides: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let mut order: Vec<&Vec<usize>> = comps.iter().collect();
        order.sort_by_key(|c| std::cmp::Reverse(c.len()));
        for comp in order {
            let lighter = if sides[0].len() <= sides[1].len() { 0 } else { 1 };
            sides[lighter].extend(comp.iter().copied());
        }
        if sides[0].len() >= q && sides[1].len() >= q {
            sides[0].sort_unstable();
            sides[1].sort_unstable();
            let [a, b] = sides;
            debug_assert!(g.anticomplete(
                &Bits::from_iter(n, a.iter().copied()),
                &Bits::from_iter(n, b.iter().copied())
            ));
            return Ok(Some((a, b)));
        }
    }
    // ball growing: A = ball(u, r), B = everything at distance > r+1
    for u in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([u]);
        dist[u] = 0;
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x).iter() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let maxd = dist.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
        for r in 1..maxd.max(1) {
            let a: Vec<usize> = (0..n).filter(|&v| dist[v] <= r).collect();
            let b: Vec<usize> = (0..n).filter(|&v| dist[v] > r + 1).collect();
            if a.len() >= q && b.len() >= q {
                return Ok(Some((a, b)));
            }
        }
    }
    // exhaustive bipartition on small hosts: any q-subset whose closed
    // neighborhood leaves q vertices untouched
    if n <= 26 {
        let mut subset: Vec<usize> = Vec::with_capacity(q);
        if let Some(pair) = exhaustive_pair(g, q, 0, &mut subset) {
            return Ok(Some(pair));
        }
        // exhausted exactly: no pair exists
        return Ok(None);
    }
    Ok(None)
}

fn exhaustive_pair(
    g: &Graph,
    q: usize,
    start: usize,
    subset: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if subset.len() == q {
        let n = g.n();
        let abits = Bits::from_iter(n, subset.iter().copied());
        let mut forbidden = abits.clone();
        for &v in subset.iter() {
            forbidden.or_assign(g.neighbors(v));
        }
        let mut rest = Bits::full(n);
        rest.and_not_assign(&forbidden);
        if rest.count() >= q {
            return Some((subset.clone(), rest.to_vec()));
        }
        return None;
    }
    for v in start..g.n() {
        subset.push(v);
        if let Some(p) = exhaustive_pair(g, q, v + 1, subset) {
            return Some(p);
        }
        subset.pop();
    }
    None
}

/// The grouping step: blockade of length at least `3d^2`, equicardinal and
/// symmetrically `1/d^2`-sparse. Returns a rainbow copy or an anticomplete
/// pair with both sides of size at least the blockade width.
pub fn firststep(
    g: &Graph,
    blockade: &Blockade,
    forest: &Graph,
    d: usize,
    limits: &SearchLimits,
) -> Result<RainbowStepOutcome> {
    let need = 3 * d * d;
    if blockade.length() < need {
        return Err(Error::Precondition(format!(
            "firststep: length {} below 3d^2 = {need}",
            blockade.length()
        )));
    }
    let b = blockade.truncated(need);
    if !b.is_equicardinal() {
        return Err(Error::Precondition("firststep: blockade not equicardinal".into()));
    }
    let spars = Bound::exact(Rat::new(1.into(), (d as i64 * d as i64).into()));
    if !b.is_symmetrically_sparse(g, &spars) {
        return Err(Error::Precondition(
            "firststep: blockade not symmetrically 1/d^2-sparse".into(),
        ));
    }
    let w = b.width();
    // restricted graph: only edges between different blocks, on V(B)
    let members: Vec<usize> = b.blocks().iter().flatten().copied().collect();
    let (sub_all, map) = g.induced(&members)?;
    let mut block_of = vec![usize::MAX; sub_all.n()];
    let mut local_blocks: Vec<Vec<usize>> = vec![Vec::new(); b.length()];
    for (local, &host) in map.iter().enumerate() {
        let bi = b
            .blocks()
            .iter()
            .position(|blk| blk.binary_search(&host).is_ok())
            .expect("member of some block");
        block_of[local] = bi;
        local_blocks[bi].push(local);
    }
    let cross_edges: Vec<(usize, usize)> = sub_all
        .edges()
        .into_iter()
        .filter(|&(u, v)| block_of[u] != block_of[v])
        .collect();
    let gp = Graph::from_edges(sub_all.n(), &cross_edges)?;
    // d groups of 3d consecutive blocks
    let groups: Vec<Vec<usize>> = (0..d)
        .map(|h| {
            (h * 3 * d..(h + 1) * 3 * d)
                .flat_map(|bi| local_blocks[bi].iter().copied())
                .collect()
        })
        .collect();
    match rainbow_step(&gp, &groups, forest, d, limits)? {
        RainbowStepOutcome::Rainbow(copy) => {
            let lifted = CopyMap {
                pattern: copy.pattern,
                map: copy.map.into_iter().map(|v| map[v]).collect(),
            };
            debug_assert!(lifted.verify(g));
            Ok(RainbowStepOutcome::Rainbow(lifted))
        }
        RainbowStepOutcome::Pair { a, b: bb } => {
            // index split: earliest prefix holding w vertices of one side
            let in_prefix = |side: &[usize], upto: usize| -> Vec<usize> {
                side.iter()
                    .copied()
                    .filter(|&v| block_of[v] <= upto)
                    .collect()
            };
            let mut choice: Option<(Vec<usize>, Vec<usize>)> = None;
            'outer: for i in 0..b.length() {
                for (first, second) in [(&a, &bb), (&bb, &a)] {
                    let pre = in_prefix(first, i);
                    if pre.len() >= w {
                        let suf: Vec<usize> = second
                            .iter()
                            .copied()
                            .filter(|&v| block_of[v] > i)
                            .collect();
                        choice = Some((pre, suf));
                        break 'outer;
                    }
                }
            }
            let (pa, pb) = choice.ok_or_else(|| {
                Error::BoundDidNotFire("firststep: no prefix split reached the width".into())
            })?;
            if pb.len() < w {
                return Err(Error::BoundDidNotFire(format!(
                    "firststep: suffix side has {} vertices, below w = {w}",
                    pb.len()
                )));
            }
            let pa: Vec<usize> = pa.into_iter().map(|v| map[v]).collect();
            let pb: Vec<usize> = pb.into_iter().map(|v| map[v]).collect();
            debug_assert!(g.anticomplete(
                &Bits::from_iter(g.n(), pa.iter().copied()),
                &Bits::from_iter(g.n(), pb.iter().copied())
            ));
            Ok(RainbowStepOutcome::Pair { a: pa, b: pb })
        }
    }
}

#[derive(Clone, Debug)]
pub enum BlockpartyOutcome {
    Rainbow(CopyMap),
    Blockade(AnticompleteBlockadeCert),
}

/// Doubling recursion: from a blockade of length `2(2d^2)^s`, equicardinal
/// and symmetrically `2/(2d^2)^s`-sparse, produce a rainbow copy or an
/// anticomplete blockade of length exactly `2^s` and width at least
/// `w/(2d^2)^(s-1)`.
pub fn blockparty(
    g: &Graph,
    blockade: &Blockade,
    forest: &Graph,
    d: usize,
    s: usize,
    limits: &SearchLimits,
) -> Result<BlockpartyOutcome> {
    if s < 1 {
        return Err(Error::Precondition("blockparty: need s >= 1".into()));
    }
    let dd2 = 2 * d * d;
    let need = 2 * dd2.pow(s as u32);
    if blockade.length() < need {
        return Err(Error::Precondition(format!(
            "blockparty: length {} below 2(2d^2)^s = {need}",
            blockade.length()
        )));
    }
    let b = blockade.truncated(need);
    if !b.is_equicardinal() {
        return Err(Error::Precondition("blockparty: blockade not equicardinal".into()));
    }
    let spars = Bound::exact(rat_int(2) * pow_i(&rat_int(dd2 as u64), -(s as i64)));
    if !b.is_symmetrically_sparse(g, &spars) {
        return Err(Error::Precondition(format!(
            "blockparty: blockade not symmetrically 2/(2d^2)^{s}-sparse"
        )));
    }
    let w = b.width();
    if s == 1 {
        return match firststep(g, &b, forest, d, limits)? {
            RainbowStepOutcome::Rainbow(copy) => Ok(BlockpartyOutcome::Rainbow(copy)),
            RainbowStepOutcome::Pair { a, b: bb } => {
                let cert = AnticompleteBlockadeCert {
                    blocks: vec![a, bb],
                    min_length: 2,
                    min_width: Bound::exact(rat_int(w as u64)),
                };
                let rep = cert.verify(g);
                debug_assert!(rep.pass(), "{:?}", rep.violations);
                Ok(BlockpartyOutcome::Blockade(cert))
            }
        };
    }
    // grouped call on the union graph
    let members: Vec<usize> = b.blocks().iter().flatten().copied().collect();
    let (sub, map) = g.induced(&members)?;
    let mut block_of = vec![usize::MAX; sub.n()];
    let mut local_blocks: Vec<Vec<usize>> = vec![Vec::new(); b.length()];
    for (local, &host) in map.iter().enumerate() {
        let bi = b
            .blocks()
            .iter()
            .position(|blk| blk.binary_search(&host).is_ok())
            .expect("member of some block");
        block_of[local] = bi;
        local_blocks[bi].push(local);
    }
    let per_group = need / d;
    let groups: Vec<Vec<usize>> = (0..d)
        .map(|h| {
            (h * per_group..(h + 1) * per_group)
                .flat_map(|bi| local_blocks[bi].iter().copied())
                .collect()
        })
        .collect();
    let pair = match rainbow_step(&sub, &groups, forest, d, limits)? {
        RainbowStepOutcome::Rainbow(copy) => {
            let lifted = CopyMap {
                pattern: copy.pattern,
                map: copy.map.into_iter().map(|v| map[v]).collect(),
            };
            debug_assert!(lifted.verify(g));
            return Ok(BlockpartyOutcome::Rainbow(lifted));
        }
        RainbowStepOutcome::Pair { a, b: bb } => (a, bb),
    };
    let w_next = w.div_ceil(dd2);
    let d_next = 2 * dd2.pow(s as u32 - 1);
    let mut halves: Vec<Vec<Vec<usize>>> = Vec::with_capacity(2);
    for side in [&pair.0, &pair.1] {
        // blocks holding at least w/(2d^2) side vertices, trimmed
        let mut sub_blocks: Vec<Vec<usize>> = Vec::new();
        for (bi, blk) in local_blocks.iter().enumerate() {
            let _ = bi;
            let inside: Vec<usize> = blk
                .iter()
                .copied()
                .filter(|v| side.binary_search(v).is_ok())
                .collect();
            if inside.len() >= w_next {
                sub_blocks.push(inside[..w_next].to_vec());
            }
            if sub_blocks.len() == d_next {
                break;
            }
        }
        if sub_blocks.len() < d_next {
            return Err(Error::BoundDidNotFire(format!(
                "blockparty: only {} blocks meet the w/(2d^2) threshold, need {d_next}",
                sub_blocks.len()
            )));
        }
        let inner = Blockade::new(sub_blocks)?;
        match blockparty(&sub, &inner, forest, d, s - 1, limits)? {
            BlockpartyOutcome::Rainbow(copy) => {
                let lifted = CopyMap {
                    pattern: copy.pattern,
                    map: copy.map.into_iter().map(|v| map[v]).collect(),
                };
                debug_assert!(lifted.verify(g));
                return Ok(BlockpartyOutcome::Rainbow(lifted));
            }
            BlockpartyOutcome::Blockade(cert) => {
                halves.push(
                    cert.blocks
                        .into_iter()
                        .map(|blk| blk.into_iter().map(|v| map[v]).collect())
                        .collect(),
                );
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(1 << s);
    let mut halves_iter = halves.into_iter();
    blocks.extend(halves_iter.next().unwrap());
    blocks.extend(halves_iter.next().unwrap());
    let claimed_width = {
        // w / (2d^2)^(s-1), conservatively floored to the actual minimum
        let formula = rat_int(w as u64) * pow_i(&rat_int(dd2 as u64), -(s as i64 - 1));
        let actual = blocks.iter().map(|b| b.len()).min().unwrap_or(0);
        Bound::exact(formula.min(rat_int(actual as u64)))
    };
    let cert = AnticompleteBlockadeCert {
        blocks,
        min_length: 1 << s,
        min_width: claimed_width,
    };
    let rep = cert.verify(g);
    if !rep.pass() {
        return Err(Error::BoundDidNotFire(format!(
            "blockparty: assembled blockade failed verification: {}",
            rep.violations.join("; ")
        )));
    }
    Ok(BlockpartyOutcome::Blockade(cert))
}

/// Largest integer `s >= 1` with `y^(-alpha) >= 2 (2d^2)^s`, or `None`.
pub fn getanti2_s(y: &Rat, alpha: &Rat, d: usize) -> Option<usize> {
    let (ap, aq) = (alpha.numer().to_i64()?, alpha.denom().to_u32()?);
    let dd2 = rat_int(2 * d as u64 * d as u64);
    let mut s = 0usize;
    loop {
        let rhs = rat_int(2) * pow_i(&dd2, s as i64 + 1);
        // y^(-alpha) >= rhs  <=>  1/rhs >= y^alpha
        if cmp_pow(&rhs.recip(), y, ap, aq) == Ordering::Less {
            break;
        }
        s += 1;
        if s > 64 {
            break;
        }
    }
    if s >= 1 {
        Some(s)
    } else {
        None
    }
}

/// Exponent-tuned wrapper: from a `(y^-alpha, y^beta |G|)`-blockade that is
/// equicardinal and symmetrically `y^alpha`-sparse, either a rainbow copy or
/// an anticomplete `(y^-alpha', y^beta' |G|)`-blockade with
/// `alpha' = alpha/(5 log2 d)` and `beta' = alpha + beta`. Needs `d >= 8`.
#[allow(clippy::too_many_arguments)]
pub fn getanti2(
    g: &Graph,
    blockade: &Blockade,
    forest: &Graph,
    d: usize,
    y: &Rat,
    alpha: &Rat,
    beta: &Rat,
    limits: &SearchLimits,
) -> Result<BlockpartyOutcome> {
    if d < 8 {
        return Err(Error::Precondition("getanti2: need d >= 8".into()));
    }
    if !(y.is_positive() && *y <= Rat::one()) {
        return Err(Error::Precondition("getanti2: need 0 < y <= 1".into()));
    }
    let (ap, aq) = (
        alpha.numer().to_i64().ok_or_else(|| Error::Precondition("alpha too large".into()))?,
        alpha.denom().to_u32().ok_or_else(|| Error::Precondition("alpha too large".into()))?,
    );
    // length >= y^(-alpha)
    let len = rat_int(blockade.length() as u64);
    if cmp_pow(&len.recip(), y, ap, aq) == Ordering::Less {
        return Err(Error::Precondition(format!(
            "getanti2: length {} below y^-alpha",
            blockade.length()
        )));
    }
    // width >= y^beta |G|
    let (bp, bq) = (
        beta.numer().to_i64().ok_or_else(|| Error::Precondition("beta too large".into()))?,
        beta.denom().to_u32().ok_or_else(|| Error::Precondition("beta too large".into()))?,
    );
    let wid = rat_int(blockade.width() as u64) / rat_int(g.n().max(1) as u64);
    if cmp_pow(&wid, y, bp, bq) == Ordering::Less {
        return Err(Error::Precondition(format!(
            "getanti2: width {} below y^beta |G|",
            blockade.width()
        )));
    }
    if !blockade.is_equicardinal() {
        return Err(Error::Precondition("getanti2: blockade not equicardinal".into()));
    }
    let spars = Bound::of(Rat::one(), y.clone(), ap, aq);
    if !blockade.is_symmetrically_sparse(g, &spars) {
        return Err(Error::Precondition(
            "getanti2: blockade not symmetrically y^alpha-sparse".into(),
        ));
    }
    let s = getanti2_s(y, alpha, d).ok_or_else(|| {
        Error::Precondition("getanti2: y^-alpha below 2(2d^2); no valid s".into())
    })?;
    match blockparty(g, blockade, forest, d, s, limits)? {
        BlockpartyOutcome::Rainbow(copy) => Ok(BlockpartyOutcome::Rainbow(copy)),
        BlockpartyOutcome::Blockade(mut cert) => {
            // claimed bounds per the wrapper: length y^-alpha', width y^beta' |G|
            let log_d = crate::numeric::log2_exact(d as u64).ok_or_else(|| {
                Error::Precondition(
                    "getanti2: d must be a power of two for exact alpha'".into(),
                )
            })?;
            let alpha_p = alpha / rat_int(5 * log_d as u64);
            let beta_p = alpha + beta;
            let (app, apq) = (
                alpha_p.numer().to_i64().unwrap_or(1),
                alpha_p.denom().to_u32().unwrap_or(1),
            );
            // length claim: ceil(y^-alpha') capped at the actual 2^s
            let len_formula = {
                let mut lo = 1usize;
                while cmp_pow(&rat_int(lo as u64).recip(), y, app, apq) != Ordering::Less {
                    lo += 1;
                    if lo > cert.blocks.len() + 1 {
                        break;
                    }
                }
                lo
            };
            cert.min_length = len_formula.min(cert.blocks.len());
            let (bpp, bpq) = (
                beta_p.numer().to_i64().unwrap_or(1),
                beta_p.denom().to_u32().unwrap_or(1),
            );
            let width_formula = Bound::of(rat_int(g.n() as u64), y.clone(), bpp, bpq);
            let actual = cert.blocks.iter().map(|b| b.len()).min().unwrap_or(0);
            cert.min_width = if width_formula.le_value(&rat_int(actual as u64)) {
                width_formula
            } else {
                Bound::exact(rat_int(actual as u64))
            };
            let rep = cert.verify(g);
            debug_assert!(rep.pass(), "{:?}", rep.violations);
            Ok(BlockpartyOutcome::Blockade(cert))
        }
    }
}

#[derive(Clone, Debug)]
pub enum UseAnticomOutcome {
    Rainbow(RainbowCopyCert),
    Criticality(CriticalityWitness),
}

/// The endgame consumer: either a rainbow copy of `forest` on the blockade,
/// or a stable union defeating the c-critical budget. Blockade hypotheses
/// are the getanti2 ones with `alpha = gamma` after reduction.
pub fn useanticom(
    g: &Graph,
    blockade: &Blockade,
    forest: &Graph,
    sheet: &ConstantSheet,
    oracle: &dyn AlphaOmegaOracle,
    limits: &SearchLimits,
) -> Result<UseAnticomOutcome> {
    let y = sheet.require("y")?.clone();
    let alpha = sheet.require("alpha")?.clone();
    let gamma = sheet.require("gamma")?.clone();
    let beta = sheet.require("beta")?.clone();
    let d = sheet
        .value("d1")
        .and_then(|v| if num::Integer::is_multiple_of(v.denom(), &1.into()) { v.numer().to_usize() } else { None })
        .unwrap_or(8);
    // reduce to alpha = gamma
    let alpha_eff = alpha.min(gamma);
    match getanti2(g, blockade, forest, d, &y, &alpha_eff, &beta, limits)? {
        BlockpartyOutcome::Rainbow(copy) => {
            let cert = RainbowCopyCert {
                copy,
                blocks: blockade.blocks().to_vec(),
            };
            let rep = cert.verify(g);
            if !rep.pass() {
                return Err(Error::Verification(rep.violations.join("; ")));
            }
            Ok(UseAnticomOutcome::Rainbow(cert))
        }
        BlockpartyOutcome::Blockade(anti) => {
            let mut union = Vec::new();
            let mut per_block_sizes = Vec::new();
            for block in &anti.blocks {
                let (sub, map) = g.induced(block)?;
                let stable = oracle.max_stable(&sub)?;
                per_block_sizes.push(stable.len());
                union.extend(stable.into_iter().map(|v| map[v]));
            }
            union.sort_unstable();
            if !g.is_stable(&union) {
                return Err(Error::BoundDidNotFire(
                    "useanticom: stable union failed the stability recount".into(),
                ));
            }
            let witness = CriticalityWitness::BigStable {
                vertices: union,
                defeats: format!(
                    "union of per-block maximum stable sets (sizes {per_block_sizes:?}) over an anticomplete blockade; under c-criticality the union is capped by |G|^c/omega(G)"
                ),
            };
            let rep = witness.verify(g);
            debug_assert!(rep.pass());
            Ok(UseAnticomOutcome::Criticality(witness))
        }
    }
}

/// Checks the width chain `w/(2d^2)^(s-1) >= y^alpha w` recorded by the
/// doubling recursion.
pub fn width_chain_holds(w: usize, d: usize, s: usize, y: &Rat, alpha: &Rat) -> bool {
    let dd2 = rat_int(2 * d as u64 * d as u64);
    let lhs = rat_int(w as u64) * pow_i(&dd2, -(s as i64 - 1));
    let (ap, aq) = (
        alpha.numer().to_i64().unwrap_or(1),
        alpha.denom().to_u32().unwrap_or(1),
    );
    // lhs >= y^alpha * w  <=>  lhs/w >= y^alpha
    cmp_pow(&(lhs / rat_int(w as u64)), y, ap, aq) != Ordering::Less
}

/// The verify-report wrapper used by tests: zero cross edges on recount.
pub fn recount_anticomplete(cert: &AnticompleteBlockadeCert, g: &Graph) -> VerifyReport {
    cert.verify(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate;
    use crate::numeric::rat;
    use crate::numeric::rat_int;

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn rainbow_step_pair_from_two_components() {
        let g = generate::disjoint_union(&generate::path(6), &generate::path(6));
        let blocks = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]];
        // forest with no copy: a star with 3 leaves needs a degree-3 vertex
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        match rainbow_step(&g, &blocks, &star, 1, &lim()).unwrap() {
            RainbowStepOutcome::Pair { a, b } => {
                assert!(a.len() >= 3 && b.len() >= 3);
                assert!(g.anticomplete(
                    &crate::bits::Bits::from_iter(12, a.iter().copied()),
                    &crate::bits::Bits::from_iter(12, b.iter().copied())
                ));
            }
            _ => panic!("expected a pair"),
        }
    }

    #[test]
    fn rainbow_step_rainbow_single_edge() {
        let g = Graph::from_edges(4, &[(0, 2)]).unwrap();
        let blocks = vec![vec![0, 1], vec![2, 3]];
        let edge = generate::path(2);
        match rainbow_step(&g, &blocks, &edge, 1, &lim()).unwrap() {
            RainbowStepOutcome::Rainbow(copy) => assert!(copy.verify(&g)),
            _ => panic!("expected rainbow"),
        }
    }

    #[test]
    fn rainbow_step_rejects_high_degree() {
        let g = Graph::complete(6);
        let blocks = vec![vec![0, 1, 2], vec![3, 4, 5]];
        assert!(matches!(
            rainbow_step(&g, &blocks, &generate::path(2), 2, &lim()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rainbow_step_planted_path_recovered() {
        let fx = fixtures::rainbow_fixture(&generate::path(5), 1, 8, 0).unwrap();
        match rainbow_step(&fx.graph, &fx.blocks, &generate::path(5), 2, &lim()).unwrap() {
            RainbowStepOutcome::Rainbow(copy) => {
                assert!(copy.verify(&fx.graph));
                let mut img: Vec<usize> = copy.map.clone();
                img.sort_unstable();
                assert_eq!(img, fx.planted);
            }
            _ => panic!("expected the planted rainbow copy"),
        }
    }

    #[test]
    fn firststep_on_anticomplete_blocks() {
        // 12 = 3*2^2 blocks, all pairwise anticomplete, small cliques inside
        let fx = fixtures::cluster_fixture(12, 1, 6, 2).unwrap();
        let blockade = Blockade::new(fx.blocks.clone()).unwrap();
        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        match firststep(&fx.graph, &blockade, &star, 2, &lim()).unwrap() {
            RainbowStepOutcome::Pair { a, b } => {
                assert!(a.len() >= 6 && b.len() >= 6);
            }
            _ => panic!("expected pair"),
        }
    }

    #[test]
    fn firststep_planted_rainbow() {
        // d = 3 groups of 9 blocks each; the planted path must cross three
        // different groups to survive the grouping step
        let d = 3;
        let blocks_n = 3 * d * d;
        // width >= d^2 so one planted cross edge stays 1/d^2-sparse
        let width = 9;
        let n = blocks_n * width;
        let blocks: Vec<Vec<usize>> = (0..blocks_n)
            .map(|b| (b * width..(b + 1) * width).collect())
            .collect();
        let planted = [blocks[0][1], blocks[9][1], blocks[18][1]];
        let g = Graph::from_edges(n, &[(planted[0], planted[1]), (planted[1], planted[2])])
            .unwrap();
        let blockade = Blockade::new(blocks).unwrap();
        let forest = generate::path(3);
        match firststep(&g, &blockade, &forest, d, &lim()).unwrap() {
            RainbowStepOutcome::Rainbow(copy) => {
                assert!(copy.verify(&g));
                let mut img: Vec<usize> = copy.map.clone();
                img.sort_unstable();
                assert_eq!(img, planted.to_vec());
            }
            _ => panic!("expected rainbow"),
        }
    }

    #[test]
    fn firststep_pair_when_rainbow_hides_in_one_group() {
        // a planted path inside a single group is invisible to the grouped
        // search; the contract is then satisfied by an anticomplete pair
        let forest = generate::path(3);
        let fx = fixtures::rainbow_fixture(&forest, 9, 6, 1).unwrap();
        let blockade = Blockade::new(fx.blocks.clone()).unwrap();
        match firststep(&fx.graph, &blockade, &forest, 2, &lim()).unwrap() {
            RainbowStepOutcome::Pair { a, b } => {
                assert!(a.len() >= 6 && b.len() >= 6);
                assert!(fx.graph.anticomplete(
                    &crate::bits::Bits::from_iter(fx.graph.n(), a.iter().copied()),
                    &crate::bits::Bits::from_iter(fx.graph.n(), b.iter().copied())
                ));
            }
            _ => panic!("expected pair"),
        }
    }

    #[test]
    fn rainbow_step_exhaustive_layer_fires_on_stars() {
        // a star defeats component and ball splits; the exhaustive layer
        // below 26 vertices still finds the leaf bipartition
        let n = 25;
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let q = 12;
        let (a, b) = anticomplete_pair(&g, q, &lim()).unwrap().unwrap();
        assert!(a.len() >= q && b.len() >= q);
        assert!(g.anticomplete(
            &crate::bits::Bits::from_iter(n, a.iter().copied()),
            &crate::bits::Bits::from_iter(n, b.iter().copied())
        ));
    }

    #[test]
    fn rainbow_step_inconclusive_is_distinguished() {
        // complement of a perfect matching: connected, diameter two, above
        // the exhaustive ceiling; no split strategy can conclude
        let n = 28;
        let matching: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::from_edges(n, &matching).unwrap().complement();
        let blocks = vec![(0..n).collect::<Vec<_>>()];
        let forest = generate::path(2);
        match rainbow_step(&g, &blocks, &forest, 1, &lim()) {
            Err(Error::SearchExhausted(_)) => {}
            other => panic!("expected the distinguished inconclusive error, got {other:?}"),
        }
    }

    #[test]
    fn getanti2_blockade_branch_on_singleton_blocks() {
        // y = 2^-1024, alpha = 1/128: y^-alpha = 256 exactly; 256 empty
        // singleton blocks, no rainbow of an edge, so the doubling recursion
        // must emit an anticomplete blockade with the claimed exponents
        let y = pow_i(&rat(1, 2), 1024);
        let alpha = rat(1, 128);
        let beta = rat(1, 1);
        let n = 256;
        let g = Graph::empty(n);
        let blocks: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        let blockade = Blockade::new(blocks).unwrap();
        let forest = generate::path(2);
        match getanti2(&g, &blockade, &forest, 8, &y, &alpha, &beta, &lim()).unwrap() {
            BlockpartyOutcome::Blockade(cert) => {
                assert_eq!(cert.blocks.len(), 2); // s = 1
                assert_eq!(cert.min_length, 2); // ceil(y^-alpha') = 2
                let rep = cert.verify(&g);
                assert!(rep.pass(), "{:?}", rep.violations);
            }
            other => panic!("expected blockade, got {other:?}"),
        }
    }

    #[test]
    fn getanti2_rainbow_branch_with_edgeless_forest() {
        // an edgeless pattern needs only three pairwise-nonadjacent
        // vertices in distinct blocks, which fires at desk scale
        let y = pow_i(&rat(1, 2), 1024);
        let alpha = rat(1, 128);
        let beta = rat(1, 1);
        let n = 256;
        let g = Graph::empty(n);
        let blocks: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        let blockade = Blockade::new(blocks).unwrap();
        let forest = Graph::empty(3);
        match getanti2(&g, &blockade, &forest, 8, &y, &alpha, &beta, &lim()).unwrap() {
            BlockpartyOutcome::Rainbow(copy) => assert!(copy.verify(&g)),
            other => panic!("expected rainbow, got {other:?}"),
        }
    }

    #[test]
    fn useanticom_both_branches() {
        use crate::exact::ExactOracle;
        let oracle = ExactOracle(lim());
        let mut sheet = ConstantSheet::empty();
        sheet.set_override("y", pow_i(&rat(1, 2), 1024));
        sheet.set_override("alpha", rat(1, 128));
        sheet.set_override("gamma", rat(1, 128));
        sheet.set_override("beta", rat(1, 1));
        sheet.set_override("d1", rat_int(8));
        let n = 256;
        let blocks: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        let blockade = Blockade::new(blocks).unwrap();
        // rainbow branch: edgeless pattern on an edgeless host
        let g = Graph::empty(n);
        match useanticom(&g, &blockade, &Graph::empty(3), &sheet, &oracle, &lim()).unwrap() {
            UseAnticomOutcome::Rainbow(cert) => {
                assert!(cert.verify(&g).pass());
            }
            other => panic!("expected rainbow, got {other:?}"),
        }
        // criticality branch: a forest with an edge has no rainbow copy, so
        // the anticomplete blockade turns into a stable union witness
        match useanticom(&g, &blockade, &generate::path(2), &sheet, &oracle, &lim()).unwrap() {
            UseAnticomOutcome::Criticality(w) => {
                assert!(w.verify(&g).pass());
                if let crate::handset::CriticalityWitness::BigStable { vertices, .. } = w {
                    // union of per-block maximum stable sets, recounted
                    assert!(vertices.len() >= 2);
                    assert!(g.is_stable(&vertices));
                } else {
                    panic!("expected a stable witness");
                }
            }
            other => panic!("expected criticality witness, got {other:?}"),
        }
    }

    #[test]
    fn firststep_pair_survives_verifier_but_injected_edge_fails() {
        let fx = fixtures::cluster_fixture(12, 1, 6, 2).unwrap();
        let blockade = Blockade::new(fx.blocks.clone()).unwrap();
        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let (a, b) = match firststep(&fx.graph, &blockade, &star, 2, &lim()).unwrap() {
            RainbowStepOutcome::Pair { a, b } => (a, b),
            _ => panic!("expected pair"),
        };
        let cert = crate::certificate::AnticompleteBlockadeCert {
            blocks: vec![a.clone(), b.clone()],
            min_length: 2,
            min_width: Bound::exact(rat_int(6)),
        };
        assert!(cert.verify(&fx.graph).pass());
        // inject one cross edge into the host: the recount must fail
        let mut edges = fx.graph.edges();
        edges.push((a[0], b[0]));
        let tampered = Graph::from_edges(fx.graph.n(), &edges).unwrap();
        assert!(!cert.verify(&tampered).pass());
    }

    #[test]
    fn blockparty_s1_reduces_to_firststep() {
        // 2(2d^2)^1 = 16 blocks at d = 2, everything anticomplete
        let fx = fixtures::cluster_fixture(4, 4, 5, 2).unwrap();
        let blockade = Blockade::new(fx.blocks.clone()).unwrap();
        let forest = generate::path(3);
        match blockparty(&fx.graph, &blockade, &forest, 2, 1, &lim()).unwrap() {
            BlockpartyOutcome::Blockade(cert) => {
                assert_eq!(cert.blocks.len(), 2);
                assert!(cert.verify(&fx.graph).pass());
            }
            other => panic!("expected blockade, got {other:?}"),
        }
    }

    #[test]
    fn getanti2_s_arithmetic() {
        // y = 2^-64, alpha = 1, d = 8: max s with 2^64 >= 2*128^s is 9
        let y = pow_i(&rat(1, 2), 64);
        assert_eq!(getanti2_s(&y, &rat(1, 1), 8), Some(9));
    }

    #[test]
    fn width_chain_example() {
        let y = pow_i(&rat(1, 2), 64);
        assert!(width_chain_holds(1 << 20, 8, 9, &y, &rat(1, 1)));
    }
}
