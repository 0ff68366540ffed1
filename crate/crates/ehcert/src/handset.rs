//! Fingers, hands, thickened hands and handsets; the stable-set-or-cone
//! lemma; the capped induced matching; and the dichotomy that either builds
//! an (s,t)-handset over a sparse blockade or exhibits a criticality witness.

use crate::bits::Bits;
use crate::blockade::Blockade;
use crate::certificate::{SparseSetCert, VerifyReport};
use crate::constants::{ConstantSheet, Provenance};
use crate::error::{Error, Result};
use crate::exact::AlphaOmegaOracle;
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::numeric::{rat_int, Bound, Rat};
use crate::pattern::CopyMap;
use crate::sparsedense::{sparse_dense_sequence, SparseDenseOutcome};

/// One finger: the path `palm - b - c`, with `c` complete to the finger's
/// block and everything else anticomplete to the blockade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finger {
    pub b: usize,
    pub c: usize,
}

/// The `s` interior pairs of the twice-subdivided edges joining two palms:
/// paths `palm_i - p - q - palm_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalmLink {
    pub pi: usize,
    pub pj: usize,
    pub inner: Vec<(usize, usize)>,
}

/// An (s,t)-handset over a blockade, in host coordinates.
///
/// `fingers[p][j]` holds the `s` fingers of palm `p` into block `j`; across
/// blocks, copy `r` of each assembles hand `r` of the `s`-thickened hand.
#[derive(Clone, Debug)]
pub struct HandsetCert {
    pub blocks: Vec<Vec<usize>>,
    pub palms: Vec<usize>,
    pub fingers: Vec<Vec<Vec<Finger>>>,
    pub links: Vec<PalmLink>,
    pub s: usize,
    pub t: usize,
    pub min_length: usize,
    pub min_width: Bound,
    /// Symmetric sparsity coefficient claimed for the blockade, when claimed.
    pub sparsity_coeff: Option<Bound>,
    pub equicardinal: bool,
}

impl HandsetCert {
    fn handset_vertices(&self) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for (p, &a) in self.palms.iter().enumerate() {
            out.push((a, format!("palm {p}")));
        }
        for (p, per_block) in self.fingers.iter().enumerate() {
            for (j, fs) in per_block.iter().enumerate() {
                for (r, f) in fs.iter().enumerate() {
                    out.push((f.b, format!("finger b ({p},{j},{r})")));
                    out.push((f.c, format!("finger c ({p},{j},{r})")));
                }
            }
        }
        for link in &self.links {
            for (r, &(x, y)) in link.inner.iter().enumerate() {
                out.push((x, format!("link p ({},{},{r})", link.pi, link.pj)));
                out.push((y, format!("link q ({},{},{r})", link.pi, link.pj)));
            }
        }
        out
    }

    /// Recomputes every adjacency condition of fingers, hands, thickened
    /// hands and palm links against `g`, plus the blockade claims.
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        let t = self.palms.len();
        let k = self.blocks.len();
        if t == 0 || self.t == 0 {
            rep.violation("handset needs at least one palm (t >= 1)");
            return rep;
        }
        if self.s == 0 {
            rep.violation("handset needs s >= 1");
            return rep;
        }
        if t != self.t {
            rep.violation(format!("{t} palms but t = {}", self.t));
        }
        if k == 0 {
            rep.violation("handset needs at least one block");
            return rep;
        }
        if self.fingers.len() != t {
            rep.violation(format!("finger table has {} palm rows, need {t}", self.fingers.len()));
            return rep;
        }
        for (p, per_block) in self.fingers.iter().enumerate() {
            if per_block.len() != k {
                rep.violation(format!(
                    "palm {p} has fingers for {} blocks, need {k}",
                    per_block.len()
                ));
                return rep;
            }
            for (j, fs) in per_block.iter().enumerate() {
                if fs.len() != self.s {
                    rep.violation(format!(
                        "palm {p} block {j} has {} fingers, need s = {}",
                        fs.len(),
                        self.s
                    ));
                    return rep;
                }
            }
        }
        let mut expected_links = std::collections::BTreeSet::new();
        for i in 0..t {
            for j in (i + 1)..t {
                expected_links.insert((i, j));
            }
        }
        let mut seen_links = std::collections::BTreeSet::new();
        for link in &self.links {
            if link.pi >= t || link.pj >= t || link.pi >= link.pj {
                rep.violation(format!("bad palm pair ({},{})", link.pi, link.pj));
                return rep;
            }
            if !seen_links.insert((link.pi, link.pj)) {
                rep.violation(format!("duplicate link pair ({},{})", link.pi, link.pj));
            }
            if link.inner.len() != self.s {
                rep.violation(format!(
                    "link ({},{}) has {} paths, need s = {}",
                    link.pi,
                    link.pj,
                    link.inner.len(),
                    self.s
                ));
                return rep;
            }
        }
        if seen_links != expected_links {
            rep.violation("palm links do not cover every palm pair exactly once");
            return rep;
        }

        // vertex sanity: handset vertices distinct, outside the blockade
        let n = g.n();
        let verts = self.handset_vertices();
        let mut seen = std::collections::HashMap::new();
        for (v, role) in &verts {
            if *v >= n {
                rep.violation(format!("{role}: vertex {v} outside host"));
                return rep;
            }
            if let Some(prev) = seen.insert(*v, role.clone()) {
                rep.violation(format!("vertex {v} used as both {prev} and {role}"));
            }
        }
        let mut block_bits = Vec::with_capacity(k);
        let mut block_of = std::collections::HashMap::new();
        for (j, block) in self.blocks.iter().enumerate() {
            for &v in block {
                if v >= n {
                    rep.violation(format!("block {j}: vertex {v} outside host"));
                    return rep;
                }
                if block_of.insert(v, j).is_some() {
                    rep.violation(format!("blocks overlap at vertex {v}"));
                }
                if seen.contains_key(&v) {
                    rep.violation(format!(
                        "vertex {v} belongs to both the handset and block {j}"
                    ));
                }
            }
            block_bits.push(Bits::from_iter(n, block.iter().copied()));
        }
        if !rep.pass() {
            return rep;
        }

        // expected adjacency among handset vertices
        let mut expected = std::collections::HashSet::new();
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        for (p, per_block) in self.fingers.iter().enumerate() {
            let a = self.palms[p];
            for fs in per_block {
                for f in fs {
                    expected.insert(key(a, f.b));
                    expected.insert(key(f.b, f.c));
                }
            }
        }
        for link in &self.links {
            let (ai, aj) = (self.palms[link.pi], self.palms[link.pj]);
            for &(x, y) in &link.inner {
                expected.insert(key(ai, x));
                expected.insert(key(x, y));
                expected.insert(key(y, aj));
            }
        }
        for (ii, (u, role_u)) in verts.iter().enumerate() {
            for (v, role_v) in verts.iter().skip(ii + 1) {
                if u == v {
                    continue;
                }
                let want = expected.contains(&key(*u, *v));
                let have = g.has_edge(*u, *v);
                if want != have {
                    rep.violation(format!(
                        "handset pair {role_u}({u}) / {role_v}({v}): edge present={have}, required={want}"
                    ));
                }
            }
        }

        // block adjacency conditions
        for (p, per_block) in self.fingers.iter().enumerate() {
            let a = self.palms[p];
            for (j, fs) in per_block.iter().enumerate() {
                for f in fs {
                    let deg_c = g.deg_into(f.c, &block_bits[j]);
                    if deg_c != self.blocks[j].len() {
                        rep.violation(format!(
                            "finger c {} of palm {p} covers {deg_c}/{} of block {j}",
                            f.c,
                            self.blocks[j].len()
                        ));
                    }
                    for (j2, bits) in block_bits.iter().enumerate() {
                        if j2 != j && g.deg_into(f.c, bits) > 0 {
                            rep.violation(format!(
                                "finger c {} of palm {p} touches foreign block {j2}",
                                f.c
                            ));
                        }
                    }
                    for bits in &block_bits {
                        if g.deg_into(f.b, bits) > 0 {
                            rep.violation(format!("finger b {} touches the blockade", f.b));
                        }
                    }
                }
            }
            for bits in &block_bits {
                if g.deg_into(a, bits) > 0 {
                    rep.violation(format!("palm {a} touches the blockade"));
                }
            }
        }
        for link in &self.links {
            for &(x, y) in &link.inner {
                for bits in &block_bits {
                    if g.deg_into(x, bits) > 0 || g.deg_into(y, bits) > 0 {
                        rep.violation(format!(
                            "link interior ({x},{y}) touches the blockade"
                        ));
                    }
                }
            }
        }

        // blockade claims
        if k < self.min_length {
            rep.violation(format!(
                "blockade length {k} below claimed {}",
                self.min_length
            ));
        }
        let width = self.blocks.iter().map(|b| b.len()).min().unwrap_or(0);
        if !self.min_width.le_value(&rat_int(width as u64)) {
            rep.violation(format!(
                "blockade width {width} below claimed {}",
                self.min_width
            ));
        }
        if self.equicardinal && !self.blocks.windows(2).all(|w| w[0].len() == w[1].len()) {
            rep.violation("blockade claimed equicardinal but block sizes differ");
        }
        if let Some(coeff) = &self.sparsity_coeff {
            if let Ok(blockade) = Blockade::new(self.blocks.clone()) {
                for v in blockade.symmetric_sparsity_violations(g, coeff) {
                    rep.violation(format!("blockade sparsity: {v}"));
                }
            }
        }
        rep
    }
}

/// A verified object defeating the c-critical budget.
#[derive(Clone, Debug)]
pub enum CriticalityWitness {
    BigStable { vertices: Vec<usize>, defeats: String },
    BigClique { vertices: Vec<usize>, defeats: String },
    SparserSubset { cert: Box<SparseSetCert>, defeats: String },
}

impl CriticalityWitness {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        match self {
            CriticalityWitness::BigStable { vertices, .. } => {
                if !g.is_stable(vertices) {
                    rep.violation("criticality witness: set is not stable");
                }
            }
            CriticalityWitness::BigClique { vertices, .. } => {
                if !g.is_clique(vertices) {
                    rep.violation("criticality witness: set is not a clique");
                }
            }
            CriticalityWitness::SparserSubset { cert, .. } => {
                rep.merge(cert.verify(g));
            }
        }
        rep
    }
}

#[derive(Clone, Debug)]
pub enum GetStableOutcome {
    /// A stable set of the requested size `m`.
    Stable(Vec<usize>),
    /// A clique `x` of size `t`, complete to the disjoint set `y` of size at
    /// least `n`.
    CliqueWithCone { x: Vec<usize>, y: Vec<usize> },
}

/// Stable set of size `m`, or a `t`-clique complete to at least `n` other
/// vertices. Requires `|f| >= m^t * n`. Constructive: if there is no stable
/// set of size `m`, some vertex has at least `m^(t-1) n` neighbors; recurse
/// into its neighborhood.
pub fn getstable_dichotomy(
    f: &Graph,
    t: usize,
    n: usize,
    m: usize,
    limits: &SearchLimits,
) -> Result<GetStableOutcome> {
    if m < 1 {
        return Err(Error::Precondition("getstable: need m >= 1".into()));
    }
    let need = (m as u128)
        .checked_pow(t as u32)
        .and_then(|v| v.checked_mul(n as u128))
        .ok_or_else(|| Error::Precondition("getstable: m^t * n overflows".into()))?;
    if (f.n() as u128) < need {
        return Err(Error::Precondition(format!(
            "getstable: need |F| >= m^t*n = {need}, have {}",
            f.n()
        )));
    }
    let all = Bits::full(f.n());
    getstable_rec(f, &all, t, n, m, limits)
}

fn getstable_rec(
    f: &Graph,
    set: &Bits,
    t: usize,
    n: usize,
    m: usize,
    limits: &SearchLimits,
) -> Result<GetStableOutcome> {
    if t == 0 {
        return Ok(GetStableOutcome::CliqueWithCone {
            x: Vec::new(),
            y: set.to_vec(),
        });
    }
    let (sub, map) = f.induced_bits(set);
    if let Some(stable) = crate::exact::stable_of_size(&sub, m, limits)? {
        let lifted: Vec<usize> = stable.into_iter().map(|v| map[v]).collect();
        return Ok(GetStableOutcome::Stable(lifted));
    }
    // no stable set of size m: the maximum degree beats |set|/m - 1
    let v = set
        .iter()
        .max_by(|&a, &b| {
            f.deg_into(a, set)
                .cmp(&f.deg_into(b, set))
                .then(b.cmp(&a))
        })
        .ok_or_else(|| Error::BoundDidNotFire("getstable: empty set".into()))?;
    let deg = f.deg_into(v, set) as u128;
    let need = (m as u128).pow((t - 1) as u32) * n as u128;
    if deg < need {
        return Err(Error::BoundDidNotFire(format!(
            "getstable: max degree {deg} below m^(t-1) n = {need}"
        )));
    }
    let mut nbr = set.and(f.neighbors(v));
    nbr.remove(v);
    match getstable_rec(f, &nbr, t - 1, n, m, limits)? {
        GetStableOutcome::Stable(s) => Ok(GetStableOutcome::Stable(s)),
        GetStableOutcome::CliqueWithCone { mut x, y } => {
            x.push(v);
            x.sort_unstable();
            Ok(GetStableOutcome::CliqueWithCone { x, y })
        }
    }
}

/// Greedy maximal induced matching of `G[union of parts]` using only edges
/// between different parts, subject to: at most `cap` chosen edges between
/// any two parts. Parts must be pairwise disjoint stable sets. Lexicographic
/// scan order, so one pass is maximal.
pub fn capped_induced_matching(
    g: &Graph,
    parts: &[Vec<usize>],
    cap: usize,
) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut part_of = vec![usize::MAX; n];
    for (pi, part) in parts.iter().enumerate() {
        if !g.is_stable(part) {
            return Err(Error::Precondition(format!(
                "capped matching: part {pi} is not stable"
            )));
        }
        for &v in part {
            if v >= n {
                return Err(Error::Precondition(format!(
                    "capped matching: vertex {v} outside host"
                )));
            }
            if part_of[v] != usize::MAX {
                return Err(Error::Precondition(format!(
                    "capped matching: parts overlap at {v}"
                )));
            }
            part_of[v] = pi;
        }
    }
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut blocked = Bits::new(n);
    let mut pair_count: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let members: Vec<usize> = {
        let mut m: Vec<usize> = parts.iter().flatten().copied().collect();
        m.sort_unstable();
        m
    };
    for &u in &members {
        if blocked.contains(u) {
            continue;
        }
        for v in g.neighbors(u).iter() {
            if v <= u || blocked.contains(v) || blocked.contains(u) {
                continue;
            }
            let pv = part_of[v];
            let pu = part_of[u];
            if pv == usize::MAX || pv == pu {
                continue;
            }
            let key = (pu.min(pv), pu.max(pv));
            let cnt = pair_count.entry(key).or_insert(0);
            if *cnt >= cap {
                continue;
            }
            *cnt += 1;
            chosen.push((u, v));
            blocked.insert(u);
            blocked.insert(v);
            blocked.or_assign(g.neighbors(u));
            blocked.or_assign(g.neighbors(v));
            break;
        }
    }
    debug_assert!(2 * chosen.len() <= cap * parts.len() * parts.len());
    Ok(chosen)
}

#[derive(Clone, Debug)]
pub enum HandsetOutcome {
    /// Much sparser large subset of `z` (the descend signal).
    Sparse(Box<SparseSetCert>),
    Handset(Box<HandsetCert>),
    Criticality(CriticalityWitness),
}

#[derive(Clone, Debug)]
pub struct HandsetResult {
    pub outcome: HandsetOutcome,
    pub diagnostics: Vec<String>,
}

fn has_overrides(sheet: &ConstantSheet) -> bool {
    sheet.entries().any(|(_, e)| e.provenance == Provenance::Override)
}

/// The handset dichotomy. `G[z]` must be `y`-sparse. Returns one of: a
/// `y^2`-sparse subset of `z` with the claimed size; a blockade plus an
/// (s,t)-handset for it; or a criticality witness when the stable-union
/// branch of the argument materializes. Proof-guaranteed selections that do
/// not fire at override scale are reported as structured diagnostics or a
/// `BoundDidNotFire` error, never silently.
#[allow(clippy::too_many_arguments)]
pub fn gethandset(
    g: &Graph,
    z: &[usize],
    h: &Graph,
    y: &Rat,
    s: usize,
    t: usize,
    sheet: &ConstantSheet,
    oracle: &dyn AlphaOmegaOracle,
    limits: &SearchLimits,
) -> Result<HandsetResult> {
    use num::Signed;
    if s < 1 || t < 1 {
        return Err(Error::Precondition("gethandset: need s, t >= 1".into()));
    }
    if !y.is_positive() {
        return Err(Error::Precondition("gethandset: need y > 0".into()));
    }
    let (gz, zmap) = g.induced(z)?;
    if !gz.is_x_sparse(y) {
        return Err(Error::Precondition("gethandset: G[z] is not y-sparse".into()));
    }
    let lenient = has_overrides(sheet);
    let mut diagnostics = Vec::new();
    let diag = |msg: String, diags: &mut Vec<String>| -> Result<()> {
        if lenient {
            diags.push(msg);
            Ok(())
        } else {
            Err(Error::BoundDidNotFire(msg))
        }
    };

    let sd = sparse_dense_sequence(&gz, h, y, sheet, limits)?;
    diagnostics.extend(sd.diagnostics.iter().cloned());
    let seq = match sd.outcome {
        SparseDenseOutcome::Sparse(cert) => {
            let lifted = SparseSetCert {
                vertices: cert.vertices.iter().map(|&v| zmap[v]).collect(),
                min_size: cert.min_size,
                edge_coeff: cert.edge_coeff,
                per_vertex_coeff: cert.per_vertex_coeff,
            };
            debug_assert!(lifted.verify(g).pass());
            return Ok(HandsetResult {
                outcome: HandsetOutcome::Sparse(Box::new(lifted)),
                diagnostics,
            });
        }
        SparseDenseOutcome::Sequence(seq) => seq,
    };

    // keep the first ceil(y^(-1/16)) pairs
    let k_want = sheet.hs_block_target(y);
    if seq.pairs.len() < k_want {
        diag(
            format!(
                "sequence supplied {} pairs, below the y^(-1/16) target {k_want}",
                seq.pairs.len()
            ),
            &mut diagnostics,
        )?;
    }
    let k = k_want.min(seq.pairs.len());
    if k == 0 {
        return Err(Error::BoundDidNotFire("gethandset: no dense pairs".into()));
    }
    let n_gz = gz.n();
    // pairs are in gz coordinates
    let a_bits: Vec<Bits> = (0..k)
        .map(|i| Bits::from_iter(n_gz, seq.pairs[i].0.iter().copied()))
        .collect();
    let b_bits: Vec<Bits> = (0..k)
        .map(|i| Bits::from_iter(n_gz, seq.pairs[i].1.iter().copied()))
        .collect();

    // stable sets C_i inside the (1 - y^2)-dense part of B_i
    let y2 = y * y;
    let mut c_sets: Vec<Vec<usize>> = Vec::with_capacity(k);
    for i in 0..k {
        let asz = a_bits[i].count();
        let cap = &y2 * rat_int(asz as u64);
        let dense_part: Vec<usize> = b_bits[i]
            .iter()
            .filter(|&v| rat_int((asz - gz.deg_into(v, &a_bits[i])) as u64) <= cap)
            .collect();
        if dense_part.len() * 2 < b_bits[i].count() {
            diag(
                format!(
                    "pair {i}: dense part of B has {} of {} vertices, below half",
                    dense_part.len(),
                    b_bits[i].count()
                ),
                &mut diagnostics,
            )?;
        }
        if dense_part.is_empty() {
            return Err(Error::BoundDidNotFire(format!(
                "gethandset: pair {i} has an empty dense part"
            )));
        }
        let (sub, submap) = gz.induced(&dense_part)?;
        let stable = oracle.max_stable(&sub)?;
        let c_i: Vec<usize> = stable.into_iter().map(|v| submap[v]).collect();
        c_sets.push(c_i);
    }

    let matching = capped_induced_matching(&gz, &c_sets, s)?;
    debug_assert!(2 * matching.len() <= s * k * k);

    // auxiliary graph on pair indices: adjacent when the matching saturates
    // the cap between their stable sets
    let mut part_of = vec![usize::MAX; n_gz];
    for (i, c) in c_sets.iter().enumerate() {
        for &v in c {
            part_of[v] = i;
        }
    }
    let mut pair_edges: std::collections::HashMap<(usize, usize), Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for &(u, v) in &matching {
        let (pu, pv) = (part_of[u], part_of[v]);
        let key = (pu.min(pv), pu.max(pv));
        // orient each edge from the lower part to the higher
        let oriented = if pu < pv { (u, v) } else { (v, u) };
        pair_edges.entry(key).or_default().push(oriented);
    }
    let mut aux_edges = Vec::new();
    for (&(i, j), edges) in &pair_edges {
        if edges.len() >= s {
            aux_edges.push((i, j));
        }
    }
    let aux = Graph::from_edges(k, &aux_edges)?;

    let m_target = sheet.hs_stable_target(y, h.n())?.max(1);
    let n_target = sheet.hs_length_target(y).max(1);
    let need = (m_target as u128)
        .checked_pow(t as u32)
        .and_then(|v| v.checked_mul(n_target as u128))
        .unwrap_or(u128::MAX);
    if (k as u128) < need {
        return Err(Error::BoundDidNotFire(format!(
            "gethandset: k = {k} below m^t*n = {need} (m={m_target}, n={n_target}); \
             the source argument rules this out only at formula-constant scale"
        )));
    }

    match getstable_dichotomy(&aux, t, n_target, m_target, limits)? {
        GetStableOutcome::Stable(stable_idx) => {
            // vertices of the chosen stable sets that meet the matching or
            // its neighborhood are set aside; the rest unite into a stable set
            let mut m_ball = Bits::new(n_gz);
            for &(u, v) in &matching {
                m_ball.insert(u);
                m_ball.insert(v);
                m_ball.or_assign(gz.neighbors(u));
                m_ball.or_assign(gz.neighbors(v));
            }
            let mut union = Vec::new();
            for &i in &stable_idx {
                let kept: Vec<usize> = c_sets[i]
                    .iter()
                    .copied()
                    .filter(|&v| !m_ball.contains(v))
                    .collect();
                if kept.len() * 2 < c_sets[i].len() {
                    diag(
                        format!(
                            "stable branch: block {i} kept {}/{} vertices, below half",
                            kept.len(),
                            c_sets[i].len()
                        ),
                        &mut diagnostics,
                    )?;
                }
                union.extend(kept);
            }
            let lifted: Vec<usize> = union.iter().map(|&v| zmap[v]).collect();
            if !g.is_stable(&lifted) {
                return Err(Error::BoundDidNotFire(
                    "gethandset: stable union failed the stability recount".into(),
                ));
            }
            let witness = CriticalityWitness::BigStable {
                vertices: lifted,
                defeats: format!(
                    "a stable union over {} blocks; under c-criticality its size is capped by |G|^c / omega(G)",
                    stable_idx.len()
                ),
            };
            Ok(HandsetResult {
                outcome: HandsetOutcome::Criticality(witness),
                diagnostics,
            })
        }
        GetStableOutcome::CliqueWithCone { x, y: cone } => {
            build_handset(
                g, &gz, &zmap, y, s, t, sheet, &seq, &a_bits, &c_sets, &pair_edges, &x, &cone,
                n_target, lenient, diagnostics,
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_handset(
    g: &Graph,
    gz: &Graph,
    zmap: &[usize],
    y: &Rat,
    s: usize,
    t: usize,
    sheet: &ConstantSheet,
    seq: &crate::sparsedense::DensePairSequence,
    a_bits: &[Bits],
    c_sets: &[Vec<usize>],
    pair_edges: &std::collections::HashMap<(usize, usize), Vec<(usize, usize)>>,
    x: &[usize],
    cone: &[usize],
    n_target: usize,
    lenient: bool,
    mut diagnostics: Vec<String>,
) -> Result<HandsetResult> {
    let n_gz = gz.n();
    let diag = |msg: String, diags: &mut Vec<String>| -> Result<()> {
        if lenient {
            diags.push(msg);
            Ok(())
        } else {
            Err(Error::BoundDidNotFire(msg))
        }
    };
    if cone.len() < n_target {
        diag(
            format!(
                "cone has {} blocks, below the y^(-1/64) target {n_target}",
                cone.len()
            ),
            &mut diagnostics,
        )?;
    }
    // the matching edges supplying fingers and links
    let mut selected: std::collections::HashMap<(usize, usize), Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    let mut n_ball = Bits::new(n_gz);
    for &i in x {
        for &j in x.iter().chain(cone) {
            if i == j {
                continue;
            }
            let key = (i.min(j), i.max(j));
            let edges = pair_edges.get(&key).ok_or_else(|| {
                Error::BoundDidNotFire(format!(
                    "gethandset: auxiliary edge ({i},{j}) has no matching edges"
                ))
            })?;
            if edges.len() < s {
                return Err(Error::BoundDidNotFire(format!(
                    "gethandset: pair ({i},{j}) has {} matching edges, need {s}",
                    edges.len()
                )));
            }
            let mut chosen = edges.clone();
            chosen.sort_unstable();
            chosen.truncate(s);
            for &(u, v) in &chosen {
                n_ball.insert(u);
                n_ball.insert(v);
            }
            selected.entry(key).or_insert(chosen);
        }
    }

    // palms: one vertex of A_i per clique index, complete to C_i's matched
    // ends and anticomplete to every other matched end and earlier palms
    let c_bits: Vec<Bits> = c_sets
        .iter()
        .map(|c| Bits::from_iter(n_gz, c.iter().copied()))
        .collect();
    let mut palms = Vec::with_capacity(t);
    let mut palm_bits = Bits::new(n_gz);
    for &i in x {
        let own = n_ball.and(&c_bits[i]);
        let mut foreign = n_ball.clone();
        foreign.and_not_assign(&c_bits[i]);
        let candidates: Vec<usize> = a_bits[i]
            .iter()
            .filter(|&v| {
                gz.deg_into(v, &own) == own.count()
                    && gz.deg_into(v, &foreign) == 0
                    && gz.deg_into(v, &palm_bits) == 0
            })
            .collect();
        if candidates.len() * 2 < a_bits[i].count() {
            diag(
                format!(
                    "palm selection at pair {i}: {} of {} candidates survive, below half",
                    candidates.len(),
                    a_bits[i].count()
                ),
                &mut diagnostics,
            )?;
        }
        let palm = *candidates.first().ok_or_else(|| {
            Error::BoundDidNotFire(format!("gethandset: no palm candidate in A_{i}"))
        })?;
        palms.push(palm);
        palm_bits.insert(palm);
    }

    // blocks: for each cone index, the half of A_j compatible with the
    // matched ends and the palms
    let mut blocks = Vec::with_capacity(cone.len());
    for &j in cone {
        let own = n_ball.and(&c_bits[j]);
        let mut foreign = n_ball.clone();
        foreign.and_not_assign(&c_bits[j]);
        let candidates: Vec<usize> = a_bits[j]
            .iter()
            .filter(|&v| {
                gz.deg_into(v, &own) == own.count()
                    && gz.deg_into(v, &foreign) == 0
                    && gz.deg_into(v, &palm_bits) == 0
            })
            .collect();
        let want = a_bits[j].count().div_ceil(2);
        if candidates.len() < want {
            diag(
                format!(
                    "block selection at pair {j}: {} of {} candidates survive, below half",
                    candidates.len(),
                    a_bits[j].count()
                ),
                &mut diagnostics,
            )?;
        }
        if candidates.is_empty() {
            return Err(Error::BoundDidNotFire(format!(
                "gethandset: no block candidates in A_{j}"
            )));
        }
        let take = want.min(candidates.len());
        blocks.push(candidates[..take].to_vec());
    }

    // fingers and links from the selected matching edges
    let mut fingers = Vec::with_capacity(t);
    for (pi, &i) in x.iter().enumerate() {
        let mut per_block = Vec::with_capacity(cone.len());
        for &j in cone {
            let key = (i.min(j), i.max(j));
            let edges = &selected[&key];
            let mut fs = Vec::with_capacity(s);
            for &(u, v) in edges {
                // oriented from lower part index to higher
                let (in_i, in_j) = if i < j { (u, v) } else { (v, u) };
                fs.push(Finger { b: in_i, c: in_j });
            }
            per_block.push(fs);
        }
        fingers.push(per_block);
        let _ = pi;
    }
    let mut links = Vec::new();
    for pi in 0..x.len() {
        for pj in (pi + 1)..x.len() {
            let (i, j) = (x[pi], x[pj]);
            let key = (i.min(j), i.max(j));
            let edges = &selected[&key];
            let inner: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| if i < j { (u, v) } else { (v, u) })
                .collect();
            links.push(PalmLink { pi, pj, inner });
        }
    }

    // lift everything to host coordinates
    let lift = |v: usize| zmap[v];
    let blocks: Vec<Vec<usize>> = blocks
        .into_iter()
        .map(|b| b.into_iter().map(lift).collect())
        .collect();
    let palms: Vec<usize> = palms.into_iter().map(lift).collect();
    let fingers: Vec<Vec<Vec<Finger>>> = fingers
        .into_iter()
        .map(|per_block| {
            per_block
                .into_iter()
                .map(|fs| {
                    fs.into_iter()
                        .map(|f| Finger {
                            b: lift(f.b),
                            c: lift(f.c),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let links: Vec<PalmLink> = links
        .into_iter()
        .map(|l| PalmLink {
            pi: l.pi,
            pj: l.pj,
            inner: l.inner.into_iter().map(|(a, b)| (lift(a), lift(b))).collect(),
        })
        .collect();

    // claimed bounds: the theorem values where they hold, the actual values
    // (with a diagnostic) where overrides weakened them
    let width = blocks.iter().map(|b| b.len()).min().unwrap_or(0);
    let d = sheet.value("d").cloned().unwrap_or_else(|| rat_int(1));
    let (dp, dq) = {
        use num::ToPrimitive;
        (
            d.numer().to_i64().unwrap_or(1),
            d.denom().to_u32().unwrap_or(1),
        )
    };
    let theorem_width = Bound::of(
        Rat::new(num::BigInt::from(zmap.len()), num::BigInt::from(2)),
        y.clone(),
        dp,
        dq,
    );
    let min_width = if theorem_width.le_value(&rat_int(width as u64)) {
        theorem_width
    } else {
        diagnostics.push(format!(
            "blockade width {width} below the theorem bound {theorem_width}; claiming the actual width"
        ));
        Bound::exact(rat_int(width as u64))
    };
    let equicardinal = blocks.windows(2).all(|w| w[0].len() == w[1].len());
    if !equicardinal {
        diagnostics.push("blockade is not equicardinal at this scale".into());
    }
    // sparsity claim 2 y^(1/6), inherited from the sequence cleaning
    let spars = Bound::of(rat_int(2), seq.cross_coeff.base.clone(), seq.cross_coeff.num, seq.cross_coeff.den);
    let cert = HandsetCert {
        blocks,
        palms,
        fingers,
        links,
        s,
        t,
        min_length: blocks_len_claim(n_target, cone.len()),
        min_width,
        sparsity_coeff: Some(spars),
        equicardinal,
    };
    let rep = cert.verify(g);
    if !rep.pass() {
        return Err(Error::BoundDidNotFire(format!(
            "gethandset: emitted handset failed verification: {}",
            rep.violations.join("; ")
        )));
    }
    Ok(HandsetResult {
        outcome: HandsetOutcome::Handset(Box::new(cert)),
        diagnostics,
    })
}

fn blocks_len_claim(n_target: usize, actual: usize) -> usize {
    n_target.min(actual)
}

/// Composes a handset with a rainbow copy of `forest` on its blockade into
/// an induced copy of the Swiss Army graph `F^s_t`, mapping the canonical
/// construction layout onto palms, fingers, and link interiors.
pub fn compose_swiss_copy(
    hs: &HandsetCert,
    rainbow: &CopyMap,
    g: &Graph,
) -> Result<CopyMap> {
    let forest = &rainbow.pattern;
    let nf = forest.n();
    let (swiss, layout) = crate::swiss::swiss_layout(forest, hs.s, hs.t)?;
    if rainbow.map.len() != nf {
        return Err(Error::Precondition("compose: rainbow map arity mismatch".into()));
    }
    // locate the block of each forest image
    let mut block_of_vertex = std::collections::HashMap::new();
    for (j, block) in hs.blocks.iter().enumerate() {
        for &v in block {
            block_of_vertex.insert(v, j);
        }
    }
    let mut fv_block = Vec::with_capacity(nf);
    let mut used_blocks = std::collections::HashSet::new();
    for (fv, &w) in rainbow.map.iter().enumerate() {
        let j = *block_of_vertex.get(&w).ok_or_else(|| {
            Error::Precondition(format!(
                "compose: forest vertex {fv} image {w} is outside the blockade"
            ))
        })?;
        if !used_blocks.insert(j) {
            return Err(Error::Precondition(format!(
                "compose: block {j} hosts two forest vertices"
            )));
        }
        fv_block.push(j);
    }
    let mut map = vec![usize::MAX; swiss.n()];
    map[..nf].copy_from_slice(&rainbow.map[..nf]);
    for (p, apex) in layout.apexes().enumerate() {
        map[apex] = hs.palms[p];
    }
    for (&((u, v), copy), &(first, second)) in &layout.internals {
        if v < nf {
            return Err(Error::Precondition("compose: malformed layout".into()));
        }
        if u < nf {
            // forest-apex path: u - first - second - apex(v)
            let palm_idx = v - nf;
            let block_idx = fv_block[u];
            let finger = &hs.fingers[palm_idx][block_idx][copy];
            // finger path: palm - b - c - block vertex, so the interior
            // adjacent to the forest end is c and the one at the apex is b
            map[first] = finger.c;
            map[second] = finger.b;
        } else {
            let (pi, pj) = (u - nf, v - nf);
            let link = hs
                .links
                .iter()
                .find(|l| l.pi == pi && l.pj == pj)
                .ok_or_else(|| Error::Precondition(format!("compose: missing link ({pi},{pj})")))?;
            let (a, b) = link.inner[copy];
            map[first] = a;
            map[second] = b;
        }
    }
    if map.contains(&usize::MAX) {
        return Err(Error::Precondition("compose: incomplete vertex map".into()));
    }
    let copy = CopyMap {
        pattern: swiss,
        map,
    };
    let violations = copy.violations(g);
    if !violations.is_empty() {
        return Err(Error::Verification(format!(
            "compose: assembled copy is not induced: {}",
            violations.join("; ")
        )));
    }
    Ok(copy)
}
