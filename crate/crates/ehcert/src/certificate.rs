//! Verifiable outcome certificates. `verify_certificate` recomputes every
//! claimed inequality from the adjacency data alone; nothing is trusted.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::handset::HandsetCert;
use crate::numeric::{rat_int, Bound, Rat};
use crate::pattern::CopyMap;

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn warning(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }

    pub fn into_result(self) -> Result<VerifyReport> {
        if self.pass() {
            Ok(self)
        } else {
            Err(Error::Verification(self.violations.join("; ")))
        }
    }
}

fn check_vertices(g: &Graph, vs: &[usize], what: &str, rep: &mut VerifyReport) -> bool {
    let mut seen = std::collections::HashSet::new();
    for &v in vs {
        if v >= g.n() {
            rep.violation(format!("{what}: vertex {v} outside host of size {}", g.n()));
            return false;
        }
        if !seen.insert(v) {
            rep.violation(format!("{what}: vertex {v} repeated"));
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct StableSetCert {
    pub vertices: Vec<usize>,
    pub min_size: Bound,
}

impl StableSetCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        if !check_vertices(g, &self.vertices, "stable set", &mut rep) {
            return rep;
        }
        for (i, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[i + 1..] {
                if g.has_edge(u, v) {
                    rep.violation(format!("stable set contains edge ({u},{v})"));
                }
            }
        }
        if !self.min_size.le_value(&rat_int(self.vertices.len() as u64)) {
            rep.violation(format!(
                "stable set has {} vertices, below claimed {}",
                self.vertices.len(),
                self.min_size
            ));
        }
        rep
    }
}

#[derive(Clone, Debug)]
pub struct CliqueCert {
    pub vertices: Vec<usize>,
    pub min_size: Bound,
}

impl CliqueCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        if !check_vertices(g, &self.vertices, "clique", &mut rep) {
            return rep;
        }
        for (i, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[i + 1..] {
                if !g.has_edge(u, v) {
                    rep.violation(format!("clique misses edge ({u},{v})"));
                }
            }
        }
        if !self.min_size.le_value(&rat_int(self.vertices.len() as u64)) {
            rep.violation(format!(
                "clique has {} vertices, below claimed {}",
                self.vertices.len(),
                self.min_size
            ));
        }
        rep
    }
}

/// A subset `S` with `|S| >= min_size` and `e(G[S]) < edge_coeff * |S|^2`.
#[derive(Clone, Debug)]
pub struct SparseSetCert {
    pub vertices: Vec<usize>,
    pub min_size: Bound,
    pub edge_coeff: Rat,
    /// When set, additionally claims every vertex of `S` has at most
    /// `per_vertex_coeff * |S|` neighbors inside `S`.
    pub per_vertex_coeff: Option<Rat>,
}

impl SparseSetCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        if !check_vertices(g, &self.vertices, "sparse set", &mut rep) {
            return rep;
        }
        let bits = Bits::from_iter(g.n(), self.vertices.iter().copied());
        let sz = rat_int(self.vertices.len() as u64);
        if !self.min_size.le_value(&sz) {
            rep.violation(format!(
                "sparse set has {} vertices, below claimed {}",
                self.vertices.len(),
                self.min_size
            ));
        }
        let edges = g.edges_inside(&bits);
        let cap = &self.edge_coeff * &sz * &sz;
        if rat_int(edges as u64) >= cap {
            rep.violation(format!(
                "sparse set has {edges} internal edges, not below {}*|S|^2",
                self.edge_coeff
            ));
        }
        if let Some(coeff) = &self.per_vertex_coeff {
            let cap = coeff * &sz;
            for &v in &self.vertices {
                let d = g.deg_into(v, &bits);
                if rat_int(d as u64) > cap {
                    rep.violation(format!(
                        "vertex {v} has {d} neighbors inside the sparse set, above {coeff}*|S|"
                    ));
                }
            }
        }
        rep
    }
}

/// Disjoint `W1, W2`, both of size at least `min_size`, with the claimed
/// density conditions at tolerance `eps`.
#[derive(Clone, Debug)]
pub struct DensePairCert {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub min_size: Bound,
    pub eps: Rat,
    /// Claim: every vertex of `w1` is nonadjacent to at most `2*eps*|w2|`
    /// vertices of `w2`.
    pub per_vertex_nonadj: bool,
    /// Claim: strictly fewer than `eps*|w1|*|w2|` nonedges between the sides.
    pub total_nonedges: bool,
}

impl DensePairCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        if !check_vertices(g, &self.w1, "dense pair W1", &mut rep)
            || !check_vertices(g, &self.w2, "dense pair W2", &mut rep)
        {
            return rep;
        }
        let b1 = Bits::from_iter(g.n(), self.w1.iter().copied());
        let b2 = Bits::from_iter(g.n(), self.w2.iter().copied());
        if !b1.is_disjoint(&b2) {
            rep.violation("dense pair sides overlap");
            return rep;
        }
        let s1 = rat_int(self.w1.len() as u64);
        let s2 = rat_int(self.w2.len() as u64);
        for (side, size) in [("W1", &s1), ("W2", &s2)] {
            if !self.min_size.le_value(size) {
                rep.violation(format!(
                    "dense pair {side} has {size} vertices, below claimed {}",
                    self.min_size
                ));
            }
        }
        if self.per_vertex_nonadj {
            let cap = rat_int(2) * &self.eps * &s2;
            for &u in &self.w1 {
                let nonadj = self.w2.len() - g.deg_into(u, &b2);
                if rat_int(nonadj as u64) > cap {
                    rep.violation(format!(
                        "vertex {u} of W1 has {nonadj} non-neighbors in W2, above 2*eps*|W2|"
                    ));
                }
            }
        }
        if self.total_nonedges {
            let edges = g.edges_between(&b1, &b2);
            let nonedges = self.w1.len() * self.w2.len() - edges;
            let cap = &self.eps * &s1 * &s2;
            if rat_int(nonedges as u64) >= cap {
                rep.violation(format!(
                    "dense pair has {nonedges} nonedges, not below eps*|W1|*|W2| = {cap}"
                ));
            }
        }
        rep
    }
}

/// The labeled count of `K_h` copies is `count`, and `count >= min_count`.
#[derive(Clone, Debug)]
pub struct CliqueCountCert {
    pub h: usize,
    pub count: u128,
    pub min_count: Bound,
}

impl CliqueCountCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        let actual = crate::exact::labeled_k_clique_count(g, self.h);
        if actual != self.count {
            rep.violation(format!(
                "claimed {} labeled K_{} copies, recount gives {}",
                self.count, self.h, actual
            ));
        }
        let count_rat = Rat::from_integer(self.count.into());
        if !self.min_count.le_value(&count_rat) {
            rep.violation(format!(
                "clique count {} below claimed bound {}",
                self.count, self.min_count
            ));
        }
        rep
    }
}

/// A complete (not necessarily induced) bipartite subgraph: every
/// `big`-`small` pair is an edge.
#[derive(Clone, Debug)]
pub struct CompleteBipartiteCert {
    pub big: Vec<usize>,
    pub small: Vec<usize>,
    pub min_big: Bound,
    pub min_small: Bound,
}

impl CompleteBipartiteCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        if !check_vertices(g, &self.big, "bipartite big side", &mut rep)
            || !check_vertices(g, &self.small, "bipartite small side", &mut rep)
        {
            return rep;
        }
        let b1 = Bits::from_iter(g.n(), self.big.iter().copied());
        let b2 = Bits::from_iter(g.n(), self.small.iter().copied());
        if !b1.is_disjoint(&b2) {
            rep.violation("bipartite sides overlap");
            return rep;
        }
        for &u in &self.big {
            for &v in &self.small {
                if !g.has_edge(u, v) {
                    rep.violation(format!("bipartite pair misses edge ({u},{v})"));
                }
            }
        }
        if !self.min_big.le_value(&rat_int(self.big.len() as u64)) {
            rep.violation(format!(
                "big side has {} vertices, below claimed {}",
                self.big.len(),
                self.min_big
            ));
        }
        if !self.min_small.le_value(&rat_int(self.small.len() as u64)) {
            rep.violation(format!(
                "small side has {} vertices, below claimed {}",
                self.small.len(),
                self.min_small
            ));
        }
        rep
    }
}

/// Pairwise anticomplete blocks with claimed length and width.
#[derive(Clone, Debug)]
pub struct AnticompleteBlockadeCert {
    pub blocks: Vec<Vec<usize>>,
    pub min_length: usize,
    pub min_width: Bound,
}

impl AnticompleteBlockadeCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        let flat: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        if !check_vertices(g, &flat, "anticomplete blockade", &mut rep) {
            return rep;
        }
        let bits: Vec<Bits> = self
            .blocks
            .iter()
            .map(|b| Bits::from_iter(g.n(), b.iter().copied()))
            .collect();
        for i in 0..bits.len() {
            for j in (i + 1)..bits.len() {
                let e = g.edges_between(&bits[i], &bits[j]);
                if e > 0 {
                    rep.violation(format!("blocks {i},{j} joined by {e} edges"));
                }
            }
        }
        if self.blocks.len() < self.min_length {
            rep.violation(format!(
                "blockade length {} below claimed {}",
                self.blocks.len(),
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
        rep
    }
}

/// An induced copy whose image meets each block at most once.
#[derive(Clone, Debug)]
pub struct RainbowCopyCert {
    pub copy: CopyMap,
    pub blocks: Vec<Vec<usize>>,
}

impl RainbowCopyCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        for v in self.copy.violations(g) {
            rep.violation(format!("rainbow copy: {v}"));
        }
        let mut block_of = std::collections::HashMap::new();
        for (bi, block) in self.blocks.iter().enumerate() {
            for &v in block {
                if block_of.insert(v, bi).is_some() {
                    rep.violation(format!("rainbow blocks overlap at {v}"));
                    return rep;
                }
            }
        }
        let mut hit = std::collections::HashSet::new();
        for &w in &self.copy.map {
            match block_of.get(&w) {
                None => rep.violation(format!("image vertex {w} outside the blockade")),
                Some(&bi) => {
                    if !hit.insert(bi) {
                        rep.violation(format!("two image vertices in block {bi}"));
                    }
                }
            }
        }
        rep
    }
}

/// An induced copy of `pattern` in the host, or in its complement when
/// `complemented` is set.
#[derive(Clone, Debug)]
pub struct InducedCopyCert {
    pub copy: CopyMap,
    pub complemented: bool,
}

impl InducedCopyCert {
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let mut rep = VerifyReport::default();
        let host = if self.complemented { g.complement() } else { g.clone() };
        for v in self.copy.violations(&host) {
            rep.violation(format!(
                "induced copy{}: {v}",
                if self.complemented { " (in complement)" } else { "" }
            ));
        }
        rep
    }
}

/// Tagged union of all verifiable outcomes.
#[derive(Clone, Debug)]
pub enum Certificate {
    StableSet(StableSetCert),
    Clique(CliqueCert),
    DensePair(DensePairCert),
    SparseSet(SparseSetCert),
    CliqueCountBound(CliqueCountCert),
    CompleteBipartite(CompleteBipartiteCert),
    AnticompleteBlockade(AnticompleteBlockadeCert),
    RainbowCopy(RainbowCopyCert),
    InducedCopy(InducedCopyCert),
    Handset(HandsetCert),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::StableSet(_) => "stable-set",
            Certificate::Clique(_) => "clique",
            Certificate::DensePair(_) => "dense-pair",
            Certificate::SparseSet(_) => "sparse-set",
            Certificate::CliqueCountBound(_) => "clique-count",
            Certificate::CompleteBipartite(_) => "complete-bipartite",
            Certificate::AnticompleteBlockade(_) => "anticomplete-blockade",
            Certificate::RainbowCopy(_) => "rainbow-copy",
            Certificate::InducedCopy(_) => "induced-copy",
            Certificate::Handset(_) => "handset",
        }
    }
}

/// Recomputes every claimed inequality of `cert` against `g` from scratch.
pub fn verify_certificate(cert: &Certificate, g: &Graph) -> VerifyReport {
    match cert {
        Certificate::StableSet(c) => c.verify(g),
        Certificate::Clique(c) => c.verify(g),
        Certificate::DensePair(c) => c.verify(g),
        Certificate::SparseSet(c) => c.verify(g),
        Certificate::CliqueCountBound(c) => c.verify(g),
        Certificate::CompleteBipartite(c) => c.verify(g),
        Certificate::AnticompleteBlockade(c) => c.verify(g),
        Certificate::RainbowCopy(c) => c.verify(g),
        Certificate::InducedCopy(c) => c.verify(g),
        Certificate::Handset(c) => c.verify(g),
    }
}
