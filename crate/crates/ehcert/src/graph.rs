//! Immutable simple graphs with bitset adjacency, plus the multigraph
//! staging type used by subdivision constructors.

use crate::bits::Bits;
use crate::error::Error;
use crate::numeric::{rat_int, Rat};
use std::collections::BTreeMap;

/// Simple undirected graph on vertices `0..n`. No loops, adjacency symmetric.
/// Values are immutable after construction; every operation returns a new graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| Bits::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u] = Bits::full(n);
            g.adj[u].remove(u);
        }
        g
    }

    /// Builds from an edge list. Loops are rejected; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &Bits {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|b| b.count()).sum::<usize>() / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            let mut row = Bits::full(self.n);
            row.and_not_assign(&self.adj[u]);
            row.remove(u);
            g.adj[u] = row;
        }
        g
    }

    /// Induced subgraph on `x`, relabeled densely. Returns the graph and the
    /// relabeling map `new id -> host id` (ascending), so certificates found
    /// in the subgraph can be lifted back to the host.
    pub fn induced(&self, x: &[usize]) -> Result<(Graph, Vec<usize>), Error> {
        let mut map: Vec<usize> = x.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.len() != x.len() {
            return Err(Error::Precondition("induced: repeated vertex".into()));
        }
        if let Some(&v) = map.last() {
            if v >= self.n {
                return Err(Error::Precondition(format!(
                    "induced: vertex {v} outside host of size {}",
                    self.n
                )));
            }
        }
        let k = map.len();
        let mut g = Graph::empty(k);
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.adj[u].contains(v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        Ok((g, map))
    }

    pub fn induced_bits(&self, x: &Bits) -> (Graph, Vec<usize>) {
        self.induced(&x.to_vec()).expect("bits are a valid subset")
    }

    /// Number of neighbors of `v` inside `set`.
    #[inline]
    pub fn deg_into(&self, v: usize, set: &Bits) -> usize {
        self.adj[v].and_count(set)
    }

    /// Non-neighbors of `v` inside `set` (not counting `v` itself).
    pub fn nonadj_into(&self, v: usize, set: &Bits) -> usize {
        let mut c = set.count() - self.deg_into(v, set);
        if set.contains(v) {
            c -= 1;
        }
        c
    }

    /// Edges with both ends in `set`.
    pub fn edges_inside(&self, set: &Bits) -> usize {
        set.iter().map(|v| self.adj[v].and_count(set)).sum::<usize>() / 2
    }

    /// Edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: &Bits, b: &Bits) -> usize {
        a.iter().map(|v| self.adj[v].and_count(b)).sum()
    }

    /// True when there are no edges between `a` and `b`.
    pub fn anticomplete(&self, a: &Bits, b: &Bits) -> bool {
        a.iter().all(|v| self.adj[v].and_count(b) == 0)
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set.iter()
                .skip(i + 1)
                .all(|&v| u != v && self.adj[u].contains(v))
        })
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set.iter().skip(i + 1).all(|&v| !self.adj[u].contains(v)))
    }

    /// Max degree over all vertices; 0 for the null graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Whether the whole graph is `x`-sparse: every degree at most `x * n`.
    pub fn is_x_sparse(&self, x: &Rat) -> bool {
        let bound = x * rat_int(self.n as u64);
        (0..self.n).all(|v| rat_int(self.degree(v) as u64) <= bound)
    }

    pub fn is_acyclic(&self) -> bool {
        let mut seen = vec![false; self.n];
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            // BFS counting edges of the component
            let mut stack = vec![root];
            seen[root] = true;
            let mut vs = 0usize;
            let mut deg_sum = 0usize;
            while let Some(u) = stack.pop() {
                vs += 1;
                deg_sum += self.degree(u);
                for v in self.adj[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            if deg_sum / 2 >= vs {
                return false;
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            let mut comp = vec![root];
            seen[root] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.adj[u].iter() {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Result of a two-sided sparsity/density test between disjoint sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSparsity {
    pub sparse: bool,
    pub dense: bool,
    pub max_deg_into_a: usize,
}

/// Tests whether `b` is `x`-sparse and/or `x`-dense to `a`:
/// every vertex of `b` has at most (at least) `x * |a|` neighbors in `a`.
pub fn pair_sparsity(g: &Graph, a: &Bits, b: &Bits, x: &Rat) -> Result<PairSparsity, Error> {
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("pair_sparsity: sets overlap".into()));
    }
    let asz = a.count();
    if asz == 0 {
        return Err(Error::Precondition("pair_sparsity: empty first set".into()));
    }
    let bound = x * rat_int(asz as u64);
    let mut sparse = true;
    let mut dense = true;
    let mut max_deg = 0usize;
    for v in b.iter() {
        let d = g.deg_into(v, a);
        max_deg = max_deg.max(d);
        let dr = rat_int(d as u64);
        if dr > bound {
            sparse = false;
        }
        if dr < bound {
            dense = false;
        }
    }
    Ok(PairSparsity {
        sparse,
        dense,
        max_deg_into_a: max_deg,
    })
}

/// Undirected multigraph without loops; multiplicities at least one.
/// Only a staging type: analysis happens on the simple graphs produced
/// by subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut m = Multigraph::new(g.n());
        for (u, v) in g.edges() {
            m.add_edge(u, v, 1).unwrap();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<(), Error> {
        if u == v {
            return Err(Error::Precondition(format!("multigraph loop at {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::Precondition(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if mult == 0 {
            return Err(Error::Precondition("multiplicity must be >= 1".into()));
        }
        let key = (u.min(v), u.max(v));
        *self.edges.entry(key).or_insert(0) += mult;
        Ok(())
    }

    /// Parallel classes in lexicographic order: `((u, v), multiplicity)`.
    pub fn classes(&self) -> impl Iterator<Item = (&(usize, usize), &u32)> {
        self.edges.iter()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        *self.edges.get(&(u.min(v), u.max(v))).unwrap_or(&0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::numeric::rat;
    use crate::testutil::{brute_isomorphic, random_graph_for_tests};

    #[test]
    fn complement_of_edgeless_is_complete() {
        let g = Graph::empty(4);
        assert_eq!(g.complement(), Graph::complete(4));
    }

    #[test]
    fn complement_is_involutive() {
        for seed in 0..10u64 {
            let g = random_graph_for_tests(12, 0.4, seed);
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = generate::cycle(5);
        assert!(brute_isomorphic(&c5, &c5.complement()));
    }

    #[test]
    fn induced_triangle_from_k5() {
        let k5 = Graph::complete(5);
        let (g, map) = k5.induced(&[0, 2, 4]).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 4]);
    }

    #[test]
    fn induced_identity() {
        let g = random_graph_for_tests(9, 0.5, 7);
        let all: Vec<usize> = (0..9).collect();
        let (h, map) = g.induced(&all).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, all);
    }

    #[test]
    fn induced_alternating_c6_is_edgeless() {
        let c6 = generate::cycle(6);
        let (g, _) = c6.induced(&[0, 2, 4]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn induced_rejects_bad_sets() {
        let g = Graph::complete(4);
        assert!(g.induced(&[0, 0, 1]).is_err());
        assert!(g.induced(&[0, 9]).is_err());
    }

    #[test]
    fn pair_sparsity_anticomplete_and_complete() {
        let g = Graph::empty(8);
        let a = Bits::from_iter(8, 0..4);
        let b = Bits::from_iter(8, 4..8);
        let r = pair_sparsity(&g, &a, &b, &rat(1, 100)).unwrap();
        assert!(r.sparse && !r.dense && r.max_deg_into_a == 0);

        let k = Graph::complete(8);
        let r = pair_sparsity(&k, &a, &b, &rat(1, 1)).unwrap();
        assert!(r.dense && r.max_deg_into_a == 4);
    }

    #[test]
    fn pair_sparsity_matches_direct_count() {
        let g = random_graph_for_tests(40, 0.2, 11);
        let a = Bits::from_iter(40, 0..20);
        let b = Bits::from_iter(40, 20..40);
        let x = rat(1, 2);
        let r = pair_sparsity(&g, &a, &b, &x).unwrap();
        // oracle: per-vertex neighbor counting via has_edge
        let mut sparse = true;
        let mut dense = true;
        let mut maxd = 0;
        for v in 20..40 {
            let d = (0..20).filter(|&u| g.has_edge(u, v)).count();
            maxd = maxd.max(d);
            if d * 2 > 20 {
                sparse = false;
            }
            if d * 2 < 20 {
                dense = false;
            }
        }
        assert_eq!((r.sparse, r.dense, r.max_deg_into_a), (sparse, dense, maxd));
    }

    #[test]
    fn pair_sparsity_rejects_overlap_and_empty() {
        let g = Graph::empty(4);
        let a = Bits::from_iter(4, [0, 1]);
        let b = Bits::from_iter(4, [1, 2]);
        assert!(pair_sparsity(&g, &a, &b, &rat(1, 2)).is_err());
        let e = Bits::new(4);
        assert!(pair_sparsity(&g, &e, &a, &rat(1, 2)).is_err());
    }

    #[test]
    fn acyclicity() {
        assert!(generate::path(5).is_acyclic());
        assert!(!generate::cycle(5).is_acyclic());
        assert!(Graph::empty(3).is_acyclic());
    }
}
