//! Seeded graph generators. Deterministic for a fixed seed.

use crate::error::Error;
use crate::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// G(n, p) with edges decided in lexicographic pair order, so a seed fully
/// determines the edge set.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("p={p} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges).unwrap()
}

/// Disjoint union of cliques with the given sizes, laid out consecutively.
pub fn disjoint_cliques(sizes: &[usize]) -> Graph {
    let n: usize = sizes.iter().sum();
    let mut edges = Vec::new();
    let mut base = 0;
    for &s in sizes {
        for i in 0..s {
            for j in (i + 1)..s {
                edges.push((base + i, base + j));
            }
        }
        base += s;
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let n = a.n() + b.n();
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(u, v)| (u + a.n(), v + a.n())));
    Graph::from_edges(n, &edges).unwrap()
}

/// Adds `k` isolated vertices after the existing ones.
pub fn pad_isolated(g: &Graph, k: usize) -> Graph {
    Graph::from_edges(g.n() + k, &g.edges()).unwrap()
}

/// Random forest: a uniform random parent assignment, cut into trees.
pub fn random_forest(n: usize, edge_prob: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen::<f64>() < edge_prob {
            let parent = rng.gen_range(0..v);
            edges.push((parent, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random bipartite graph on parts `0..half` and `half..n`; triangle-free
/// and free of all odd cycles by construction.
pub fn random_bipartite(n: usize, p: f64, seed: u64) -> Graph {
    let half = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..half {
        for v in half..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random cograph (P4-free by construction): recursive union/join of
/// single vertices, with the operation chosen by the rng.
pub fn random_cograph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_cograph(n, &mut rng)
}

fn build_cograph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let left = rng.gen_range(1..n);
    let a = build_cograph(left, rng);
    let b = build_cograph(n - left, rng);
    let mut g = disjoint_union(&a, &b);
    if rng.gen::<bool>() {
        // join: add all cross edges
        let mut edges = g.edges();
        for u in 0..a.n() {
            for v in a.n()..n {
                edges.push((u, v));
            }
        }
        g = Graph::from_edges(n, &edges).unwrap();
    }
    g
}
