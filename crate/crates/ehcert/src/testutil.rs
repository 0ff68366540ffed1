//! Shared helpers for unit tests.

pub use crate::brute::{brute_check_copy, brute_ind_count, brute_isomorphic, brute_max_clique};
use crate::generate;
use crate::graph::Graph;

pub fn random_graph_for_tests(n: usize, p: f64, seed: u64) -> Graph {
    generate::gnp(n, p, seed).unwrap()
}

/// The Petersen graph (outer C5, inner pentagram, spokes).
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).unwrap()
}
