//! Property tests for the spec invariants that quantify over all graphs.

use ehcert::brute::brute_ind_count;
use ehcert::exact::{max_clique, max_stable};
use ehcert::graph::Graph;
use ehcert::io::{read_graph, write_graph};
use ehcert::limits::SearchLimits;
use ehcert::pattern::{find_copy, ind_count};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(14)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn edge_list_roundtrip_identity(g in arb_graph(14)) {
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn omega_equals_alpha_of_complement(g in arb_graph(12)) {
        let limits = SearchLimits::default();
        let w = max_clique(&g, &limits).unwrap().len();
        let a = max_stable(&g.complement(), &limits).unwrap().len();
        prop_assert_eq!(w, a);
    }

    #[test]
    fn zero_count_iff_no_copy(h in arb_graph(4), g in arb_graph(10)) {
        let limits = SearchLimits::default();
        let count = ind_count(&h, &g, &limits).unwrap();
        let copy = find_copy(&h, &g, &limits).unwrap();
        prop_assert_eq!(count == 0, copy.is_none());
        prop_assert_eq!(count, brute_ind_count(&h, &g));
        if let Some(cm) = copy {
            prop_assert!(cm.verify(&g));
        }
    }
}
