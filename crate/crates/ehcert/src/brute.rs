//! Exhaustive reference routines, used as independent oracles by the test
//! suites. Everything here works from a plain `Vec<Vec<bool>>` adjacency
//! matrix and naive enumeration, sharing no code with the optimized paths
//! it is used to check.
#![allow(clippy::too_many_arguments)]

use crate::graph::Graph;

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

/// Graph isomorphism by permutation backtracking. Intended for small graphs
/// (tests use it up to ~16 vertices).
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let ma = matrix(a);
    let mb = matrix(b);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        u: usize,
        n: usize,
        ma: &[Vec<bool>],
        mb: &[Vec<bool>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if u == n {
            return true;
        }
        'cand: for w in 0..n {
            if used[w] {
                continue;
            }
            for prev in 0..u {
                if ma[u][prev] != mb[w][map[prev]] {
                    continue 'cand;
                }
            }
            map[u] = w;
            used[w] = true;
            if rec(u + 1, n, ma, mb, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    rec(0, n, &ma, &mb, &mut map, &mut used)
}

/// Exact number of labeled induced copies of `h` in `g` by enumerating all
/// ordered tuples of distinct vertices, pruning level by level.
pub fn brute_ind_count(h: &Graph, g: &Graph) -> u128 {
    let k = h.n();
    let n = g.n();
    if k == 0 {
        return 1;
    }
    if k > n {
        return 0;
    }
    let mh = matrix(h);
    let mg = matrix(g);
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; n];
    let mut count = 0u128;
    fn rec(
        u: usize,
        k: usize,
        n: usize,
        mh: &[Vec<bool>],
        mg: &[Vec<bool>],
        map: &mut [usize],
        used: &mut [bool],
        count: &mut u128,
    ) {
        if u == k {
            *count += 1;
            return;
        }
        'cand: for w in 0..n {
            if used[w] {
                continue;
            }
            for prev in 0..u {
                if mh[u][prev] != mg[w][map[prev]] {
                    continue 'cand;
                }
            }
            map[u] = w;
            used[w] = true;
            rec(u + 1, k, n, mh, mg, map, used, count);
            used[w] = false;
        }
    }
    rec(0, k, n, &mh, &mg, &mut map, &mut used, &mut count);
    count
}

/// Maximum clique by enumerating all subsets. Only for `n <= 24`.
pub fn brute_max_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    assert!(n <= 24, "subset enumeration oracle capped at 24 vertices");
    let m = matrix(g);
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let ok = vs
            .iter()
            .enumerate()
            .all(|(i, &u)| vs.iter().skip(i + 1).all(|&v| m[u][v]));
        if ok {
            best = vs;
        }
    }
    best
}

/// Whether `set` induces exactly `pattern` under `map` (ordered) in `g`.
pub fn brute_check_copy(pattern: &Graph, g: &Graph, map: &[usize]) -> bool {
    if map.len() != pattern.n() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for &v in map {
        if v >= g.n() || !seen.insert(v) {
            return false;
        }
    }
    for u in 0..pattern.n() {
        for v in (u + 1)..pattern.n() {
            if pattern.has_edge(u, v) != g.has_edge(map[u], map[v]) {
                return false;
            }
        }
    }
    true
}
