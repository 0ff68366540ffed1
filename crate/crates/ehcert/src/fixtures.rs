//! Planted fixtures: graphs assembled by running the constructions in
//! reverse, used as oracles by the test suites and the experiment harness.
//!
//! The handset fixture plants `k` "split blobs" (a clique side `A` complete
//! to a stable side `B`), an induced matching between designated `B`-side
//! slots of every blob pair, and a forest between designated `A`-side slots
//! of the cone blobs. With the matching override sheet, the handset pipeline
//! deterministically rediscovers a blockade and handset compatible with the
//! plant: the excluded pattern is `C5`, which the blob structure cannot
//! contain, while the clique sides supply the `K_5` counts that force the
//! dense-pair branch of the inner dichotomy.

use crate::constants::ConstantSheet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::SearchLimits;
use crate::numeric::{rat, Rat};
use crate::pattern;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct HandsetFixture {
    pub graph: Graph,
    /// The sparse zone handed to the handset dichotomy (all vertices here).
    pub z: Vec<usize>,
    /// The excluded pattern (C5).
    pub pattern: Graph,
    pub y: Rat,
    pub s: usize,
    pub t: usize,
    pub forest: Graph,
    pub sheet: ConstantSheet,
    /// Host ids of the planted forest slots, one per forest vertex.
    pub forest_slots: Vec<usize>,
}

/// Builds the planted handset fixture. `k_blobs` split blobs; the first `t`
/// feed the palms, the rest are the cone. Requires `k_blobs >= 2^t` (the
/// stable-target override is 2) and `forest.n() <= k_blobs - t`.
pub fn handset_fixture(
    k_blobs: usize,
    s: usize,
    t: usize,
    forest: &Graph,
    noise_pairs: usize,
    seed: u64,
) -> Result<HandsetFixture> {
    if s < 1 || t < 1 || k_blobs < 2 {
        return Err(Error::Precondition("fixture: need s,t >= 1, k >= 2".into()));
    }
    if !forest.is_acyclic() {
        return Err(Error::Precondition("fixture: forest input is cyclic".into()));
    }
    let nf = forest.n();
    if nf > k_blobs - t {
        return Err(Error::Precondition(format!(
            "fixture: forest has {nf} vertices but only {} cone blobs",
            k_blobs - t
        )));
    }
    if k_blobs < (1 << t) {
        return Err(Error::Precondition(format!(
            "fixture: need k >= 2^t = {} blobs for the clique branch",
            1 << t
        )));
    }
    // blob geometry; see the module comment for why each bound matters
    let q_half = (s * (k_blobs - 1)).max(3);
    let q_full = 2 * q_half;
    let tail = if noise_pairs > 0 { noise_pairs.div_ceil(k_blobs) + 1 } else { 0 };
    let a_side = q_full + 2 + tail;
    let b_side = q_full + 1 + tail;
    let blob = a_side + b_side;
    let n = k_blobs * blob;
    let base = |i: usize| i * blob;
    let a_id = |i: usize, pos: usize| base(i) + pos;
    let b_id = |i: usize, pos: usize| base(i) + a_side + pos;

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..k_blobs {
        for p in 0..a_side {
            for q in (p + 1)..a_side {
                edges.push((a_id(i, p), a_id(i, q)));
            }
        }
        for p in 0..a_side {
            for q in 0..b_side {
                edges.push((a_id(i, p), b_id(i, q)));
            }
        }
    }
    // Blob pairs whose forest slots sit at distance exactly two in the
    // forest must NOT carry matching edges: a slot-M-slot bridge between
    // them would close a 5-cycle with the two forest edges.
    let dist2 = |u: usize, v: usize| -> bool {
        !forest.has_edge(u, v)
            && (0..nf).any(|w| forest.has_edge(u, w) && forest.has_edge(w, v))
    };
    let blob_blocked = |i: usize, j: usize| -> bool {
        if i < t || j < t {
            return false;
        }
        let (u, v) = (i - t, j - t);
        u < nf && v < nf && dist2(u, v)
    };
    // induced matching between the B-side slots of the unblocked blob pairs
    let rank = |i: usize, j: usize| if j < i { j } else { j - 1 };
    let slot = |i: usize, j: usize, r: usize| 1 + rank(i, j) * s + r;
    for i in 0..k_blobs {
        for j in (i + 1)..k_blobs {
            if blob_blocked(i, j) {
                continue;
            }
            for r in 0..s {
                edges.push((b_id(i, slot(i, j, r)), b_id(j, slot(j, i, r))));
            }
        }
    }
    // forest edges between the A-side slots (position 2) of the cone blobs
    let forest_slots: Vec<usize> = (0..nf).map(|fv| a_id(t + fv, 2)).collect();
    for (u, v) in forest.edges() {
        edges.push((forest_slots[u], forest_slots[v]));
    }
    // the auxiliary graph misses the blocked pairs, so the stable target
    // must exceed the largest set of pairwise-blocked blobs
    let stable_target = {
        let cone_n = k_blobs - t;
        let mut best = 1usize;
        for mask in 0u32..(1u32 << cone_n) {
            let vs: Vec<usize> = (0..cone_n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.len() <= best {
                continue;
            }
            let pairwise = vs.iter().enumerate().all(|(ii, &u)| {
                vs.iter().skip(ii + 1).all(|&v| blob_blocked(t + u, t + v))
            });
            if pairwise {
                best = vs.len();
            }
        }
        best + 1
    };
    if (k_blobs as u128) < (stable_target as u128).pow(t as u32) {
        return Err(Error::Precondition(format!(
            "fixture: k = {k_blobs} below m^t = {}^{t}; use a forest without distance-2 pairs or more blobs",
            stable_target
        )));
    }
    // noise: a vertex-disjoint matching between B-side tail slots of distinct
    // blobs, which keeps the host C5-free and below every sparsity threshold
    if noise_pairs > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tail_slots: Vec<usize> = (0..k_blobs)
            .flat_map(|i| (0..tail).map(move |r| b_id(i, q_full + 1 + r)))
            .collect();
        tail_slots.shuffle(&mut rng);
        let mut placed = 0;
        while placed < noise_pairs && tail_slots.len() >= 2 {
            let u = tail_slots.pop().unwrap();
            let v = tail_slots.pop().unwrap();
            let (bu, bv) = (u / blob, v / blob);
            if bu != bv && !blob_blocked(bu.min(bv), bu.max(bv)) {
                edges.push((u.min(v), u.max(v)));
                placed += 1;
            }
        }
    }
    // isolated padding keeps every degree under y*n without touching the
    // planted structure
    let max_forest_deg = (0..nf).map(|v| forest.degree(v)).max().unwrap_or(0);
    let worst_degree = (a_side - 1) + b_side + max_forest_deg;
    let n = {
        let needed = 4 * worst_degree + 4; // y = 1/4
        if needed > n {
            needed
        } else {
            n
        }
    };
    let graph = Graph::from_edges(n, &edges)?;
    let pattern = crate::generate::cycle(5);
    debug_assert!(
        pattern::find_copy(&pattern, &graph, &SearchLimits::default())
            .map(|c| c.is_none())
            .unwrap_or(true),
        "fixture must be C5-free"
    );

    let y = rat(1, 4);
    let mut sheet = ConstantSheet::empty();
    sheet.set_override("eps", rat(1, 8));
    sheet.set_override("pair_coeff", Rat::new((q_half as i64).into(), (n as i64).into()));
    sheet.set_override("k", Rat::from_integer((k_blobs as i64).into()));
    sheet.set_override("k_hands", Rat::from_integer((k_blobs as i64).into()));
    sheet.set_override("m", Rat::from_integer((stable_target as i64).into()));
    sheet.set_override("n", Rat::from_integer(1.into()));

    Ok(HandsetFixture {
        graph,
        z: (0..n).collect(),
        pattern,
        y,
        s,
        t,
        forest: forest.clone(),
        sheet,
        forest_slots,
    })
}

/// Cluster fixture for the anticomplete recursion: `clusters` groups, each
/// chopped into `blocks_per_cluster` blocks of `width` vertices. Blocks
/// carry small internal cliques; distinct blocks are anticomplete, so any
/// forest with an edge has no rainbow copy.
#[derive(Clone, Debug)]
pub struct ClusterFixture {
    pub graph: Graph,
    pub blocks: Vec<Vec<usize>>,
    /// Which cluster each block belongs to.
    pub cluster_of_block: Vec<usize>,
}

pub fn cluster_fixture(
    clusters: usize,
    blocks_per_cluster: usize,
    width: usize,
    clique_size: usize,
) -> Result<ClusterFixture> {
    if clique_size > width {
        return Err(Error::Precondition(
            "cluster fixture: clique larger than block".into(),
        ));
    }
    let total_blocks = clusters * blocks_per_cluster;
    let n = total_blocks * width;
    let mut edges = Vec::new();
    let mut blocks = Vec::with_capacity(total_blocks);
    let mut cluster_of_block = Vec::with_capacity(total_blocks);
    for c in 0..clusters {
        for b in 0..blocks_per_cluster {
            let start = (c * blocks_per_cluster + b) * width;
            let block: Vec<usize> = (start..start + width).collect();
            for i in 0..clique_size {
                for j in (i + 1)..clique_size {
                    edges.push((block[i], block[j]));
                }
            }
            blocks.push(block);
            cluster_of_block.push(c);
        }
    }
    Ok(ClusterFixture {
        graph: Graph::from_edges(n, &edges)?,
        blocks,
        cluster_of_block,
    })
}

/// Blockade with a planted rainbow copy of `forest`: one designated slot per
/// block for the first `forest.n()` blocks, forest edges between designated
/// slots, plus optional decoy edges inside blocks.
#[derive(Clone, Debug)]
pub struct RainbowFixture {
    pub graph: Graph,
    pub blocks: Vec<Vec<usize>>,
    pub planted: Vec<usize>,
}

pub fn rainbow_fixture(
    forest: &Graph,
    extra_blocks: usize,
    width: usize,
    decoys_per_block: usize,
) -> Result<RainbowFixture> {
    if !forest.is_acyclic() {
        return Err(Error::Precondition("rainbow fixture: pattern not a forest".into()));
    }
    if width < 2 {
        return Err(Error::Precondition("rainbow fixture: width >= 2".into()));
    }
    let k = forest.n() + extra_blocks;
    let n = k * width;
    let blocks: Vec<Vec<usize>> = (0..k).map(|b| (b * width..(b + 1) * width).collect()).collect();
    let planted: Vec<usize> = (0..forest.n()).map(|fv| blocks[fv][1]).collect();
    let mut edges = Vec::new();
    for (u, v) in forest.edges() {
        edges.push((planted[u], planted[v]));
    }
    for block in &blocks {
        for d in 0..decoys_per_block.min(width - 1) {
            // decoy edges stay inside a block, unusable by rainbow copies
            if d + 1 < width {
                edges.push((block[0], block[d + 1]));
            }
        }
    }
    Ok(RainbowFixture {
        graph: Graph::from_edges(n, &edges)?,
        blocks,
        planted,
    })
}
