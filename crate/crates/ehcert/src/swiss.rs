//! Subdivision constructors and the Swiss Army graph builder.
//!
//! A Swiss Army graph is built from a forest `F` and integers `s, t >= 1`:
//! `t` apex vertices are added after the forest vertices, every apex-apex and
//! forest-apex pair gets `s` parallel edges, and each of those parallel edges
//! is subdivided exactly twice. Forest edges stay intact.

use crate::error::Error;
use crate::graph::{Graph, Multigraph};

/// Which edges of a multigraph to subdivide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSelection {
    All,
    /// Every edge with at least one end in `>= cutoff`.
    EndAtOrAbove(usize),
}

impl EdgeSelection {
    fn selects(&self, u: usize, v: usize) -> bool {
        match *self {
            EdgeSelection::All => true,
            EdgeSelection::EndAtOrAbove(c) => u >= c || v >= c,
        }
    }
}

/// Replaces each selected edge by a path with `times` new internal vertices
/// (`times`-subdividing it). Unselected edges are kept as plain edges.
///
/// New vertices are appended after the original ones: parallel classes in
/// lexicographic order, copies within a class in order, path interiors from
/// the lower endpoint towards the higher.
///
/// Fails if the result would not be simple: an unselected parallel class of
/// multiplicity at least two, or a selected class with `times == 0`.
pub fn subdivide(m: &Multigraph, selection: EdgeSelection, times: usize) -> Result<Graph, Error> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = m.n();
    for (&(u, v), &mult) in m.classes() {
        if selection.selects(u, v) && times > 0 {
            for _ in 0..mult {
                let mut prev = u;
                for _ in 0..times {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, v));
            }
        } else {
            if mult > 1 {
                return Err(Error::Precondition(format!(
                    "parallel class ({u},{v}) x{mult} kept unsubdivided; result not simple"
                )));
            }
            edges.push((u, v));
        }
    }
    Graph::from_edges(next, &edges)
}

/// Like [`subdivide`], but with a caller-chosen interior count per parallel
/// edge copy, for constructions that subdivide different edges different
/// numbers of times (at-least-k subdivisions pick any counts >= k).
pub fn subdivide_each(
    m: &Multigraph,
    selection: EdgeSelection,
    times_for: &dyn Fn((usize, usize), usize) -> usize,
) -> Result<Graph, Error> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = m.n();
    for (&(u, v), &mult) in m.classes() {
        for copy in 0..mult as usize {
            let times = if selection.selects(u, v) {
                times_for((u, v), copy)
            } else {
                0
            };
            if times == 0 {
                if mult > 1 {
                    return Err(Error::Precondition(format!(
                        "parallel class ({u},{v}) x{mult} kept unsubdivided; result not simple"
                    )));
                }
                edges.push((u, v));
            } else {
                let mut prev = u;
                for _ in 0..times {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, v));
            }
        }
    }
    Graph::from_edges(next, &edges)
}

/// Vertex count of `swiss_army(f, s, t)` in closed form.
pub fn swiss_vertex_count(forest_n: usize, s: usize, t: usize) -> usize {
    forest_n + t + 2 * s * (t * (t - 1) / 2 + forest_n * t)
}

/// Canonical positions of the subdivision interiors of `F^s_t`: for each
/// parallel class `(u, v)` (with `u < v`) and copy index, the two interior
/// vertices, the first adjacent to `u` and the second to `v`.
#[derive(Clone, Debug)]
pub struct SwissLayout {
    pub forest_n: usize,
    pub s: usize,
    pub t: usize,
    pub internals: std::collections::BTreeMap<((usize, usize), usize), (usize, usize)>,
}

impl SwissLayout {
    /// Apex (palm) vertex ids.
    pub fn apexes(&self) -> std::ops::Range<usize> {
        self.forest_n..self.forest_n + self.t
    }
}

fn swiss_multigraph(forest: &Graph, s: usize, t: usize) -> Result<Multigraph, Error> {
    let nf = forest.n();
    let mut m = Multigraph::new(nf + t);
    for (u, v) in forest.edges() {
        m.add_edge(u, v, 1)?;
    }
    for i in 0..t {
        for j in (i + 1)..t {
            m.add_edge(nf + i, nf + j, s as u32)?;
        }
    }
    for u in 0..nf {
        for i in 0..t {
            m.add_edge(u, nf + i, s as u32)?;
        }
    }
    Ok(m)
}

/// The Swiss Army graph together with the positions of its subdivision
/// interiors, replaying the construction order of [`subdivide`].
pub fn swiss_layout(forest: &Graph, s: usize, t: usize) -> Result<(Graph, SwissLayout), Error> {
    let g = swiss_army(forest, s, t)?;
    let nf = forest.n();
    let m = swiss_multigraph(forest, s, t)?;
    let mut internals = std::collections::BTreeMap::new();
    let mut next = m.n();
    for (&(u, v), &mult) in m.classes() {
        if u >= nf || v >= nf {
            for copy in 0..mult as usize {
                internals.insert(((u, v), copy), (next, next + 1));
                next += 2;
            }
        }
    }
    debug_assert_eq!(next, g.n());
    Ok((
        g,
        SwissLayout {
            forest_n: nf,
            s,
            t,
            internals,
        },
    ))
}

/// Builds `F^s_t`: forest vertices `0..|F|` keep their labels and edges, apex
/// vertices are `|F|..|F|+t`, and the twice-subdivided connection paths are
/// appended after that in the canonical order of [`subdivide`].
pub fn swiss_army(forest: &Graph, s: usize, t: usize) -> Result<Graph, Error> {
    if !forest.is_acyclic() {
        return Err(Error::Precondition("swiss_army: input is not a forest".into()));
    }
    if s < 1 || t < 1 {
        return Err(Error::Precondition("swiss_army: need s, t >= 1".into()));
    }
    let nf = forest.n();
    let m = swiss_multigraph(forest, s, t)?;
    let g = subdivide(&m, EdgeSelection::EndAtOrAbove(nf), 2)?;
    debug_assert_eq!(g.n(), swiss_vertex_count(nf, s, t));
    Ok(g)
}
