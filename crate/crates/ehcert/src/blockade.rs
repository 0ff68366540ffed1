//! Blockades: ordered sequences of pairwise-disjoint vertex sets.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{rat_int, Bound, Rat};

/// An ordered sequence of pairwise-disjoint vertex sets over one host graph.
/// Empty blocks are permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blockade {
    blocks: Vec<Vec<usize>>,
}

impl Blockade {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for block in &blocks {
            for &v in block {
                if !seen.insert(v) {
                    return Err(Error::Precondition(format!(
                        "blockade blocks overlap at vertex {v}"
                    )));
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Blockade { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn length(&self) -> usize {
        self.blocks.len()
    }

    /// Minimum block cardinality; 0 for an empty blockade.
    pub fn width(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).min().unwrap_or(0)
    }

    pub fn is_equicardinal(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn union_size(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn union_bits(&self, n: usize) -> Bits {
        Bits::from_iter(n, self.blocks.iter().flatten().copied())
    }

    pub fn block_bits(&self, n: usize, i: usize) -> Bits {
        Bits::from_iter(n, self.blocks[i].iter().copied())
    }

    /// Keeps the first `k` blocks.
    pub fn truncated(&self, k: usize) -> Blockade {
        Blockade {
            blocks: self.blocks[..k.min(self.blocks.len())].to_vec(),
        }
    }

    /// Violations of symmetric `coeff`-sparsity: for every ordered pair of
    /// distinct blocks, every vertex of one block has at most
    /// `coeff * |other|` neighbors in the other. The coefficient may carry a
    /// fractional power; comparisons stay exact.
    pub fn symmetric_sparsity_violations(&self, g: &Graph, coeff: &Bound) -> Vec<String> {
        let mut out = Vec::new();
        let n = g.n();
        let bits: Vec<Bits> = (0..self.length()).map(|i| self.block_bits(n, i)).collect();
        for (i, source) in self.blocks.iter().enumerate() {
            for (j, target_bits) in bits.iter().enumerate() {
                if i == j {
                    continue;
                }
                let cap = Bound {
                    scale: &coeff.scale * rat_int(self.blocks[j].len() as u64),
                    base: coeff.base.clone(),
                    num: coeff.num,
                    den: coeff.den,
                };
                for &v in source {
                    let d = g.deg_into(v, target_bits) as u64;
                    if cap.lt_value(&rat_int(d)) {
                        out.push(format!(
                            "vertex {v} of block {i} has {d} neighbors in block {j}, above {cap}"
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetrically_sparse(&self, g: &Graph, coeff: &Bound) -> bool {
        self.symmetric_sparsity_violations(g, coeff).is_empty()
    }

    /// Zero edges between every pair of distinct blocks.
    pub fn anticomplete_violations(&self, g: &Graph) -> Vec<String> {
        let n = g.n();
        let bits: Vec<Bits> = (0..self.length()).map(|i| self.block_bits(n, i)).collect();
        let mut out = Vec::new();
        for i in 0..self.length() {
            for j in (i + 1)..self.length() {
                let e = g.edges_between(&bits[i], &bits[j]);
                if e > 0 {
                    out.push(format!("blocks {i} and {j} joined by {e} edges"));
                }
            }
        }
        out
    }

    pub fn is_anticomplete(&self, g: &Graph) -> bool {
        self.anticomplete_violations(g).is_empty()
    }
}

/// Convenience: exact sparsity coefficient from a plain rational.
pub fn sparsity_coeff(x: Rat) -> Bound {
    Bound::exact(x)
}
