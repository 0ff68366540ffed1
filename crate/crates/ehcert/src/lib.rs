//! Certified graph dichotomies.
//!
//! Every theorem-level procedure in this crate returns a certificate that an
//! independent verifier can recheck from the adjacency data alone: stable
//! sets, cliques, dense pairs, sparse subsets, clique-count bounds,
//! blockades, handsets, rainbow copies, and induced Swiss Army subgraphs.
//! Exhaustive searches carry declared budgets; running out of budget is a
//! distinguished outcome, never a silently wrong answer.

pub mod anticomplete;
pub mod bits;
pub mod blockade;
pub mod brute;
pub mod certificate;
pub mod constants;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod fixtures;
pub mod dichotomies;
pub mod generate;
pub mod graph;
pub mod handset;
pub mod io;
pub mod limits;
pub mod numeric;
pub mod pattern;
pub mod pipeline;
pub mod sparsedense;
pub mod swiss;

#[cfg(test)]
pub mod testutil;

pub use error::{Error, Result};
pub use graph::{Graph, Multigraph};
pub use limits::SearchLimits;
