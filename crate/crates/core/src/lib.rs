//! Expected propagation time of information spreading through finite
//! stochastic networks.
//!
//! The model is synchronous and discrete: at every step each node holding the
//! information tries, independently and in parallel, to copy it to each of its
//! neighbours, and every attempt succeeds with probability `p`. Nodes never
//! forget (susceptible/infected dynamics). The quantity of interest is the
//! first step at which every node holds the information.
//!
//! The crate is split by role:
//!
//! - [`graph`]: immutable undirected graphs, generators for the analysed
//!   families, BFS distances, eccentricity, diameter, BFS trees.
//! - [`simulate`]: the stochastic process itself and a reproducible Monte
//!   Carlo estimator.
//! - [`exact`]: closed forms, the hub recurrence, and an exact absorbing
//!   Markov chain solver over infected subsets (the oracle for small graphs).
//! - [`bounds`]: eccentricity lower bound, BFS-tree to star reduction with the
//!   Chernoff star bound, hub and binomial-log brackets, geometric tiling.
//!
//! The crate is `no_std` (it needs `alloc`). IO, parallel execution and the
//! command-line tool live in the `netprop` crate.
//!
//! All logarithms are natural logarithms.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
mod error;
pub mod exact;
pub mod graph;
pub mod rng;
pub mod simulate;
mod stats;

pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph, NodeId};
pub use simulate::{McEstimate, SimParams};
