//! Exact subtree counting for weighted trees, unicyclic graphs, and
//! polyphenylene/spiro chains.
//!
//! The crate has three layers that check each other:
//!
//! * [`oracle`] — exhaustive subtree enumeration for small graphs, the
//!   ground truth everything else is tested against;
//! * [`engine`] — generating functions for trees and unicyclic graphs via
//!   leaf contraction and explicit arc sums, with containment constraints;
//! * [`chains`] / [`expect`] — the O(n) subtree-number recursion for
//!   concrete chains, closed-form expected and average values for random
//!   chains, and exhaustive plus Monte Carlo verifiers.
//!
//! All counting is exact (`num` big integers and rationals); floats appear
//! only in Monte Carlo summaries. The `parallel` feature (on by default)
//! runs the verifiers on rayon with results independent of thread count;
//! disabling it leaves the purely sequential fallback.

pub mod chains;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod expect;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod ring;

pub use chains::{
    build_chain_graph, chain_stn, enumerate_specs, random_chain, AttachmentMode, ChainCount,
    ChainFamily, ChainSpec, ProbabilityPair,
};
pub use engine::{
    evaluate, tree_gf, tree_gf_containing, tree_gf_rooted, tree_gf_two_vertices, unicyclic_gf,
    unicyclic_gf_path, unicyclic_gf_rooted, unicyclic_gf_two_vertices, ContainmentConstraint,
};
pub use error::{Error, Result};
pub use expect::{
    average_stn, exhaustive_expectation, expected_anchor, expected_stn, monte_carlo_estimate,
    relation_residual, special_chain_stn, ExpectationResult, MonteCarloResult,
};
pub use graph::{GraphClass, VertexId, WeightedGraph};
pub use oracle::{brute_gf, count_subtrees, visit_subtrees, Subtree};
pub use ring::{ExactInt, ExactRational, Ring};
