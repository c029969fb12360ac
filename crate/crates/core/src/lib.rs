//! Measures of orientation-irregularity for oriented graphs.
//!
//! An oriented graph is a directed graph with no loops and no pair of opposite
//! arcs, i.e. an orientation of a simple graph. For vertex subsets `A`, `B`
//! (overlap allowed) write `e(A,B)` for the number of arcs with tail in `A`
//! and head in `B`. This crate computes, exactly on small instances and
//! heuristically beyond:
//!
//! * `bias_gamma(D)`: the largest `e(A,B)` over pairs with
//!   `e(B,A) <= gamma * e(A,B)` (exact rational comparison),
//! * `ow(D)`: the largest `e(A,B)` over pairs with `e(B,A) = 0`,
//!
//! together with the constructive one-way-subgraph algorithms (a greedy
//! procedure for regular digraphs and two randomized samplers), generators for
//! the extremal families built from polarity graphs of projective planes,
//! blow-ups and inhomogeneous random digraphs, oriented cycle and
//! homomorphism counters, and a set of named verification suites that check
//! the structural inequalities relating all of these on exhaustive small-graph
//! corpora.
//!
//! Every pass/fail decision is exact integer or rational arithmetic; floating
//! point appears only in report summaries and sampler means. All randomized
//! operations are deterministic functions of an explicit 64-bit seed.

pub mod bias;
pub mod chernoff;
pub mod corpus;
pub mod cycles;
pub mod digraph;
pub mod error;
pub mod generate;
pub mod hom;
pub mod oneway;
pub mod pattern;
pub mod prng;
pub mod probe;
pub mod rational;
pub mod report;
pub mod verify;

pub use bias::{best_b_for_a, exact_bias, exact_ow, heuristic_bias, BiasCertificate, CertKind};
pub use digraph::{OrientedGraph, VertexSet};
pub use error::Error;
pub use pattern::PartiallyOrientedGraph;
pub use rational::Rational;

/// Crate version recorded in reports and generator sidecars.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Ascending iterator over the set bits of a mask.
pub(crate) fn util_bits(mask: u64) -> impl Iterator<Item = u32> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}
