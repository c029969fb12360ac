//! Exhaustive corpora of labeled oriented graphs.
//!
//! For `n` vertices each unordered pair can be absent, oriented forward
//! (lower index to higher) or oriented backward, giving `3^(n(n-1)/2)`
//! labeled oriented graphs, each enumerated exactly once as a base-3 code.
//! Codes are random-access, so suites can split the range across workers.

use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};

/// Largest `n` an exhaustive suite will accept (3^21 instances at n = 7 is
/// beyond desk scale; n = 6 is already ~14.3M and sits behind a flag).
pub const MAX_CORPUS_N: usize = 6;

/// The unordered pairs of `0..n` in lexicographic order; digit `i` of a
/// corpus code describes `pair(i)`.
pub fn pairs(n: usize) -> Vec<(u32, u32)> {
    let mut ps = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            ps.push((u, v));
        }
    }
    ps
}

/// `3^(n(n-1)/2)`, the corpus size for `n` vertices.
pub fn corpus_size(n: usize) -> u64 {
    3u64.pow((n * (n - 1) / 2) as u32)
}

/// Decodes a base-3 corpus code into arcs over `pairs(n)`.
/// Digit 0 = pair absent, 1 = forward arc `(u,v)`, 2 = backward arc `(v,u)`.
pub fn arcs_from_code(n: usize, mut code: u64) -> Vec<(u32, u32)> {
    let mut arcs = Vec::new();
    for (u, v) in pairs(n) {
        match code % 3 {
            0 => {}
            1 => arcs.push((u, v)),
            _ => arcs.push((v, u)),
        }
        code /= 3;
    }
    arcs
}

pub fn graph_from_code(n: usize, code: u64) -> OrientedGraph {
    OrientedGraph::new(n, &arcs_from_code(n, code)).expect("corpus codes are valid by construction")
}

/// Checks a requested corpus bound against [`MAX_CORPUS_N`].
pub fn check_corpus_limit(n: usize) -> Result<()> {
    if n > MAX_CORPUS_N {
        return Err(Error::SizeLimit {
            what: "exhaustive corpus",
            n,
            limit: MAX_CORPUS_N,
        });
    }
    Ok(())
}

/// Iterates every labeled oriented graph on exactly `n` vertices.
pub fn oriented_graphs(n: usize) -> impl Iterator<Item = OrientedGraph> {
    (0..corpus_size(n)).map(move |code| graph_from_code(n, code))
}
