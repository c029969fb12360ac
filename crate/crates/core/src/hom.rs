//! Homomorphism counting for partially oriented patterns and mechanical
//! verification of the dense-case counting inequality.
//!
//! `hom_count(H, D)` counts all maps `V(H) -> V(D)` (degenerate maps
//! included) sending every arc of `H` to an arc of `D` and every undirected
//! edge of `H` to an arc of `D` in either direction. `underlying_hom_count`
//! forgets the orientations of `H` first. The dense-case check verifies, in
//! exact integer arithmetic,
//!
//! ```text
//! hom(H,D) >= hom(underlying(H),D) / 3^a  -  (1 - 3^-a) * (eps/2) * n^k
//! ```
//!
//! where `a` is the number of directed edges of `H`, under either of two
//! hypotheses on the host: the subset condition
//! `3*e(B,A) >= eBar(A,B) - eps*n^2` for all `A,B` (verified exhaustively),
//! or `bias(D) < eps*n^2` certified by an exact bias value (which implies
//! the subset condition).

use serde::Serialize;

use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};
use crate::pattern::PartiallyOrientedGraph;
use crate::rational::Rational;

/// Default bound on pattern size for the backtracking counters.
pub const DEFAULT_PATTERN_BUDGET: usize = 6;

/// Pairwise constraint between a pattern vertex being placed and an already
/// placed one.
#[derive(Clone, Copy)]
enum Constraint {
    /// new -> placed: candidate must be an in-neighbor of the image.
    ArcTo(usize),
    /// placed -> new.
    ArcFrom(usize),
    /// undirected: adjacent in either direction.
    Either(usize),
}

fn constraint_plan(h: &PartiallyOrientedGraph) -> Vec<Vec<Constraint>> {
    let k = h.vertex_count();
    let mut plan: Vec<Vec<Constraint>> = vec![Vec::new(); k];
    for &(u, v) in h.arcs() {
        let (u, v) = (u as usize, v as usize);
        if u > v {
            plan[u].push(Constraint::ArcTo(v));
        } else {
            plan[v].push(Constraint::ArcFrom(u));
        }
    }
    for &(u, v) in h.edges() {
        // canonical u < v
        plan[v as usize].push(Constraint::Either(u as usize));
    }
    plan
}

fn check_budget(h: &PartiallyOrientedGraph, d: &OrientedGraph, budget_k: usize) -> Result<()> {
    let k = h.vertex_count();
    if k > budget_k || k > 16 {
        return Err(Error::Budget {
            what: "hom_count",
            detail: format!("pattern on {k} vertices exceeds budget {budget_k}"),
        });
    }
    let n = d.vertex_count() as f64;
    if n.powi(k as i32) > 1.0e18 {
        return Err(Error::Budget {
            what: "hom_count",
            detail: format!("n^k overflows the counter (n={}, k={k})", d.vertex_count()),
        });
    }
    Ok(())
}

fn count_maps(
    h: &PartiallyOrientedGraph,
    d: &OrientedGraph,
    injective: bool,
) -> u64 {
    let k = h.vertex_count();
    let n = d.vertex_count();
    if n == 0 {
        return if k == 0 { 1 } else { 0 };
    }
    let plan = constraint_plan(h);
    let words = n.div_ceil(64);
    let full: Vec<u64> = {
        let mut w = vec![!0u64; words];
        let extra = words * 64 - n;
        if extra > 0 {
            w[words - 1] >>= extra;
        }
        w
    };
    let mut image = vec![0u32; k];
    let mut cand = vec![0u64; words];
    let mut either = vec![0u64; words];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        h_plan: &[Vec<Constraint>],
        d: &OrientedGraph,
        depth: usize,
        image: &mut [u32],
        cand: &mut [u64],
        either: &mut [u64],
        full: &[u64],
        injective: bool,
        count: &mut u64,
    ) {
        let k = h_plan.len();
        if depth == k {
            *count += 1;
            return;
        }
        cand.copy_from_slice(full);
        for c in &h_plan[depth] {
            match *c {
                Constraint::ArcTo(j) => {
                    for (w, r) in cand.iter_mut().zip(d.in_row(image[j])) {
                        *w &= r;
                    }
                }
                Constraint::ArcFrom(j) => {
                    for (w, r) in cand.iter_mut().zip(d.out_row(image[j])) {
                        *w &= r;
                    }
                }
                Constraint::Either(j) => {
                    for ((w, o), i) in either
                        .iter_mut()
                        .zip(d.out_row(image[j]))
                        .zip(d.in_row(image[j]))
                    {
                        *w = o | i;
                    }
                    for (w, r) in cand.iter_mut().zip(either.iter()) {
                        *w &= r;
                    }
                }
            }
        }
        if injective {
            for &placed in &image[..depth] {
                cand[placed as usize / 64] &= !(1u64 << (placed % 64));
            }
        }
        // Iterate candidates from a snapshot; deeper levels reuse buffers.
        let snapshot: Vec<u64> = cand.to_vec();
        for (wi, &word) in snapshot.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros();
                w &= w - 1;
                image[depth] = wi as u32 * 64 + b;
                rec(h_plan, d, depth + 1, image, cand, either, full, injective, count);
            }
        }
    }

    let mut count = 0u64;
    rec(
        &plan, d, 0, &mut image, &mut cand, &mut either, &full, injective, &mut count,
    );
    count
}

/// Number of homomorphic copies of `H` in `D` (degenerate maps included).
pub fn hom_count(
    h: &PartiallyOrientedGraph,
    d: &OrientedGraph,
    budget_k: usize,
) -> Result<u64> {
    check_budget(h, d, budget_k)?;
    Ok(count_maps(h, d, false))
}

/// Homomorphic copies of the underlying unoriented pattern.
pub fn underlying_hom_count(
    h: &PartiallyOrientedGraph,
    d: &OrientedGraph,
    budget_k: usize,
) -> Result<u64> {
    hom_count(&h.underlying(), d, budget_k)
}

/// Injective copies; a brute-force diagnostic (the structural statements are
/// about homomorphic counts).
pub fn injective_count(
    h: &PartiallyOrientedGraph,
    d: &OrientedGraph,
    budget_k: usize,
) -> Result<u64> {
    check_budget(h, d, budget_k)?;
    Ok(count_maps(h, d, true))
}

/// How the dense-case hypothesis on the host is established.
#[derive(Clone, Copy, Debug)]
pub enum DenseHypothesis {
    /// Verify `3*e(B,A) >= eBar(A,B) - eps*n^2` over all subset pairs;
    /// exhaustive, capped at n = 14.
    ExhaustiveCondition,
    /// Accept `bias(D) < eps*n^2` from an exact bias value.
    BiasCertified { bias: u64 },
}

/// Verdict of the corollary clause: when the underlying count is large
/// (`hom(underlying) >= 3^a * eps * n^k`) and `n >= 4/eps`, the host must
/// contain the pattern as a subgraph.
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryRecord {
    pub premise_holds: bool,
    pub n_large_enough: bool,
    /// Present only when both conditions fire; must then be `true`.
    pub subgraph_found: Option<bool>,
}

/// Full record of one dense-case inequality evaluation. Both sides of the
/// scaled inequality are kept as exact integers (`lhs >= rhs`).
#[derive(Clone, Debug, Serialize)]
pub struct DenseBoundRecord {
    pub hypothesis: &'static str,
    pub hypothesis_held: bool,
    pub hom_oriented: u64,
    pub hom_underlying: u64,
    pub directed_edges: u32,
    pub epsilon: Rational,
    /// `2 * 3^a * q * hom(H,D)` for `eps = p/q`, `a` directed edges.
    pub lhs: i128,
    /// `2 * q * hom(underlying) - (3^a - 1) * p * n^k`.
    pub rhs: i128,
    /// The main inequality `lhs >= rhs`.
    pub holds: bool,
    pub corollary: CorollaryRecord,
    /// False only when a held hypothesis fails the inequality or the
    /// corollary clause; such a record is an implementation bug by theorem.
    pub pass: bool,
}

/// Checks the subset condition `3*e(B,A) >= eBar(A,B) - eps*n^2` for all
/// `A,B` by exhaustive scan (`eBar(A,B) = e(A,B) + e(B,A)`).
pub fn exhaustive_condition_holds(d: &OrientedGraph, epsilon: Rational) -> Result<bool> {
    let n = d.vertex_count();
    if n > 14 {
        return Err(Error::SizeLimit {
            what: "exhaustive dense-condition scan",
            n,
            limit: 14,
        });
    }
    let p = epsilon.num() as i128;
    let q = epsilon.den() as i128;
    let nn = (n * n) as i128;
    let out_masks: Vec<u64> = (0..n as u32).map(|v| d.out_row(v)[0]).collect();
    for am in 0u64..1 << n {
        for bm in 0u64..1 << n {
            let mut e_ab = 0i128;
            let mut e_ba = 0i128;
            for v in crate::util_bits(am) {
                e_ab += (out_masks[v as usize] & bm).count_ones() as i128;
            }
            for v in crate::util_bits(bm) {
                e_ba += (out_masks[v as usize] & am).count_ones() as i128;
            }
            // 3*q*e(B,A) >= q*(e(A,B)+e(B,A)) - p*n^2
            if 3 * q * e_ba < q * (e_ab + e_ba) - p * nn {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluates the dense-case inequality for one `(H, D)` pair.
pub fn dense_bound_check(
    h: &PartiallyOrientedGraph,
    d: &OrientedGraph,
    epsilon: Rational,
    hypothesis: DenseHypothesis,
    budget_k: usize,
) -> Result<DenseBoundRecord> {
    let n = d.vertex_count();
    let k = h.vertex_count();
    let hom_oriented = hom_count(h, d, budget_k)?;
    let hom_underlying = underlying_hom_count(h, d, budget_k)?;
    let a = h.directed_edge_count();
    let p = epsilon.num() as i128;
    let q = epsilon.den() as i128;

    let (hyp_name, hypothesis_held) = match hypothesis {
        DenseHypothesis::ExhaustiveCondition => (
            "exhaustive-condition",
            exhaustive_condition_holds(d, epsilon)?,
        ),
        DenseHypothesis::BiasCertified { bias } => (
            "bias-certified",
            // bias < eps * n^2, exactly.
            (q * bias as i128) < p * (n as i128) * (n as i128),
        ),
    };

    let overflow = || Error::Budget {
        what: "dense_bound_check",
        detail: "exact inequality sides exceed 128-bit integers".into(),
    };
    let pow3 = 3i128.checked_pow(a).ok_or_else(overflow)?;
    let nk = (n as i128).checked_pow(k as u32).ok_or_else(overflow)?;
    let mul = |vals: &[i128]| -> Result<i128> {
        vals.iter()
            .try_fold(1i128, |acc, &v| acc.checked_mul(v))
            .ok_or_else(overflow)
    };
    let lhs = mul(&[2, pow3, q, hom_oriented as i128])?;
    let rhs = mul(&[2, q, hom_underlying as i128])?
        .checked_sub(mul(&[pow3 - 1, p, nk])?)
        .ok_or_else(overflow)?;
    let holds = lhs >= rhs;

    // Corollary clause: large underlying count plus large n forces a copy.
    let premise_holds = mul(&[q, hom_underlying as i128])? >= mul(&[pow3, p, nk])?;
    let n_large_enough = mul(&[p, n as i128])? >= 4 * q;
    let subgraph_found = if hypothesis_held && premise_holds && n_large_enough {
        Some(injective_count(h, d, budget_k)? > 0)
    } else {
        None
    };
    let corollary = CorollaryRecord {
        premise_holds,
        n_large_enough,
        subgraph_found,
    };

    let pass = !hypothesis_held || (holds && subgraph_found != Some(false));
    Ok(DenseBoundRecord {
        hypothesis: hyp_name,
        hypothesis_held,
        hom_oriented,
        hom_underlying,
        directed_edges: a,
        epsilon,
        lhs,
        rhs,
        holds,
        corollary,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::exact_bias;
    use crate::generate::random_oriented_gne;

    fn triangle() -> OrientedGraph {
        OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// Direct map enumeration oracle, no pruning.
    fn hom_oracle(h: &PartiallyOrientedGraph, d: &OrientedGraph) -> u64 {
        let k = h.vertex_count();
        let n = d.vertex_count();
        let mut image = vec![0u32; k];
        let mut count = 0u64;
        loop {
            let ok = h
                .arcs()
                .iter()
                .all(|&(u, v)| d.has_arc(image[u as usize], image[v as usize]))
                && h.edges().iter().all(|&(u, v)| {
                    d.has_arc(image[u as usize], image[v as usize])
                        || d.has_arc(image[v as usize], image[u as usize])
                });
            if ok {
                count += 1;
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == k {
                    return count;
                }
                image[pos] += 1;
                if (image[pos] as usize) < n {
                    break;
                }
                image[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn hom_simple_shapes() {
        let d = random_oriented_gne(6, 9, 3).unwrap();
        let m = d.arc_count();
        assert_eq!(
            hom_count(&PartiallyOrientedGraph::single_arc(), &d, 6).unwrap(),
            m
        );
        assert_eq!(
            hom_count(&PartiallyOrientedGraph::single_edge(), &d, 6).unwrap(),
            2 * m
        );
        // Directed k-cycles agree with the closed-walk trace.
        for k in 3..=6 {
            let pattern = PartiallyOrientedGraph::directed_cycle(k);
            let via_hom = hom_count(&pattern, &d, 6).unwrap();
            let via_trace = crate::cycles::hom_cycle_count(&d, k);
            assert_eq!(num_bigint::BigUint::from(via_hom), via_trace);
        }
    }

    #[test]
    fn underlying_examples() {
        let d = random_oriented_gne(5, 7, 9).unwrap();
        assert_eq!(
            underlying_hom_count(&PartiallyOrientedGraph::single_arc(), &d, 6).unwrap(),
            2 * d.arc_count()
        );
        let edgeless = PartiallyOrientedGraph::new(3, &[], &[]).unwrap();
        assert_eq!(hom_count(&edgeless, &d, 6).unwrap(), 125);

        let tt3 = OrientedGraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let tri_pattern = PartiallyOrientedGraph::directed_cycle(3);
        assert_eq!(hom_count(&tri_pattern, &tt3, 6).unwrap(), 0);
        assert_eq!(underlying_hom_count(&tri_pattern, &tt3, 6).unwrap(), 6);
    }

    #[test]
    fn hom_matches_oracle_on_random_patterns() {
        // Patterns drawn from corpus codes reinterpreted as mixed patterns.
        let hosts = [
            random_oriented_gne(5, 6, 1).unwrap(),
            random_oriented_gne(6, 10, 2).unwrap(),
        ];
        for code in 0..81u64 {
            // 4 pairs of a 4-vertex pattern in base 3: skip none, arc, edge
            let mut arcs = Vec::new();
            let mut edges = Vec::new();
            let mut c = code;
            for (i, (u, v)) in crate::corpus::pairs(4).into_iter().enumerate() {
                match (c % 3, i % 2) {
                    (0, _) => {}
                    (1, 0) => arcs.push((u, v)),
                    (1, _) => arcs.push((v, u)),
                    (_, _) => edges.push((u, v)),
                }
                c /= 3;
            }
            let h = PartiallyOrientedGraph::new(4, &arcs, &edges).unwrap();
            for d in &hosts {
                assert_eq!(hom_count(&h, d, 6).unwrap(), hom_oracle(&h, d));
            }
        }
    }

    #[test]
    fn hom_bounds_and_split_identity() {
        let d = random_oriented_gne(6, 9, 17).unwrap();
        let h = PartiallyOrientedGraph::new(3, &[(0, 1)], &[(1, 2), (0, 2)]).unwrap();
        let hom = hom_count(&h, &d, 6).unwrap();
        let under = underlying_hom_count(&h, &d, 6).unwrap();
        assert!(hom <= under);
        assert!(under <= 6u64.pow(3));

        // Orienting an undirected edge splits the count exactly.
        for idx in 0..h.edges().len() {
            let fwd = hom_count(&h.orient_edge(idx, true), &d, 6).unwrap();
            let bwd = hom_count(&h.orient_edge(idx, false), &d, 6).unwrap();
            assert_eq!(hom, fwd + bwd);
        }

        // Removing an arc constraint never decreases the count.
        let fewer = PartiallyOrientedGraph::new(3, &[], &[(1, 2), (0, 2)]).unwrap();
        assert!(hom_count(&fewer, &d, 6).unwrap() >= hom);
    }

    #[test]
    fn injective_vs_homomorphic() {
        let tri_pattern = PartiallyOrientedGraph::directed_cycle(3);
        assert_eq!(injective_count(&tri_pattern, &triangle(), 6).unwrap(), 3);
        assert_eq!(hom_count(&tri_pattern, &triangle(), 6).unwrap(), 3);
        let edgeless = PartiallyOrientedGraph::new(2, &[], &[]).unwrap();
        assert_eq!(injective_count(&edgeless, &triangle(), 6).unwrap(), 6);
        assert_eq!(hom_count(&edgeless, &triangle(), 6).unwrap(), 9);
    }

    #[test]
    fn budget_errors() {
        let h = PartiallyOrientedGraph::new(7, &[], &[]).unwrap();
        assert!(matches!(
            hom_count(&h, &triangle(), 6),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn dense_check_base_case_and_arc() {
        // Fully undirected pattern: the inequality degenerates to hom = hom.
        let d = random_oriented_gne(6, 8, 4).unwrap();
        let h = PartiallyOrientedGraph::new(3, &[], &[(0, 1), (1, 2)]).unwrap();
        let rec = dense_bound_check(
            &h,
            &d,
            Rational::new(1, 10),
            DenseHypothesis::BiasCertified { bias: 0 },
            6,
        )
        .unwrap();
        assert_eq!(rec.hom_oriented, rec.hom_underlying);
        assert!(rec.holds && rec.pass);

        // Single directed arc: hom = m, scaled RHS is 2q*2m - 2pn^2... the
        // raw form hom >= 2m/3 - eps*n^2/3.
        let bias = exact_bias(&d, Rational::half(), 20).unwrap().e_ab;
        let n = d.vertex_count() as u64;
        let eps = Rational::new(2 * bias + 1, 2 * n * n);
        let rec = dense_bound_check(
            &PartiallyOrientedGraph::single_arc(),
            &d,
            eps,
            DenseHypothesis::BiasCertified { bias },
            6,
        )
        .unwrap();
        assert!(rec.hypothesis_held);
        assert!(rec.holds && rec.pass);
        assert_eq!(rec.hom_oriented, d.arc_count());
        assert_eq!(rec.hom_underlying, 2 * d.arc_count());
    }

    #[test]
    fn dense_check_on_corpus_sample_with_exact_bias() {
        let tri_pattern = PartiallyOrientedGraph::directed_cycle(3);
        for code in (0..59049u64).step_by(1543) {
            let d = crate::corpus::graph_from_code(5, code);
            let bias = exact_bias(&d, Rational::half(), 20).unwrap().e_ab;
            let eps = Rational::new(2 * bias + 1, 50);
            let rec = dense_bound_check(
                &tri_pattern,
                &d,
                eps,
                DenseHypothesis::BiasCertified { bias },
                6,
            )
            .unwrap();
            assert!(rec.hypothesis_held);
            assert!(rec.pass, "code {code}: {rec:?}");
        }
    }

    #[test]
    fn bias_premise_implies_exhaustive_condition() {
        // The certified route implies the subset condition; spot-check the
        // implication itself on small graphs.
        for code in (0..729u64).step_by(31) {
            let d = crate::corpus::graph_from_code(4, code);
            let bias = exact_bias(&d, Rational::half(), 20).unwrap().e_ab;
            let eps = Rational::new(2 * bias + 1, 32);
            assert!(exhaustive_condition_holds(&d, eps).unwrap(), "code {code}");
        }
    }

    #[test]
    fn random_tournament_triangle_case() {
        let d = random_oriented_gne(8, 28, 23).unwrap(); // tournament on 8
        let bias = exact_bias(&d, Rational::half(), 20).unwrap().e_ab;
        let eps = Rational::new(2 * bias + 1, 128);
        let rec = dense_bound_check(
            &PartiallyOrientedGraph::directed_cycle(3),
            &d,
            eps,
            DenseHypothesis::BiasCertified { bias },
            6,
        )
        .unwrap();
        assert!(rec.hypothesis_held && rec.pass);
    }
}
