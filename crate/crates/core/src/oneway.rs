//! Constructive one-way-subgraph algorithms: the greedy procedure for
//! regular digraphs and the two randomized samplers, with their guarantees
//! exposed as checkable quantities.
//!
//! Two-path bookkeeping for a vertex set `A`:
//!
//! * `e2(A)`: directed two-paths `x -> y -> u` with both endpoints `x,u` in
//!   `A` (the middle vertex is unrestricted),
//! * `e2(A,{u})`: two-paths between `A` and a single vertex `u` in either
//!   direction, which is exactly the growth `e2(A ∪ {u}) - e2(A)`.
//!
//! Under this reading, on a d-regular digraph the candidate scores of one
//! greedy round sum to `2*d^2*t - 2*e2(A_t)`; the identity is asserted at
//! every step, so a drift in either definition cannot pass silently.

use rayon::prelude::*;
use serde::Serialize;

use crate::bias::{BiasCertificate, CertKind};
use crate::digraph::{OrientedGraph, VertexSet};
use crate::error::{Error, Result};
use crate::prng::SplitMix64;
use crate::rational::Rational;

/// Number of directed two-paths with both endpoints in `A`.
pub fn path2_count_within(d: &OrientedGraph, a: &VertexSet) -> u64 {
    // Sum over middle vertices: e(A,{y}) * e({y},A).
    (0..d.vertex_count() as u32)
        .map(|y| d.arcs_into(a, y) * d.arcs_from(y, a))
        .sum()
}

/// Two-paths between `A` and the single vertex `u`, in either direction.
fn path2_between_set_and_vertex(d: &OrientedGraph, a: &VertexSet, u: u32) -> u64 {
    let to_u: u64 = d
        .in_neighbors(u)
        .iter()
        .map(|&y| d.arcs_into(a, y))
        .sum();
    let from_u: u64 = d
        .out_neighbors(u)
        .iter()
        .map(|&y| d.arcs_from(y, a))
        .sum();
    to_u + from_u
}

/// The vertex order chosen by the greedy run together with the two-path
/// counts it maintained; enough to re-check the growth bound offline.
#[derive(Clone, Debug, Serialize)]
pub struct GreedyTrace {
    /// Chosen vertices in order; `chosen[0]` is the start vertex.
    pub chosen: Vec<u32>,
    /// `e2(A_t)` after step `t` (index `t-1`).
    pub e2_per_step: Vec<u64>,
    /// Regular degree of the input.
    pub degree: u32,
    pub a: VertexSet,
    pub b: VertexSet,
    pub e_ab: u64,
}

impl GreedyTrace {
    pub fn certificate(&self, d: &OrientedGraph) -> BiasCertificate {
        let cert = BiasCertificate {
            kind: CertKind::Oneway,
            gamma: Rational::ZERO,
            value: self.e_ab,
            a: self.a.clone(),
            b: self.b.clone(),
            e_ab: self.e_ab,
            e_ba: 0,
            exact: false,
        };
        assert!(cert.validate(d));
        cert
    }

    pub fn trace_csv(&self) -> String {
        let mut out = String::from("t,chosen_vertex,e2\n");
        for (i, (&v, &e2)) in self.chosen.iter().zip(&self.e2_per_step).enumerate() {
            out.push_str(&format!("{},{},{}\n", i + 1, v, e2));
        }
        out
    }
}

fn regular_degree(d: &OrientedGraph) -> Result<u32> {
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let deg = d.d_out(0);
    for v in 0..n as u32 {
        if d.d_out(v) != deg || d.d_in(v) != deg {
            return Err(Error::NotRegular {
                v,
                dout: d.d_out(v),
                din: d.d_in(v),
            });
        }
    }
    Ok(deg)
}

/// Greedy one-way pair for a d-regular digraph. Starting from vertex 0, each
/// step adds the vertex `u` outside `A_t` with the fewest two-paths to or
/// from `A_t` (ties to the smallest index), stopping at `t = floor(n/2d)`;
/// the output pair `A = A_t`, `B = B(A)` satisfies `e(B,A) = 0` and
/// `4*e(A,B) >= n`. The growth bound `n * e2(A_t) <= d^2 (t^2 - 1)` holds at
/// every step and is recorded in the trace.
pub fn greedy_oneway_regular(d: &OrientedGraph) -> Result<GreedyTrace> {
    let n = d.vertex_count();
    let deg = regular_degree(d)?;
    if deg == 0 {
        return Err(Error::EmptyGraph);
    }
    // Any d-regular orientation has 2d <= n-1, so the stop step is >= 1.
    let t_end = n / (2 * deg as usize);
    debug_assert!(t_end >= 1);

    let mut a = VertexSet::empty(n);
    a.insert(0);
    let mut chosen = vec![0u32];
    let mut e2 = 0u64; // e2({0}) = 0: a two-path within one vertex needs a digon
    let mut e2_per_step = vec![e2];

    for t in 1..t_end {
        let mut best: Option<(u64, u32)> = None;
        let mut score_sum = 0u64;
        for u in 0..n as u32 {
            if a.contains(u) {
                continue;
            }
            let s = path2_between_set_and_vertex(d, &a, u);
            score_sum += s;
            if best.is_none_or(|(bs, _)| s < bs) {
                best = Some((s, u));
            }
        }
        // The candidate scores of one round add up to e2(A_t, V \ A_t).
        let dd = deg as u64 * deg as u64;
        assert_eq!(
            score_sum,
            2 * dd * t as u64 - 2 * e2,
            "two-path accounting identity violated at step {t}"
        );
        let (s, u) = best.expect("t_end <= n/2 leaves candidates");
        a.insert(u);
        chosen.push(u);
        e2 += s;
        e2_per_step.push(e2);
    }

    let b = d.b_set(&a);
    let e_ab = d.arc_count_between(&a, &b);
    debug_assert_eq!(d.arc_count_between(&b, &a), 0);
    Ok(GreedyTrace {
        chosen,
        e2_per_step,
        degree: deg,
        a,
        b,
        e_ab,
    })
}

/// Outcome of a batch of randomized one-way trials.
#[derive(Clone, Debug, Serialize)]
pub struct SamplerOutcome {
    pub best: BiasCertificate,
    pub mean_eab: f64,
    pub sum_eab: u64,
    pub trials: u64,
}

fn oneway_cert(d: &OrientedGraph, a: VertexSet, b: VertexSet) -> BiasCertificate {
    let e_ab = d.arc_count_between(&a, &b);
    let cert = BiasCertificate {
        kind: CertKind::Oneway,
        gamma: Rational::ZERO,
        value: e_ab,
        a,
        b,
        e_ab,
        e_ba: 0,
        exact: false,
    };
    assert!(cert.validate(d));
    cert
}

/// Monte-Carlo one-way pairs: each trial samples `A` by including every
/// vertex independently with probability `p` (one draw per vertex in vertex
/// order, trial `t` seeded with `seed + t`) and takes `B = B(A)`. With
/// `p = 1/(2*max-out-degree)` the population mean of `e(A,B)` is at least
/// `e(D) / (4*max-out-degree)`.
pub fn sampled_oneway(
    d: &OrientedGraph,
    p: f64,
    seed: u64,
    trials: u64,
) -> Result<SamplerOutcome> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::BadProbability(p));
    }
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if d.arc_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = d.vertex_count();

    let (sum, best) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SplitMix64::new(seed.wrapping_add(t));
            let mut a = VertexSet::empty(n);
            for v in 0..n as u32 {
                if rng.bernoulli(p) {
                    a.insert(v);
                }
            }
            let b = d.b_set(&a);
            let e_ab = d.arc_count_between(&a, &b);
            (e_ab, (e_ab, t, a, b))
        })
        .reduce(
            || (0u64, (0u64, u64::MAX, VertexSet::empty(n), VertexSet::empty(n))),
            |(s1, b1), (s2, b2)| {
                // Exact integer sum; best by (e_ab, trial index) max.
                let best = if b1.1 == u64::MAX || (b2.1 != u64::MAX && (b2.0, b2.1) > (b1.0, b1.1))
                {
                    b2
                } else {
                    b1
                };
                (s1 + s2, best)
            },
        );

    let (_, _, a, b) = best;
    Ok(SamplerOutcome {
        best: oneway_cert(d, a, b),
        mean_eab: sum as f64 / trials as f64,
        sum_eab: sum,
        trials,
    })
}

/// Which side of the degree split a band belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BandSide {
    /// Vertices with `d- >= d+`, banded by in-degree.
    Minus,
    /// Vertices with `d+ >= d-`, banded by out-degree.
    Plus,
}

/// The degree band the sampler worked on.
#[derive(Clone, Debug, Serialize)]
pub struct BandDescriptor {
    pub side: BandSide,
    /// Band index `i >= 1`: degrees in `[n/2^i, n/2^(i-1))`.
    pub index: u32,
    pub size: usize,
    pub members: VertexSet,
    pub p: f64,
    /// `2 * size / 9`, the population-mean guarantee for the band.
    pub mean_target: f64,
}

/// Degree-banded one-way sampler. Partitions `V+ = {v : d+ >= d-}` and
/// `V- = {v : d- >= d+}` into bands by `[n/2^i, n/2^(i-1))` (out-degrees on
/// the plus side, in-degrees on the minus side), picks the largest band
/// (ties: smaller `i`, minus before plus), and samples with `p = 2^i / 3n`,
/// taking `B = B(A) ∩ band`. A plus-side band is handled by running on the
/// reversed graph and swapping the certificate back. The population mean of
/// `e(A,B)` is at least `2|band|/9 >= n / (9 * ceil(log2 n))`.
pub fn banded_oneway(d: &OrientedGraph, seed: u64, trials: u64) -> Result<SamplerOutcome> {
    banded_oneway_with_band(d, seed, trials).map(|(o, _)| o)
}

pub fn banded_oneway_with_band(
    d: &OrientedGraph,
    seed: u64,
    trials: u64,
) -> Result<(SamplerOutcome, BandDescriptor)> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    for v in 0..n as u32 {
        if d.d_out(v) == 0 && d.d_in(v) == 0 {
            return Err(Error::IsolatedVertex(v));
        }
    }

    // Degree d lands in band i iff 2^i * d >= n and 2^(i-1) * d < n.
    let band_of = |deg: u64| -> u32 {
        debug_assert!(deg >= 1);
        let mut i = 1u32;
        while (1u64 << i) * deg < n as u64 {
            i += 1;
        }
        i
    };
    let log2ceil = band_of(1);

    let mut minus_bands: Vec<Vec<u32>> = vec![Vec::new(); log2ceil as usize + 1];
    let mut plus_bands: Vec<Vec<u32>> = vec![Vec::new(); log2ceil as usize + 1];
    for v in 0..n as u32 {
        let (dout, din) = (d.d_out(v) as u64, d.d_in(v) as u64);
        if din >= dout {
            minus_bands[band_of(din) as usize].push(v);
        }
        if dout >= din {
            plus_bands[band_of(dout) as usize].push(v);
        }
    }

    // Largest band; ties by smaller index, minus side before plus side.
    let mut side = BandSide::Minus;
    let mut index = 0u32;
    let mut size = 0usize;
    for i in 1..=log2ceil {
        let s = minus_bands[i as usize].len();
        if s > size {
            side = BandSide::Minus;
            index = i;
            size = s;
        }
    }
    for i in 1..=log2ceil {
        let s = plus_bands[i as usize].len();
        if s > size {
            side = BandSide::Plus;
            index = i;
            size = s;
        }
    }

    let members = match side {
        BandSide::Minus => VertexSet::from_vertices(n, &minus_bands[index as usize]),
        BandSide::Plus => VertexSet::from_vertices(n, &plus_bands[index as usize]),
    };
    let p = (1u64 << index) as f64 / (3.0 * n as f64);
    let descriptor = BandDescriptor {
        side,
        index,
        size,
        members: members.clone(),
        p,
        mean_target: 2.0 * size as f64 / 9.0,
    };

    // A plus band of D is a minus band of reverse(D) with the same index.
    let reversed;
    let work: &OrientedGraph = match side {
        BandSide::Minus => d,
        BandSide::Plus => {
            reversed = d.reverse();
            &reversed
        }
    };

    let (sum, best) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SplitMix64::new(seed.wrapping_add(t));
            let mut a = VertexSet::empty(n);
            for v in 0..n as u32 {
                if rng.bernoulli(p) {
                    a.insert(v);
                }
            }
            let b = work.b_set(&a).intersect(&members);
            let e_ab = work.arc_count_between(&a, &b);
            (e_ab, (e_ab, t, a, b))
        })
        .reduce(
            || (0u64, (0u64, u64::MAX, VertexSet::empty(n), VertexSet::empty(n))),
            |(s1, b1), (s2, b2)| {
                let best = if b1.1 == u64::MAX || (b2.1 != u64::MAX && (b2.0, b2.1) > (b1.0, b1.1))
                {
                    b2
                } else {
                    b1
                };
                (s1 + s2, best)
            },
        );

    let (_, _, a, b) = best;
    // Map a certificate on reverse(D) back to D by swapping the pair.
    let cert = match side {
        BandSide::Minus => oneway_cert(d, a, b),
        BandSide::Plus => oneway_cert(d, b, a),
    };
    Ok((
        SamplerOutcome {
            best: cert,
            mean_eab: sum as f64 / trials as f64,
            sum_eab: sum,
            trials,
        },
        descriptor,
    ))
}

/// Deterministic one-way lower bound `max(D+, ceil(e/4D+))`, which is always
/// at least `sqrt(e)/2`. The returned witness certifies the `D+` half: the
/// star `A = {v}` of maximum out-degree, `B` its out-neighborhood (one-way
/// because the graph has no digons). The `e/4D+` half is an expectation
/// bound, so the reported value may exceed the witness value.
pub fn sqrt_lower_bound(d: &OrientedGraph) -> Result<(u64, BiasCertificate)> {
    let m = d.arc_count();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = d.vertex_count();
    let (vmax, dmax) = (0..n as u32)
        .map(|v| (v, d.d_out(v) as u64))
        .max_by_key(|&(v, deg)| (deg, std::cmp::Reverse(v)))
        .unwrap();
    let mut a = VertexSet::empty(n);
    a.insert(vmax);
    let mut b = VertexSet::empty(n);
    for &u in d.out_neighbors(vmax) {
        b.insert(u);
    }
    let cert = oneway_cert(d, a, b);
    debug_assert_eq!(cert.e_ab, dmax);
    let value = dmax.max(m.div_ceil(4 * dmax));
    // value >= sqrt(e)/2, exactly: 4 * value^2 >= e.
    assert!(4 * value * value >= m);
    Ok((value, cert))
}
