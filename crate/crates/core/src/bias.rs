//! Exact and heuristic computation of the bias and one-way parameters.
//!
//! `bias_gamma(D)` is the largest `e(A,B)` over subset pairs with
//! `e(B,A) <= gamma * e(A,B)`; `ow(D)` is the same with `e(B,A) = 0`.
//! Exhaustive scans enumerate candidate sets `A` (restricted, without loss,
//! to vertices with positive out-degree) and solve for the optimal partner
//! `B`: by `B(A)` for one-way pairs and by a knapsack-style dynamic program
//! over per-vertex contributions for gamma-biased pairs. The feasibility test
//! is exact integer arithmetic throughout: `q * e(B,A) <= p * e(A,B)` for
//! `gamma = p/q`.

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{OrientedGraph, VertexSet};
use crate::error::{Error, Result};
use crate::prng::SplitMix64;
use crate::rational::Rational;

/// Default exhaustive limit for `exact_bias` (a 2^n scan with a DP per set).
pub const DEFAULT_BIAS_LIMIT: usize = 20;
/// Default exhaustive limit for `exact_ow` (a cheaper 2^n scan).
pub const DEFAULT_OW_LIMIT: usize = 24;
/// Hard ceiling on exhaustive scans: sets are manipulated as 64-bit masks.
pub const SCAN_CEILING: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Bias,
    Oneway,
}

/// A witness pair `(A,B)` with its arc counts and the gamma it satisfies.
///
/// One-way certificates carry `gamma = 0/1`: `e(B,A) = 0` is exactly the
/// `gamma = 0` instance of the biased-pair constraint. Bias certificates
/// carry the gamma in `(0,1)` they were computed against.
#[derive(Clone, Debug, Serialize)]
pub struct BiasCertificate {
    pub kind: CertKind,
    pub gamma: Rational,
    /// Equal to `e_ab`; the value of the certificate.
    pub value: u64,
    #[serde(rename = "A")]
    pub a: VertexSet,
    #[serde(rename = "B")]
    pub b: VertexSet,
    pub e_ab: u64,
    pub e_ba: u64,
    /// True when produced by an exhaustive scan, false for lower-bound
    /// witnesses from heuristics or samplers.
    pub exact: bool,
}

impl BiasCertificate {
    /// Re-derives both arc counts from the graph and re-checks the
    /// constraint. Every operation in this module validates its certificate
    /// before returning it.
    pub fn validate(&self, d: &OrientedGraph) -> bool {
        let e_ab = d.arc_count_between(&self.a, &self.b);
        let e_ba = d.arc_count_between(&self.b, &self.a);
        if e_ab != self.e_ab || e_ba != self.e_ba || self.value != self.e_ab {
            return false;
        }
        match self.kind {
            CertKind::Oneway => e_ba == 0,
            CertKind::Bias => self.gamma.scales_at_least(e_ba, e_ab),
        }
    }

    fn new_checked(
        d: &OrientedGraph,
        kind: CertKind,
        gamma: Rational,
        a: VertexSet,
        b: VertexSet,
        exact: bool,
    ) -> Self {
        let e_ab = d.arc_count_between(&a, &b);
        let e_ba = d.arc_count_between(&b, &a);
        let cert = BiasCertificate {
            kind,
            gamma,
            value: e_ab,
            a,
            b,
            e_ab,
            e_ba,
            exact,
        };
        assert!(cert.validate(d), "certificate failed re-validation");
        cert
    }
}

fn check_scan_size(what: &'static str, n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(SCAN_CEILING);
    if n > limit {
        return Err(Error::SizeLimit { what, n, limit });
    }
    Ok(())
}

/// Spreads the bits of `k` onto the vertex ids in `verts` (bit `i` of `k`
/// becomes vertex `verts[i]`). Monotone in `k`, so scanning `k` in integer
/// order scans the embedded masks in integer order too.
#[inline]
fn spread_mask(k: u64, verts: &[u32]) -> u64 {
    let mut m = 0u64;
    let mut k = k;
    while k != 0 {
        let i = k.trailing_zeros() as usize;
        k &= k - 1;
        m |= 1u64 << verts[i];
    }
    m
}

struct ScanBest<T> {
    value: u64,
    a_mask: u64,
    payload: T,
}

fn combine_best<T>(x: Option<ScanBest<T>>, y: Option<ScanBest<T>>) -> Option<ScanBest<T>> {
    match (x, y) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            // Larger value wins; ties go to the lexicographically smaller A.
            if b.value > a.value || (b.value == a.value && b.a_mask < a.a_mask) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Exhaustive one-way parameter: the maximum of `e(A, B(A))` over all
/// `A ⊆ V`, with ties broken by the lexicographically smallest `A` as a
/// bit-pattern. Returned partner is the canonical maximizer `B(A)`.
pub fn exact_ow(d: &OrientedGraph, limit: usize) -> Result<BiasCertificate> {
    let n = d.vertex_count();
    check_scan_size("exact_ow", n, limit)?;
    let verts = d.positive_out_vertices();
    let t = verts.len();
    let out_masks: Vec<u64> = (0..n as u32).map(|v| d.out_row(v)[0]).collect();
    let d_out: Vec<u64> = (0..n as u32).map(|v| d.d_out(v) as u64).collect();

    let best = (0u64..1u64 << t)
        .into_par_iter()
        .fold(
            || None::<ScanBest<()>>,
            |mut best, k| {
                let a_mask = spread_mask(k, &verts);
                // e(A,V) bounds the value; skip sets that cannot improve.
                let ub: u64 = iter_bits(a_mask).map(|v| d_out[v as usize]).sum();
                if let Some(ref b) = best {
                    if ub <= b.value {
                        return best;
                    }
                }
                let mut b_mask = 0u64;
                for (v, &row) in out_masks.iter().enumerate() {
                    if row & a_mask == 0 {
                        b_mask |= 1u64 << v;
                    }
                }
                let e_ab: u64 = iter_bits(a_mask)
                    .map(|v| (out_masks[v as usize] & b_mask).count_ones() as u64)
                    .sum();
                let replace = match best {
                    None => true,
                    Some(ref b) => e_ab > b.value,
                };
                if replace {
                    best = Some(ScanBest {
                        value: e_ab,
                        a_mask,
                        payload: (),
                    });
                }
                best
            },
        )
        .reduce(|| None, combine_best)
        .expect("scan covers at least the empty set");

    let a = VertexSet::from_mask(n, best.a_mask);
    let b = d.b_set(&a);
    Ok(BiasCertificate::new_checked(
        d,
        CertKind::Oneway,
        Rational::ZERO,
        a,
        b,
        true,
    ))
}

#[inline]
fn iter_bits(mask: u64) -> impl Iterator<Item = u32> {
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

/// One DP cell: the best selection reaching a given cost sum.
/// Order: larger gain, then smaller cardinality, then smaller bit-pattern.
#[derive(Clone, Copy)]
struct Cell {
    gain: u64,
    card: u32,
    bits: u128,
}

#[inline]
fn cell_better(a: &Cell, b: &Cell) -> bool {
    (a.gain, std::cmp::Reverse(a.card), std::cmp::Reverse(a.bits))
        > (b.gain, std::cmp::Reverse(b.card), std::cmp::Reverse(b.bits))
}

/// Scratch buffers so exhaustive scans do not allocate per candidate set.
struct DpScratch {
    old: Vec<Option<Cell>>,
    new: Vec<Option<Cell>>,
}

impl DpScratch {
    fn new() -> Self {
        DpScratch {
            old: Vec::new(),
            new: Vec::new(),
        }
    }
}

struct DpOutcome {
    gain: u64,
    bits: u128,
    e_ba: u64,
}

/// Core knapsack over per-vertex contributions. For a fixed `A`, vertex `v`
/// contributes gain `a_v = e(A,{v})` and cost `w_v = q*e({v},A) - p*e(A,{v})`;
/// the optimal `B` maximizes total gain over selections with cost sum <= 0.
/// Vertices with `a_v = 0` have non-negative cost and zero gain, so the
/// tie-break (fewest vertices, then smallest bit-pattern) never includes
/// them; the DP domain is `{v : a_v > 0}`.
fn dp_best_b(
    d: &OrientedGraph,
    a_words: &[u64],
    p: i64,
    q: i64,
    scratch: &mut DpScratch,
) -> Result<DpOutcome> {
    let n = d.vertex_count();
    if n > 128 {
        return Err(Error::SizeLimit {
            what: "best_b_for_a",
            n,
            limit: 128,
        });
    }
    let mut domain: Vec<(u32, u64, u64, i64)> = Vec::new(); // (v, gain, c_v, cost)
    let mut pos_sum = 0i64;
    let mut neg_sum = 0i64;
    for v in 0..n as u32 {
        let gain = and_pop(d.in_row(v), a_words);
        if gain == 0 {
            continue;
        }
        let c = and_pop(d.out_row(v), a_words);
        let w = q * c as i64 - p * gain as i64;
        if w > 0 {
            pos_sum += w;
        } else {
            neg_sum += w;
        }
        domain.push((v, gain, c, w));
    }
    let width = (pos_sum - neg_sum + 1) as usize;
    if width > 16_000_000 {
        return Err(Error::Budget {
            what: "best_b_for_a",
            detail: format!("DP cost range {width} too large for gamma {p}/{q}"),
        });
    }
    let offset = (-neg_sum) as usize;

    scratch.old.clear();
    scratch.old.resize(width, None);
    scratch.new.clear();
    scratch.new.resize(width, None);
    scratch.old[offset] = Some(Cell {
        gain: 0,
        card: 0,
        bits: 0,
    });
    let mut lo = offset;
    let mut hi = offset;
    for &(v, gain, _c, w) in &domain {
        let (new_lo, new_hi) = if w >= 0 {
            (lo, hi + w as usize)
        } else {
            (lo - (-w) as usize, hi)
        };
        scratch.new[new_lo..=new_hi].iter_mut().for_each(|c| *c = None);
        scratch.new[lo..=hi].copy_from_slice(&scratch.old[lo..=hi]);
        for idx in lo..=hi {
            if let Some(cell) = scratch.old[idx] {
                let tgt = (idx as i64 + w) as usize;
                let cand = Cell {
                    gain: cell.gain + gain,
                    card: cell.card + 1,
                    bits: cell.bits | (1u128 << v),
                };
                match scratch.new[tgt] {
                    Some(ref cur) if !cell_better(&cand, cur) => {}
                    _ => scratch.new[tgt] = Some(cand),
                }
            }
        }
        lo = new_lo;
        hi = new_hi;
        std::mem::swap(&mut scratch.old, &mut scratch.new);
    }

    let mut best = Cell {
        gain: 0,
        card: 0,
        bits: 0,
    };
    for idx in lo..=hi.min(offset) {
        if let Some(cell) = scratch.old[idx] {
            if cell_better(&cell, &best) {
                best = cell;
            }
        }
    }
    let e_ba: u64 = domain
        .iter()
        .filter(|&&(v, ..)| best.bits >> v & 1 == 1)
        .map(|&(_, _, c, _)| c)
        .sum();
    Ok(DpOutcome {
        gain: best.gain,
        bits: best.bits,
        e_ba,
    })
}

#[inline]
fn and_pop(row: &[u64], set: &[u64]) -> u64 {
    row.iter()
        .zip(set)
        .map(|(a, b)| (a & b).count_ones() as u64)
        .sum()
}

/// For a fixed `A`, the set `B` maximizing `e(A,B)` subject to
/// `q*e(B,A) <= p*e(A,B)` for `gamma = p/q` in lowest terms, `0 < p < q`.
/// Ties broken by smaller `|B|`, then by the lexicographically smaller set.
pub fn best_b_for_a(
    d: &OrientedGraph,
    a: &VertexSet,
    gamma: Rational,
) -> Result<(VertexSet, u64, u64)> {
    if !gamma.is_proper_fraction() {
        return Err(Error::BadGamma(gamma));
    }
    let mut scratch = DpScratch::new();
    let out = dp_best_b(
        d,
        a.words(),
        gamma.num() as i64,
        gamma.den() as i64,
        &mut scratch,
    )?;
    let mut b = VertexSet::empty(d.vertex_count());
    for v in 0..d.vertex_count() as u32 {
        if out.bits >> v & 1 == 1 {
            b.insert(v);
        }
    }
    debug_assert_eq!(d.arc_count_between(a, &b), out.gain);
    debug_assert_eq!(d.arc_count_between(&b, a), out.e_ba);
    Ok((b, out.gain, out.e_ba))
}

/// Exhaustive `bias_gamma(D)`: the maximum of `best_b_for_a` over all
/// `A ⊆ V`. For `gamma = 1/2` this is the plain bias parameter.
pub fn exact_bias(d: &OrientedGraph, gamma: Rational, limit: usize) -> Result<BiasCertificate> {
    if !gamma.is_proper_fraction() {
        return Err(Error::BadGamma(gamma));
    }
    let n = d.vertex_count();
    check_scan_size("exact_bias", n, limit)?;
    let verts = d.positive_out_vertices();
    let t = verts.len();
    let p = gamma.num() as i64;
    let q = gamma.den() as i64;
    let d_out: Vec<u64> = (0..n as u32).map(|v| d.d_out(v) as u64).collect();

    let best = (0u64..1u64 << t)
        .into_par_iter()
        .fold(
            || (None::<ScanBest<u128>>, DpScratch::new()),
            |(mut best, mut scratch), k| {
                let a_mask = spread_mask(k, &verts);
                let ub: u64 = iter_bits(a_mask).map(|v| d_out[v as usize]).sum();
                if let Some(ref b) = best {
                    if ub <= b.value {
                        return (best, scratch);
                    }
                }
                let a_words = [a_mask];
                let out = dp_best_b(d, &a_words, p, q, &mut scratch)
                    .expect("scan sizes are within DP limits");
                let replace = match best {
                    None => true,
                    Some(ref b) => out.gain > b.value,
                };
                if replace {
                    best = Some(ScanBest {
                        value: out.gain,
                        a_mask,
                        payload: out.bits,
                    });
                }
                (best, scratch)
            },
        )
        .map(|(best, _)| best)
        .reduce(|| None, combine_best)
        .expect("scan covers at least the empty set");

    let a = VertexSet::from_mask(n, best.a_mask);
    let mut b = VertexSet::empty(n);
    for v in 0..n as u32 {
        if best.payload >> v & 1 == 1 {
            b.insert(v);
        }
    }
    Ok(BiasCertificate::new_checked(
        d,
        CertKind::Bias,
        gamma,
        a,
        b,
        true,
    ))
}

/// Randomized-restart local search for a gamma-biased pair; a lower-bound
/// witness for graphs beyond the exhaustive range. Deterministic for a fixed
/// seed: restart `r` uses the derived seed `seed + r`, and parallel or serial
/// execution reduce identically by `(value, restart)` max.
pub fn heuristic_bias(
    d: &OrientedGraph,
    gamma: Rational,
    seed: u64,
    iterations: u64,
) -> Result<BiasCertificate> {
    if !gamma.is_proper_fraction() {
        return Err(Error::BadGamma(gamma));
    }
    if iterations == 0 {
        return Err(Error::NoIterations);
    }
    let n = d.vertex_count();
    let p = gamma.num();
    let q = gamma.den();
    let feasible = |e_ab: u64, e_ba: u64| (q as u128) * (e_ba as u128) <= (p as u128) * (e_ab as u128);

    let best = (0..iterations)
        .into_par_iter()
        .map(|restart| {
            let mut rng = SplitMix64::new(seed.wrapping_add(restart));
            let mut a = VertexSet::empty(n);
            for v in 0..n as u32 {
                if rng.coin() {
                    a.insert(v);
                }
            }
            // Start from the canonical feasible partner (e(B,A) = 0).
            let mut b = d.b_set(&a);
            let mut e_ab = d.arc_count_between(&a, &b);
            let mut e_ba = 0u64;
            loop {
                // Best single-vertex toggle, scanning A-moves then B-moves.
                let mut chosen: Option<(bool, u32, u64, u64)> = None;
                for v in 0..n as u32 {
                    let da = d.arcs_from(v, &b);
                    let db = d.arcs_into(&b, v);
                    let (na, nb) = if a.contains(v) {
                        (e_ab - da, e_ba - db)
                    } else {
                        (e_ab + da, e_ba + db)
                    };
                    if feasible(na, nb) && na > chosen.map_or(e_ab, |c| c.2) {
                        chosen = Some((true, v, na, nb));
                    }
                }
                for v in 0..n as u32 {
                    let da = d.arcs_into(&a, v);
                    let db = d.arcs_from(v, &a);
                    let (na, nb) = if b.contains(v) {
                        (e_ab - da, e_ba - db)
                    } else {
                        (e_ab + da, e_ba + db)
                    };
                    if feasible(na, nb) && na > chosen.map_or(e_ab, |c| c.2) {
                        chosen = Some((false, v, na, nb));
                    }
                }
                match chosen {
                    None => break,
                    Some((in_a, v, na, nb)) => {
                        let set = if in_a { &mut a } else { &mut b };
                        if set.contains(v) {
                            set.remove(v);
                        } else {
                            set.insert(v);
                        }
                        e_ab = na;
                        e_ba = nb;
                    }
                }
            }
            (e_ab, restart, a, b)
        })
        .reduce_with(|x, y| {
            // (value, restart) max: later restarts win ties, identically in
            // serial and parallel runs.
            if (y.0, y.1) > (x.0, x.1) {
                y
            } else {
                x
            }
        })
        .expect("at least one restart");

    Ok(BiasCertificate::new_checked(
        d,
        CertKind::Bias,
        gamma,
        best.2,
        best.3,
        false,
    ))
}
