//! Oriented-graph representation with bitset subset counting.
//!
//! Vertices are dense integers `0..n-1`. Arcs are ordered pairs `(tail, head)`.
//! The structure keeps three synchronized views: the sorted arc list, CSR
//! out/in adjacency for `O(d)` neighborhood iteration, and per-vertex
//! adjacency bit-rows for `O(n/64)` subset arithmetic. A graph is immutable
//! after construction and all queries are pure, so sharing across threads is
//! free.

use crate::error::{Error, Result};

/// A subset of `0..n-1` with bit-set semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v as u32);
        }
        s
    }

    pub fn from_vertices(n: usize, vs: &[u32]) -> Self {
        let mut s = VertexSet::empty(n);
        for &v in vs {
            assert!((v as usize) < n, "vertex {v} out of range for n={n}");
            s.insert(v);
        }
        s
    }

    /// Interprets the low `n` bits of `mask` as a set (vertex 0 = bit 0).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = VertexSet::empty(n);
        if n > 0 {
            let keep = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// The bit-pattern of the set for `n <= 64`; used by tie-break keys.
    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= 64);
        if self.n == 0 {
            0
        } else {
            self.words[0]
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: u32) {
        debug_assert!((v as usize) < self.n);
        self.words[v as usize / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        debug_assert!((v as usize) < self.n);
        self.words[v as usize / 64] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: u32) -> bool {
        debug_assert!((v as usize) < self.n);
        self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as u32 * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[inline]
fn and_popcount(a: &[u64], b: &[u64]) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}

#[inline]
fn and_is_empty(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

/// Per-vertex out/in degrees plus the maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub out: Vec<u32>,
    pub inn: Vec<u32>,
    pub max_out: u32,
    pub max_in: u32,
}

/// A simple digraph with no loops and no digons: an orientation of a simple
/// graph. The universal input object of the crate.
#[derive(Clone)]
pub struct OrientedGraph {
    n: usize,
    /// Arcs sorted by (tail, head); the canonical form.
    arcs: Vec<(u32, u32)>,
    out_off: Vec<u32>,
    out_list: Vec<u32>,
    in_off: Vec<u32>,
    in_list: Vec<u32>,
    /// Flattened bit rows, `words_per_row` words per vertex.
    out_rows: Vec<u64>,
    in_rows: Vec<u64>,
    words: usize,
}

impl OrientedGraph {
    /// Validates and indexes an arc list. Arcs may come in any order;
    /// duplicates, loops, digons and out-of-range endpoints are rejected with
    /// distinct diagnostics (`line` reports the 1-based position in `arcs`,
    /// offset by `line_base` when called from the parser).
    pub fn new(n: usize, arcs: &[(u32, u32)]) -> Result<Self> {
        Self::build(n, arcs, 0)
    }

    fn build(n: usize, arcs: &[(u32, u32)], line_base: usize) -> Result<Self> {
        let words = word_count(n);
        let mut seen = vec![0u64; n * words];
        let mut sorted: Vec<(u32, u32)> = Vec::with_capacity(arcs.len());
        for (idx, &(u, v)) in arcs.iter().enumerate() {
            let line = line_base + idx + 1;
            if (u as usize) >= n {
                return Err(Error::VertexOutOfRange { line, v: u, n });
            }
            if (v as usize) >= n {
                return Err(Error::VertexOutOfRange { line, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { line, v });
            }
            let row = u as usize * words;
            if seen[row + v as usize / 64] >> (v % 64) & 1 == 1 {
                return Err(Error::DuplicateArc { line, u, v });
            }
            let rev = v as usize * words;
            if seen[rev + u as usize / 64] >> (u % 64) & 1 == 1 {
                return Err(Error::Digon { line, u: v, v: u });
            }
            seen[row + v as usize / 64] |= 1u64 << (v % 64);
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        Ok(Self::from_canonical(n, sorted, seen, words))
    }

    fn from_canonical(
        n: usize,
        arcs: Vec<(u32, u32)>,
        out_rows: Vec<u64>,
        words: usize,
    ) -> Self {
        let m = arcs.len();
        let mut out_off = vec![0u32; n + 1];
        for &(u, _) in &arcs {
            out_off[u as usize + 1] += 1;
        }
        for i in 0..n {
            out_off[i + 1] += out_off[i];
        }
        let out_list: Vec<u32> = arcs.iter().map(|&(_, v)| v).collect();

        let mut in_off = vec![0u32; n + 1];
        for &(_, v) in &arcs {
            in_off[v as usize + 1] += 1;
        }
        for i in 0..n {
            in_off[i + 1] += in_off[i];
        }
        let mut in_list = vec![0u32; m];
        let mut cursor = in_off.clone();
        for &(u, v) in &arcs {
            in_list[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }

        let mut in_rows = vec![0u64; n * words];
        for &(u, v) in &arcs {
            in_rows[v as usize * words + u as usize / 64] |= 1u64 << (u % 64);
        }

        OrientedGraph {
            n,
            arcs,
            out_off,
            out_list,
            in_off,
            in_list,
            out_rows,
            in_rows,
            words,
        }
    }

    /// Parses the edge-list text format: optional `#` comment lines, a header
    /// `n m`, then exactly `m` lines `u v` (tail head, 0-based decimals).
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut arcs: Vec<(u32, u32)> = Vec::new();
        let mut arc_lines: Vec<usize> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            if header.is_none() {
                let n = parse_field(&mut it, lineno + 1, "vertex count")?;
                let m = parse_field(&mut it, lineno + 1, "arc count")?;
                reject_extra(&mut it, lineno + 1)?;
                header = Some((n as usize, m as usize, lineno + 1));
            } else {
                let u = parse_field(&mut it, lineno + 1, "tail")?;
                let v = parse_field(&mut it, lineno + 1, "head")?;
                reject_extra(&mut it, lineno + 1)?;
                arcs.push((u as u32, v as u32));
                arc_lines.push(lineno + 1);
            }
        }
        let (n, m, _) = header.ok_or(Error::MissingHeader)?;
        if arcs.len() != m {
            return Err(Error::ArcCountMismatch {
                expected: m,
                found: arcs.len(),
            });
        }
        // Re-map builder's synthetic line numbers onto real input lines.
        match Self::build(n, &arcs, 0) {
            Ok(g) => Ok(g),
            Err(e) => Err(fix_line(e, &arc_lines)),
        }
    }

    /// Canonical text form: header plus arcs sorted by (tail, head).
    /// `parse(serialize(g))` reproduces `g` exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(8 + self.arcs.len() * 8);
        out.push_str(&format!("{} {}\n", self.n, self.arcs.len()));
        for &(u, v) in &self.arcs {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> u64 {
        self.arcs.len() as u64
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_list[self.out_off[v as usize] as usize..self.out_off[v as usize + 1] as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_list[self.in_off[v as usize] as usize..self.in_off[v as usize + 1] as usize]
    }

    pub fn out_row(&self, v: u32) -> &[u64] {
        &self.out_rows[v as usize * self.words..(v as usize + 1) * self.words]
    }

    pub fn in_row(&self, v: u32) -> &[u64] {
        &self.in_rows[v as usize * self.words..(v as usize + 1) * self.words]
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out_row(u)[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn d_out(&self, v: u32) -> u32 {
        self.out_off[v as usize + 1] - self.out_off[v as usize]
    }

    pub fn d_in(&self, v: u32) -> u32 {
        self.in_off[v as usize + 1] - self.in_off[v as usize]
    }

    /// Per-vertex `(d+, d-)` plus the maxima.
    pub fn degree_profile(&self) -> DegreeProfile {
        let out: Vec<u32> = (0..self.n as u32).map(|v| self.d_out(v)).collect();
        let inn: Vec<u32> = (0..self.n as u32).map(|v| self.d_in(v)).collect();
        DegreeProfile {
            max_out: out.iter().copied().max().unwrap_or(0),
            max_in: inn.iter().copied().max().unwrap_or(0),
            out,
            inn,
        }
    }

    /// `e(A,B)`: arcs with tail in `A` and head in `B`. The sets may overlap;
    /// an arc inside the intersection counts toward both `e(A,B)` and
    /// `e(B,A)`.
    pub fn arc_count_between(&self, a: &VertexSet, b: &VertexSet) -> u64 {
        debug_assert_eq!(a.universe(), self.n);
        debug_assert_eq!(b.universe(), self.n);
        a.iter()
            .map(|x| and_popcount(self.out_row(x), b.words()))
            .sum()
    }

    /// `e(A,{v})`: arcs from `A` into the single vertex `v`.
    pub fn arcs_into(&self, a: &VertexSet, v: u32) -> u64 {
        and_popcount(self.in_row(v), a.words())
    }

    /// `e({v},A)`: arcs from the single vertex `v` into `A`.
    pub fn arcs_from(&self, v: u32, a: &VertexSet) -> u64 {
        and_popcount(self.out_row(v), a.words())
    }

    /// Joint degrees `(d++, d+-, d-+, d--)` of the ordered pair `(x,u)`:
    /// sizes of the four pairwise intersections of out/in neighborhoods.
    /// `d+-(x,u)` is the number of two-paths from `x` to `u`.
    pub fn joint_degrees(&self, x: u32, u: u32) -> (u64, u64, u64, u64) {
        (
            and_popcount(self.out_row(x), self.out_row(u)),
            and_popcount(self.out_row(x), self.in_row(u)),
            and_popcount(self.in_row(x), self.out_row(u)),
            and_popcount(self.in_row(x), self.in_row(u)),
        )
    }

    /// Number of directed two-paths from `x` to `u` (`d+-(x,u)`).
    pub fn path2_between(&self, x: u32, u: u32) -> u64 {
        and_popcount(self.out_row(x), self.in_row(u))
    }

    /// Every arc reversed. An involution; preserves bias and ow.
    pub fn reverse(&self) -> OrientedGraph {
        let rev: Vec<(u32, u32)> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        OrientedGraph::new(self.n, &rev).expect("reversal preserves validity")
    }

    /// `B(A)`: the vertices with no out-arc into `A`. This is the set
    /// maximizing `e(A,B)` among all `B` with `e(B,A) = 0`.
    pub fn b_set(&self, a: &VertexSet) -> VertexSet {
        let mut b = VertexSet::empty(self.n);
        for v in 0..self.n as u32 {
            if and_is_empty(self.out_row(v), a.words()) {
                b.insert(v);
            }
        }
        b
    }

    /// Tails with at least one out-arc. Optimal bias/ow witnesses never need
    /// `A`-vertices outside this set, so exhaustive scans restrict to it.
    pub fn positive_out_vertices(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.d_out(v) > 0).collect()
    }
}

impl std::fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n, self.arcs)
    }
}

fn parse_field<'a>(
    it: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<u64> {
    let tok = it.next().ok_or_else(|| Error::Malformed {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse::<u64>().map_err(|_| Error::Malformed {
        line,
        msg: format!("invalid {what} {tok:?}"),
    })
}

fn reject_extra<'a>(it: &mut impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match it.next() {
        Some(tok) => Err(Error::Malformed {
            line,
            msg: format!("unexpected trailing token {tok:?}"),
        }),
        None => Ok(()),
    }
}

fn fix_line(e: Error, arc_lines: &[usize]) -> Error {
    let map = |line: usize| arc_lines.get(line - 1).copied().unwrap_or(line);
    match e {
        Error::SelfLoop { line, v } => Error::SelfLoop { line: map(line), v },
        Error::Digon { line, u, v } => Error::Digon { line: map(line), u, v },
        Error::DuplicateArc { line, u, v } => Error::DuplicateArc { line: map(line), u, v },
        Error::VertexOutOfRange { line, v, n } => Error::VertexOutOfRange { line: map(line), v, n },
        other => other,
    }
}
