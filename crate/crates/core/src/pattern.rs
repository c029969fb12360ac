//! Small partially oriented patterns for homomorphism counting.

use crate::error::{Error, Result};

/// A graph on `k` vertices in which each edge is either directed (an arc) or
/// undirected. The two sets are disjoint as unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiallyOrientedGraph {
    k: usize,
    arcs: Vec<(u32, u32)>,
    /// Undirected edges stored with the smaller endpoint first.
    edges: Vec<(u32, u32)>,
}

impl PartiallyOrientedGraph {
    pub fn new(k: usize, arcs: &[(u32, u32)], edges: &[(u32, u32)]) -> Result<Self> {
        let mut seen: Vec<(u32, u32)> = Vec::new();
        let mut check = |u: u32, v: u32, line: usize| -> Result<()> {
            if (u as usize) >= k {
                return Err(Error::VertexOutOfRange { line, v: u, n: k });
            }
            if (v as usize) >= k {
                return Err(Error::VertexOutOfRange { line, v, n: k });
            }
            if u == v {
                return Err(Error::SelfLoop { line, v });
            }
            let key = (u.min(v), u.max(v));
            if seen.contains(&key) {
                return Err(Error::DuplicateArc { line, u, v });
            }
            seen.push(key);
            Ok(())
        };
        for (i, &(u, v)) in arcs.iter().enumerate() {
            check(u, v, i + 1)?;
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            check(u, v, arcs.len() + i + 1)?;
        }
        let mut arcs = arcs.to_vec();
        arcs.sort_unstable();
        let mut edges: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Ok(PartiallyOrientedGraph { k, arcs, edges })
    }

    /// Parses the pattern edge-list format: header `k m`, then `m` lines
    /// `u v >` (arc from u to v) or `u v -` (undirected edge).
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut arcs = Vec::new();
        let mut edges = Vec::new();
        let mut body = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if toks.len() != 2 {
                    return Err(Error::Malformed {
                        line: lineno + 1,
                        msg: "expected header \"k m\"".into(),
                    });
                }
                let k = parse_u64(toks[0], lineno + 1)?;
                let m = parse_u64(toks[1], lineno + 1)?;
                header = Some((k as usize, m as usize));
            } else {
                if toks.len() != 3 {
                    return Err(Error::Malformed {
                        line: lineno + 1,
                        msg: "expected \"u v >\" or \"u v -\"".into(),
                    });
                }
                let u = parse_u64(toks[0], lineno + 1)? as u32;
                let v = parse_u64(toks[1], lineno + 1)? as u32;
                match toks[2] {
                    ">" => arcs.push((u, v)),
                    "-" => edges.push((u, v)),
                    other => {
                        return Err(Error::Malformed {
                            line: lineno + 1,
                            msg: format!("unknown edge marker {other:?}"),
                        })
                    }
                }
                body += 1;
            }
        }
        let (k, m) = header.ok_or(Error::MissingHeader)?;
        if body != m {
            return Err(Error::ArcCountMismatch {
                expected: m,
                found: body,
            });
        }
        PartiallyOrientedGraph::new(k, &arcs, &edges)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.k, self.arcs.len() + self.edges.len());
        for &(u, v) in &self.arcs {
            out.push_str(&format!("{u} {v} >\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v} -\n"));
        }
        out
    }

    /// The directed cycle `0 -> 1 -> ... -> k-1 -> 0`.
    pub fn directed_cycle(k: usize) -> Self {
        assert!(k >= 3);
        let arcs: Vec<(u32, u32)> = (0..k as u32).map(|i| (i, (i + 1) % k as u32)).collect();
        PartiallyOrientedGraph::new(k, &arcs, &[]).unwrap()
    }

    pub fn single_arc() -> Self {
        PartiallyOrientedGraph::new(2, &[(0, 1)], &[]).unwrap()
    }

    pub fn single_edge() -> Self {
        PartiallyOrientedGraph::new(2, &[], &[(0, 1)]).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Number of directed edges of the pattern.
    pub fn directed_edge_count(&self) -> u32 {
        self.arcs.len() as u32
    }

    /// The pattern with every arc forgotten to an undirected edge.
    pub fn underlying(&self) -> Self {
        let edges: Vec<(u32, u32)> = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .chain(self.edges.iter().copied())
            .collect();
        PartiallyOrientedGraph::new(self.k, &[], &edges).unwrap()
    }

    /// The pattern with arc number `idx` replaced by an undirected edge.
    pub fn unorient_arc(&self, idx: usize) -> Self {
        let mut arcs = self.arcs.clone();
        let (u, v) = arcs.remove(idx);
        let mut edges = self.edges.clone();
        edges.push((u.min(v), u.max(v)));
        PartiallyOrientedGraph::new(self.k, &arcs, &edges).unwrap()
    }

    /// The pattern with undirected edge number `idx` oriented as given.
    pub fn orient_edge(&self, idx: usize, forward: bool) -> Self {
        let mut edges = self.edges.clone();
        let (u, v) = edges.remove(idx);
        let mut arcs = self.arcs.clone();
        arcs.push(if forward { (u, v) } else { (v, u) });
        PartiallyOrientedGraph::new(self.k, &arcs, &edges).unwrap()
    }
}

fn parse_u64(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| Error::Malformed {
        line,
        msg: format!("invalid number {tok:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_mixed_pattern() {
        let h = PartiallyOrientedGraph::parse("3 3\n0 1 >\n1 2 -\n2 0 >\n").unwrap();
        assert_eq!(h.arcs(), &[(0, 1), (2, 0)]);
        assert_eq!(h.edges(), &[(1, 2)]);
        assert_eq!(h.directed_edge_count(), 2);
        let rt = PartiallyOrientedGraph::parse(&h.serialize()).unwrap();
        assert_eq!(h, rt);
    }

    #[test]
    fn rejects_pair_in_both_sets() {
        let err = PartiallyOrientedGraph::new(2, &[(0, 1)], &[(1, 0)]).unwrap_err();
        assert!(matches!(err, crate::Error::DuplicateArc { .. }));
    }

    #[test]
    fn underlying_forgets_orientation() {
        let h = PartiallyOrientedGraph::directed_cycle(4);
        let u = h.underlying();
        assert_eq!(u.arcs().len(), 0);
        assert_eq!(u.edges().len(), 4);
        assert_eq!(u.directed_edge_count(), 0);
    }
}
