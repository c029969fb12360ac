//! Oriented cycle and path statistics: two-path counts, the joint-degree
//! four-cycle formula, brute-force simple-cycle counts, homomorphic
//! (closed-walk) counts, and balanced/unbalanced pair statistics.

use num_bigint::BigUint;

use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default vertex budget for [`simple_cycle_count`] at `k <= 6`.
pub const DEFAULT_CYCLE_BUDGET: usize = 64;

/// Total number of directed two-paths: `sum_y d+(y) * d-(y)`.
pub fn two_path_count(d: &OrientedGraph) -> u64 {
    (0..d.vertex_count() as u32)
        .map(|y| d.d_out(y) as u64 * d.d_in(y) as u64)
        .sum()
}

/// Exact number of oriented four-cycles via joint degrees:
/// `sum_{x,u} d+-(x,u) * d-+(x,u)` counts each four-cycle four times (once
/// per ordered pair of opposite corners), and middle vertices are distinct
/// automatically because a shared middle would need a digon.
pub fn oriented_c4_count(d: &OrientedGraph) -> u64 {
    let n = d.vertex_count() as u32;
    let mut sum = 0u64;
    for x in 0..n {
        for u in 0..n {
            sum += d.path2_between(x, u) * d.path2_between(u, x);
        }
    }
    assert_eq!(sum % 4, 0, "four-cycle double count must be divisible by 4");
    sum / 4
}

/// Number of directed simple cycles of length exactly `k`, each counted once
/// (as a vertex set with its cyclic order). DFS rooted at the minimum vertex
/// of each cycle, visiting only larger vertices.
pub fn simple_cycle_count(d: &OrientedGraph, k: usize, budget_n: usize) -> Result<u64> {
    if !(3..=8).contains(&k) {
        return Err(Error::Budget {
            what: "simple_cycle_count",
            detail: format!("cycle length {k} outside 3..=8"),
        });
    }
    let n = d.vertex_count();
    if n > budget_n || (k > 6 && n > 32) {
        return Err(Error::Budget {
            what: "simple_cycle_count",
            detail: format!("n={n} beyond brute-force budget for k={k}"),
        });
    }

    fn dfs(
        d: &OrientedGraph,
        root: u32,
        current: u32,
        depth: usize,
        k: usize,
        visited: &mut Vec<bool>,
        count: &mut u64,
    ) {
        if depth == k {
            if d.has_arc(current, root) {
                *count += 1;
            }
            return;
        }
        for &next in d.out_neighbors(current) {
            if next > root && !visited[next as usize] {
                visited[next as usize] = true;
                dfs(d, root, next, depth + 1, k, visited, count);
                visited[next as usize] = false;
            }
        }
    }

    let mut count = 0u64;
    let mut visited = vec![false; n];
    for root in 0..n as u32 {
        dfs(d, root, root, 1, k, &mut visited, &mut count);
    }
    Ok(count)
}

/// Number of homomorphic copies of the directed k-cycle: the trace of the
/// k-th power of the arc adjacency matrix (closed k-walks), in exact
/// big-integer arithmetic. Zero for k in {1,2} on any oriented graph: a
/// closed 1-walk is a loop and a closed 2-walk a digon.
pub fn hom_cycle_count(d: &OrientedGraph, k: usize) -> BigUint {
    assert!(k >= 1);
    let n = d.vertex_count();
    let mut base = vec![BigUint::ZERO; n * n];
    for &(u, v) in d.arcs() {
        base[u as usize * n + v as usize] = BigUint::from(1u32);
    }
    let mut result: Option<Vec<BigUint>> = None;
    let mut sq = base;
    let mut exp = k;
    while exp > 0 {
        if exp & 1 == 1 {
            result = Some(match result {
                None => sq.clone(),
                Some(r) => mat_mul(&r, &sq, n),
            });
        }
        exp >>= 1;
        if exp > 0 {
            sq = mat_mul(&sq, &sq, n);
        }
    }
    let power = result.expect("k >= 1");
    (0..n).map(|i| power[i * n + i].clone()).sum()
}

fn mat_mul(a: &[BigUint], b: &[BigUint], n: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::ZERO; n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = &a[i * n + l];
            if ail == &BigUint::ZERO {
                continue;
            }
            for j in 0..n {
                let blj = &b[l * n + j];
                if blj != &BigUint::ZERO {
                    c[i * n + j] += ail * blj;
                }
            }
        }
    }
    c
}

/// Two-path statistics around ordered vertex pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStats {
    /// All directed two-paths.
    pub two_path_total: u64,
    /// Two-paths whose end vertex has out-degree at least the threshold
    /// (default `e/8n`, compared exactly as `8n*d+ >= e`).
    pub good_two_paths: u64,
    /// Ordered pairs `(x,u)` with `d+-(x,u) > factor * d+-(u,x)`.
    pub unbalanced_pairs: u64,
    /// Sum of `d+-(x,u)` over unbalanced pairs.
    pub unbalanced_two_paths: u64,
    /// Per-vertex count of two-paths starting at `x`.
    pub e_x: Vec<u64>,
}

/// Computes [`PathStats`] with the given unbalance factor (default 16) and
/// out-degree threshold; `None` uses `e/(8n)`, the structural default.
pub fn path_stats(
    d: &OrientedGraph,
    unbalance_factor: u64,
    outdeg_threshold: Option<Rational>,
) -> PathStats {
    let n = d.vertex_count();
    let m = d.arc_count();

    let e_x: Vec<u64> = (0..n as u32)
        .map(|x| {
            d.out_neighbors(x)
                .iter()
                .map(|&y| d.d_out(y) as u64)
                .sum()
        })
        .collect();
    let two_path_total: u64 = e_x.iter().sum();
    debug_assert_eq!(two_path_total, two_path_count(d));

    // good end vertex: d+(u) >= threshold, cross-multiplied exactly.
    let good_end = |u: u32| -> bool {
        let deg = d.d_out(u) as u64;
        match outdeg_threshold {
            Some(t) => t.le_ratio(deg, 1),
            None => {
                if n == 0 {
                    false
                } else {
                    8 * n as u64 * deg >= m
                }
            }
        }
    };
    let good_two_paths: u64 = (0..n as u32)
        .filter(|&u| good_end(u))
        .map(|u| {
            // two-paths ending at u: sum of in-degrees of u's in-neighbors
            d.in_neighbors(u)
                .iter()
                .map(|&y| d.d_in(y) as u64)
                .sum::<u64>()
        })
        .sum();

    let mut unbalanced_pairs = 0u64;
    let mut unbalanced_two_paths = 0u64;
    for x in 0..n as u32 {
        for u in 0..n as u32 {
            let fwd = d.path2_between(x, u);
            if fwd == 0 {
                continue;
            }
            let bwd = d.path2_between(u, x);
            if fwd > unbalance_factor * bwd {
                unbalanced_pairs += 1;
                unbalanced_two_paths += fwd;
            }
        }
    }

    PathStats {
        two_path_total,
        good_two_paths,
        unbalanced_pairs,
        unbalanced_two_paths,
        e_x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{blow_up, circulant_digraph, random_oriented_gne};

    fn triangle() -> OrientedGraph {
        OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn four_cycle() -> OrientedGraph {
        OrientedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    /// Independent four-cycle oracle over ordered 4-tuples of distinct
    /// vertices; each cycle appears once per starting corner, so /4.
    fn c4_oracle(d: &OrientedGraph) -> u64 {
        let n = d.vertex_count() as u32;
        let mut count = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        if a != b
                            && a != c
                            && a != e
                            && b != c
                            && b != e
                            && c != e
                            && d.has_arc(a, b)
                            && d.has_arc(b, c)
                            && d.has_arc(c, e)
                            && d.has_arc(e, a)
                        {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count % 4, 0);
        count / 4
    }

    /// Simple-cycle oracle: ordered k-tuples of distinct vertices forming a
    /// directed cycle, divided by k rotations.
    fn simple_cycle_oracle(d: &OrientedGraph, k: usize) -> u64 {
        let n = d.vertex_count();
        let mut tuple = vec![0u32; k];
        fn rec(d: &OrientedGraph, tuple: &mut Vec<u32>, pos: usize, n: usize, count: &mut u64) {
            let k = tuple.len();
            if pos == k {
                for i in 0..k {
                    if !d.has_arc(tuple[i], tuple[(i + 1) % k]) {
                        return;
                    }
                }
                *count += 1;
                return;
            }
            for v in 0..n as u32 {
                if tuple[..pos].contains(&v) {
                    continue;
                }
                tuple[pos] = v;
                rec(d, tuple, pos + 1, n, count);
            }
        }
        let mut count = 0;
        rec(d, &mut tuple, 0, n, &mut count);
        assert_eq!(count % k as u64, 0);
        count / k as u64
    }

    /// u64 trace oracle for closed walks, independent of the BigUint path.
    fn closed_walk_oracle(d: &OrientedGraph, k: usize) -> u64 {
        let n = d.vertex_count();
        let mut m = vec![0u64; n * n];
        for &(u, v) in d.arcs() {
            m[u as usize * n + v as usize] = 1;
        }
        let mut p = m.clone();
        for _ in 1..k {
            let mut q = vec![0u64; n * n];
            for i in 0..n {
                for l in 0..n {
                    if p[i * n + l] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        q[i * n + j] += p[i * n + l] * m[l * n + j];
                    }
                }
            }
            p = q;
        }
        (0..n).map(|i| p[i * n + i]).sum()
    }

    #[test]
    fn two_path_examples() {
        assert_eq!(two_path_count(&triangle()), 3);
        let star = OrientedGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(two_path_count(&star), 0);
        assert_eq!(two_path_count(&four_cycle()), 4);
    }

    #[test]
    fn c4_formula_examples() {
        assert_eq!(oriented_c4_count(&four_cycle()), 1);
        assert_eq!(oriented_c4_count(&triangle()), 0);
        assert_eq!(oriented_c4_count(&blow_up(&triangle(), 2)), 0);
    }

    #[test]
    fn c4_formula_matches_oracle_on_seeded_graphs() {
        for seed in 0..40u64 {
            let n = 5 + (seed % 6) as usize; // 5..=10
            let e = (n as u64 * (n as u64 - 1) / 2).min(2 * n as u64);
            let g = random_oriented_gne(n, e, seed).unwrap();
            assert_eq!(oriented_c4_count(&g), c4_oracle(&g), "seed {seed}");
        }
    }

    #[test]
    fn simple_cycles_examples() {
        assert_eq!(simple_cycle_count(&triangle(), 3, 64).unwrap(), 1);
        let c6 = circulant_digraph(6, &[1]).unwrap();
        assert_eq!(simple_cycle_count(&c6, 6, 64).unwrap(), 1);
        assert_eq!(simple_cycle_count(&c6, 3, 64).unwrap(), 0);
        let t5 = random_oriented_gne(5, 10, 77).unwrap();
        assert_eq!(
            simple_cycle_count(&t5, 3, 64).unwrap(),
            simple_cycle_oracle(&t5, 3)
        );
    }

    #[test]
    fn simple_cycles_match_oracle() {
        for seed in [3u64, 14, 25] {
            let g = random_oriented_gne(7, 12, seed).unwrap();
            for k in 3..=6 {
                assert_eq!(
                    simple_cycle_count(&g, k, 64).unwrap(),
                    simple_cycle_oracle(&g, k),
                    "seed {seed} k {k}"
                );
            }
        }
    }

    #[test]
    fn simple_cycles_budget_errors() {
        let g = triangle();
        assert!(simple_cycle_count(&g, 9, 64).is_err());
        assert!(simple_cycle_count(&g, 2, 64).is_err());
        let big = circulant_digraph(70, &[1]).unwrap();
        assert!(simple_cycle_count(&big, 4, 64).is_err());
    }

    #[test]
    fn hom_cycles_examples() {
        assert_eq!(hom_cycle_count(&triangle(), 3), BigUint::from(3u32));
        assert_eq!(hom_cycle_count(&triangle(), 2), BigUint::ZERO);
        assert_eq!(hom_cycle_count(&triangle(), 1), BigUint::ZERO);
        assert_eq!(hom_cycle_count(&four_cycle(), 4), BigUint::from(4u32));
        assert_eq!(hom_cycle_count(&four_cycle(), 6), BigUint::ZERO);
    }

    #[test]
    fn hom_cycles_match_u64_oracle() {
        for seed in [5u64, 6, 7] {
            let g = random_oriented_gne(8, 16, seed).unwrap();
            for k in 1..=7 {
                assert_eq!(
                    hom_cycle_count(&g, k),
                    BigUint::from(closed_walk_oracle(&g, k)),
                    "seed {seed} k {k}"
                );
            }
        }
    }

    #[test]
    fn rotations_bound_hom_by_simple() {
        for code in [77u64, 300, 728] {
            let g = crate::corpus::graph_from_code(4, code);
            for k in 3..=4usize {
                let simple = simple_cycle_count(&g, k, 64).unwrap();
                let hom = hom_cycle_count(&g, k);
                assert!(BigUint::from(k as u64 * simple) <= hom);
            }
        }
    }

    #[test]
    fn path_stats_single_two_path() {
        let g = OrientedGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = path_stats(&g, 16, None);
        assert_eq!(s.two_path_total, 1);
        // (0,2) is unbalanced: 1 > 16 * 0.
        assert_eq!(s.unbalanced_pairs, 1);
        assert_eq!(s.unbalanced_two_paths, 1);
        assert_eq!(s.e_x, vec![1, 0, 0]);
    }

    #[test]
    fn path_stats_triangle_pairs() {
        // Each ordered pair with a two-path and no reverse two-path is
        // unbalanced; in the triangle all three such pairs are.
        let s = path_stats(&triangle(), 16, None);
        assert_eq!(s.unbalanced_pairs, 3);
        assert_eq!(s.unbalanced_two_paths, 3);
        // Threshold e/8n = 3/24 < 1: every end vertex is good.
        assert_eq!(s.good_two_paths, 3);
    }

    #[test]
    fn path_stats_e_x_sums_to_total() {
        for code in [10u64, 250, 601] {
            let g = crate::corpus::graph_from_code(4, code);
            let s = path_stats(&g, 16, None);
            assert_eq!(s.e_x.iter().sum::<u64>(), s.two_path_total);
            assert_eq!(s.two_path_total, two_path_count(&g));
            assert!(s.unbalanced_two_paths <= s.two_path_total);
        }
    }

    #[test]
    fn path_stats_custom_threshold() {
        let s = path_stats(&triangle(), 16, Some(Rational::new(2, 1)));
        // No vertex has out-degree >= 2.
        assert_eq!(s.good_two_paths, 0);
    }
}
