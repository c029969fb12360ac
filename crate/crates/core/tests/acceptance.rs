//! Acceptance suite: every release-gating criterion as one test, each
//! printing a single pass/fail line (run with `-- --nocapture` to see the
//! lines for passing tests too). Tolerances and thresholds are pinned in the
//! suite implementations; nothing here is tunable.

use biasgraph_core::verify::{run_suite, SuiteParams};

fn criterion(num: u32, label: &str, suite: &str, params: SuiteParams) {
    let report = run_suite(suite, params).expect("suite must run");
    let ok = report.all_pass();
    println!(
        "criterion {num:02} [{}] {label}: {} instances, {} failures",
        if ok { "PASS" } else { "FAIL" },
        report.summary.instances,
        report.summary.failures,
    );
    if !ok {
        println!("{}", report.to_text());
    }
    assert!(ok, "criterion {num} ({label}) failed");
}

fn defaults() -> SuiteParams {
    SuiteParams::default()
}

#[test]
fn c01_four_cycle_free_graphs_have_large_bias() {
    // All oriented graphs on n <= 5 without an oriented four-cycle satisfy
    // 32 n^2 bias >= e^2, in exact integers.
    criterion(1, "four-cycle-free bias bound", "four-cycle", defaults());
}

#[test]
fn c02_low_bias_graphs_have_many_two_paths() {
    // 2 bias <= e implies 8 n P2 >= e^2 over the same corpus.
    criterion(2, "two-path lower bound", "two-paths", defaults());
}

#[test]
fn c03_unbalanced_two_paths_are_rare() {
    // unbalanced two-paths <= 8 (bias + 1) n, every corpus graph.
    criterion(3, "unbalanced-path upper bound", "unbalanced-paths", defaults());
}

#[test]
fn c04_low_bias_graphs_have_good_two_paths() {
    // 8 bias <= e implies 8 n good_two_paths >= e^2. At this corpus scale
    // the hypothesis admits only the arc-free graphs (bias > e/8 whenever
    // e >= 1 and n <= 5); the inequality is checked exactly as stated.
    criterion(4, "well-ended two-path bound", "good-two-paths", defaults());
}

#[test]
fn c05_four_cycle_formula_equals_brute_force() {
    // Joint-degree formula == ordered-4-tuple enumeration on the exhaustive
    // corpus plus 1000 seeded digraphs with n <= 10.
    criterion(5, "four-cycle formula vs tuples", "c4-formula", defaults());
}

#[test]
fn c06_hom_counts_equal_trace_counts() {
    // Backtracking hom counts of directed k-cycles equal adjacency-power
    // traces for k in 3..=6 on 200 seeded digraphs with n <= 12.
    criterion(6, "hom/trace equivalence", "hom-trace", defaults());
}

#[test]
fn c07_dense_counting_bound_all_small_patterns() {
    // For every partial orientation of every pattern on k <= 4 vertices and
    // every corpus host: hom(H,D) >= hom(underlying,D)/3^a - (1-3^-a)(eps/2)n^k
    // with eps derived from the host's exact bias.
    criterion(7, "dense-case pattern bound", "dense-patterns", defaults());
}

#[test]
fn c08_greedy_one_way_on_circulants() {
    // e(B,A) = 0, 4 e(A,B) >= n, and the growth bound n e2(A_t) <= d^2(t^2-1)
    // at every step, for circulants n in 8..=64, offsets {1..d}, d <= 4.
    criterion(8, "greedy regular one-way pair", "greedy-regular", defaults());
}

#[test]
fn c09_one_way_beats_square_root() {
    // 4 ow(D)^2 >= e(D) whenever e >= 1, over the corpus.
    criterion(9, "square-root one-way bound", "sqrt-ow", defaults());
}

#[test]
fn c10_polarity_graph_structure() {
    // n = q^2+q+1, 2e = q(q+1)^2, q+1 absolute points for q in {2,3,5,7};
    // brute-force four-cycle-freeness for q in {2,3,5}.
    criterion(10, "polarity graph formulas", "polarity", defaults());
}

#[test]
fn c11_blow_up_bias_bound() {
    // bias(blowup(D',l)) < 16 (bias_0.9(D') + 1) l^2 for every oriented D'
    // on n <= 4 and l in {2,3}.
    criterion(11, "blow-up bias bound", "blow-up", defaults());
}

#[test]
fn c12_samplers_meet_mean_guarantees() {
    // At committed seeds: degree sampler mean >= 0.9 * e/(4 max-out) with
    // best >= e/(4 max-out); banded sampler mean >= 0.9 * 2|band|/9 on three
    // fixed graphs. Comparisons on exact trial sums.
    criterion(12, "sampler mean guarantees", "samplers", defaults());
}

#[test]
fn c13_simple_cycles_bounded_by_walk_counts() {
    // k * simple_cycles(k) <= closed_walks(k), k in 3..=6, over the corpus
    // (the desk-scale stand-in for the asymptotic cycle-count statements,
    // together with criteria 2-4).
    criterion(13, "cycle-count cross check", "cycle-cross-check", defaults());
}

#[test]
fn c14_log_partition_construction() {
    // Exact part sizes; edge counts within 4 sigma per instance and in
    // aggregate over 200 seeds; exact bias <= 3n on 50 seeded instances at
    // each n in {12,16,20}. Thresholds fixed ahead of time; observational
    // label, build-breaking at the committed seeds.
    criterion(14, "log-partition construction", "log-partition", defaults());
}
