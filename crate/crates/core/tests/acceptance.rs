//! Acceptance suite. Each test exercises one acceptance criterion at
//! its stated bound and prints a PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

mod common;

use std::collections::HashSet;
use std::time::Instant;

use collatz_graph::core_maps::{
    decompose, inverse_successors, orbit_stats, trajectory, StepCache,
};
use collatz_graph::export::{
    render_forest_b_dot, render_forest_h_dot, render_tree_dot, render_union_dot, HGrid,
};
use collatz_graph::forests::{fb_edges, fh_edges, union_graph};
use collatz_graph::tree_builder::{build_levels, level_population_oracle};
use collatz_graph::verifier::{
    check_convergence, check_coverage, check_degree, check_disjoint, check_tree_no_cycle,
    run_all, CheckReport, SuiteParams,
};
use collatz_graph::Value;

fn criterion(name: &str, ok: bool) {
    println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion failed: {name}");
}

// Criterion 1: every n <= 10^6 reaches 1 within 10^4 steps, zero
// violations, <= 60 s memoized with 8-way sharding; the memoized step
// counts agree exactly with an unmemoized single-thread pass over
// n <= 10^4.
#[test]
fn criterion_1_convergence_sweep() {
    let started = Instant::now();
    let cache = StepCache::new(1_000_000);
    let report = check_convergence(1_000_000, 10_000, 8, &cache);
    let elapsed = started.elapsed();
    criterion(
        "1a: n <= 10^6 all reach 1 within 10^4 steps",
        report.passed && report.counts["checked"] == 1_000_000,
    );
    criterion(
        &format!("1b: sweep completed in {:.1} s <= 60 s", elapsed.as_secs_f64()),
        elapsed.as_secs() <= 60,
    );

    let mut oracle_agrees = true;
    for n in 1..=10_000u128 {
        let plain = trajectory(n, 10_000).expect("oracle trajectory");
        let (memoized, _) = orbit_stats(n, 10_000, &cache).expect("memoized stats");
        if plain.steps != memoized {
            oracle_agrees = false;
            break;
        }
    }
    criterion(
        "1c: memoized step counts equal the unmemoized oracle on n <= 10^4",
        oracle_agrees,
    );
}

// Criterion 2: degree formula equals enumeration for all v <= 10^5;
// histogram is {1: 1, 3: 16666, 2: remainder}.
#[test]
fn criterion_2_degree_classification() {
    let report = check_degree(100_000, 8);
    criterion("2a: zero degree mismatches up to 10^5", report.passed);
    criterion(
        "2b: degree histogram is {1: 1, 2: 83333, 3: 16666}",
        report.counts["degree_1"] == 1
            && report.counts["degree_3"] == 16_666
            && report.counts["degree_2"] == 100_000 - 1 - 16_666,
    );
}

// Criterion 3: the two forests over N = 10^6 share zero unordered
// pairs and the union size is exactly the sum. Cross-checked against
// materialized edge sets, independent of the arithmetic scan.
#[test]
fn criterion_3_edge_disjointness() {
    let n: Value = 1_000_000;
    let report = check_disjoint(n, 8);
    criterion("3a: scan finds no pair generated by both forests", report.passed);

    let fh: HashSet<(Value, Value)> = fh_edges(n).iter().map(|e| e.endpoints()).collect();
    let fb: HashSet<(Value, Value)> = fb_edges(n).iter().map(|e| e.endpoints()).collect();
    let shared = fh.intersection(&fb).count();
    criterion("3b: materialized edge sets intersect in zero pairs", shared == 0);
    criterion(
        "3c: |union| = |F_h| + |F_b| exactly",
        report.counts["union_edges"] == fh.len() as u64 + fb.len() as u64
            && report.counts["fh_edges"] == fh.len() as u64
            && report.counts["fb_edges"] == fb.len() as u64,
    );
}

// Criterion 4: compose . decompose is the identity on n <= 10^6 and
// every n lies on the chain of its own odd part.
#[test]
fn criterion_4_coverage() {
    let report = check_coverage(1_000_000, 8);
    criterion("4a: decompose/compose round-trips on all n <= 10^6", report.passed);

    let mut on_own_chain = true;
    for n in 1..=1_000_000u128 {
        let d = decompose(n);
        let mut w = n;
        while w % 2 == 0 {
            w /= 2;
        }
        if w != d.odd_part {
            on_own_chain = false;
            break;
        }
    }
    criterion("4b: every n halves down to its decomposition's odd part", on_own_chain);
}

// Criterion 5: build_levels(40) has no duplicate vertex; the level
// populations 0..=9 are [1,1,1,1,1,2,2,4,4,6]; BFS levels equal the
// exhaustive stopping-time oracle for all k <= 20.
#[test]
fn criterion_5_tree_acyclicity() {
    let slice = build_levels(40).expect("no duplicate vertices up to height 40");
    criterion("5a: build_levels(40) completes without duplicates", true);

    let sizes: Vec<usize> = slice.levels.iter().take(10).map(Vec::len).collect();
    criterion(
        "5b: level populations 0..=9 are [1,1,1,1,1,2,2,4,4,6]",
        sizes == [1, 1, 1, 1, 1, 2, 2, 4, 4, 6],
    );

    let bound = 1u128 << 20;
    let cache = StepCache::new(bound);
    let mut oracle_agrees = true;
    for k in 0..=20usize {
        let mut bfs = slice.levels[k].clone();
        bfs.sort_unstable();
        let oracle = level_population_oracle(k as u64, bound, &cache).unwrap();
        if bfs != oracle {
            oracle_agrees = false;
            break;
        }
    }
    criterion(
        "5c: sorted BFS levels equal the population oracle for k <= 20",
        oracle_agrees,
    );

    let report = check_tree_no_cycle(40);
    criterion("5d: tree check reports zero violations at height 40", report.passed);
}

// Criterion 6: the height-13 tree prefix has root 1 at level 0, the
// single chain 1-2-4-8-16 through level 4, and first branching
// {32, 5} at level 5.
#[test]
fn criterion_6_figure_prefix() {
    let slice = build_levels(13).expect("height 13 builds");
    criterion(
        "6a: levels 0..=4 are the single chain [1],[2],[4],[8],[16]",
        slice.levels[..5] == [vec![1], vec![2], vec![4], vec![8], vec![16]],
    );
    criterion(
        "6b: level 5 is the first branching {32, 5}",
        slice.levels[5] == [32, 5],
    );
    criterion("6c: slice extends through level 13", slice.levels.len() == 14);
}

// Criterion 7: pinned regressions. trajectory(27) runs 111 steps
// peaking at 9232; the inverse successor set of 4 is exactly {8}.
#[test]
fn criterion_7_known_values() {
    let t = trajectory(27, 10_000).unwrap();
    criterion(
        "7a: trajectory(27) has 111 steps and peak 9232",
        t.steps == 111 && t.peak == 9232,
    );
    let s = inverse_successors(4).unwrap();
    criterion(
        "7b: inverse_successors(4) = {8}",
        s.doubling == 8 && s.branch.is_none(),
    );
}

fn strip_elapsed(mut reports: Vec<CheckReport>) -> Vec<CheckReport> {
    for r in &mut reports {
        r.elapsed_ms = 0;
    }
    reports
}

// Criterion 8: a 1-shard and an 8-shard suite run produce identical
// violations and counts, and repeated exports are byte-identical.
#[test]
fn criterion_8_determinism_and_shard_invariance() {
    let base = SuiteParams {
        max: 50_000,
        height: 15,
        cap: 10_000,
        shards: 1,
    };
    let single = strip_elapsed(run_all(base));
    let sharded = strip_elapsed(run_all(SuiteParams { shards: 8, ..base }));
    criterion("8a: 1-shard and 8-shard suite reports are identical", single == sharded);

    let json_a: Vec<String> = single.iter().map(CheckReport::to_json).collect();
    let json_b: Vec<String> = strip_elapsed(run_all(base))
        .iter()
        .map(CheckReport::to_json)
        .collect();
    criterion("8b: repeated runs serialize byte-identically", json_a == json_b);

    let window = union_graph(10_000).unwrap();
    let again = union_graph(10_000).unwrap();
    criterion(
        "8c: repeated union exports are byte-identical",
        render_union_dot(&window) == render_union_dot(&again),
    );
}

// Criterion 9: every emitted DOT file parses with the independent DOT
// reader, and JSON reports match the documented schema.
#[test]
fn criterion_9_format_validity() {
    let slice = build_levels(13).unwrap();
    let tree_dot = render_tree_dot(&slice);
    let tree = common::parse_dot(&tree_dot).expect("tree DOT parses");
    criterion(
        "9a: tree DOT round-trips (one node and one edge per vertex/parent)",
        tree.name == "collatz_tree"
            && tree.nodes.len() == slice.vertex_count()
            && tree.edges.len() == slice.vertex_count() - 1,
    );

    let grid = HGrid {
        odd_max: 9,
        depth_max: 4,
    };
    let h = common::parse_dot(&render_forest_h_dot(&grid)).expect("forest h DOT parses");
    criterion(
        "9b: forest grids round-trip through the DOT reader",
        h.nodes.len() == 25 && h.edges.len() == 20 && {
            let b = common::parse_dot(&render_forest_b_dot(22)).unwrap();
            b.edges.len() == 3
        },
    );

    let window = union_graph(100).unwrap();
    let union = common::parse_dot(&render_union_dot(&window)).expect("union DOT parses");
    criterion(
        "9c: union DOT round-trips with one edge statement per edge",
        union.edges.len() == window.edges.len(),
    );

    let reports = run_all(SuiteParams {
        max: 100,
        height: 8,
        cap: 1_000,
        shards: 2,
    });
    let schema_ok = reports.iter().all(|r| {
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        v["check"].is_string()
            && v["bound"].is_u64()
            && v["passed"].is_boolean()
            && v["violations"].is_array()
            && v["counts"].is_object()
            && v["elapsed_ms"].is_u64()
            && v.as_object().unwrap().len() == 6
            && v["violations"]
                .as_array()
                .unwrap()
                .iter()
                .all(|viol| viol["vertex"].is_u64() && viol["detail"].is_string())
    });
    criterion("9d: JSON reports validate against the documented schema", schema_ok);
}
