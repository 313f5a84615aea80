//! Batch invariant checks over ranges and tree slices. Violations are
//! collected, never fail-fast: a genuine counterexample is the most
//! interesting possible output and must be reported in full.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core_maps::{compose, decompose, is_branch_value, orbit_stats, StepCache};
use crate::error::{CollatzError, Result};
use crate::forests::{degree, incident_edges};
use crate::tree_builder::{build_levels, validate_slice};
use crate::Value;

/// One contiguous piece of a range sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeShard {
    pub lo: Value,
    pub hi: Value,
}

/// Partitions [1, n] into at most `shards` non-overlapping pieces.
pub fn shard_range(n: Value, shards: usize) -> Vec<RangeShard> {
    let shards = (shards.max(1) as Value).min(n);
    let base = n / shards;
    let extra = n % shards;
    let mut out = Vec::with_capacity(shards as usize);
    let mut lo = 1;
    for i in 0..shards {
        let len = base + Value::from(i < extra);
        out.push(RangeShard {
            lo,
            hi: lo + len - 1,
        });
        lo += len;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: Value,
    pub detail: String,
}

/// Machine-readable outcome of one check. Serialized field order is
/// fixed; `counts` uses a sorted map so repeated runs are
/// byte-identical apart from `elapsed_ms`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub bound: Value,
    pub passed: bool,
    pub violations: Vec<Violation>,
    pub counts: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    fn finish(
        check: &str,
        bound: Value,
        mut violations: Vec<Violation>,
        counts: BTreeMap<String, u64>,
        started: Instant,
    ) -> Self {
        violations.sort_by_key(|v| v.vertex);
        CheckReport {
            check: check.to_string(),
            bound,
            passed: violations.is_empty(),
            violations,
            counts,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

struct RangeExtremum {
    value: u64,
    at: Value,
}

impl RangeExtremum {
    fn none() -> Self {
        RangeExtremum { value: 0, at: 0 }
    }

    /// Keeps the larger value; ties resolve to the smaller vertex so
    /// shard merges match ascending single-shard scans.
    fn take(&mut self, value: u64, at: Value) {
        if self.at == 0 || value > self.value || (value == self.value && at < self.at) {
            self.value = value;
            self.at = at;
        }
    }

    fn merge(mut self, other: RangeExtremum) -> Self {
        if other.at != 0 {
            self.take(other.value, other.at);
        }
        self
    }
}

/// Every n ≤ N must reach 1 within `cap` forward steps. Non-convergent
/// values are reported as counterexample candidates, with the maximum
/// step count and orbit peak over the range in the counts.
pub fn check_convergence(n: Value, cap: u64, shards: usize, cache: &StepCache) -> CheckReport {
    let started = Instant::now();
    let parts = shard_range(n, shards);
    let outcomes: Vec<_> = parts
        .par_iter()
        .map(|shard| {
            let mut violations = Vec::new();
            let mut max_steps = RangeExtremum::none();
            let mut max_peak = RangeExtremum::none();
            for v in shard.lo..=shard.hi {
                match orbit_stats(v, cap, cache) {
                    Ok((steps, peak)) => {
                        max_steps.take(steps, v);
                        max_peak.take(u64::try_from(peak).unwrap_or(u64::MAX), v);
                    }
                    Err(e) => violations.push(Violation {
                        vertex: v,
                        detail: e.to_string(),
                    }),
                }
            }
            (violations, max_steps, max_peak)
        })
        .collect();

    let mut violations = Vec::new();
    let mut max_steps = RangeExtremum::none();
    let mut max_peak = RangeExtremum::none();
    for (vs, s, p) in outcomes {
        violations.extend(vs);
        max_steps = max_steps.merge(s);
        max_peak = max_peak.merge(p);
    }
    let counts = BTreeMap::from([
        ("checked".to_string(), u64::try_from(n).unwrap_or(u64::MAX)),
        ("max_steps".to_string(), max_steps.value),
        (
            "max_steps_at".to_string(),
            u64::try_from(max_steps.at).unwrap_or(u64::MAX),
        ),
        ("max_peak".to_string(), max_peak.value),
        (
            "max_peak_at".to_string(),
            u64::try_from(max_peak.at).unwrap_or(u64::MAX),
        ),
    ]);
    CheckReport::finish("convergence", n, violations, counts, started)
}

/// For every v ≤ N the degree formula must equal the enumerated
/// incident-edge count, and exactly the root may have degree 1.
pub fn check_degree(n: Value, shards: usize) -> CheckReport {
    let started = Instant::now();
    let outcomes: Vec<_> = shard_range(n, shards)
        .par_iter()
        .map(|shard| {
            let mut violations = Vec::new();
            let mut histogram = [0u64; 3];
            for v in shard.lo..=shard.hi {
                let formula = degree(v);
                match incident_edges(v) {
                    Ok(edges) if edges.len() as u32 == formula => {
                        histogram[formula as usize - 1] += 1;
                    }
                    Ok(edges) => violations.push(Violation {
                        vertex: v,
                        detail: format!(
                            "degree formula {formula} but {} enumerated edges",
                            edges.len()
                        ),
                    }),
                    Err(e) => violations.push(Violation {
                        vertex: v,
                        detail: e.to_string(),
                    }),
                }
            }
            (violations, histogram)
        })
        .collect();

    let mut violations = Vec::new();
    let mut histogram = [0u64; 3];
    for (vs, h) in outcomes {
        violations.extend(vs);
        for (acc, part) in histogram.iter_mut().zip(h) {
            *acc += part;
        }
    }
    if histogram[0] != 1 {
        violations.push(Violation {
            vertex: 1,
            detail: format!("expected exactly one degree-1 vertex, found {}", histogram[0]),
        });
    }
    let counts = BTreeMap::from([
        ("degree_1".to_string(), histogram[0]),
        ("degree_2".to_string(), histogram[1]),
        ("degree_3".to_string(), histogram[2]),
    ]);
    CheckReport::finish("degree", n, violations, counts, started)
}

/// The doubling and branch edge sets over [1, N] must share no
/// unordered pair. Both kinds of edge incident to a common smaller
/// endpoint v coincide only if 2v = 3v + 1, so the scan checks each
/// smaller endpoint locally and shards merge by addition.
pub fn check_disjoint(n: Value, shards: usize) -> CheckReport {
    let started = Instant::now();
    let outcomes: Vec<_> = shard_range(n, shards)
        .par_iter()
        .map(|shard| {
            let mut violations = Vec::new();
            let mut fh = 0u64;
            let mut fb = 0u64;
            for v in shard.lo..=shard.hi {
                let has_doubling = 2 * v <= n;
                if has_doubling {
                    fh += 1;
                }
                let y = 3 * v + 1;
                let has_branch = v % 2 == 1 && y <= n && is_branch_value(y);
                if has_branch {
                    fb += 1;
                }
                if has_doubling && has_branch && 2 * v == y {
                    violations.push(Violation {
                        vertex: v,
                        detail: format!("pair ({v}, {}) generated by both forests", 2 * v),
                    });
                }
            }
            (violations, fh, fb)
        })
        .collect();

    let mut violations = Vec::new();
    let (mut fh, mut fb) = (0u64, 0u64);
    for (vs, h, b) in outcomes {
        violations.extend(vs);
        fh += h;
        fb += b;
    }
    let union = fh + fb - violations.len() as u64;
    let counts = BTreeMap::from([
        ("fh_edges".to_string(), fh),
        ("fb_edges".to_string(), fb),
        ("union_edges".to_string(), union),
    ]);
    CheckReport::finish("disjoint", n, violations, counts, started)
}

/// compose ∘ decompose must be the identity on [1, N]: every value
/// lies on exactly the doubling chain of its own odd part.
pub fn check_coverage(n: Value, shards: usize) -> CheckReport {
    let started = Instant::now();
    let outcomes: Vec<_> = shard_range(n, shards)
        .par_iter()
        .map(|shard| {
            let mut violations = Vec::new();
            let mut odd_roots = 0u64;
            for v in shard.lo..=shard.hi {
                let d = decompose(v);
                if d.odd_part % 2 == 0 {
                    violations.push(Violation {
                        vertex: v,
                        detail: format!("odd part {} is even", d.odd_part),
                    });
                    continue;
                }
                match compose(d.odd_part, d.depth) {
                    Ok(back) if back == v => {
                        if d.depth == 0 {
                            odd_roots += 1;
                        }
                    }
                    Ok(back) => violations.push(Violation {
                        vertex: v,
                        detail: format!("round trip produced {back}"),
                    }),
                    Err(e) => violations.push(Violation {
                        vertex: v,
                        detail: e.to_string(),
                    }),
                }
            }
            (violations, odd_roots)
        })
        .collect();

    let mut violations = Vec::new();
    let mut odd_roots = 0u64;
    for (vs, roots) in outcomes {
        violations.extend(vs);
        odd_roots += roots;
    }
    let counts = BTreeMap::from([
        ("checked".to_string(), u64::try_from(n).unwrap_or(u64::MAX)),
        ("chain_roots".to_string(), odd_roots),
    ]);
    CheckReport::finish("coverage", n, violations, counts, started)
}

/// Highest level the population oracle exhaustively re-derives. The
/// oracle scan bound is 2^k, so 20 keeps the scan near 10^6.
pub const ORACLE_MAX_LEVEL: usize = 20;

/// Builds the level tree to height H; any duplicate vertex (cycle
/// evidence) or structural breach is a violation. Populations up to
/// `ORACLE_MAX_LEVEL` are cross-checked against the exhaustive
/// stopping-time scan.
pub fn check_tree_no_cycle(height: usize) -> CheckReport {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut counts = BTreeMap::new();
    match build_levels(height) {
        Ok(slice) => {
            if let Err(e) = validate_slice(&slice) {
                violations.push(Violation {
                    vertex: 0,
                    detail: e.to_string(),
                });
            }
            counts.insert("levels".to_string(), slice.levels.len() as u64);
            counts.insert("vertices".to_string(), slice.vertex_count() as u64);
            counts.insert(
                "max_vertex".to_string(),
                u64::try_from(slice.max_vertex()).unwrap_or(u64::MAX),
            );
            for (k, level) in slice.levels.iter().enumerate() {
                counts.insert(format!("pop_{k:02}"), level.len() as u64);
            }

            let oracle_height = height.min(ORACLE_MAX_LEVEL);
            counts.insert("oracle_levels_checked".to_string(), oracle_height as u64 + 1);
            let bound = 1u128 << oracle_height;
            let cache = StepCache::new(bound);
            let mut populations: Vec<Vec<Value>> = vec![Vec::new(); oracle_height + 1];
            for v in 1..=bound {
                match orbit_stats(v, crate::core_maps::DEFAULT_STEP_CAP, &cache) {
                    Ok((steps, _)) => {
                        if (steps as usize) <= oracle_height {
                            populations[steps as usize].push(v);
                        }
                    }
                    Err(e) => violations.push(Violation {
                        vertex: v,
                        detail: e.to_string(),
                    }),
                }
            }
            for (k, oracle_level) in populations.iter().enumerate() {
                let mut bfs = slice.levels[k].clone();
                bfs.sort_unstable();
                if &bfs != oracle_level {
                    violations.push(Violation {
                        vertex: k as Value,
                        detail: format!(
                            "level {k}: BFS population {bfs:?} disagrees with the scan oracle {oracle_level:?}"
                        ),
                    });
                }
            }
        }
        Err(CollatzError::DuplicateVertex {
            vertex,
            first_level,
            second_level,
        }) => violations.push(Violation {
            vertex,
            detail: format!(
                "vertex generated at level {second_level} already present at level {first_level}"
            ),
        }),
        Err(e) => violations.push(Violation {
            vertex: 0,
            detail: e.to_string(),
        }),
    }
    CheckReport::finish("tree_no_cycle", height as Value, violations, counts, started)
}

/// Parameters of a full suite run.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub max: Value,
    pub height: usize,
    pub cap: u64,
    pub shards: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max: 1_000_000,
            height: 40,
            cap: 10_000,
            shards: 8,
        }
    }
}

pub const ALL_CHECKS: [&str; 5] = [
    "convergence",
    "degree",
    "disjoint",
    "coverage",
    "tree_no_cycle",
];

/// Runs the selected checks (all of them for an empty filter) and
/// returns their reports in the fixed `ALL_CHECKS` order.
pub fn run_checks(params: SuiteParams, filter: &[String]) -> Result<Vec<CheckReport>> {
    for name in filter {
        if !ALL_CHECKS.contains(&name.as_str()) {
            return Err(CollatzError::Domain(format!(
                "unknown check '{name}' (expected one of {})",
                ALL_CHECKS.join(", ")
            )));
        }
    }
    let selected = |name: &str| filter.is_empty() || filter.iter().any(|f| f == name);
    let mut reports = Vec::new();
    if selected("convergence") {
        let cache = StepCache::new(params.max);
        reports.push(check_convergence(
            params.max,
            params.cap,
            params.shards,
            &cache,
        ));
    }
    if selected("degree") {
        reports.push(check_degree(params.max, params.shards));
    }
    if selected("disjoint") {
        reports.push(check_disjoint(params.max, params.shards));
    }
    if selected("coverage") {
        reports.push(check_coverage(params.max, params.shards));
    }
    if selected("tree_no_cycle") {
        reports.push(check_tree_no_cycle(params.height));
    }
    Ok(reports)
}

/// The bundled suite: every check at the given bounds.
pub fn run_all(params: SuiteParams) -> Vec<CheckReport> {
    run_checks(params, &[]).expect("empty filter is always valid")
}
