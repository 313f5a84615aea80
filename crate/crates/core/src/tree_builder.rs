//! Breadth-first construction of the level tree rooted at 1 under the
//! inverse map, with duplicate detection standing in for cycle
//! detection at finite scale.

use std::collections::HashMap;

use crate::core_maps::{
    forward_step, inverse_successors, is_branch_value, total_steps, StepCache, DEFAULT_STEP_CAP,
};
use crate::error::{CollatzError, Result};
use crate::Value;

/// The tree rooted at 1 up to height H: one ordered vertex list per
/// level plus the forward-map parent of every non-root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSlice {
    pub levels: Vec<Vec<Value>>,
    pub parent_of: HashMap<Value, Value>,
}

impl TreeSlice {
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn max_vertex(&self) -> Value {
        self.levels
            .iter()
            .flatten()
            .copied()
            .max()
            .expect("slice has a root")
    }
}

/// A vertex placed at (level, in-level index) for rendering. Indexing
/// preserves build order, so layouts are stable across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayoutPoint {
    pub vertex: Value,
    pub level: usize,
    pub horizontal_index: usize,
}

/// Expands levels 0..=H from the root by the inverse map, doubling
/// child before branch child. Any duplicate vertex would witness a
/// cycle and aborts the build with both occurrences reported.
pub fn build_levels(height: usize) -> Result<TreeSlice> {
    let mut levels = vec![vec![1 as Value]];
    let mut parent_of = HashMap::new();
    let mut seen: HashMap<Value, usize> = HashMap::from([(1, 0)]);
    for h in 0..height {
        let current = &levels[h];
        let mut next = Vec::with_capacity(current.len() * 2);
        for &v in current {
            for child in inverse_successors(v)?.iter() {
                if let Some(&first_level) = seen.get(&child) {
                    return Err(CollatzError::DuplicateVertex {
                        vertex: child,
                        first_level,
                        second_level: h + 1,
                    });
                }
                seen.insert(child, h + 1);
                parent_of.insert(child, v);
                next.push(child);
            }
        }
        levels.push(next);
    }
    Ok(TreeSlice { levels, parent_of })
}

/// Level of n in the tree: its distance to the root, i.e. its total
/// stopping step count.
pub fn level_of(n: Value, cache: &StepCache) -> Result<u64> {
    total_steps(n, cache)
}

/// Independent oracle for one level: exhaustively scans [1,
/// search_bound] for values whose stopping step count equals k. Must
/// match the sorted BFS level whenever the bound covers the slice.
pub fn level_population_oracle(
    k: u64,
    search_bound: Value,
    cache: &StepCache,
) -> Result<Vec<Value>> {
    let mut found = Vec::new();
    for n in 1..=search_bound {
        if total_steps(n, cache)? == k {
            found.push(n);
        }
    }
    Ok(found)
}

/// Placement of every vertex of the slice in build order.
pub fn layout(slice: &TreeSlice) -> Vec<LayoutPoint> {
    slice
        .levels
        .iter()
        .enumerate()
        .flat_map(|(level, vs)| {
            vs.iter()
                .enumerate()
                .map(move |(horizontal_index, &vertex)| LayoutPoint {
                    vertex,
                    level,
                    horizontal_index,
                })
        })
        .collect()
}

/// Structural checks a valid slice must satisfy; returns the first
/// violation as an error. Used by the verifier and tests.
pub fn validate_slice(slice: &TreeSlice) -> Result<()> {
    if slice.levels.first().map(Vec::as_slice) != Some(&[1]) {
        return Err(CollatzError::Domain("level 0 must be [1]".into()));
    }
    for (k, level) in slice.levels.iter().enumerate().skip(1) {
        let prev: std::collections::HashSet<Value> =
            slice.levels[k - 1].iter().copied().collect();
        let branch_count = slice.levels[k - 1]
            .iter()
            .filter(|&&v| is_branch_value(v))
            .count();
        if level.len() != slice.levels[k - 1].len() + branch_count {
            return Err(CollatzError::Domain(format!(
                "level {k} population {} breaks the branch-count growth law",
                level.len()
            )));
        }
        for &v in level {
            let p = forward_step(v)?;
            if !prev.contains(&p) {
                return Err(CollatzError::Domain(format!(
                    "parent {p} of {v} missing from level {}",
                    k - 1
                )));
            }
            if slice.parent_of.get(&v) != Some(&p) {
                return Err(CollatzError::Domain(format!(
                    "recorded parent of {v} disagrees with the forward map"
                )));
            }
        }
    }
    Ok(())
}

/// Step cap inherited by level queries.
pub const LEVEL_STEP_CAP: u64 = DEFAULT_STEP_CAP;
