//! The forward and inverse Collatz maps, residue classification, the
//! odd-part decomposition and trajectory iteration.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

use crate::error::{CollatzError, Result};
use crate::Value;

/// Default cap on forward iterations for single queries. Orders of
/// magnitude above known stopping times at desk scale, so hitting it
/// signals a runaway loop rather than a slow orbit.
pub const DEFAULT_STEP_CAP: u64 = 100_000;

/// Residue classification of a vertex, matching the color classes of
/// the grid-graph figures. Exactly one tag applies to every value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    /// v ≡ 1 (mod 2)
    Odd,
    /// v > 4 and v ≡ 4 (mod 6): a branch value, two inverse successors
    BranchEven,
    /// v ≡ 2 (mod 6)
    EvenMod2Of6,
    /// v ≡ 0 (mod 6)
    EvenMod0Of6,
    /// v = 4: ≡ 4 (mod 6) but excluded from the branch set to remove
    /// the initial loop (1, 2, 4, 1, ...)
    FourSpecial,
}

/// The unique factorization n = odd_part * 2^depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub odd_part: Value,
    pub depth: u32,
}

/// One forward-map orbit down to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryRecord {
    pub start: Value,
    /// Count of forward-map applications to reach 1.
    pub steps: u64,
    /// Maximum value attained anywhere on the orbit.
    pub peak: Value,
    /// One bit per step, true where the 3n+1 branch was taken.
    pub parity_word: Vec<bool>,
    /// Full orbit including start and the terminal 1.
    pub orbit: Vec<Value>,
}

/// The inverse successors of a vertex: always 2n, plus (n-1)/3 when n
/// is a branch value. Modeled as a set of size 1 or 2 because the
/// inverse map is a relation, not a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Successors {
    pub doubling: Value,
    pub branch: Option<Value>,
}

impl Successors {
    /// Doubling child first, then the branch child. The fixed order
    /// makes tree construction and layouts reproducible.
    pub fn iter(&self) -> impl Iterator<Item = Value> {
        std::iter::once(self.doubling).chain(self.branch)
    }

    pub fn len(&self) -> usize {
        1 + usize::from(self.branch.is_some())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Value) -> bool {
        self.doubling == v || self.branch == Some(v)
    }
}

/// One application of the forward map: n/2 for even n, 3n+1 for odd n.
pub fn forward_step(n: Value) -> Result<Value> {
    debug_assert!(n >= 1);
    if n % 2 == 0 {
        Ok(n / 2)
    } else {
        n.checked_mul(3)
            .and_then(|m| m.checked_add(1))
            .ok_or(CollatzError::Overflow {
                op: "3n+1",
                value: n,
            })
    }
}

/// True iff n is a branch value: n > 4 and n ≡ 4 (mod 6). The value 4
/// is excluded to remove the initial loop.
pub fn is_branch_value(n: Value) -> bool {
    n > 4 && n % 6 == 4
}

/// Inverse successors of n under the inverse map.
pub fn inverse_successors(n: Value) -> Result<Successors> {
    debug_assert!(n >= 1);
    let doubling = n.checked_mul(2).ok_or(CollatzError::Overflow {
        op: "2n",
        value: n,
    })?;
    let branch = if is_branch_value(n) {
        Some((n - 1) / 3)
    } else {
        None
    };
    Ok(Successors { doubling, branch })
}

/// The unique residue tag of n.
pub fn residue_class(n: Value) -> ResidueClass {
    debug_assert!(n >= 1);
    if n % 2 == 1 {
        ResidueClass::Odd
    } else if n == 4 {
        ResidueClass::FourSpecial
    } else {
        match n % 6 {
            4 => ResidueClass::BranchEven,
            2 => ResidueClass::EvenMod2Of6,
            0 => ResidueClass::EvenMod0Of6,
            _ => unreachable!("even value with odd residue mod 6"),
        }
    }
}

/// The unique (o, d) with n = o * 2^d and o odd.
pub fn decompose(n: Value) -> Decomposition {
    debug_assert!(n >= 1);
    let depth = n.trailing_zeros();
    Decomposition {
        odd_part: n >> depth,
        depth,
    }
}

/// o * 2^d for odd o; inverse of `decompose`.
pub fn compose(odd_part: Value, depth: u32) -> Result<Value> {
    debug_assert!(odd_part % 2 == 1);
    odd_part
        .checked_shl(depth)
        .filter(|v| v >> depth == odd_part)
        .ok_or(CollatzError::Overflow {
            op: "o*2^d",
            value: odd_part,
        })
}

/// The odd parent (y - 1) / 3 of a branch value y.
pub fn branch_parent(y: Value) -> Result<Value> {
    if !is_branch_value(y) {
        return Err(CollatzError::Domain(format!(
            "{y} is not a branch value (need y > 4 and y ≡ 4 mod 6)"
        )));
    }
    Ok((y - 1) / 3)
}

/// Iterates the forward map from n until 1, recording the orbit, the
/// peak and the parity word. Stops exactly at 1 rather than looping
/// through the trivial cycle.
pub fn trajectory(n: Value, step_cap: u64) -> Result<TrajectoryRecord> {
    debug_assert!(n >= 1 && step_cap >= 1);
    let mut v = n;
    let mut orbit = vec![n];
    let mut parity_word = Vec::new();
    let mut peak = n;
    while v != 1 {
        if parity_word.len() as u64 >= step_cap {
            return Err(CollatzError::StepCapExceeded {
                start: n,
                cap: step_cap,
            });
        }
        parity_word.push(v % 2 == 1);
        v = forward_step(v)?;
        peak = peak.max(v);
        orbit.push(v);
    }
    Ok(TrajectoryRecord {
        start: n,
        steps: parity_word.len() as u64,
        peak,
        parity_word,
        orbit,
    })
}

const STEPS_UNSET: u32 = u32::MAX;

/// Shared step-count and peak cache for range sweeps. Holds one slot
/// per value in [1, bound]; values above the bound are walked without
/// caching so memory stays bounded. Writes are idempotent (a slot only
/// ever receives one value), so concurrent last-writer-wins stores are
/// safe.
pub struct StepCache {
    bound: Value,
    steps: Vec<AtomicU32>,
    peaks: Vec<AtomicU64>,
}

impl StepCache {
    pub fn new(bound: Value) -> Self {
        let slots = usize::try_from(bound).expect("cache bound exceeds addressable memory");
        let mut steps = Vec::with_capacity(slots);
        let mut peaks = Vec::with_capacity(slots);
        steps.resize_with(slots, || AtomicU32::new(STEPS_UNSET));
        peaks.resize_with(slots, || AtomicU64::new(0));
        StepCache {
            bound,
            steps,
            peaks,
        }
    }

    pub fn bound(&self) -> Value {
        self.bound
    }

    fn get(&self, v: Value) -> Option<(u64, Value)> {
        if v == 0 || v > self.bound {
            return None;
        }
        let idx = (v - 1) as usize;
        let s = self.steps[idx].load(Ordering::Acquire);
        if s == STEPS_UNSET {
            None
        } else {
            let p = self.peaks[idx].load(Ordering::Acquire);
            Some((u64::from(s), Value::from(p)))
        }
    }

    fn put(&self, v: Value, steps: u64, peak: Value) {
        if v == 0 || v > self.bound {
            return;
        }
        let Ok(peak64) = u64::try_from(peak) else {
            return; // peak too large for the cache slot; recompute later
        };
        let Ok(steps32) = u32::try_from(steps) else {
            return;
        };
        if steps32 == STEPS_UNSET {
            return;
        }
        let idx = (v - 1) as usize;
        // Peak first so a reader that sees the step count also sees the peak.
        self.peaks[idx].store(peak64, Ordering::Release);
        self.steps[idx].store(steps32, Ordering::Release);
    }
}

/// Steps-to-1 and orbit peak of n, consulting and filling the cache.
/// The cap limits uncached walking only; once the walk reaches a
/// cached value the remainder is known and counted exactly.
pub fn orbit_stats(n: Value, step_cap: u64, cache: &StepCache) -> Result<(u64, Value)> {
    debug_assert!(n >= 1);
    if n == 1 {
        return Ok((0, 1));
    }
    if let Some(hit) = cache.get(n) {
        return Ok(hit);
    }
    let mut path = vec![n];
    let mut v = n;
    let (tail_steps, tail_peak) = loop {
        if path.len() as u64 > step_cap {
            return Err(CollatzError::StepCapExceeded {
                start: n,
                cap: step_cap,
            });
        }
        v = forward_step(v)?;
        if v == 1 {
            break (0u64, 1 as Value);
        }
        if let Some(hit) = cache.get(v) {
            break hit;
        }
        path.push(v);
    };
    // Backfill the walked prefix: the j-th path entry sits
    // (path.len() - j) steps above the tail.
    let mut steps = tail_steps;
    let mut peak = tail_peak.max(v);
    for &u in path.iter().rev() {
        steps += 1;
        peak = peak.max(u);
        cache.put(u, steps, peak);
    }
    Ok((steps, peak))
}

/// Total forward steps from n to 1, memoized. Agrees exactly with
/// `trajectory(n, cap).steps`.
pub fn total_steps(n: Value, cache: &StepCache) -> Result<u64> {
    orbit_stats(n, DEFAULT_STEP_CAP, cache).map(|(s, _)| s)
}
