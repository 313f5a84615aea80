//! Bounded windows of the two forests whose union is the Collatz
//! graph: the doubling chains and the branch matching.

use crate::core_maps::is_branch_value;
use crate::error::{CollatzError, Result};
use crate::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// (v, 2v): one step along a doubling chain.
    Doubling,
    /// (y, (y - 1) / 3): a branch value meeting its odd parent.
    Branch,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Doubling => "doubling",
            EdgeKind::Branch => "branch",
        }
    }
}

/// An undirected edge stored canonically as (min, max) so
/// deduplication by endpoint pair is well defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub small: Value,
    pub large: Value,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn new(a: Value, b: Value, kind: EdgeKind) -> Self {
        debug_assert_ne!(a, b);
        Edge {
            small: a.min(b),
            large: a.max(b),
            kind,
        }
    }

    pub fn endpoints(&self) -> (Value, Value) {
        (self.small, self.large)
    }

    /// The arithmetic relation its kind demands.
    pub fn is_well_formed(&self) -> bool {
        match self.kind {
            EdgeKind::Doubling => self.large == 2 * self.small,
            EdgeKind::Branch => {
                self.large == 3 * self.small + 1 && is_branch_value(self.large)
            }
        }
    }
}

/// A finite window [1, max_vertex] of the infinite graph. Edges with
/// both endpoints inside the window sit in `edges`; edges leaving the
/// window (one endpoint above the bound) are kept apart in `boundary`
/// so coverage checks are not corrupted at the window edge.
#[derive(Debug, Clone)]
pub struct GraphWindow {
    pub max_vertex: Value,
    pub edges: Vec<Edge>,
    pub boundary: Vec<Edge>,
}

/// All doubling edges (v, 2v) with 2v ≤ max_vertex.
pub fn fh_edges(max_vertex: Value) -> Vec<Edge> {
    debug_assert!(max_vertex >= 1);
    (1..=max_vertex / 2)
        .map(|v| Edge::new(v, 2 * v, EdgeKind::Doubling))
        .collect()
}

/// All branch edges (y, (y - 1) / 3) with y ≤ max_vertex.
pub fn fb_edges(max_vertex: Value) -> Vec<Edge> {
    debug_assert!(max_vertex >= 1);
    let mut edges = Vec::new();
    let mut y = 10;
    while y <= max_vertex {
        edges.push(Edge::new(y, (y - 1) / 3, EdgeKind::Branch));
        y += 6;
    }
    edges
}

/// The window of the full graph: union of both forests plus the
/// flagged boundary edges.
pub fn union_graph(max_vertex: Value) -> Result<GraphWindow> {
    debug_assert!(max_vertex >= 1);
    let mut edges = fh_edges(max_vertex);
    edges.extend(fb_edges(max_vertex));
    let mut boundary = Vec::new();
    for v in max_vertex / 2 + 1..=max_vertex {
        let doubled = v.checked_mul(2).ok_or(CollatzError::Overflow {
            op: "2n",
            value: v,
        })?;
        boundary.push(Edge::new(v, doubled, EdgeKind::Doubling));
    }
    for v in (1..=max_vertex).skip(2).step_by(2) {
        // odd v > 1: its branch value 3v+1 may lie above the window
        let y = v.checked_mul(3).and_then(|m| m.checked_add(1)).ok_or(
            CollatzError::Overflow {
                op: "3n+1",
                value: v,
            },
        )?;
        if y > max_vertex && is_branch_value(y) {
            boundary.push(Edge::new(y, v, EdgeKind::Branch));
        }
    }
    Ok(GraphWindow {
        max_vertex,
        edges,
        boundary,
    })
}

/// Degree of v in the full (unwindowed) graph: 1 for the root, 3 for
/// branch values, 2 for everything else including 4.
pub fn degree(v: Value) -> u32 {
    debug_assert!(v >= 1);
    if v == 1 {
        1
    } else if is_branch_value(v) {
        3
    } else {
        2
    }
}

/// Incident edges of v enumerated directly from the generating
/// functions; cardinality equals `degree(v)`.
pub fn incident_edges(v: Value) -> Result<Vec<Edge>> {
    debug_assert!(v >= 1);
    let mut edges = Vec::with_capacity(3);
    if v % 2 == 0 {
        edges.push(Edge::new(v / 2, v, EdgeKind::Doubling));
    }
    let doubled = v.checked_mul(2).ok_or(CollatzError::Overflow {
        op: "2n",
        value: v,
    })?;
    edges.push(Edge::new(v, doubled, EdgeKind::Doubling));
    if is_branch_value(v) {
        edges.push(Edge::new(v, (v - 1) / 3, EdgeKind::Branch));
    }
    if v % 2 == 1 && v > 1 {
        let y = v.checked_mul(3).and_then(|m| m.checked_add(1)).ok_or(
            CollatzError::Overflow {
                op: "3n+1",
                value: v,
            },
        )?;
        edges.push(Edge::new(y, v, EdgeKind::Branch));
    }
    Ok(edges)
}
