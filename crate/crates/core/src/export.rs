//! DOT, CSV and JSON renderers for trajectories, forest windows, the
//! union graph and the level tree. All output is deterministic for
//! identical arguments; DOT is the canonical figure format, rendering
//! to images is left to external tooling.

use std::fmt::Write;

use crate::core_maps::{residue_class, ResidueClass, TrajectoryRecord};
use crate::forests::{fb_edges, Edge, GraphWindow};
use crate::tree_builder::TreeSlice;
use crate::Value;

/// Figure color of a vertex, derived from its residue class. The
/// value 4 keeps the branch-residue color but is drawn as a circle,
/// like the other non-branch even classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorClass {
    pub class: ResidueClass,
    pub color_name: &'static str,
}

pub fn color_class(v: Value) -> ColorClass {
    let class = residue_class(v);
    let color_name = match class {
        ResidueClass::Odd => "black",
        ResidueClass::BranchEven | ResidueClass::FourSpecial => "yellow",
        ResidueClass::EvenMod2Of6 => "grey",
        ResidueClass::EvenMod0Of6 => "white",
    };
    ColorClass { class, color_name }
}

/// Circled in the union figure: v ≡ 2 (mod 6), v ≡ 0 (mod 6) and v = 4.
fn is_circled(v: Value) -> bool {
    matches!(
        residue_class(v),
        ResidueClass::EvenMod2Of6 | ResidueClass::EvenMod0Of6 | ResidueClass::FourSpecial
    )
}

fn dot_node(out: &mut String, v: Value, extra: &str) {
    let c = color_class(v);
    let fontcolor = if c.color_name == "black" { "white" } else { "black" };
    writeln!(
        out,
        "  {v} [style=filled, fillcolor={}, fontcolor={fontcolor}{extra}];",
        c.color_name
    )
    .unwrap();
}

fn parity_string(t: &TrajectoryRecord) -> String {
    t.parity_word
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

pub fn render_trajectory_text(t: &TrajectoryRecord) -> String {
    let orbit = t
        .orbit
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    format!("orbit {orbit}\nsteps {}\npeak {}\n", t.steps, t.peak)
}

pub fn render_trajectory_json(t: &TrajectoryRecord) -> String {
    let v = serde_json::json!({
        "start": t.start,
        "steps": t.steps,
        "peak": t.peak,
        "parity_word": parity_string(t),
        "orbit": t.orbit,
    });
    format!("{v}\n")
}

pub fn render_trajectory_csv(t: &TrajectoryRecord) -> String {
    let mut out = String::from("step,value,odd\n");
    for (i, v) in t.orbit.iter().enumerate() {
        writeln!(out, "{i},{v},{}", u8::from(v % 2 == 1)).unwrap();
    }
    out
}

fn edge_csv(edges: &[Edge]) -> String {
    let mut out = String::from("u,v,kind\n");
    for e in edges {
        writeln!(out, "{},{},{}", e.small, e.large, e.kind.as_str()).unwrap();
    }
    out
}

fn edge_json(edges: &[Edge]) -> serde_json::Value {
    serde_json::Value::Array(
        edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "u": e.small,
                    "v": e.large,
                    "kind": e.kind.as_str(),
                })
            })
            .collect(),
    )
}

pub fn render_tree_json(slice: &TreeSlice) -> String {
    let v = serde_json::json!({ "levels": slice.levels });
    format!("{v}\n")
}

pub fn render_tree_csv(slice: &TreeSlice) -> String {
    let mut out = String::from("vertex,level,parent\n");
    for (level, vs) in slice.levels.iter().enumerate() {
        for v in vs {
            match slice.parent_of.get(v) {
                Some(p) => writeln!(out, "{v},{level},{p}").unwrap(),
                None => writeln!(out, "{v},{level},").unwrap(),
            }
        }
    }
    out
}

/// Level tree as DOT: one rank group per level, parent edges, vertices
/// colored by residue class.
pub fn render_tree_dot(slice: &TreeSlice) -> String {
    let mut out = String::from("graph collatz_tree {\n  rankdir=BT;\n");
    for (level, vs) in slice.levels.iter().enumerate() {
        writeln!(out, "  subgraph level_{level} {{\n    rank=same;").unwrap();
        for &v in vs {
            let mut line = String::from("  ");
            dot_node(&mut line, v, "");
            out.push_str(&line);
        }
        out.push_str("  }\n");
    }
    for vs in slice.levels.iter().skip(1) {
        for v in vs {
            let p = slice.parent_of[v];
            writeln!(out, "  {p} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// The doubling-forest grid: one row per odd root o, one column per
/// depth d, vertices o * 2^d with chain edges along each row.
pub struct HGrid {
    pub odd_max: Value,
    pub depth_max: u32,
}

impl HGrid {
    pub fn chains(&self) -> Vec<Vec<Value>> {
        (1..=self.odd_max)
            .step_by(2)
            .map(|o| (0..=self.depth_max).map(|d| o << d).collect())
            .collect()
    }
}

pub fn render_forest_h_dot(grid: &HGrid) -> String {
    let mut out = String::from("graph forest_h {\n  node [shape=box];\n");
    for (row, chain) in grid.chains().iter().enumerate() {
        for (d, &v) in chain.iter().enumerate() {
            dot_node(&mut out, v, &format!(", pos=\"{d},{row}!\""));
        }
        for w in chain.windows(2) {
            writeln!(out, "  {} -- {};", w[0], w[1]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn render_forest_h_csv(grid: &HGrid) -> String {
    let mut out = String::from("u,v,kind\n");
    for chain in grid.chains() {
        for w in chain.windows(2) {
            writeln!(out, "{},{},doubling", w[0], w[1]).unwrap();
        }
    }
    out
}

pub fn render_forest_h_json(grid: &HGrid) -> String {
    let v = serde_json::json!({
        "odd_max": grid.odd_max,
        "depth_max": grid.depth_max,
        "chains": grid.chains(),
    });
    format!("{v}\n")
}

/// The branch-forest grid uses one row per edge: the text leaves the
/// row grouping of Figure 2 open, and per-edge rows keep the layout
/// deterministic.
pub fn render_forest_b_dot(max_vertex: Value) -> String {
    let mut out = String::from("graph forest_b {\n  node [shape=box];\n");
    for (row, e) in fb_edges(max_vertex).iter().enumerate() {
        dot_node(&mut out, e.small, &format!(", pos=\"0,{row}!\""));
        dot_node(&mut out, e.large, &format!(", pos=\"1,{row}!\""));
        writeln!(out, "  {} -- {};", e.large, e.small).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn render_forest_b_csv(max_vertex: Value) -> String {
    edge_csv(&fb_edges(max_vertex))
}

pub fn render_forest_b_json(max_vertex: Value) -> String {
    let v = serde_json::json!({
        "max_vertex": max_vertex,
        "edges": edge_json(&fb_edges(max_vertex)),
    });
    format!("{v}\n")
}

/// Union window as DOT with edge kind attributes; the non-branch even
/// classes and 4 are drawn as circles, everything else as squares.
pub fn render_union_dot(window: &GraphWindow) -> String {
    let mut out = String::from("graph collatz_union {\n");
    let mut vertices: Vec<Value> = window
        .edges
        .iter()
        .flat_map(|e| [e.small, e.large])
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    for v in vertices {
        let shape = if is_circled(v) { "circle" } else { "square" };
        dot_node(&mut out, v, &format!(", shape={shape}"));
    }
    for e in &window.edges {
        writeln!(
            out,
            "  {} -- {} [kind={}];",
            e.small,
            e.large,
            e.kind.as_str()
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn render_union_csv(window: &GraphWindow) -> String {
    edge_csv(&window.edges)
}

pub fn render_union_json(window: &GraphWindow) -> String {
    let v = serde_json::json!({
        "max_vertex": window.max_vertex,
        "edges": edge_json(&window.edges),
        "boundary": edge_json(&window.boundary),
    });
    format!("{v}\n")
}
