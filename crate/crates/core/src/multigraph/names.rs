//! Human-readable names for the small connected classes, keyed by canonical
//! form. Anything outside the table falls back to its edge list.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::multigraph::graph::{canonical_form, Multigraph};

/// `(name, flat-space operator, vertex count, edges)`.
type Row = (&'static str, &'static str, usize, &'static [(usize, usize)]);

const TABLE: &[Row] = &[
    ("empty graph", "1", 0, &[]),
    ("isolated vertex", "f", 1, &[]),
    ("single edge", "|∇f|²", 2, &[(0, 1)]),
    ("single loop", "Δf", 1, &[(0, 0)]),
    ("path of length two", "∇²f(∇f, ∇f)", 3, &[(0, 1), (1, 2)]),
    ("double edge", "|∇²f|²", 2, &[(0, 1), (0, 1)]),
    ("loop and edge", "⟨∇Δf, ∇f⟩", 2, &[(0, 1), (1, 1)]),
    ("double loop", "Δ²f", 1, &[(0, 0), (0, 0)]),
    (
        "path of length three",
        "|∇²f(∇f, ·)|²",
        4,
        &[(0, 1), (1, 2), (2, 3)],
    ),
    ("star", "∇³f(∇f, ∇f, ∇f)", 4, &[(0, 1), (0, 2), (0, 3)]),
    ("triangle", "tr((∇²f)³)", 3, &[(0, 1), (1, 2), (0, 2)]),
    (
        "path of length two with a double edge",
        "⟨∇³f, ∇f ⊗ ∇²f⟩",
        3,
        &[(0, 1), (0, 1), (1, 2)],
    ),
    (
        "path of length two and one loop on the side",
        "∇²f(∇Δf, ∇f)",
        3,
        &[(0, 0), (0, 1), (1, 2)],
    ),
    (
        "path of length two and loop in the middle",
        "∇²Δf(∇f, ∇f)",
        3,
        &[(0, 1), (1, 1), (1, 2)],
    ),
    ("triple-edge", "|∇³f|²", 2, &[(0, 1), (0, 1), (0, 1)]),
    (
        "double-edge with a loop",
        "⟨∇²Δf, ∇²f⟩",
        2,
        &[(0, 0), (0, 1), (0, 1)],
    ),
    (
        "one edge and one loop per side",
        "|∇Δf|²",
        2,
        &[(0, 0), (0, 1), (1, 1)],
    ),
    (
        "edge and two loops on the same side",
        "⟨∇Δ²f, ∇f⟩",
        2,
        &[(0, 0), (0, 0), (0, 1)],
    ),
    ("triple loop", "Δ³f", 1, &[(0, 0), (0, 0), (0, 0)]),
];

fn lookup() -> &'static HashMap<Multigraph, (&'static str, &'static str)> {
    static MAP: OnceLock<HashMap<Multigraph, (&'static str, &'static str)>> = OnceLock::new();
    MAP.get_or_init(|| {
        TABLE
            .iter()
            .map(|&(name, op, n, edges)| {
                let g = Multigraph::new(n, edges.iter().copied()).expect("static table");
                (canonical_form(&g), (name, op))
            })
            .collect()
    })
}

/// The named connected classes with at most three edges, smallest first.
pub fn named_classes() -> Vec<(&'static str, Multigraph)> {
    TABLE
        .iter()
        .map(|&(name, _, n, edges)| {
            let g = Multigraph::new(n, edges.iter().copied()).expect("static table");
            (name, canonical_form(&g))
        })
        .collect()
}

pub fn name_of(g: &Multigraph) -> Option<&'static str> {
    lookup().get(&canonical_form(g)).map(|(n, _)| *n)
}

pub fn operator_of(g: &Multigraph) -> Option<&'static str> {
    lookup().get(&canonical_form(g)).map(|(_, o)| *o)
}

/// Name if known; a disconnected graph whose components are all named is
/// written as their union (e.g. "double edge + single loop", "3 × single
/// loop"). Otherwise the canonical edge list.
pub fn display_name(g: &Multigraph) -> String {
    if let Some(name) = name_of(g) {
        return name.to_string();
    }
    let parts: Option<Vec<&str>> = g.components().iter().map(name_of).collect();
    match parts {
        Some(mut parts) if parts.len() > 1 => {
            parts.sort_by_key(|p| std::cmp::Reverse(lookup_rank(p)));
            parts
                .chunk_by(|a, b| a == b)
                .map(|run| match run.len() {
                    1 => run[0].to_string(),
                    k => format!("{k} × {}", run[0]),
                })
                .collect::<Vec<_>>()
                .join(" + ")
        }
        _ => canonical_form(g).to_string(),
    }
}

fn lookup_rank(name: &str) -> usize {
    TABLE
        .iter()
        .position(|(n, ..)| *n == name)
        .unwrap_or(usize::MAX)
}
