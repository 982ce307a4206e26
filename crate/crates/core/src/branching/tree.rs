//! Text and JSON renderings of a branching graph, unfolded as a tree.

use serde_json::{json, Value};

use super::classify::{BranchGraph, CardinalityVerdict, ChildOutcome};
use crate::error::Result;
use crate::expansions::{digits_to_string, region_of, Base, PointSpec};

fn node_json(p: &PointSpec, base: &Base, kind: &str, word: &str, children: Vec<Value>) -> Result<Value> {
    Ok(json!({
        "value_decimal": p.decimal(5),
        "value_exact": p.value.to_exact_string(),
        "region": region_of(&p.value, base)?.describe(),
        "kind": kind,
        "word": word,
        "children": children,
    }))
}

fn unfold_json(
    g: &BranchGraph,
    base: &Base,
    i: usize,
    word: &str,
    path: &mut Vec<usize>,
    depth: usize,
) -> Result<Value> {
    let p = &g.nodes[i].point;
    if path.contains(&i) {
        return node_json(p, base, "repeat", word, Vec::new());
    }
    let Some(ch) = &g.nodes[i].children else {
        return node_json(p, base, "unexplored", word, Vec::new());
    };
    if depth == 0 {
        return node_json(p, base, "truncated", word, Vec::new());
    }
    path.push(i);
    let mut kids = Vec::new();
    for (d, c) in ch.iter().enumerate() {
        kids.push(match c {
            ChildOutcome::Unique { expansion } => json!({
                "kind": "unique",
                "word": d.to_string(),
                "expansion": expansion.pretty(),
                "children": [],
            }),
            ChildOutcome::Node { word, target } => {
                unfold_json(g, base, *target, &digits_to_string(word), path, depth - 1)?
            }
            ChildOutcome::Unresolved { word } => json!({
                "kind": "unresolved",
                "word": digits_to_string(word),
                "children": [],
            }),
        });
    }
    path.pop();
    node_json(p, base, "branch", word, kids)
}

/// Nested JSON tree; nodes seen earlier on the same path become `repeat`
/// leaves.
pub fn tree_json(v: &CardinalityVerdict, base: &Base, max_depth: usize) -> Result<Value> {
    if v.graph.nodes.is_empty() {
        let exp = match &v.certificate {
            super::Certificate::UniqueExpansion(e) => Value::String(e.pretty()),
            _ => Value::Null,
        };
        return Ok(json!({ "kind": "unique", "word": digits_to_string(&v.prefix), "expansion": exp, "children": [] }));
    }
    unfold_json(&v.graph, base, 0, &digits_to_string(&v.prefix), &mut Vec::new(), max_depth)
}

/// Indented text tree.
pub fn tree_ascii(v: &CardinalityVerdict, base: &Base, max_depth: usize) -> Result<String> {
    fn go(t: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        let word = t["word"].as_str().unwrap_or("");
        let word = if word.is_empty() { "-".to_string() } else { word.to_string() };
        let line = match t["kind"].as_str().unwrap_or("") {
            "unique" => format!("{pad}{word} unique {}", t["expansion"].as_str().unwrap_or("?")),
            "unresolved" => format!("{pad}{word} unresolved"),
            kind => format!(
                "{pad}{word} -> {} [{}] {kind}",
                t["value_decimal"].as_str().unwrap_or("?"),
                t["region"].as_str().unwrap_or("?"),
            ),
        };
        out.push_str(&line);
        out.push('\n');
        if let Some(kids) = t["children"].as_array() {
            for k in kids {
                go(k, indent + 1, out);
            }
        }
    }
    let t = tree_json(v, base, max_depth)?;
    let mut out = String::new();
    go(&t, 0, &mut out);
    Ok(out)
}
