//! Text and JSON renderings of library results.

use serde_json::{json, Value};

use betaexp::branching::{CardinalityVerdict, Certificate, CycleWitness, NotNullWitness, NullInfinite};
use betaexp::certify::TheoremVerdict;
use betaexp::exactnum::IntPolynomial;
use betaexp::expansions::{digits_to_string, identify_special, Base, PointSpec};
use betaexp::search::{KRange, SearchHit, SearchReport, SeedVerdict};

/// The closed form `y_j`, `z_j`, `1/q` or `1/(q^2-q)` equal to `p`, if any.
fn special_name(p: &PointSpec, base: Option<&Base>) -> Option<String> {
    identify_special(&p.value, base?).ok().flatten().map(|s| s.to_string())
}

fn point_json(p: &PointSpec, base: Option<&Base>) -> Value {
    json!({
        "description": p.provenance,
        "decimal": p.decimal(5),
        "exact": p.value.to_exact_string(),
        "special": special_name(p, base),
    })
}

fn point_text(p: &PointSpec, base: Option<&Base>) -> String {
    match special_name(p, base) {
        Some(s) if s != p.provenance => format!("{} = {s} = {}", p.provenance, p.decimal(5)),
        _ => format!("{} = {}", p.provenance, p.decimal(5)),
    }
}

fn coeffs(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn cycle_json(c: &CycleWitness, base: Option<&Base>) -> Value {
    json!({
        "w": point_json(&c.w, base),
        "b": digits_to_string(&c.b),
        "hits": c.hits.iter().map(|(n, p)| json!({"after": n, "point": point_json(p, base)})).collect::<Vec<_>>(),
        "unique_side": c.finite_side.iter().map(|d| d.map(|d| d.to_string())).collect::<Vec<_>>(),
    })
}

fn cycle_text(c: &CycleWitness, base: Option<&Base>) -> String {
    let hits: Vec<String> = c
        .hits
        .iter()
        .map(|(n, p)| format!("{n}:{}", special_name(p, base).unwrap_or_else(|| p.provenance.clone())))
        .collect();
    format!("w = {}, b = {}, switch hits [{}]", point_text(&c.w, base), digits_to_string(&c.b), hits.join(", "))
}

pub fn certificate_json(c: &Certificate, base: Option<&Base>) -> Value {
    match c {
        Certificate::UniqueExpansion(e) => json!({"kind": "unique_expansion", "expansion": e.pretty()}),
        Certificate::FiniteTree { nodes } => json!({"kind": "finite_tree", "nodes": nodes}),
        Certificate::Cycle(w) => json!({"kind": "cycle", "cycle": cycle_json(w, base)}),
        Certificate::TwoCycles { node, via0, via1 } => json!({
            "kind": "two_cycles",
            "node": point_json(node, base),
            "via0": digits_to_string(via0),
            "via1": digits_to_string(via1),
        }),
        Certificate::Unresolved => json!({"kind": "unresolved"}),
    }
}

fn certificate_text(c: &Certificate, base: Option<&Base>) -> String {
    match c {
        Certificate::UniqueExpansion(e) => format!("unique expansion {}", e.pretty()),
        Certificate::FiniteTree { nodes } => format!("finite tree of {nodes} branching points"),
        Certificate::Cycle(w) => format!("cycle {}", cycle_text(w, base)),
        Certificate::TwoCycles { node, via0, via1 } => format!(
            "two returns to {}: via {} and via {}",
            point_text(node, base),
            digits_to_string(via0),
            digits_to_string(via1)
        ),
        Certificate::Unresolved => "unresolved".into(),
    }
}

pub fn null_json(n: &NullInfinite, base: Option<&Base>) -> Value {
    let detail = match n {
        NullInfinite::Yes(c) => json!({"cycle": cycle_json(c, base)}),
        NullInfinite::No(NotNullWitness::Unique(e)) => json!({"witness": "Unique", "expansion": e.pretty()}),
        NullInfinite::No(NotNullWitness::Finite { at, path }) => {
            json!({"witness": "Finite", "at": point_json(at, base), "path": digits_to_string(path)})
        }
        NullInfinite::No(NotNullWitness::TwoSided { at, path }) => {
            json!({"witness": "TwoSided", "at": point_json(at, base), "path": digits_to_string(path)})
        }
        NullInfinite::DepthExceeded(d) => json!({"depth": d}),
    };
    json!({"result": n.name(), "detail": detail})
}

fn null_text(n: &NullInfinite, base: Option<&Base>) -> String {
    match n {
        NullInfinite::Yes(c) => format!("null infinite: yes, {}", cycle_text(c, base)),
        NullInfinite::No(NotNullWitness::Unique(e)) => format!("null infinite: no, unique expansion {}", e.pretty()),
        NullInfinite::No(NotNullWitness::Finite { at, path }) => format!(
            "null infinite: no, both sides finite at {} after path {}",
            point_text(at, base),
            digits_to_string(path)
        ),
        NullInfinite::No(NotNullWitness::TwoSided { at, path }) => format!(
            "null infinite: no, both sides infinite at {} after path {}",
            point_text(at, base),
            digits_to_string(path)
        ),
        NullInfinite::DepthExceeded(d) => format!("null infinite: undecided within depth {d}"),
    }
}

pub fn classify_json(base: &Base, q: &str, x: &PointSpec, v: &CardinalityVerdict, n: &NullInfinite) -> Value {
    json!({
        "q": q,
        "x": point_json(x, Some(base)),
        "verdict": v.class.name(),
        "prefix": digits_to_string(&v.prefix),
        "certificate": certificate_json(&v.certificate, Some(base)),
        "branching_points": v.graph.nodes.len(),
        "graph_complete": v.graph.complete,
        "null_infinite": null_json(n, Some(base)),
    })
}

pub fn classify_text(base: &Base, q: &str, x: &PointSpec, v: &CardinalityVerdict, n: &NullInfinite) -> String {
    let mut out =
        vec![format!("q = {q}"), format!("x = {}", point_text(x, Some(base))), format!("verdict: {}", v.class.name())];
    if !v.prefix.is_empty() {
        out.push(format!("forced prefix: {}", digits_to_string(&v.prefix)));
    }
    out.push(format!("certificate: {}", certificate_text(&v.certificate, Some(base))));
    if !v.graph.nodes.is_empty() {
        let note = if v.graph.complete { "" } else { " (incomplete)" };
        out.push(format!("branching points explored: {}{note}", v.graph.nodes.len()));
    }
    out.push(null_text(n, Some(base)));
    out.join("\n")
}

fn seeds_json(seeds: &[SeedVerdict]) -> Value {
    Value::Array(
        seeds.iter().map(|s| json!({"seed": s.seed.to_string(), "verdict": s.verdict, "witness": s.witness})).collect(),
    )
}

fn hit_json(h: &SearchHit) -> Value {
    json!({
        "q_5dp": h.decimal,
        "polynomial": coeffs(&h.polynomial),
        "named": h.named.map(|c| c.name()),
        "named_divides": h.named_divides,
        "equations": h.equations,
        "seed": h.seed.to_string(),
        "cycle": cycle_json(&h.witness, Some(&h.base)),
        "w_special": h.w_special.map(|s| s.to_string()),
        "certificate_valid": h.check.valid,
        "seeds": seeds_json(&h.seeds),
    })
}

fn k_range_json(k: &KRange) -> Value {
    json!({
        "pattern": k.pattern,
        "min_k": k.min_k,
        "feasible": k.feasible,
        "bound": k.bound,
        "limit_feasible": k.limit_feasible,
    })
}

pub fn search_json(r: &SearchReport) -> Value {
    json!({
        "searched": r.window.as_ref().map(|w| vec![w.lo.refine_to_digits(5), w.hi.refine_to_digits(5)]),
        "bases": r.hits.iter().map(hit_json).collect::<Vec<_>>(),
        "rejected": r.rejected.iter().map(|x| json!({
            "q_5dp": x.decimal,
            "equations": x.equations,
            "seeds": seeds_json(&x.seeds),
        })).collect::<Vec<_>>(),
        "k_ranges": r.k_ranges.iter().map(k_range_json).collect::<Vec<_>>(),
    })
}

pub fn search_text(r: &SearchReport) -> String {
    let mut out = Vec::new();
    match &r.window {
        Some(w) => out.push(format!("searched [{}, {}]", w.lo.refine_to_digits(5), w.hi.refine_to_digits(5))),
        None => out.push("window does not meet [q1, q3]".into()),
    }
    out.push(format!("{} base(s) with a point having countably many expansions:", r.hits.len()));
    for h in &r.hits {
        let name = h.named.map(|c| format!(" ({c})")).unwrap_or_default();
        out.push(format!("  {}{}  {}", h.decimal, name, h.polynomial));
        let w = h.w_special.map(|s| s.to_string()).unwrap_or_else(|| h.witness.w.provenance.clone());
        let hits: Vec<String> = h
            .check
            .hits
            .iter()
            .map(|(n, s)| format!("{n}:{}", s.map(|s| s.to_string()).unwrap_or_else(|| "?".into())))
            .collect();
        out.push(format!(
            "    seed {}: cycle w = {w} = {}, b = {}, switch hits [{}]",
            h.seed,
            h.witness.w.decimal(5),
            digits_to_string(&h.witness.b),
            hits.join(", ")
        ));
        out.push(format!("    certificate {}", if h.check.valid { "valid" } else { "INVALID" }));
    }
    if !r.rejected.is_empty() {
        let rej: Vec<String> = r.rejected.iter().map(|x| x.decimal.clone()).collect();
        out.push(format!("rejected candidate roots: {}", rej.join(", ")));
    }
    out.join("\n")
}

pub fn verdict_text(v: &TheoremVerdict) -> String {
    let mut out = vec![format!("{} {}: {}", v.id, v.status, v.name)];
    for (k, val) in &v.facts {
        out.push(format!("  {k} = {val}"));
    }
    for e in &v.evidence {
        let mark = if e.passed { "ok  " } else { "FAIL" };
        out.push(format!("  [{mark}] {}", e.check));
        if !e.margin_5dp.is_empty() {
            out.push(format!("         {} vs {}, margin {}", e.lhs_exact, e.rhs_exact, e.margin_5dp));
        }
    }
    out.join("\n")
}
