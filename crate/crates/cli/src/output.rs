//! JSON and DOT renderings of reports, splice diagrams, verdicts and roots.

use std::fmt::Write as _;

use num_bigint::BigInt;
use plumbcalc_core::calculus::{edge_determinant, Certificate, EquivalenceVerdict, SpliceDiagram, Verdict};
use plumbcalc_core::contfrac::ExactRational;
use plumbcalc_core::graded_roots::{GradedRoot, MonotoneRoot, TauSequence};
use plumbcalc_core::seifert_splice::BrieskornTriple;
use plumbcalc_core::InvariantReport;
use serde_json::{json, Value};

pub fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rational(x: &ExactRational) -> Value {
    match x.to_integer() {
        Some(n) => big(&n),
        None => json!(x.to_string()),
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn report_json(r: &InvariantReport) -> Value {
    json!({
        "det": big(&r.det),
        "h1_order": big(&r.h1_order),
        "signature": r.signature,
        "is_zhs": r.is_zhs,
        "mu_bar": r.mu_bar,
        "rokhlin": r.rokhlin,
        "casson": r.casson.as_ref().map(rational),
        "d": r.d,
        "dbar": r.dbar,
        "dunder": r.dunder,
    })
}

pub fn diagram_json(d: &SpliceDiagram) -> Value {
    let nodes: Vec<Value> = d
        .nodes
        .iter()
        .map(|n| json!({ "id": n.id, "leaves": n.leaves.iter().map(big).collect::<Vec<_>>() }))
        .collect();
    let incidences: Vec<Value> = d
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| {
            json!({
                "a": d.nodes[e.a].id,
                "b": d.nodes[e.b].id,
                "weight_at_a": big(&e.weight_at_a),
                "weight_at_b": big(&e.weight_at_b),
                "edge_determinant": big(&edge_determinant(d, k)),
            })
        })
        .collect();
    json!({ "nodes": nodes, "incidences": incidences, "minimal": d.is_minimal() })
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Equivalent => "Equivalent",
        Verdict::Distinct => "Distinct",
        Verdict::Unknown => "Unknown",
    }
}

pub fn verdict_json(v: &EquivalenceVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| json!({ "invariant": w.invariant, "left": w.left, "right": w.right }));
    let certificate = v.certificate.as_ref().map(|c| match c {
        Certificate::ReducedForms => json!({ "kind": "reduced_forms" }),
        Certificate::SpliceDiagram(d) => json!({ "kind": "splice_diagram", "diagram": diagram_json(d) }),
    });
    json!({ "verdict": verdict_name(v.tag), "witness": witness, "certificate": certificate })
}

pub fn root_json(
    t: BrieskornTriple,
    tau: &TauSequence,
    root: &GradedRoot,
    d: i64,
    ds: (i64, i64),
    mono: &MonotoneRoot,
) -> Value {
    let tree = root.tree();
    let leaves: Vec<Value> = root
        .leaf_levels()
        .enumerate()
        .map(|(i, level)| {
            json!({
                "position": 2 * i,
                "level": level,
                "grading": root.grading(level),
                "raw_grading": root.raw_grading(level),
            })
        })
        .collect();
    let nodes: Vec<Value> = tree
        .nodes
        .iter()
        .map(|n| json!({ "level": n.level, "grading": n.grading, "children": n.children, "leaf": n.leaf }))
        .collect();
    json!({
        "triple": t.as_array(),
        "tau": {
            "stabilization_index": tau.stabilization_index(),
            "window": tau.window(),
            "min": tau.min(),
            "k_squared_plus_s": tau.k_squared_plus_s(),
            "normalized_min": tau.normalized_min().to_string(),
        },
        "shift": root.shift(),
        "extrema": root.extrema(),
        "leaves": leaves,
        "nodes": nodes,
        "top": tree.top,
        "d": d,
        "dbar": ds.0,
        "dunder": ds.1,
        "monotone": { "positions": mono.positions, "trivial": mono.is_trivial() },
    })
}

/// Finite part of the root, children below parents, gradings as labels.
pub fn root_dot(root: &GradedRoot) -> String {
    let tree = root.tree();
    let mut s = String::from("digraph graded_root {\n  rankdir=BT;\n");
    for (i, n) in tree.nodes.iter().enumerate() {
        let shape = if n.leaf.is_some() { "circle" } else { "point" };
        let _ = writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", n.grading);
    }
    for (i, n) in tree.nodes.iter().enumerate() {
        for c in &n.children {
            let _ = writeln!(s, "  n{c} -> n{i} [dir=none];");
        }
    }
    let _ = writeln!(s, "  stem [shape=none, label=\"...\"];\n  n{} -> stem [dir=none];", tree.top);
    s.push_str("}\n");
    s
}
