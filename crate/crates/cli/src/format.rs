//! The `plumbing-v1` JSON format and DOT export.

use std::fmt::Write as _;

use plumbcalc_core::{Arrow, PlumbingGraph, Vertex};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_TAG: &str = "plumbing-v1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    format: String,
    vertices: Vec<VertexEntry>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    arrows: Vec<ArrowEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: String,
    weight: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    at: String,
    label: String,
}

pub fn graph_to_json(g: &PlumbingGraph) -> String {
    let file = GraphFile {
        format: FORMAT_TAG.to_string(),
        vertices: g.vertices().iter().map(|v| VertexEntry { id: v.id.clone(), weight: v.weight }).collect(),
        edges: g.edges().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        arrows: g.arrows().map(|a| ArrowEntry { at: a.at, label: a.label }).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<PlumbingGraph, CliError> {
    let file: GraphFile = serde_json::from_str(text)?;
    if file.format != FORMAT_TAG {
        return Err(CliError::Input(format!("unsupported format tag {:?}, expected {FORMAT_TAG:?}", file.format)));
    }
    let vertices = file.vertices.into_iter().map(|v| Vertex::new(v.id, v.weight)).collect();
    let arrows = file.arrows.into_iter().map(|a| Arrow::new(a.at, a.label)).collect();
    Ok(PlumbingGraph::new(vertices, file.edges, arrows)?)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// One node per vertex labeled `id\nweight`; arrows become point nodes
/// joined by an arrowhead edge.
pub fn graph_to_dot(g: &PlumbingGraph) -> String {
    let mut s = String::from("graph plumbing {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {} [label=\"{}\\n{}\"];", quote(&v.id), escape(&v.id), v.weight);
    }
    for (a, b) in g.edges() {
        let _ = writeln!(s, "  {} -- {};", quote(a), quote(b));
    }
    for (k, a) in g.arrows().enumerate() {
        let tip = format!("arrow{k}");
        let _ = writeln!(s, "  {} [shape=point, label=\"\"];", quote(&tip));
        let _ = writeln!(s, "  {} -- {} [dir=forward, arrowhead=normal, label={}];", quote(&a.at), quote(&tip), quote(&a.label));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "format": "plumbing-v1",
  "vertices": [
    {
      "id": "v0",
      "weight": -2
    },
    {
      "id": "v1",
      "weight": -1
    }
  ],
  "edges": [
    [
      "v0",
      "v1"
    ]
  ],
  "arrows": [
    {
      "at": "v1",
      "label": "K(5)"
    }
  ]
}
"#;

    #[test]
    fn round_trip_is_byte_identical() {
        let g = graph_from_json(SAMPLE).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(graph_to_json(&g), SAMPLE);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(graph_from_json("{").is_err());
        assert!(graph_from_json(&SAMPLE.replace("plumbing-v1", "plumbing-v2")).is_err());
        assert!(graph_from_json(&SAMPLE.replace("\"v1\",", "\"v9\",")).is_err());
    }

    #[test]
    fn dot_of_e8() {
        let mut b = PlumbingGraph::builder();
        for i in 0..8 {
            b = b.vertex(&format!("v{i}"), -2);
        }
        for i in 0..6 {
            b = b.edge(&format!("v{i}"), &format!("v{}", i + 1));
        }
        let g = b.edge("v2", "v7").build().unwrap();
        let dot = graph_to_dot(&g);
        assert_eq!(dot.matches("\\n-2\"").count(), 8);
        assert_eq!(dot.matches(" -- ").count(), 7);
    }
}
