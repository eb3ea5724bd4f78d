use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::drawing::{Dart, Drawing, Node, NodeKind};
use crate::error::{DrawingError, IoError};
use crate::graph::{Edge, EdgeId, Multigraph, VertexId};

pub const FORMAT: &str = "oddplane-drawing";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDocument {
    pub format: String,
    pub version: u32,
    pub graph: GraphSection,
    pub map: MapSection,
    pub paths: Vec<PathEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: u32,
    pub ends: [u32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    pub nodes: Vec<NodeEntry>,
    /// Dart involution as `[d, twin]` pairs with `d < twin`.
    pub twins: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeTag {
    Real,
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: usize,
    pub kind: NodeTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<u32>,
    /// Clockwise.
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathEntry {
    pub edge: u32,
    pub darts: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

fn field(name: &str, message: impl Into<String>) -> IoError {
    IoError::Field { field: name.to_string(), message: message.into() }
}

fn json_error(e: serde_json::Error) -> IoError {
    IoError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

impl DrawingDocument {
    /// Document of the canonical form of `d`.
    pub fn from_drawing(d: &Drawing, meta: Option<Meta>) -> DrawingDocument {
        let d = d.canonical();
        let g = d.graph();
        let nodes = d
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, n)| match n.kind {
                NodeKind::Vertex(v) => NodeEntry { id, kind: NodeTag::Real, vertex: Some(v.0), rotation: n.rotation.clone() },
                NodeKind::Crossing => NodeEntry { id, kind: NodeTag::Crossing, vertex: None, rotation: n.rotation.clone() },
            })
            .collect();
        let twins = (0..d.darts().len()).filter(|&x| x < d.dart(x).twin).map(|x| [x, d.dart(x).twin]).collect();
        let paths = g
            .edges()
            .iter()
            .zip(d.paths())
            .map(|(e, p)| PathEntry { edge: e.id.0, darts: p.clone() })
            .collect();
        DrawingDocument {
            format: FORMAT.to_string(),
            version: VERSION,
            graph: GraphSection {
                vertices: g.vertices().iter().map(|v| v.0).collect(),
                edges: g.edges().iter().map(|e| EdgeEntry { id: e.id.0, ends: [e.ends.0 .0, e.ends.1 .0] }).collect(),
            },
            map: MapSection { nodes, twins },
            paths,
            meta,
        }
    }

    /// Parses and checks the header and structure; drawing invariants are
    /// left to [`DrawingDocument::to_drawing`].
    pub fn parse(bytes: &[u8]) -> Result<DrawingDocument, IoError> {
        let value: Value = serde_json::from_slice(bytes).map_err(json_error)?;
        match value.get("format").and_then(Value::as_str) {
            Some(FORMAT) => {}
            Some(other) => return Err(field("format", format!("expected `{FORMAT}`, found `{other}`"))),
            None => return Err(field("format", "missing")),
        }
        match value.get("version").and_then(Value::as_u64) {
            Some(v) if v == u64::from(VERSION) => {}
            Some(v) => return Err(field("version", format!("unsupported version {v}"))),
            None => return Err(field("version", "missing or not an integer")),
        }
        // Reparse from the bytes so errors keep their line and column.
        serde_json::from_slice(bytes).map_err(json_error)
    }

    pub fn to_drawing(&self) -> Result<Drawing, IoError> {
        let vertices = self.graph.vertices.iter().map(|&v| VertexId(v)).collect();
        let edges = self
            .graph
            .edges
            .iter()
            .map(|e| Edge { id: EdgeId(e.id), ends: (VertexId(e.ends[0]), VertexId(e.ends[1])) })
            .collect();
        let graph = Multigraph::new(vertices, edges).map_err(DrawingError::from)?;

        let dart_count = 2 * self.map.twins.len();
        let mut twin = vec![usize::MAX; dart_count];
        for &[a, b] in &self.map.twins {
            if a >= dart_count || b >= dart_count || a == b || twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(field("map.twins", format!("pair [{a}, {b}] is not part of an involution on 0..{dart_count}")));
            }
            twin[a] = b;
            twin[b] = a;
        }

        let mut node_of = vec![usize::MAX; dart_count];
        let mut nodes = Vec::with_capacity(self.map.nodes.len());
        for (i, n) in self.map.nodes.iter().enumerate() {
            if n.id != i {
                return Err(field("map.nodes", format!("node at position {i} has id {}", n.id)));
            }
            let kind = match (n.kind, n.vertex) {
                (NodeTag::Real, Some(v)) => NodeKind::Vertex(VertexId(v)),
                (NodeTag::Crossing, None) => NodeKind::Crossing,
                (NodeTag::Real, None) => return Err(field("map.nodes", format!("real node {i} has no vertex"))),
                (NodeTag::Crossing, Some(_)) => {
                    return Err(field("map.nodes", format!("crossing node {i} names a vertex")))
                }
            };
            for &x in &n.rotation {
                if x >= dart_count || node_of[x] != usize::MAX {
                    return Err(field("map.nodes", format!("dart {x} at node {i} is unknown or repeated")));
                }
                node_of[x] = i;
            }
            nodes.push(Node { kind, rotation: n.rotation.clone() });
        }
        if let Some(x) = node_of.iter().position(|&n| n == usize::MAX) {
            return Err(field("map.nodes", format!("dart {x} is in no rotation")));
        }

        if self.paths.len() != graph.edge_count() {
            return Err(field("paths", "need exactly one path per edge"));
        }
        let mut edge_of = vec![None; dart_count];
        let mut paths = Vec::with_capacity(self.paths.len());
        for (p, e) in self.paths.iter().zip(graph.edges()) {
            if p.edge != e.id.0 {
                return Err(field("paths", format!("path for edge {} out of order", p.edge)));
            }
            for &x in &p.darts {
                if x >= dart_count || edge_of[x].is_some() || edge_of[twin[x]].is_some() {
                    return Err(field("paths", format!("dart {x} of edge {} is unknown or reused", p.edge)));
                }
                edge_of[x] = Some(e.id);
                edge_of[twin[x]] = Some(e.id);
            }
            paths.push(p.darts.clone());
        }
        let mut darts = Vec::with_capacity(dart_count);
        for x in 0..dart_count {
            let edge = edge_of[x].ok_or_else(|| field("paths", format!("dart {x} lies on no path")))?;
            darts.push(Dart { node: node_of[x], twin: twin[x], edge });
        }

        let d = Drawing::from_parts(graph, nodes, darts, paths);
        let violations = d.validate();
        if !violations.is_empty() {
            return Err(DrawingError::Invalid(violations).into());
        }
        Ok(d.canonical())
    }
}

pub fn parse_drawing(bytes: &[u8]) -> Result<Drawing, IoError> {
    DrawingDocument::parse(bytes)?.to_drawing()
}

/// Canonical bytes: equal drawings give equal output.
pub fn serialize_drawing(d: &Drawing) -> Vec<u8> {
    to_canonical_json(&DrawingDocument::from_drawing(d, None)).into_bytes()
}

/// Pretty JSON with sorted keys. Below the top level, arrays and objects
/// with no nested object stay on one line, which keeps rotations and dart
/// lists readable in diffs.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize to JSON");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Object(map) if depth == 0 || map.values().any(has_object) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        Value::Array(items) if items.iter().any(has_object) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(depth + 1, out);
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, x)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth, out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, depth, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(m) => !m.is_empty(),
        Value::Array(a) => a.iter().any(has_object),
        _ => false,
    }
}
