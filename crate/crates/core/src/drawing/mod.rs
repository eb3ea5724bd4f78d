//! Combinatorial drawings: a planarization whose nodes are the real vertices
//! plus degree-4 crossing nodes, with a clockwise dart rotation at every node
//! and, for each edge, the ordered darts of its path.
//!
//! Drawings produced by this crate are canonical: real nodes come first in
//! vertex order, crossing nodes are numbered by first visit while walking the
//! edge paths in edge order, segment `s` owns darts `2s` (forward) and `2s+1`,
//! and every rotation starts at its smallest dart. Structural equality is
//! therefore equality of drawings up to sphere homeomorphism preserving labels
//! and orientation.

mod edit;
mod geometry;
mod surgery;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DrawingError, GraphError};
use crate::graph::{Edge, EdgeId, Multigraph, UnionFind, VertexId};

pub(crate) use edit::Editor;
pub use geometry::Point;

pub type NodeId = usize;
pub type DartId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Vertex(VertexId),
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub kind: NodeKind,
    /// Darts leaving this node, clockwise.
    pub rotation: Vec<DartId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub node: NodeId,
    pub twin: DartId,
    pub edge: EdgeId,
}

/// Which end of an edge's path an ending belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Start,
    End,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Start => Side::End,
            Side::End => Side::Start,
        }
    }
}

/// The piece of an edge next to one of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ending {
    pub edge: EdgeId,
    pub side: Side,
}

impl Ending {
    pub fn new(edge: EdgeId, side: Side) -> Self {
        Ending { edge, side }
    }
}

impl fmt::Display for Ending {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Start => '-',
            Side::End => '+',
        };
        write!(f, "{}{}", self.edge, s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    NonQuadCrossing,
    NonAlternating,
    EulerFailure,
    DanglingDart,
    BadEdgePath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Locus {
    Node(NodeId),
    Dart(DartId),
    Edge(EdgeId),
    Vertex(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub locus: Locus,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {:?}", self.kind, self.locus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Drawing {
    graph: Multigraph,
    nodes: Vec<Node>,
    darts: Vec<Dart>,
    /// Aligned with `graph.edges()`.
    paths: Vec<Vec<DartId>>,
}

impl Drawing {
    /// Assembles a drawing without checking any drawing invariant; run
    /// [`Drawing::validate`] before relying on it.
    pub fn from_parts(
        graph: Multigraph,
        nodes: Vec<Node>,
        darts: Vec<Dart>,
        paths: Vec<Vec<DartId>>,
    ) -> Drawing {
        Drawing { graph, nodes, darts, paths }
    }

    pub fn empty() -> Drawing {
        Drawing {
            graph: Multigraph::default(),
            nodes: Vec::new(),
            darts: Vec::new(),
            paths: Vec::new(),
        }
    }

    /// Crossing-free drawing from a rotation system: `rotation[v]` lists the
    /// endings at `v` clockwise. Each edge becomes a single segment.
    pub fn from_rotation_system(
        graph: Multigraph,
        rotation: &BTreeMap<VertexId, Vec<Ending>>,
    ) -> Result<Drawing, DrawingError> {
        let mut nodes: Vec<Node> = graph
            .vertices()
            .iter()
            .map(|&v| Node { kind: NodeKind::Vertex(v), rotation: Vec::new() })
            .collect();
        let mut darts = Vec::with_capacity(2 * graph.edge_count());
        let mut paths = Vec::with_capacity(graph.edge_count());
        for e in graph.edges() {
            let s = darts.len();
            let a = graph.vertex_index(e.ends.0).unwrap();
            let b = graph.vertex_index(e.ends.1).unwrap();
            darts.push(Dart { node: a, twin: s + 1, edge: e.id });
            darts.push(Dart { node: b, twin: s, edge: e.id });
            paths.push(vec![s]);
        }
        for (&v, endings) in rotation {
            let vi = graph.vertex_index(v).ok_or(GraphError::UnknownVertex(v))?;
            for end in endings {
                let ei = graph.edge_index(end.edge).ok_or(GraphError::UnknownEdge(end.edge))?;
                let d = 2 * ei + usize::from(end.side == Side::End);
                nodes[vi].rotation.push(d);
            }
        }
        let d = Drawing { graph, nodes, darts, paths };
        d.check()?;
        Ok(d.canonical())
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn dart(&self, id: DartId) -> &Dart {
        &self.darts[id]
    }

    pub fn paths(&self) -> &[Vec<DartId>] {
        &self.paths
    }

    pub fn path(&self, e: EdgeId) -> Option<&[DartId]> {
        self.graph.edge_index(e).map(|i| self.paths[i].as_slice())
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn crossing_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.kind == NodeKind::Crossing)
            .map(|(i, _)| i)
    }

    pub fn crossing_node_count(&self) -> usize {
        self.crossing_nodes().count()
    }

    pub fn vertex_node(&self, v: VertexId) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.kind == NodeKind::Vertex(v))
    }

    /// The two edges passing through a crossing node (equal for a self-crossing).
    pub fn passes(&self, x: NodeId) -> (EdgeId, EdgeId) {
        let r = &self.nodes[x].rotation;
        let (a, b) = (self.darts[r[0]].edge, self.darts[r[1]].edge);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Endings at a real node, clockwise, starting from its first dart.
    pub fn endings_at(&self, node: NodeId) -> Vec<Ending> {
        self.nodes[node].rotation.iter().map(|&d| self.ending_of(d)).collect()
    }

    /// Rotation system at the real vertices.
    pub fn rotation_system(&self) -> BTreeMap<VertexId, Vec<Ending>> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n.kind {
                NodeKind::Vertex(v) => Some((v, self.endings_at(i))),
                NodeKind::Crossing => None,
            })
            .collect()
    }

    /// Ending for a dart at a real vertex.
    pub fn ending_of(&self, d: DartId) -> Ending {
        let e = self.darts[d].edge;
        let i = self.graph.edge_index(e).expect("dart edge exists");
        let path = &self.paths[i];
        if path.first() == Some(&d) {
            Ending::new(e, Side::Start)
        } else {
            debug_assert_eq!(path.last().map(|&l| self.darts[l].twin), Some(d));
            Ending::new(e, Side::End)
        }
    }

    pub(crate) fn rotation_position(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.darts.len()];
        for n in &self.nodes {
            for (i, &d) in n.rotation.iter().enumerate() {
                if d < pos.len() {
                    pos[d] = i;
                }
            }
        }
        pos
    }

    /// Face boundaries as dart cycles, `next(d) = clockwise successor of twin(d)`.
    /// The face lies to the left of every traversed dart.
    pub fn faces(&self) -> Vec<Vec<DartId>> {
        let pos = self.rotation_position();
        let mut seen = vec![false; self.darts.len()];
        let mut faces = Vec::new();
        for start in 0..self.darts.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.face_next_with(d, &pos);
            }
            faces.push(face);
        }
        faces
    }

    pub(crate) fn face_next_with(&self, d: DartId, pos: &[usize]) -> DartId {
        let t = self.darts[d].twin;
        let rot = &self.nodes[self.darts[t].node].rotation;
        rot[(pos[t] + 1) % rot.len()]
    }

    /// Checks every drawing invariant; empty result means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let v = |kind, locus| Violation { kind, locus };

        // dart structure
        let mut seen_in_rot = vec![0usize; self.darts.len()];
        for (ni, n) in self.nodes.iter().enumerate() {
            for &d in &n.rotation {
                if d >= self.darts.len() {
                    out.push(v(ViolationKind::DanglingDart, Locus::Node(ni)));
                    continue;
                }
                seen_in_rot[d] += 1;
                if self.darts[d].node != ni {
                    out.push(v(ViolationKind::DanglingDart, Locus::Dart(d)));
                }
            }
        }
        for (di, dart) in self.darts.iter().enumerate() {
            let bad_twin = dart.twin >= self.darts.len()
                || dart.twin == di
                || self.darts[dart.twin].twin != di
                || self.darts[dart.twin].edge != dart.edge;
            if bad_twin
                || dart.node >= self.nodes.len()
                || seen_in_rot[di] != 1
                || self.graph.edge_index(dart.edge).is_none()
            {
                out.push(v(ViolationKind::DanglingDart, Locus::Dart(di)));
            }
        }
        let mut vertex_seen = BTreeMap::new();
        for (ni, n) in self.nodes.iter().enumerate() {
            match n.kind {
                NodeKind::Crossing => {
                    if n.rotation.len() != 4 {
                        out.push(v(ViolationKind::NonQuadCrossing, Locus::Node(ni)));
                    }
                }
                NodeKind::Vertex(x) => {
                    if self.graph.vertex_index(x).is_none() || vertex_seen.insert(x, ni).is_some() {
                        out.push(v(ViolationKind::DanglingDart, Locus::Node(ni)));
                    }
                }
            }
        }
        for &x in self.graph.vertices() {
            if !vertex_seen.contains_key(&x) {
                out.push(v(ViolationKind::DanglingDart, Locus::Vertex(x)));
            }
        }
        if self.paths.len() != self.graph.edge_count() {
            out.push(v(ViolationKind::BadEdgePath, Locus::Node(0)));
        }
        if !out.is_empty() {
            return out;
        }

        // edge paths
        let pos = self.rotation_position();
        let mut covered = vec![0usize; self.darts.len()];
        for (edge, path) in self.graph.edges().iter().zip(&self.paths) {
            let bad = Violation { kind: ViolationKind::BadEdgePath, locus: Locus::Edge(edge.id) };
            if path.is_empty() || path.iter().any(|&d| d >= self.darts.len()) {
                out.push(bad);
                continue;
            }
            let start = self.darts[path[0]].node;
            let end = self.darts[self.darts[*path.last().unwrap()].twin].node;
            if self.nodes[start].kind != NodeKind::Vertex(edge.ends.0)
                || self.nodes[end].kind != NodeKind::Vertex(edge.ends.1)
            {
                out.push(bad);
            }
            for &d in path {
                covered[d] += 1;
                covered[self.darts[d].twin] += 1;
                if self.darts[d].edge != edge.id {
                    out.push(bad);
                }
            }
            for w in path.windows(2) {
                let arrive = self.darts[w[0]].twin;
                let x = self.darts[arrive].node;
                if self.darts[w[1]].node != x || self.nodes[x].kind != NodeKind::Crossing {
                    out.push(bad);
                } else if self.nodes[x].rotation.len() == 4 && (pos[arrive] + 2) % 4 != pos[w[1]] {
                    out.push(Violation { kind: ViolationKind::NonAlternating, locus: Locus::Node(x) });
                }
            }
        }
        for (d, &c) in covered.iter().enumerate() {
            if c != 1 {
                out.push(v(ViolationKind::DanglingDart, Locus::Dart(d)));
            }
        }
        if !out.is_empty() {
            out.sort_by_key(|x| (x.kind as u8, format!("{:?}", x.locus)));
            out.dedup();
            return out;
        }

        // genus zero per connected component
        for (root, chi) in self.euler_characteristics() {
            if chi != 2 {
                out.push(v(ViolationKind::EulerFailure, Locus::Node(root)));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn check(&self) -> Result<(), DrawingError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DrawingError::Invalid(v))
        }
    }

    /// `(smallest node of component, V - E + F)` for every connected component
    /// of the map. Requires structurally sound darts.
    pub fn euler_characteristics(&self) -> Vec<(NodeId, i64)> {
        let mut uf = UnionFind::new(self.nodes.len());
        for d in &self.darts {
            uf.union(d.node, self.darts[d.twin].node);
        }
        let mut stats: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
        for n in 0..self.nodes.len() {
            stats.entry(uf.find(n)).or_default().0 += 1;
        }
        for d in &self.darts {
            stats.get_mut(&uf.find(d.node)).unwrap().1 += 1;
        }
        for face in self.faces() {
            stats.get_mut(&uf.find(self.darts[face[0]].node)).unwrap().2 += 1;
        }
        stats
            .into_iter()
            .map(|(root, (v, twice_e, f))| {
                let f = if twice_e == 0 { 1 } else { f };
                (root, v - twice_e / 2 + f)
            })
            .collect()
    }

    /// Relabels nodes and darts into canonical order. Requires valid paths.
    pub fn canonical(&self) -> Drawing {
        let n_real = self.graph.vertex_count();
        let mut node_map = vec![usize::MAX; self.nodes.len()];
        for (ni, n) in self.nodes.iter().enumerate() {
            if let NodeKind::Vertex(v) = n.kind {
                node_map[ni] = self.graph.vertex_index(v).unwrap();
            }
        }
        let mut next_node = n_real;
        let mut dart_map = vec![usize::MAX; self.darts.len()];
        let mut next_dart = 0;
        let mut new_paths = Vec::with_capacity(self.paths.len());
        for path in &self.paths {
            let mut np = Vec::with_capacity(path.len());
            for &d in path {
                dart_map[d] = next_dart;
                dart_map[self.darts[d].twin] = next_dart + 1;
                np.push(next_dart);
                next_dart += 2;
                let far = self.darts[self.darts[d].twin].node;
                if node_map[far] == usize::MAX {
                    node_map[far] = next_node;
                    next_node += 1;
                }
            }
            new_paths.push(np);
        }
        let mut nodes: Vec<Node> = (0..next_node)
            .map(|i| Node {
                kind: if i < n_real {
                    NodeKind::Vertex(self.graph.vertices()[i])
                } else {
                    NodeKind::Crossing
                },
                rotation: Vec::new(),
            })
            .collect();
        for (ni, n) in self.nodes.iter().enumerate() {
            let target = node_map[ni];
            if target == usize::MAX {
                continue;
            }
            let mut rot: Vec<DartId> = n.rotation.iter().map(|&d| dart_map[d]).collect();
            if let Some(min_pos) = (0..rot.len()).min_by_key(|&i| rot[i]) {
                rot.rotate_left(min_pos);
            }
            nodes[target].rotation = rot;
        }
        let mut darts = vec![Dart { node: 0, twin: 0, edge: EdgeId(0) }; next_dart];
        for (old, &new) in dart_map.iter().enumerate() {
            if new == usize::MAX {
                continue;
            }
            darts[new] = Dart {
                node: node_map[self.darts[old].node],
                twin: new ^ 1,
                edge: self.darts[old].edge,
            };
        }
        Drawing { graph: self.graph.clone(), nodes, darts, paths: new_paths }
    }

    /// Same drawing with vertex and edge ids shifted.
    pub(crate) fn relabeled(&self, vertex_offset: u32, edge_offset: u32) -> Drawing {
        let vertices = self.graph.vertices().iter().map(|v| VertexId(v.0 + vertex_offset)).collect();
        let edges = self
            .graph
            .edges()
            .iter()
            .map(|e| Edge {
                id: EdgeId(e.id.0 + edge_offset),
                ends: (VertexId(e.ends.0 .0 + vertex_offset), VertexId(e.ends.1 .0 + vertex_offset)),
            })
            .collect();
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                kind: match n.kind {
                    NodeKind::Vertex(v) => NodeKind::Vertex(VertexId(v.0 + vertex_offset)),
                    NodeKind::Crossing => NodeKind::Crossing,
                },
                rotation: n.rotation.clone(),
            })
            .collect();
        let darts = self
            .darts
            .iter()
            .map(|d| Dart { edge: EdgeId(d.edge.0 + edge_offset), ..*d })
            .collect();
        Drawing {
            graph: Multigraph::from_sorted_unchecked(vertices, edges),
            nodes,
            darts,
            paths: self.paths.clone(),
        }
    }
}

#[cfg(test)]
mod tests;
