use std::collections::BTreeSet;

use super::{DartId, Drawing, Editor, NodeId, NodeKind};
use crate::error::{DrawingError, GraphError};
use crate::graph::{Edge, EdgeId, Multigraph, VertexId};

impl Drawing {
    /// Deletes the given edges. Crossing nodes on a removed pass are smoothed
    /// away, so every surviving pair keeps its exact crossing count.
    pub fn remove_edges(&self, edges: &BTreeSet<EdgeId>) -> Result<Drawing, DrawingError> {
        self.remove_edges_and_vertices(edges, &BTreeSet::new())
    }

    fn remove_edges_and_vertices(
        &self,
        edges: &BTreeSet<EdgeId>,
        vertices: &BTreeSet<VertexId>,
    ) -> Result<Drawing, DrawingError> {
        for &e in edges {
            if self.graph.edge_index(e).is_none() {
                return Err(GraphError::UnknownEdge(e).into());
            }
        }
        if edges.is_empty() && vertices.is_empty() {
            return Ok(self.clone());
        }
        let mut ed = Editor::new(self);
        for d in 0..ed.node.len() {
            if edges.contains(&ed.edge[d]) {
                ed.kill_dart(d);
            }
        }
        for x in 0..ed.kind.len() {
            match ed.kind[x] {
                Some(NodeKind::Crossing) => {}
                Some(NodeKind::Vertex(v)) => {
                    if vertices.contains(&v) {
                        debug_assert!(ed.rot[x].is_empty());
                        ed.kind[x] = None;
                    }
                    continue;
                }
                None => continue,
            }
            match ed.rot[x].len() {
                4 => {}
                0 => ed.kind[x] = None,
                2 => {
                    let pair = (ed.rot[x][0], ed.rot[x][1]);
                    ed.smooth(x, &[pair]);
                }
                n => unreachable!("crossing node left with {n} darts"),
            }
        }
        let kept: Vec<Edge> =
            self.graph.edges().iter().filter(|e| !edges.contains(&e.id)).copied().collect();
        let kept_vertices: Vec<VertexId> =
            self.graph.vertices().iter().filter(|v| !vertices.contains(v)).copied().collect();
        ed.graph = Multigraph::from_sorted_unchecked(kept_vertices, kept);
        for e in edges {
            ed.start.remove(e);
        }
        Ok(ed.finish())
    }

    /// Keeps exactly the vertices in `vs` and the edges with both ends in it.
    pub fn induced_subdrawing(&self, vs: &BTreeSet<VertexId>) -> Result<Drawing, DrawingError> {
        for &v in vs {
            if self.graph.vertex_index(v).is_none() {
                return Err(GraphError::UnknownVertex(v).into());
            }
        }
        let dropped_edges: BTreeSet<EdgeId> = self
            .graph
            .edges()
            .iter()
            .filter(|e| !vs.contains(&e.ends.0) || !vs.contains(&e.ends.1))
            .map(|e| e.id)
            .collect();
        let dropped_vertices: BTreeSet<VertexId> =
            self.graph.vertices().iter().filter(|v| !vs.contains(v)).copied().collect();
        self.remove_edges_and_vertices(&dropped_edges, &dropped_vertices)
    }

    /// Side-by-side union; the second drawing's vertex and edge ids are
    /// shifted past the first's.
    pub fn disjoint_union(&self, other: &Drawing) -> Drawing {
        let vo = self.graph.max_vertex_id().map_or(0, |v| v.0 + 1);
        let eo = self.graph.max_edge_id().map_or(0, |e| e.0 + 1);
        let vo = if other.graph.vertex_count() == 0 { 0 } else { vo };
        let eo = if other.graph.edge_count() == 0 { 0 } else { eo };
        self.merge_disjoint(&other.relabeled(vo, eo))
            .expect("relabeled ids are disjoint")
    }

    /// Union of two drawings whose vertex and edge ids are already disjoint.
    pub fn merge_disjoint(&self, other: &Drawing) -> Result<Drawing, DrawingError> {
        let mut vertices = self.graph.vertices().to_vec();
        vertices.extend_from_slice(other.graph.vertices());
        let mut edges = self.graph.edges().to_vec();
        edges.extend_from_slice(other.graph.edges());
        let graph = Multigraph::new(vertices, edges)?;

        let node_off = self.nodes.len();
        let dart_off = self.darts.len();
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().map(|n| super::Node {
            kind: n.kind,
            rotation: n.rotation.iter().map(|d| d + dart_off).collect(),
        }));
        let mut darts = self.darts.clone();
        darts.extend(other.darts.iter().map(|d| super::Dart {
            node: d.node + node_off,
            twin: d.twin + dart_off,
            edge: d.edge,
        }));
        // paths must follow the merged edge order
        let mut by_edge: Vec<(EdgeId, Vec<DartId>)> = self
            .graph
            .edges()
            .iter()
            .map(|e| e.id)
            .zip(self.paths.iter().cloned())
            .collect();
        by_edge.extend(
            other
                .graph
                .edges()
                .iter()
                .map(|e| e.id)
                .zip(other.paths.iter().map(|p| p.iter().map(|d| d + dart_off).collect())),
        );
        by_edge.sort_by_key(|(e, _)| *e);
        let paths = by_edge.into_iter().map(|(_, p)| p).collect();
        Ok(Drawing { graph, nodes, darts, paths }.canonical())
    }

    /// Smooths one self-crossing node so the edge stays a single curve.
    /// Returns `None` if `x` is not a self-crossing.
    pub fn smooth_self_crossing(&self, x: NodeId) -> Option<Drawing> {
        if self.nodes.get(x)?.kind != NodeKind::Crossing {
            return None;
        }
        let (a, b) = self.passes(x);
        if a != b {
            return None;
        }
        let path = self.path(a)?;
        let visits: Vec<(DartId, DartId)> = path
            .windows(2)
            .filter_map(|w| {
                let arrive = self.darts[w[0]].twin;
                (self.darts[arrive].node == x).then_some((arrive, w[1]))
            })
            .collect();
        debug_assert_eq!(visits.len(), 2);
        let (a1, l1) = visits[0];
        let (a2, l2) = visits[1];
        let mut ed = Editor::new(self);
        ed.smooth(x, &[(a1, a2), (l1, l2)]);
        Some(ed.finish())
    }

    /// Finger move: pushes segment `pusher` across segment `pushed` and back,
    /// adding two crossings between their edges. Both darts must bound the
    /// same face, i.e. that face lies to the left of each of them.
    pub fn add_double_crossing(&self, pusher: DartId, pushed: DartId) -> Drawing {
        let mut ed = Editor::new(self);
        let (sa, tr) = (pusher, pushed);
        let sb = ed.twin[sa];
        let tt = ed.twin[tr];
        let (e, f) = (ed.edge[sa], ed.edge[tr]);
        let x1 = ed.add_node(NodeKind::Crossing);
        let x2 = ed.add_node(NodeKind::Crossing);
        let x1_up = ed.add_dart(x1, e);
        let x1_down = ed.add_dart(x1, e);
        let x1_left = ed.add_dart(x1, f);
        let x1_right = ed.add_dart(x1, f);
        let x2_up = ed.add_dart(x2, e);
        let x2_down = ed.add_dart(x2, e);
        let x2_left = ed.add_dart(x2, f);
        let x2_right = ed.add_dart(x2, f);
        ed.link(sb, x1_up);
        ed.link(x1_down, x2_down);
        ed.link(x2_up, sa);
        ed.link(tr, x1_left);
        ed.link(x1_right, x2_left);
        ed.link(x2_right, tt);
        ed.rot[x1] = vec![x1_up, x1_right, x1_down, x1_left];
        ed.rot[x2] = vec![x2_up, x2_right, x2_down, x2_left];
        ed.finish()
    }

    /// Adds edge `id` from `u` to `v`. `from` is a dart at `u`; the new ending
    /// goes into the corner just before it. `crossed` lists darts whose
    /// segments are crossed in order, each entered from its left side. `to`
    /// is a dart at `v` marking the arrival corner the same way.
    pub fn insert_routed_edge(
        &self,
        id: EdgeId,
        from: DartId,
        crossed: &[DartId],
        to: DartId,
    ) -> Result<Drawing, DrawingError> {
        let mut ed = Editor::new(self);
        let u_node = ed.node[from];
        let v_node = ed.node[to];
        let (Some(NodeKind::Vertex(u)), Some(NodeKind::Vertex(v))) = (ed.kind[u_node], ed.kind[v_node])
        else {
            return Err(DrawingError::Degenerate("route must start and end at vertices".into()));
        };
        let du = ed.add_dart(u_node, id);
        let p = ed.position(from);
        ed.rot[u_node].insert(p, du);
        let mut prev = du;
        for &c in crossed {
            let h = ed.edge[c];
            let far = ed.twin[c];
            let x = ed.add_node(NodeKind::Crossing);
            let north = ed.add_dart(x, id);
            let east = ed.add_dart(x, h);
            let south = ed.add_dart(x, id);
            let west = ed.add_dart(x, h);
            ed.link(c, west);
            ed.link(east, far);
            ed.link(prev, north);
            ed.rot[x] = vec![north, east, south, west];
            prev = south;
        }
        let dv = ed.add_dart(v_node, id);
        let p = ed.position(to);
        ed.rot[v_node].insert(p, dv);
        ed.link(prev, dv);
        let mut edges = ed.graph.edges().to_vec();
        edges.push(Edge { id, ends: (u, v) });
        ed.graph = Multigraph::new(ed.graph.vertices().to_vec(), edges)?;
        ed.start.insert(id, du);
        Ok(ed.finish())
    }
}

impl Drawing {
    /// Adds a small self-crossing twist in the middle of the segment of `d`.
    pub fn add_kink(&self, d: DartId) -> Drawing {
        let mut ed = Editor::new(self);
        let far = ed.twin[d];
        let e = ed.edge[d];
        let x = ed.add_node(NodeKind::Crossing);
        let arrive = ed.add_dart(x, e);
        let loop_out = ed.add_dart(x, e);
        let loop_in = ed.add_dart(x, e);
        let leave = ed.add_dart(x, e);
        ed.link(d, arrive);
        ed.link(loop_out, loop_in);
        ed.link(leave, far);
        ed.rot[x] = vec![arrive, loop_in, loop_out, leave];
        ed.finish()
    }
}
