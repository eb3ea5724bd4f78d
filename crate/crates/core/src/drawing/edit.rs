use std::collections::BTreeMap;

use super::{Dart, DartId, Drawing, Node, NodeId, NodeKind};
use crate::graph::{EdgeId, Multigraph};

/// Mutable map used for surgery. Darts and nodes are tombstoned rather than
/// removed; `finish` re-walks every edge from its start dart and returns the
/// canonical drawing.
#[derive(Clone, Debug)]
pub(crate) struct Editor {
    pub graph: Multigraph,
    pub kind: Vec<Option<NodeKind>>,
    pub rot: Vec<Vec<DartId>>,
    pub node: Vec<NodeId>,
    pub twin: Vec<DartId>,
    pub edge: Vec<EdgeId>,
    pub alive: Vec<bool>,
    pub start: BTreeMap<EdgeId, DartId>,
}

impl Editor {
    pub fn new(d: &Drawing) -> Editor {
        let start = d
            .graph
            .edges()
            .iter()
            .zip(&d.paths)
            .map(|(e, p)| (e.id, p[0]))
            .collect();
        Editor {
            graph: d.graph.clone(),
            kind: d.nodes.iter().map(|n| Some(n.kind)).collect(),
            rot: d.nodes.iter().map(|n| n.rotation.clone()).collect(),
            node: d.darts.iter().map(|x| x.node).collect(),
            twin: d.darts.iter().map(|x| x.twin).collect(),
            edge: d.darts.iter().map(|x| x.edge).collect(),
            alive: vec![true; d.darts.len()],
            start,
        }
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        self.kind.push(Some(kind));
        self.rot.push(Vec::new());
        self.kind.len() - 1
    }

    /// New dart on `node` (not yet placed in the rotation).
    pub fn add_dart(&mut self, node: NodeId, edge: EdgeId) -> DartId {
        self.node.push(node);
        self.twin.push(usize::MAX);
        self.edge.push(edge);
        self.alive.push(true);
        self.node.len() - 1
    }

    pub fn link(&mut self, a: DartId, b: DartId) {
        self.twin[a] = b;
        self.twin[b] = a;
    }

    pub fn position(&self, d: DartId) -> usize {
        self.rot[self.node[d]].iter().position(|&x| x == d).expect("dart in its rotation")
    }

    /// Dart opposite to `d` at a crossing node.
    pub fn opposite(&self, d: DartId) -> DartId {
        let r = &self.rot[self.node[d]];
        r[(self.position(d) + 2) % 4]
    }

    pub fn kill_dart(&mut self, d: DartId) {
        if !self.alive[d] {
            return;
        }
        self.alive[d] = false;
        let n = self.node[d];
        self.rot[n].retain(|&x| x != d);
    }

    /// Deletes crossing node `x`, joining its darts according to `pairs`.
    /// Pairs may chain through segments that start and end at `x`; a chain is
    /// followed until it leaves `x` and the two outside darts are linked.
    /// Darts of `x` not named in any pair must already be dead.
    pub fn smooth(&mut self, x: NodeId, pairs: &[(DartId, DartId)]) {
        let partner = |d: DartId| -> DartId {
            for &(a, b) in pairs {
                if a == d {
                    return b;
                }
                if b == d {
                    return a;
                }
            }
            unreachable!("dart {d} not paired at node {x}")
        };
        let here: Vec<DartId> = self.rot[x].iter().copied().filter(|&d| self.alive[d]).collect();
        let mut done = vec![];
        for &a in &here {
            if done.contains(&a) {
                continue;
            }
            let outside_a = self.twin[a];
            if self.node[outside_a] == x {
                continue;
            }
            done.push(a);
            let mut cur = a;
            loop {
                let b = partner(cur);
                done.push(b);
                let t = self.twin[b];
                if self.node[t] != x {
                    self.link(outside_a, t);
                    break;
                }
                done.push(t);
                cur = t;
            }
        }
        for d in here {
            self.alive[d] = false;
        }
        self.rot[x].clear();
        self.kind[x] = None;
    }

    /// Walks every edge path and returns the canonical drawing.
    pub fn finish(self) -> Drawing {
        let mut node_ids = vec![usize::MAX; self.kind.len()];
        let mut nodes = Vec::new();
        for (i, k) in self.kind.iter().enumerate() {
            if let Some(k) = k {
                node_ids[i] = nodes.len();
                nodes.push(Node { kind: *k, rotation: Vec::new() });
            }
        }
        let mut dart_ids = vec![usize::MAX; self.node.len()];
        let mut darts = Vec::new();
        for d in 0..self.node.len() {
            if self.alive[d] {
                dart_ids[d] = darts.len();
                darts.push(Dart { node: node_ids[self.node[d]], twin: 0, edge: self.edge[d] });
            }
        }
        for d in 0..self.node.len() {
            if self.alive[d] {
                darts[dart_ids[d]].twin = dart_ids[self.twin[d]];
            }
        }
        for (i, r) in self.rot.iter().enumerate() {
            if node_ids[i] != usize::MAX {
                nodes[node_ids[i]].rotation = r.iter().map(|&d| dart_ids[d]).collect();
            }
        }
        let limit = self.node.len() + 1;
        let mut paths = Vec::with_capacity(self.graph.edge_count());
        for e in self.graph.edges() {
            let mut d = self.start[&e.id];
            let mut path = Vec::new();
            loop {
                path.push(dart_ids[d]);
                assert!(path.len() <= limit, "edge path of {} does not terminate", e.id);
                let t = self.twin[d];
                match self.kind[self.node[t]] {
                    Some(NodeKind::Vertex(_)) => break,
                    _ => d = self.opposite(t),
                }
            }
            paths.push(path);
        }
        Drawing { graph: self.graph, nodes, darts, paths }.canonical()
    }
}
