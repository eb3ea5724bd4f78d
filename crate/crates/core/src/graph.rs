use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An edge with an oriented endpoint pair. The orientation only fixes which
/// ending is the start of the edge's path in a drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub ends: (VertexId, VertexId),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    /// Edges sharing at least one endpoint.
    pub fn is_adjacent_to(&self, other: &Edge) -> bool {
        self.touches(other.ends.0) || self.touches(other.ends.1)
    }
}

/// Vertices and edges kept sorted by id; loops and parallel edges allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut vertices = vertices;
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0]));
        }
        let mut edges = edges;
        edges.sort_unstable_by_key(|e| e.id);
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GraphError::DuplicateEdge(w[0].id));
        }
        for e in &edges {
            for v in [e.ends.0, e.ends.1] {
                if vertices.binary_search(&v).is_err() {
                    return Err(GraphError::UnknownVertex(v));
                }
            }
        }
        Ok(Multigraph { vertices, edges })
    }

    /// Simple graph on vertices `0..n` with the given endpoint pairs; edge ids
    /// follow the order of `pairs`.
    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self, GraphError> {
        let vertices = (0..n).map(VertexId).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Edge { id: EdgeId(i as u32), ends: (VertexId(a), VertexId(b)) })
            .collect();
        Multigraph::new(vertices, edges)
    }

    pub fn complete(n: u32) -> Self {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                pairs.push((a, b));
            }
        }
        Multigraph::from_pairs(n, &pairs).expect("complete graph is well formed")
    }

    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let mut pairs = Vec::new();
        for x in 0..a {
            for y in a..a + b {
                pairs.push((x, y));
            }
        }
        Multigraph::from_pairs(a + b, &pairs).expect("complete bipartite graph is well formed")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn edge_index(&self, e: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&e, |x| x.id).ok()
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edge_index(e).map(|i| &self.edges[i])
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let key = (e.ends.0.min(e.ends.1), e.ends.0.max(e.ends.1));
            !e.is_loop() && seen.insert(key)
        })
    }

    pub fn has_edge_between(&self, a: VertexId, b: VertexId) -> bool {
        self.edges
            .iter()
            .any(|e| (e.ends.0 == a && e.ends.1 == b) || (e.ends.0 == b && e.ends.1 == a))
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.last().copied()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.last().map(|e| e.id)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            let a = self.vertex_index(e.ends.0).unwrap();
            let b = self.vertex_index(e.ends.1).unwrap();
            uf.union(a, b);
        }
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        let mut slot = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in self.vertices.iter().enumerate() {
            let r = uf.find(i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Multigraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0].id < w[1].id));
        Multigraph { vertices, edges }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so representatives stay deterministic
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_dangling_endpoint() {
        let err = Multigraph::new(
            vec![VertexId(0)],
            vec![Edge { id: EdgeId(0), ends: (VertexId(0), VertexId(1)) }],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::UnknownVertex(VertexId(1)));
    }

    #[test]
    fn simple_flag() {
        assert!(Multigraph::complete(5).is_simple());
        let loopy = Multigraph::from_pairs(1, &[(0, 0)]).unwrap();
        assert!(!loopy.is_simple());
        let parallel = Multigraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!parallel.is_simple());
    }

    #[test]
    fn components_in_id_order() {
        let g = Multigraph::from_pairs(5, &[(3, 4), (0, 2)]).unwrap();
        let c = g.components();
        assert_eq!(
            c,
            vec![
                vec![VertexId(0), VertexId(2)],
                vec![VertexId(1)],
                vec![VertexId(3), VertexId(4)]
            ]
        );
    }
}
