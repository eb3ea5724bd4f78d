//! Crossing parities: a symmetric GF(2) matrix over edge pairs together with
//! the rotation system, which is all the redrawing machinery looks at.

use std::collections::BTreeMap;

use crate::drawing::{Drawing, Ending, NodeKind};
use crate::graph::{Edge, EdgeId, VertexId};

/// Symmetric bit matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ParityMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        ParityMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn put(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// Sets both `(i, j)` and `(j, i)`; the diagonal stays zero.
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        if i == j {
            return;
        }
        self.put(i, j, bit);
        self.put(j, i, bit);
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        let b = self.get(i, j);
        self.set(i, j, !b);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of ones in row `i`: how many edges cross edge `i` oddly.
    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }

    /// Number of unordered pairs set.
    pub fn pair_count(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Submatrix on the given indices, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> ParityMatrix {
        let mut m = ParityMatrix::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.get(i, j) {
                    m.set(a, b, true);
                }
            }
        }
        m
    }

    pub fn is_symmetric_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i) && (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Rotation system plus pairwise crossing parities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySketch {
    pub(crate) vertices: Vec<VertexId>,
    /// Sorted by id; matrix rows follow this order.
    pub(crate) edges: Vec<Edge>,
    pub(crate) rotation: BTreeMap<VertexId, Vec<Ending>>,
    pub(crate) parity: ParityMatrix,
}

impl ParitySketch {
    pub fn new(
        vertices: Vec<VertexId>,
        edges: Vec<Edge>,
        rotation: BTreeMap<VertexId, Vec<Ending>>,
        parity: ParityMatrix,
    ) -> Self {
        ParitySketch { vertices, edges, rotation, parity }
    }

    pub fn of(d: &Drawing) -> ParitySketch {
        let edges = d.graph().edges().to_vec();
        let mut parity = ParityMatrix::zeros(edges.len());
        for x in d.crossing_nodes() {
            let (a, b) = d.passes(x);
            if a != b {
                let i = d.graph().edge_index(a).unwrap();
                let j = d.graph().edge_index(b).unwrap();
                parity.toggle(i, j);
            }
        }
        let rotation = d
            .nodes()
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n.kind {
                NodeKind::Vertex(v) => Some((v, d.endings_at(i))),
                NodeKind::Crossing => None,
            })
            .collect();
        ParitySketch { vertices: d.graph().vertices().to_vec(), edges, rotation, parity }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rotation(&self) -> &BTreeMap<VertexId, Vec<Ending>> {
        &self.rotation
    }

    pub fn matrix(&self) -> &ParityMatrix {
        &self.parity
    }

    pub fn edge_index(&self, e: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&e, |x| x.id).ok()
    }

    pub fn is_odd(&self, e: EdgeId, f: EdgeId) -> bool {
        match (self.edge_index(e), self.edge_index(f)) {
            (Some(i), Some(j)) => self.parity.get(i, j),
            _ => false,
        }
    }

    /// Crossed evenly by every other edge.
    pub fn is_even_edge(&self, e: EdgeId) -> bool {
        self.edge_index(e).is_some_and(|i| self.parity.row_is_zero(i))
    }

    pub fn odd_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if self.parity.get(i, j) {
                    out.push((self.edges[i].id, self.edges[j].id));
                }
            }
        }
        out
    }

    /// Sub-sketch on a vertex subset and the edges inside it.
    pub fn restrict(&self, vertices: &[VertexId]) -> ParitySketch {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        let keep: Vec<usize> = (0..self.edges.len())
            .filter(|&i| {
                let e = self.edges[i];
                vs.binary_search(&e.ends.0).is_ok() && vs.binary_search(&e.ends.1).is_ok()
            })
            .collect();
        ParitySketch {
            edges: keep.iter().map(|&i| self.edges[i]).collect(),
            parity: self.parity.restrict(&keep),
            rotation: vs.iter().map(|v| (*v, self.rotation.get(v).cloned().unwrap_or_default())).collect(),
            vertices: vs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_symmetry_and_degree() {
        let mut m = ParityMatrix::zeros(70);
        m.set(3, 65, true);
        m.set(3, 4, true);
        m.set(5, 5, true);
        assert!(m.get(65, 3));
        assert!(!m.get(5, 5));
        assert_eq!(m.degree(3), 2);
        assert_eq!(m.pair_count(), 2);
        m.toggle(4, 3);
        assert_eq!(m.pair_count(), 1);
        assert!(m.is_symmetric_zero_diagonal());
        let r = m.restrict(&[65, 3]);
        assert!(r.get(0, 1));
    }
}
