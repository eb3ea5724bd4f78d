use serde::{Deserialize, Serialize};

use crate::drawing::{DartId, Drawing, Editor, Ending, NodeKind, Side};
use crate::error::{DrawingError, RedrawError};
use crate::graph::{Edge, EdgeId, Multigraph, VertexId};
use crate::parity::ParitySketch;

/// What a contraction forgot: enough to put the edge back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    /// The surviving vertex; the merged vertex keeps its id.
    pub kept: VertexId,
    pub removed: VertexId,
    /// The contracted edge with its original ends.
    pub edge: Edge,
    /// Endings that were at `kept`, clockwise after the contracted edge.
    pub kept_block: Vec<Ending>,
    /// Endings that were at `removed`, clockwise after the contracted edge.
    pub removed_block: Vec<Ending>,
}

impl SplitRecord {
    fn edge_ending_at(&self, v: VertexId) -> Ending {
        let side = if self.edge.ends.0 == v { Side::Start } else { Side::End };
        Ending::new(self.edge.id, side)
    }
}

/// Contracts an even, non-loop edge into `keep`. The merged rotation is the
/// rotation at `keep` followed by the rotation at the other end, each read
/// clockwise from the contracted edge.
pub fn contract_even_edge(
    sk: &ParitySketch,
    e: EdgeId,
    keep: VertexId,
) -> Result<(ParitySketch, SplitRecord), RedrawError> {
    let i = sk.edge_index(e).ok_or_else(|| RedrawError::MalformedSketch(format!("unknown edge {e}")))?;
    let edge = sk.edges[i];
    if edge.is_loop() {
        return Err(RedrawError::ContractLoop(e));
    }
    if !edge.touches(keep) {
        return Err(RedrawError::MalformedSketch(format!("{keep} is not an end of {e}")));
    }
    if !sk.parity.row_is_zero(i) {
        return Err(RedrawError::ContractOddEdge(e));
    }
    let gone = if edge.ends.0 == keep { edge.ends.1 } else { edge.ends.0 };
    let mut rec = SplitRecord { kept: keep, removed: gone, edge, kept_block: Vec::new(), removed_block: Vec::new() };
    rec.kept_block = block_after(sk, keep, rec.edge_ending_at(keep))?;
    rec.removed_block = block_after(sk, gone, rec.edge_ending_at(gone))?;

    let mut out = sk.clone();
    let keep_idx: Vec<usize> = (0..sk.edges.len()).filter(|&j| j != i).collect();
    out.parity = sk.parity.restrict(&keep_idx);
    out.edges.remove(i);
    for x in &rec.removed_block {
        let j = out.edge_index(x.edge).unwrap();
        set_end(&mut out.edges[j], x.side, keep);
    }
    out.vertices.retain(|&v| v != gone);
    out.rotation.remove(&gone);
    let merged = rec.kept_block.iter().chain(&rec.removed_block).copied().collect();
    out.rotation.insert(keep, merged);
    Ok((out, rec))
}

fn block_after(sk: &ParitySketch, v: VertexId, at: Ending) -> Result<Vec<Ending>, RedrawError> {
    let rot = sk.rotation.get(&v).cloned().unwrap_or_default();
    let p = rot
        .iter()
        .position(|&x| x == at)
        .ok_or_else(|| RedrawError::MalformedSketch(format!("{at} missing from rotation at {v}")))?;
    Ok(rot[p + 1..].iter().chain(&rot[..p]).copied().collect())
}

fn set_end(edge: &mut Edge, side: Side, v: VertexId) {
    match side {
        Side::Start => edge.ends.0 = v,
        Side::End => edge.ends.1 = v,
    }
}

/// Offset at which `rot` reads cyclically as `kept_block ++ removed_block`.
fn block_offset(rot: &[Ending], r: &SplitRecord) -> Option<usize> {
    let want: Vec<Ending> = r.kept_block.iter().chain(&r.removed_block).copied().collect();
    if want.len() != rot.len() {
        return None;
    }
    if want.is_empty() {
        return Some(0);
    }
    let p = rot.iter().position(|&x| x == want[0])?;
    (0..rot.len()).all(|k| rot[(p + k) % rot.len()] == want[k]).then_some(p)
}

/// Undoes [`contract_even_edge`] on a sketch; the restored edge is even.
pub fn split_sketch(sk: &ParitySketch, r: &SplitRecord) -> Result<ParitySketch, RedrawError> {
    let rot = sk.rotation.get(&r.kept).ok_or(RedrawError::InconsistentSplit(r.kept))?;
    block_offset(rot, r).ok_or(RedrawError::InconsistentSplit(r.kept))?;
    let mut edges = sk.edges.clone();
    for x in &r.removed_block {
        let j = sk.edge_index(x.edge).ok_or(RedrawError::InconsistentSplit(r.kept))?;
        set_end(&mut edges[j], x.side, r.removed);
    }
    let at = edges.partition_point(|x| x.id < r.edge.id);
    edges.insert(at, r.edge);
    let old: Vec<usize> = (0..edges.len()).map(|j| if j < at { j } else { j.wrapping_sub(1) }).collect();
    let mut parity = crate::parity::ParityMatrix::zeros(edges.len());
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            if a != at && b != at && sk.parity.get(old[a], old[b]) {
                parity.set(a, b, true);
            }
        }
    }
    let mut vertices = sk.vertices.clone();
    let vp = vertices.partition_point(|&v| v < r.removed);
    vertices.insert(vp, r.removed);
    let mut rotation = sk.rotation.clone();
    let with_edge = |v: VertexId, block: &[Ending]| {
        std::iter::once(r.edge_ending_at(v)).chain(block.iter().copied()).collect::<Vec<_>>()
    };
    rotation.insert(r.kept, with_edge(r.kept, &r.kept_block));
    rotation.insert(r.removed, with_edge(r.removed, &r.removed_block));
    Ok(ParitySketch { vertices, edges, rotation, parity })
}

/// Splits the merged vertex of a drawing back into the two ends of the
/// recorded edge. The edge is drawn as one crossing-free segment in the
/// corner between the two blocks.
pub fn split_vertex(d: &Drawing, r: &SplitRecord) -> Result<Drawing, RedrawError> {
    let w = d.vertex_node(r.kept).ok_or(RedrawError::InconsistentSplit(r.kept))?;
    let endings = d.endings_at(w);
    let off = block_offset(&endings, r).ok_or(RedrawError::InconsistentSplit(r.kept))?;
    let mut darts: Vec<DartId> = d.node(w).rotation.clone();
    darts.rotate_left(off);
    let (kept_darts, removed_darts) = darts.split_at(r.kept_block.len());

    let mut ed = Editor::new(d);
    let v = ed.add_node(NodeKind::Vertex(r.removed));
    let du = ed.add_dart(w, r.edge.id);
    let dv = ed.add_dart(v, r.edge.id);
    ed.link(du, dv);
    ed.rot[w] = std::iter::once(du).chain(kept_darts.iter().copied()).collect();
    ed.rot[v] = std::iter::once(dv).chain(removed_darts.iter().copied()).collect();
    for &x in removed_darts {
        ed.node[x] = v;
    }
    let mut edges = ed.graph.edges().to_vec();
    for x in &r.removed_block {
        let j = ed.graph.edge_index(x.edge).ok_or(RedrawError::InconsistentSplit(r.kept))?;
        set_end(&mut edges[j], x.side, r.removed);
    }
    edges.push(r.edge);
    let mut vertices = ed.graph.vertices().to_vec();
    vertices.push(r.removed);
    vertices.sort_unstable();
    edges.sort_unstable_by_key(|x| x.id);
    ed.graph = Multigraph::new(vertices, edges).map_err(DrawingError::from)?;
    ed.start.insert(r.edge.id, if r.edge.ends.0 == r.kept { du } else { dv });
    Ok(ed.finish())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::parity::ParityMatrix;

    fn end(e: u32, s: Side) -> Ending {
        Ending::new(EdgeId(e), s)
    }

    /// u = 0, v = 1; e0 = uv, e1 = u2, e2 = u3, e3 = v4, as in
    /// u: (e, e1, e2), v: (e, f1).
    fn star() -> ParitySketch {
        let g = Multigraph::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4)]).unwrap();
        let rotation = BTreeMap::from([
            (VertexId(0), vec![end(0, Side::Start), end(1, Side::Start), end(2, Side::Start)]),
            (VertexId(1), vec![end(3, Side::Start), end(0, Side::End)]),
            (VertexId(2), vec![end(1, Side::End)]),
            (VertexId(3), vec![end(2, Side::End)]),
            (VertexId(4), vec![end(3, Side::End)]),
        ]);
        ParitySketch::new(g.vertices().to_vec(), g.edges().to_vec(), rotation, ParityMatrix::zeros(4))
    }

    #[test]
    fn contraction_concatenates_blocks() {
        let (c, rec) = contract_even_edge(&star(), EdgeId(0), VertexId(0)).unwrap();
        assert_eq!(c.rotation()[&VertexId(0)], vec![end(1, Side::Start), end(2, Side::Start), end(3, Side::Start)]);
        assert_eq!(c.vertices().len(), 4);
        assert_eq!(c.edges().iter().find(|x| x.id == EdgeId(3)).unwrap().ends, (VertexId(0), VertexId(4)));
        let back = split_sketch(&c, &rec).unwrap();
        let s = star();
        assert_eq!((back.vertices(), back.edges(), back.matrix()), (s.vertices(), s.edges(), s.matrix()));
        for (v, r) in s.rotation() {
            assert_eq!(canonical_cycle(&back.rotation()[v]), canonical_cycle(r));
        }
    }

    #[test]
    fn odd_edge_and_loop_refused() {
        let mut s = star();
        s.parity.set(0, 3, true);
        assert_eq!(contract_even_edge(&s, EdgeId(0), VertexId(0)), Err(RedrawError::ContractOddEdge(EdgeId(0))));
        let g = Multigraph::from_pairs(1, &[(0, 0)]).unwrap();
        let rot = BTreeMap::from([(VertexId(0), vec![end(0, Side::Start), end(0, Side::End)])]);
        let s = ParitySketch::new(g.vertices().to_vec(), g.edges().to_vec(), rot, ParityMatrix::zeros(1));
        assert_eq!(contract_even_edge(&s, EdgeId(0), VertexId(0)), Err(RedrawError::ContractLoop(EdgeId(0))));
    }

    #[test]
    fn split_vertex_restores_rotation() {
        let s = star();
        let (c, rec) = contract_even_edge(&s, EdgeId(0), VertexId(0)).unwrap();
        let g = Multigraph::new(c.vertices().to_vec(), c.edges().to_vec()).unwrap();
        let merged = Drawing::from_rotation_system(g, c.rotation()).unwrap();
        let back = split_vertex(&merged, &rec).unwrap();
        assert!(back.is_valid());
        let want: BTreeMap<_, _> = s
            .rotation()
            .iter()
            .map(|(v, r)| (*v, canonical_cycle(r)))
            .collect();
        let got: BTreeMap<_, _> = back.rotation_system().iter().map(|(v, r)| (*v, canonical_cycle(r))).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn split_rejects_foreign_blocks() {
        let (c, mut rec) = contract_even_edge(&star(), EdgeId(0), VertexId(0)).unwrap();
        rec.kept_block.swap(0, 1);
        assert_eq!(split_sketch(&c, &rec), Err(RedrawError::InconsistentSplit(VertexId(0))));
    }

    fn canonical_cycle(r: &[Ending]) -> Vec<Ending> {
        let mut r = r.to_vec();
        if let Some(p) = (0..r.len()).min_by_key(|&i| r[i]) {
            r.rotate_left(p);
        }
        r
    }
}
