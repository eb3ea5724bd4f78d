use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::contract::{contract_even_edge, split_vertex, SplitRecord};
use super::lemma1::lemma1_redraw;
use super::sketch::OneVertexSketch;
use crate::drawing::Drawing;
use crate::error::RedrawError;
use crate::graph::{EdgeId, UnionFind, VertexId};
use crate::parity::ParitySketch;

/// Greedy forest in edge-id order: an edge joins if it links two trees and
/// crosses every edge already chosen evenly.
pub fn max_even_forest(sk: &ParitySketch) -> Vec<EdgeId> {
    let mut uf = UnionFind::new(sk.vertices().len());
    let vi = |v: VertexId| sk.vertices().binary_search(&v).unwrap();
    let mut chosen: Vec<usize> = Vec::new();
    for (i, e) in sk.edges().iter().enumerate() {
        if e.is_loop() || chosen.iter().any(|&j| sk.matrix().get(i, j)) {
            continue;
        }
        if uf.union(vi(e.ends.0), vi(e.ends.1)) {
            chosen.push(i);
        }
    }
    chosen.into_iter().map(|i| sk.edges()[i].id).collect()
}

/// Repeatedly smooths self-crossings until none remain. Crossings between
/// distinct edges are untouched.
pub fn remove_self_crossings(d: &Drawing) -> Drawing {
    let mut cur = d.clone();
    loop {
        let found = cur.crossing_nodes().find(|&x| {
            let (a, b) = cur.passes(x);
            a == b
        });
        let Some(x) = found else { break };
        cur = cur.smooth_self_crossing(x).expect("self-crossing node");
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTrace {
    /// Vertices of this forest component; the smallest is the root.
    pub vertices: Vec<VertexId>,
    /// Edges of G1 inside the component.
    pub edge_count: usize,
    pub tree: Vec<EdgeId>,
    /// Contractions in the order they were applied.
    pub splits: Vec<SplitRecord>,
    pub sketch: OneVertexSketch,
    /// One-vertex redrawing before the splits are undone.
    pub redrawn: Drawing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineTrace {
    pub k: usize,
    /// Input with self-crossings smoothed.
    pub input: Drawing,
    pub forest: Vec<EdgeId>,
    /// Edges crossing some forest edge oddly.
    pub removed: Vec<EdgeId>,
    pub g1: Drawing,
    pub components: Vec<ComponentTrace>,
    pub output: Drawing,
}

/// Full redrawing pipeline for a k-odd-plane drawing: drop the edges that
/// cross the even forest oddly, contract each tree to a point, redraw the
/// resulting loops, and split the trees back out. The output draws G1 with
/// the same rotation system, the same odd pairs, and every pair crossing at
/// most once.
pub fn theorem2_transform(d: &Drawing, k: usize) -> Result<PipelineTrace, RedrawError> {
    d.check()?;
    let stats = d.crossing_stats();
    if let Some((&edge, &degree)) = stats.odd_degree.iter().find(|(_, &c)| c > k) {
        return Err(RedrawError::NotKOddPlane { k, edge, degree });
    }
    let input = remove_self_crossings(d);
    let sk = ParitySketch::of(&input);
    let forest = max_even_forest(&sk);
    let fidx: Vec<usize> = forest.iter().map(|&e| sk.edge_index(e).unwrap()).collect();
    let removed: BTreeSet<EdgeId> = (0..sk.edges().len())
        .filter(|i| !fidx.contains(i) && fidx.iter().any(|&j| sk.matrix().get(*i, j)))
        .map(|i| sk.edges()[i].id)
        .collect();
    let g1 = input.remove_edges(&removed)?;
    let sk1 = ParitySketch::of(&g1);

    let mut groups: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    {
        let vs = sk1.vertices();
        let mut uf = UnionFind::new(vs.len());
        for &e in &forest {
            let edge = g1.graph().edge(e).unwrap();
            uf.union(vs.binary_search(&edge.ends.0).unwrap(), vs.binary_search(&edge.ends.1).unwrap());
        }
        for (i, &v) in vs.iter().enumerate() {
            let r = uf.find(i);
            groups.entry(vs[r]).or_default().push(v);
        }
    }

    let mut components = Vec::with_capacity(groups.len());
    let mut output = Drawing::empty();
    for (_, vertices) in groups {
        let comp = redraw_component(&sk1, &forest, vertices)?;
        let mut g4 = comp.redrawn.clone();
        for r in comp.splits.iter().rev() {
            g4 = split_vertex(&g4, r)?;
        }
        output = output.merge_disjoint(&g4)?;
        components.push(comp);
    }
    Ok(PipelineTrace {
        k,
        input,
        forest,
        removed: removed.into_iter().collect(),
        g1,
        components,
        output,
    })
}

fn redraw_component(
    sk1: &ParitySketch,
    forest: &[EdgeId],
    vertices: Vec<VertexId>,
) -> Result<ComponentTrace, RedrawError> {
    let mut sub = sk1.restrict(&vertices);
    let edge_count = sub.edges().len();
    let root = vertices[0];
    let tree: Vec<EdgeId> = sub.edges().iter().map(|e| e.id).filter(|e| forest.contains(e)).collect();

    // breadth-first from the root so every contraction merges into it
    let mut order = Vec::with_capacity(tree.len());
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &e in &tree {
            let edge = sub.edges()[sub.edge_index(e).unwrap()];
            if edge.touches(v) {
                let w = if edge.ends.0 == v { edge.ends.1 } else { edge.ends.0 };
                if seen.insert(w) {
                    order.push(e);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut splits = Vec::with_capacity(order.len());
    for e in order {
        let (next, rec) = contract_even_edge(&sub, e, root)?;
        sub = next;
        splits.push(rec);
    }
    let sketch = OneVertexSketch::from_parity_sketch(&sub)?;
    if !sketch.agrees_with(&sub) {
        return Err(RedrawError::MalformedSketch(format!(
            "contracted rotation at {root} disagrees with the crossing parities"
        )));
    }
    let redrawn = lemma1_redraw(&sketch);
    Ok(ComponentTrace { vertices, edge_count, tree, splits, sketch, redrawn })
}

/// Planar redrawing of a drawing in which every pair of edges crosses
/// evenly, keeping the rotation system.
pub fn hanani_tutte_embed(d: &Drawing) -> Result<Drawing, RedrawError> {
    if let Some(&(a, b)) = ParitySketch::of(d).odd_pairs().first() {
        return Err(RedrawError::OddPairPresent(a, b));
    }
    Ok(theorem2_transform(d, 0)?.output)
}
