use std::collections::BTreeMap;

use super::sketch::{interleave, OneVertexSketch};
use crate::drawing::{Dart, DartId, Drawing, Node, NodeId, NodeKind, Side};
use crate::graph::{Edge, Multigraph};

// Slots of a crossing node, clockwise. The radial pass owns OUT and IN,
// the arc pass owns CW and CCW.
const OUT: usize = 0;
const CW: usize = 1;
const IN: usize = 2;
const CCW: usize = 3;

#[derive(Clone, Copy)]
enum Phase {
    Out,
    Arc,
    In,
}

impl Phase {
    fn forward(self) -> usize {
        match self {
            Phase::Out => OUT,
            Phase::Arc => CW,
            Phase::In => IN,
        }
    }

    fn backward(self) -> usize {
        match self {
            Phase::Out => IN,
            Phase::Arc => CCW,
            Phase::In => OUT,
        }
    }
}

/// Redraws a one-vertex sketch so that the loops keep the given rotation and
/// two loops cross (exactly once) iff their endings interleave.
///
/// Loops are inserted in reverse of the minimal-loop removal order. Each is
/// drawn as two radial segments joined by a clockwise arc, and later loops
/// get smaller arcs. A radial of loop `a` meets the arc of a later loop `b`
/// exactly when that ending of `a` falls inside `b`'s interval.
pub fn lemma1_redraw(s: &OneVertexSketch) -> Drawing {
    let v = s.vertex();
    let loops = s.loops();
    let m = loops.len();
    let iv = s.intervals();
    let lin = s.linear();
    let mut ins = vec![0; m];
    for (k, e) in s.removal_order().iter().rev().enumerate() {
        ins[s.loop_index(*e).unwrap()] = k;
    }

    let mut xid: BTreeMap<(usize, usize), NodeId> = BTreeMap::new();
    for a in 0..m {
        for b in 0..m {
            if ins[a] < ins[b] && interleave(iv[a], iv[b]) {
                let id = xid.len() + 1;
                xid.insert((a, b), id);
            }
        }
    }
    let inside = |p: usize, b: usize| iv[b].0 < p && p < iv[b].1;

    let mut xrot = vec![[usize::MAX; 4]; xid.len() + 1];
    let mut darts: Vec<Dart> = Vec::new();
    let mut paths = Vec::with_capacity(m);
    let mut first = vec![0; m];
    let mut last = vec![0; m];
    for i in 0..m {
        let mut out: Vec<usize> = (0..m).filter(|&b| xid.contains_key(&(i, b)) && inside(iv[i].0, b)).collect();
        out.sort_by_key(|&b| std::cmp::Reverse(ins[b]));
        let mut arc: Vec<(usize, usize)> = (0..m)
            .filter(|&a| xid.contains_key(&(a, i)))
            .map(|a| (if inside(iv[a].0, i) { iv[a].0 } else { iv[a].1 }, a))
            .collect();
        arc.sort_unstable();
        let mut inward: Vec<usize> = (0..m).filter(|&b| xid.contains_key(&(i, b)) && inside(iv[i].1, b)).collect();
        inward.sort_by_key(|&b| ins[b]);

        let mut seq: Vec<(NodeId, Option<Phase>)> = vec![(0, None)];
        seq.extend(out.iter().map(|&b| (xid[&(i, b)], Some(Phase::Out))));
        seq.extend(arc.iter().map(|&(_, a)| (xid[&(a, i)], Some(Phase::Arc))));
        seq.extend(inward.iter().map(|&b| (xid[&(i, b)], Some(Phase::In))));
        seq.push((0, None));

        let mut forward = Vec::with_capacity(seq.len() - 1);
        for w in seq.windows(2) {
            let f = darts.len();
            darts.push(Dart { node: w[0].0, twin: f + 1, edge: loops[i] });
            darts.push(Dart { node: w[1].0, twin: f, edge: loops[i] });
            if let Some(p) = w[0].1 {
                xrot[w[0].0][p.forward()] = f;
            }
            if let Some(p) = w[1].1 {
                xrot[w[1].0][p.backward()] = f + 1;
            }
            forward.push(f);
        }
        first[i] = forward[0];
        last[i] = forward[forward.len() - 1] + 1;
        let path: Vec<DartId> = if lin[iv[i].0].side == Side::Start {
            forward
        } else {
            forward.iter().rev().map(|&f| f + 1).collect()
        };
        paths.push(path);
    }

    let vertex_rotation = s
        .rotation()
        .iter()
        .map(|x| {
            let i = s.loop_index(x.edge).unwrap();
            if lin[iv[i].0] == *x {
                first[i]
            } else {
                last[i]
            }
        })
        .collect();
    let mut nodes = vec![Node { kind: NodeKind::Vertex(v), rotation: vertex_rotation }];
    nodes.extend(xrot[1..].iter().map(|r| Node { kind: NodeKind::Crossing, rotation: r.to_vec() }));
    let graph = Multigraph::new(vec![v], loops.iter().map(|&id| Edge { id, ends: (v, v) }).collect())
        .expect("sketch loops are distinct");
    let d = Drawing::from_parts(graph, nodes, darts, paths).canonical();
    debug_assert!(d.is_valid(), "{:?}", d.validate());
    d
}
