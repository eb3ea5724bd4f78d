use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::enumerate::{for_each_drawing, EnumerationBudget};
use crate::drawing::{DartId, Drawing, Ending, NodeKind, Point, Side};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::stats::PlanarityMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DrawingModel {
    /// Vertices in random order on a convex curve, edges straight.
    Convex,
    /// A planar drawing (or the convex one if none is found) followed by
    /// `moves` finger moves; every pair crosses evenly if the start is planar.
    PerturbedEven { moves: usize },
}

/// One finger move, in dart ids of the drawing it was applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerMove {
    pub pusher: DartId,
    pub pushed: DartId,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded drawing of a simple graph. Deterministic in `(g, seed, model)`.
pub fn random_drawing(g: &Multigraph, seed: u64, model: DrawingModel) -> Drawing {
    match model {
        DrawingModel::Convex => convex_drawing(g, seed),
        DrawingModel::PerturbedEven { moves } => {
            let base = planar_drawing(g).unwrap_or_else(|| convex_drawing(g, seed));
            perturb_even(&base, moves, seed).0
        }
    }
}

/// Straight-line drawing with the vertices in shuffled order on the
/// parabola `y = x^2`. The x coordinates carry a seeded jitter; a degenerate
/// placement is retried with a derived seed.
pub fn convex_drawing(g: &Multigraph, seed: u64) -> Drawing {
    let mut r = rng(seed);
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(&mut r);
    for _ in 0..256 {
        let mut coords = vec![Point::new(0, 0); order.len()];
        for (slot, &v) in order.iter().enumerate() {
            let x = 1024 * slot as i64 + r.gen_range(0..512);
            coords[v] = Point::new(x, x * x);
        }
        if let Ok(d) = Drawing::from_straight_line(g.clone(), &coords) {
            return d;
        }
    }
    panic!("no general-position placement found for seed {seed}");
}

/// First crossing-free drawing found by the enumerator.
pub fn planar_drawing(g: &Multigraph) -> Option<Drawing> {
    let mut found = None;
    for_each_drawing(g, &EnumerationBudget::crossings(0), |d| {
        found = Some(d);
        ControlFlow::Break(())
    })
    .ok()?;
    found
}

/// Applies up to `moves` seeded finger moves. Each pushes a segment across
/// another segment of a different edge on the same face, adding two
/// crossings and leaving every parity unchanged.
pub fn perturb_even(base: &Drawing, moves: usize, seed: u64) -> (Drawing, Vec<FingerMove>) {
    let mut r = rng(seed ^ 0x5eed_f1d9);
    let mut d = base.clone();
    let mut log = Vec::with_capacity(moves);
    for _ in 0..moves {
        let faces: Vec<Vec<DartId>> = d
            .faces()
            .into_iter()
            .filter(|f| f.iter().any(|&x| d.dart(x).edge != d.dart(f[0]).edge))
            .collect();
        let Some(face) = faces.choose(&mut r) else { break };
        let pusher = *face.choose(&mut r).unwrap();
        let others: Vec<DartId> = face.iter().copied().filter(|&y| d.dart(y).edge != d.dart(pusher).edge).collect();
        let pushed = *others.choose(&mut r).unwrap();
        log.push(FingerMove { pusher, pushed });
        d = d.add_double_crossing(pusher, pushed);
    }
    (d, log)
}

/// Re-applies recorded finger moves.
pub fn replay_moves(base: &Drawing, moves: &[FingerMove]) -> Drawing {
    moves.iter().fold(base.clone(), |d, m| d.add_double_crossing(m.pusher, m.pushed))
}

/// Simple graph with `m` edges chosen uniformly among the vertex pairs.
pub fn random_graph(n: u32, m: usize, seed: u64) -> Multigraph {
    let mut pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng(seed));
    pairs.truncate(m);
    pairs.sort_unstable();
    Multigraph::from_pairs(n, &pairs).expect("valid pairs")
}

/// Random plane drawing: a random tree with random rotations, then up to
/// `extra` chords, each inserted inside one face between two nonadjacent
/// vertices on it.
pub fn random_planar_drawing(n: u32, extra: usize, seed: u64) -> Drawing {
    let mut r = rng(seed);
    let pairs: Vec<(u32, u32)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
    let g = Multigraph::from_pairs(n, &pairs).expect("tree");
    let mut rotation: BTreeMap<VertexId, Vec<Ending>> = BTreeMap::new();
    for e in g.edges() {
        rotation.entry(e.ends.0).or_default().push(Ending::new(e.id, Side::Start));
        rotation.entry(e.ends.1).or_default().push(Ending::new(e.id, Side::End));
    }
    for list in rotation.values_mut() {
        list.shuffle(&mut r);
    }
    let mut d = Drawing::from_rotation_system(g, &rotation).expect("tree rotations are planar");
    for _ in 0..extra {
        match random_chord(&d, &mut r) {
            Some(next) => d = next,
            None => break,
        }
    }
    d
}

fn random_chord(d: &Drawing, r: &mut ChaCha8Rng) -> Option<Drawing> {
    let vertex_of = |x: DartId| match d.node(d.dart(x).node).kind {
        NodeKind::Vertex(v) => Some(v),
        NodeKind::Crossing => None,
    };
    let mut options = Vec::new();
    for face in d.faces() {
        for (i, &q) in face.iter().enumerate() {
            for &s in &face[i + 1..] {
                if let (Some(u), Some(v)) = (vertex_of(q), vertex_of(s)) {
                    if u != v && !d.graph().has_edge_between(u, v) {
                        options.push((q, s));
                    }
                }
            }
        }
    }
    let &(q, s) = options.choose(r)?;
    let id = EdgeId(d.graph().max_edge_id().map_or(0, |e| e.0 + 1));
    d.insert_routed_edge(id, q, &[], s).ok()
}

/// Convex drawing of a random graph, thinned until it is k-odd-plane by
/// repeatedly deleting an edge of largest odd degree (smallest id first),
/// then perturbed with `moves` finger moves.
pub fn k_odd_plane_drawing(n: u32, m: usize, k: usize, moves: usize, seed: u64) -> Drawing {
    let g = random_graph(n, m, seed);
    let mut d = convex_drawing(&g, seed);
    while !d.is_k_class(k, PlanarityMode::OddPlane) {
        let odd = d.crossing_stats().odd_degree;
        let worst = odd.iter().max_by_key(|(e, c)| (**c, std::cmp::Reverse(**e))).map(|(e, _)| *e).unwrap();
        d = d.remove_edges(&BTreeSet::from([worst])).expect("edge exists");
    }
    perturb_even(&d, moves, seed).0
}
