use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generate::random_planar_drawing;
use crate::bounds::{audit_drawing, mk_upper, modd_upper, BoundReport};
use crate::drawing::{DartId, Drawing, NodeKind};
use crate::graph::{EdgeId, VertexId};
use crate::stats::PlanarityMode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Moves per restart.
    pub iterations: usize,
    pub restarts: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { iterations: 400, restarts: 8, time_limit: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub restarts: usize,
    pub iterations: usize,
    pub insertions: usize,
    pub kicks: usize,
    /// False if the budget ran out before reaching the target.
    pub reached_target: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub best: Drawing,
    pub edges: usize,
    pub modd_upper: u64,
    pub mk_upper: u64,
    pub report: BoundReport,
    pub stats: SearchStats,
}

/// A way to add edge `u v`: leave `u` before dart `from`, cross the
/// segments of `crossed` in order, arrive at `v` before dart `to`.
#[derive(Clone, Debug)]
struct Route {
    from: DartId,
    crossed: Vec<DartId>,
    to: DartId,
}

/// All routes from `u` to `v` crossing at most `limit` segments, of distinct
/// edges that are each crossed oddly by fewer than `k` edges so far.
fn routes(d: &Drawing, u: VertexId, v: VertexId, k: usize, odd: &[usize], limit: usize) -> Vec<Route> {
    let faces = d.faces();
    let mut face_of = vec![0; d.darts().len()];
    for (i, f) in faces.iter().enumerate() {
        for &x in f {
            face_of[x] = i;
        }
    }
    let at = |x: DartId, w: VertexId| d.node(d.dart(x).node).kind == NodeKind::Vertex(w);
    let edge_idx = |x: DartId| d.graph().edge_index(d.dart(x).edge).unwrap();
    let mut out = Vec::new();
    let mut stack: Vec<(DartId, usize, Vec<DartId>)> =
        (0..d.darts().len()).filter(|&x| at(x, u)).map(|x| (x, face_of[x], Vec::new())).collect();
    while let Some((from, face, crossed)) = stack.pop() {
        for &to in &faces[face] {
            if at(to, v) {
                out.push(Route { from, crossed: crossed.clone(), to });
            }
        }
        if crossed.len() == limit {
            continue;
        }
        for &c in &faces[face] {
            let e = edge_idx(c);
            if odd[e] >= k || crossed.iter().any(|&y| edge_idx(y) == e) {
                continue;
            }
            let mut next = crossed.clone();
            next.push(c);
            stack.push((from, face_of[d.dart(c).twin], next));
        }
    }
    out
}

fn odd_degrees(d: &Drawing) -> Vec<usize> {
    d.crossing_stats().odd_degree.values().copied().collect()
}

/// Stochastic local search for a dense k-odd-plane drawing on `n` vertices.
/// Each step adds the missing edge with the cheapest route (fewest
/// crossings, random among ties); when nothing fits, a random edge is
/// deleted. Restarts begin from fresh random trees.
pub fn extremal_search(k: usize, n: u32, budget: &SearchBudget, seed: u64) -> SearchResult {
    let start = Instant::now();
    let n64 = u64::from(n);
    let target = modd_upper(k as u64, n64).min(n64 * n64.saturating_sub(1) / 2) as usize;
    let out_of_time = || budget.time_limit.is_some_and(|l| start.elapsed() > l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Drawing> = None;
    let mut stats =
        SearchStats { restarts: 0, iterations: 0, insertions: 0, kicks: 0, reached_target: false };

    'restarts: for _ in 0..budget.restarts.max(1) {
        stats.restarts += 1;
        let mut d = random_planar_drawing(n, 0, rng.gen());
        for _ in 0..budget.iterations {
            if out_of_time() {
                break 'restarts;
            }
            stats.iterations += 1;
            if best.as_ref().is_none_or(|b| d.edge_count() > b.edge_count()) {
                best = Some(d.clone());
            }
            if d.edge_count() >= target {
                stats.reached_target = true;
                break 'restarts;
            }
            let odd = odd_degrees(&d);
            let mut missing: Vec<(VertexId, VertexId)> = Vec::new();
            let vs = d.graph().vertices();
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    if !d.graph().has_edge_between(a, b) {
                        missing.push((a, b));
                    }
                }
            }
            let mut cheapest: Vec<Route> = Vec::new();
            let mut cost = usize::MAX;
            for &(a, b) in &missing {
                for r in routes(&d, a, b, k, &odd, k.min(cost)) {
                    if r.crossed.len() < cost {
                        cost = r.crossed.len();
                        cheapest.clear();
                    }
                    if r.crossed.len() == cost {
                        cheapest.push(r);
                    }
                }
            }
            if let Some(r) = cheapest.choose(&mut rng) {
                let id = EdgeId(d.graph().max_edge_id().map_or(0, |e| e.0 + 1));
                d = d.insert_routed_edge(id, r.from, &r.crossed, r.to).expect("route endpoints are vertices");
                debug_assert!(d.is_k_class(k, PlanarityMode::OddPlane));
                stats.insertions += 1;
            } else {
                let victim = d.graph().edges().choose(&mut rng).expect("tree has edges").id;
                d = d.remove_edges(&BTreeSet::from([victim])).expect("edge exists");
                stats.kicks += 1;
            }
        }
        if best.as_ref().is_none_or(|b| d.edge_count() > b.edge_count()) {
            best = Some(d);
        }
    }
    let best = best.expect("at least one restart");
    SearchResult {
        edges: best.edge_count(),
        modd_upper: modd_upper(k as u64, n64),
        mk_upper: mk_upper(k as u64, n64).value,
        report: audit_drawing(&best, k as u64),
        best,
        stats,
    }
}
