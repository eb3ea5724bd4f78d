use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::drawing::{Dart, Drawing, Node, NodeKind};
use crate::error::OracleError;
use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_crossings: usize,
    /// Planarization candidates (pair multiset plus crossing orders) examined.
    pub max_candidates: usize,
    pub time_limit: Option<Duration>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl EnumerationBudget {
    pub fn crossings(max_crossings: usize) -> Self {
        EnumerationBudget { max_crossings, max_candidates: 5_000_000, time_limit: None, threads: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct drawings in order of discovery.
    pub drawings: Vec<Drawing>,
    /// False when the budget ran out first.
    pub complete: bool,
    pub candidates: usize,
}

/// Shared budget accounting for possibly concurrent enumerations.
pub(crate) struct Meter {
    start: Instant,
    limit: Option<Duration>,
    max: usize,
    used: AtomicUsize,
}

impl Meter {
    pub fn new(b: &EnumerationBudget) -> Meter {
        Meter { start: Instant::now(), limit: b.time_limit, max: b.max_candidates, used: AtomicUsize::new(0) }
    }

    /// Charges one candidate; false once the budget is gone.
    pub fn charge(&self) -> bool {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        used <= self.max && self.limit.is_none_or(|l| self.start.elapsed() <= l)
    }

    pub fn used(&self) -> usize {
        self.used.load(Ordering::Relaxed).min(self.max)
    }
}

/// Unordered pairs of distinct edge indices, lexicographic.
pub(crate) fn edge_pairs(g: &Multigraph) -> Vec<(usize, usize)> {
    let m = g.edge_count();
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

/// Multisets of `c` pairs as nondecreasing index sequences, lexicographic.
pub(crate) fn multisets(pairs: usize, c: usize) -> Vec<Vec<usize>> {
    fn rec(pairs: usize, c: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for p in from..pairs {
            cur.push(p);
            rec(pairs, c, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if c == 0 || pairs > 0 {
        rec(pairs, c, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Planarization skeleton: segment `s` runs from `seg[s].0` to `seg[s].1`
/// and owns darts `2s` and `2s + 1`.
struct Skeleton {
    kinds: Vec<NodeKind>,
    seg: Vec<(usize, usize)>,
    seg_edge: Vec<usize>,
    paths: Vec<Vec<usize>>,
    /// `(segment, endpoint already placed)` in insertion order.
    order: Vec<(usize, usize)>,
}

impl Skeleton {
    fn new(g: &Multigraph, crossings: &[(usize, usize)], along: &[Vec<usize>]) -> Skeleton {
        let n = g.vertex_count();
        let mut kinds: Vec<NodeKind> = g.vertices().iter().map(|&v| NodeKind::Vertex(v)).collect();
        kinds.extend(crossings.iter().map(|_| NodeKind::Crossing));
        let mut seg = Vec::new();
        let mut seg_edge = Vec::new();
        let mut paths = Vec::with_capacity(g.edge_count());
        for (ei, e) in g.edges().iter().enumerate() {
            let mut seq = vec![g.vertex_index(e.ends.0).unwrap()];
            seq.extend(along[ei].iter().map(|&x| n + x));
            seq.push(g.vertex_index(e.ends.1).unwrap());
            let mut path = Vec::new();
            for w in seq.windows(2) {
                path.push(seg.len());
                seg.push((w[0], w[1]));
                seg_edge.push(ei);
            }
            paths.push(path);
        }
        let mut incident = vec![Vec::new(); kinds.len()];
        for (s, &(a, b)) in seg.iter().enumerate() {
            incident[a].push(s);
            incident[b].push(s);
        }
        let mut order = Vec::with_capacity(seg.len());
        let mut placed = vec![false; seg.len()];
        let mut seen = vec![false; kinds.len()];
        for root in 0..kinds.len() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &s in &incident[x] {
                    if placed[s] {
                        continue;
                    }
                    placed[s] = true;
                    order.push((s, x));
                    let (a, b) = seg[s];
                    let y = if a == x { b } else { a };
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        Skeleton { kinds, seg, seg_edge, paths, order }
    }

    fn dart_node(&self, d: usize) -> usize {
        let (a, b) = self.seg[d / 2];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn to_drawing(&self, g: &Multigraph, rot: &[Vec<usize>], edge_ids: &[crate::graph::EdgeId]) -> Drawing {
        let nodes = self.kinds.iter().zip(rot).map(|(&kind, r)| Node { kind, rotation: r.clone() }).collect();
        let darts = (0..2 * self.seg.len())
            .map(|d| Dart { node: self.dart_node(d), twin: d ^ 1, edge: edge_ids[self.seg_edge[d / 2]] })
            .collect();
        let paths = self.paths.iter().map(|p| p.iter().map(|&s| 2 * s).collect()).collect();
        let d = Drawing::from_parts(g.clone(), nodes, darts, paths).canonical();
        debug_assert!(d.is_valid(), "{:?}", d.validate());
        d
    }
}

/// Depth-first search over planar rotation systems of one skeleton.
struct Embedder<'a> {
    sk: &'a Skeleton,
    rot: Vec<Vec<usize>>,
}

impl Embedder<'_> {
    fn alternating(&self, x: usize) -> bool {
        if self.sk.kinds[x] != NodeKind::Crossing || self.rot[x].len() < 4 {
            return true;
        }
        let r = &self.rot[x];
        self.sk.seg_edge[r[0] / 2] == self.sk.seg_edge[r[2] / 2]
    }

    /// Face label of every placed dart.
    fn faces(&self, placed: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; 2 * self.sk.seg.len()];
        for r in &self.rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut face = vec![usize::MAX; 2 * self.sk.seg.len()];
        let mut next = 0;
        for &(s, _) in &self.sk.order[..placed] {
            for start in [2 * s, 2 * s + 1] {
                if face[start] != usize::MAX {
                    continue;
                }
                let mut d = start;
                while face[d] == usize::MAX {
                    face[d] = next;
                    let t = d ^ 1;
                    let r = &self.rot[self.sk.dart_node(t)];
                    d = r[(pos[t] + 1) % r.len()];
                }
                next += 1;
            }
        }
        face
    }

    fn run(&mut self, i: usize, emit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>) -> ControlFlow<()> {
        if i == self.sk.order.len() {
            return emit(&self.rot);
        }
        let (s, x) = self.sk.order[i];
        let (a, b) = self.sk.seg[s];
        let y = if a == x { b } else { a };
        let (dx, dy) = if a == x { (2 * s, 2 * s + 1) } else { (2 * s + 1, 2 * s) };
        if self.rot[y].is_empty() {
            for p in 0..self.rot[x].len().max(1) {
                self.rot[x].insert(p, dx);
                self.rot[y].push(dy);
                if self.alternating(x) {
                    self.run(i + 1, emit)?;
                }
                self.rot[y].pop();
                self.rot[x].remove(p);
            }
            return ControlFlow::Continue(());
        }
        let face = self.faces(i);
        let (rx, ry) = (self.rot[x].clone(), self.rot[y].clone());
        for (px, &q) in rx.iter().enumerate() {
            for (py, &r) in ry.iter().enumerate() {
                if face[q] != face[r] {
                    continue;
                }
                self.rot[x].insert(px, dx);
                self.rot[y].insert(py, dy);
                if self.alternating(x) && self.alternating(y) {
                    self.run(i + 1, emit)?;
                }
                self.rot[y].remove(py);
                self.rot[x].remove(px);
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `emit` on every drawing realizing the crossing multiset `ms` (pair
/// indices into `pairs`), over all crossing orders and embeddings. Drawings
/// may repeat.
pub(crate) fn realize(
    g: &Multigraph,
    pairs: &[(usize, usize)],
    ms: &[usize],
    meter: &Meter,
    emit: &mut dyn FnMut(Drawing) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, OracleError> {
    let crossings: Vec<(usize, usize)> = ms.iter().map(|&p| pairs[p]).collect();
    let mut along: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (x, &(a, b)) in crossings.iter().enumerate() {
        along[a].push(x);
        along[b].push(x);
    }
    let edge_ids: Vec<_> = g.edges().iter().map(|e| e.id).collect();
    loop {
        if !meter.charge() {
            return Err(OracleError::BudgetExceeded);
        }
        let sk = Skeleton::new(g, &crossings, &along);
        let mut emb = Embedder { sk: &sk, rot: vec![Vec::new(); sk.kinds.len()] };
        let flow = emb.run(0, &mut |rot| emit(sk.to_drawing(g, rot, &edge_ids)));
        if flow.is_break() {
            return Ok(flow);
        }
        // advance the per-edge orders like an odometer
        let mut advanced = false;
        for list in along.iter_mut() {
            if next_permutation(list) {
                advanced = true;
                break;
            }
            list.sort_unstable();
        }
        if !advanced {
            return Ok(ControlFlow::Continue(()));
        }
    }
}

/// All drawings of a simple graph with at most `budget.max_crossings`
/// crossings, up to orientation-preserving homeomorphism. Mirror images are
/// kept as distinct drawings.
pub fn enumerate_drawings(g: &Multigraph, budget: &EnumerationBudget) -> Result<Enumeration, OracleError> {
    let mut drawings = Vec::new();
    let (complete, candidates) = stream(g, budget, &mut |d| {
        drawings.push(d);
        ControlFlow::Continue(())
    })?;
    Ok(Enumeration { drawings, complete, candidates })
}

/// Streams distinct drawings; returns whether the enumeration finished
/// within budget. Stops early if `visit` breaks.
pub fn for_each_drawing(
    g: &Multigraph,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(Drawing) -> ControlFlow<()>,
) -> Result<bool, OracleError> {
    Ok(stream(g, budget, &mut visit)?.0)
}

fn stream(
    g: &Multigraph,
    budget: &EnumerationBudget,
    visit: &mut dyn FnMut(Drawing) -> ControlFlow<()>,
) -> Result<(bool, usize), OracleError> {
    if !g.is_simple() {
        return Err(OracleError::NotSimple);
    }
    let meter = Meter::new(budget);
    let pairs = edge_pairs(g);
    let mut seen = HashSet::new();
    for c in 0..=budget.max_crossings {
        for ms in multisets(pairs.len(), c) {
            let r = realize(g, &pairs, &ms, &meter, &mut |d| {
                if seen.insert(d.clone()) {
                    visit(d)
                } else {
                    ControlFlow::Continue(())
                }
            });
            match r {
                Ok(ControlFlow::Break(())) => return Ok((true, meter.used())),
                Ok(ControlFlow::Continue(())) => {}
                Err(OracleError::BudgetExceeded) => return Ok((false, meter.used())),
                Err(e) => return Err(e),
            }
        }
    }
    Ok((true, meter.used()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(0, 0), vec![Vec::<usize>::new()]);
        assert!(multisets(0, 1).is_empty());
    }

    #[test]
    fn permutations_cycle() {
        let mut v = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
