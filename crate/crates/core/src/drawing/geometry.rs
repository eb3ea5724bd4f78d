use std::cmp::Ordering;

use super::{Dart, DartId, Drawing, Node, NodeKind};
use crate::error::DrawingError;
use crate::graph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (acx, acy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    abx * acy - aby * acx
}

fn on_open_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0
        && p != a
        && p != b
        && (a.x.min(b.x)..=a.x.max(b.x)).contains(&p.x)
        && (a.y.min(b.y)..=a.y.max(b.y)).contains(&p.y)
}

/// Counterclockwise angular order from the positive x axis.
fn ccw_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |v: (i64, i64)| u8::from(!(v.1 > 0 || (v.1 == 0 && v.0 > 0)));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

/// Exact rational parameter `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Param {
    num: i128,
    den: i128,
}

impl Param {
    fn cmp(&self, o: &Param) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

impl Drawing {
    /// Planarization of a straight-line drawing with integer coordinates,
    /// `coords` aligned with `graph.vertices()`. Rejects loops, parallel
    /// edges, vertices on edge interiors and three edges through one point.
    pub fn from_straight_line(graph: Multigraph, coords: &[Point]) -> Result<Drawing, DrawingError> {
        let degenerate = |m: String| Err(DrawingError::Degenerate(m));
        if coords.len() != graph.vertex_count() {
            return degenerate("one coordinate per vertex required".into());
        }
        if !graph.is_simple() {
            return degenerate("straight-line drawings need a simple graph".into());
        }
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                if coords[i] == coords[j] {
                    return degenerate(format!("vertices {i} and {j} coincide"));
                }
            }
        }
        let ends: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .map(|e| (graph.vertex_index(e.ends.0).unwrap(), graph.vertex_index(e.ends.1).unwrap()))
            .collect();
        for (ei, &(a, b)) in ends.iter().enumerate() {
            for (vi, &p) in coords.iter().enumerate() {
                if on_open_segment(p, coords[a], coords[b]) {
                    return degenerate(format!("vertex {vi} lies on edge {}", graph.edges()[ei].id));
                }
            }
        }

        // crossings[e] = (parameter along e, crossing index)
        let mut along: Vec<Vec<(Param, usize)>> = vec![Vec::new(); ends.len()];
        let mut crossing_count = 0;
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                let (a, b) = ends[i];
                let (c, d) = ends[j];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let (p, q, r, s) = (coords[a], coords[b], coords[c], coords[d]);
                let o1 = orient(p, q, r);
                let o2 = orient(p, q, s);
                let o3 = orient(r, s, p);
                let o4 = orient(r, s, q);
                if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
                    let t = normalize(o3, o3 - o4);
                    let u = normalize(o1, o1 - o2);
                    along[i].push((t, crossing_count));
                    along[j].push((u, crossing_count));
                    crossing_count += 1;
                }
            }
        }
        for (ei, list) in along.iter_mut().enumerate() {
            list.sort_by(|x, y| x.0.cmp(&y.0));
            if list.windows(2).any(|w| w[0].0.cmp(&w[1].0) == Ordering::Equal) {
                return degenerate(format!("three edges meet at one point on edge {}", graph.edges()[ei].id));
            }
        }

        let n = graph.vertex_count();
        let mut nodes: Vec<Node> = graph
            .vertices()
            .iter()
            .map(|&v| Node { kind: NodeKind::Vertex(v), rotation: Vec::new() })
            .chain((0..crossing_count).map(|_| Node { kind: NodeKind::Crossing, rotation: Vec::new() }))
            .collect();
        let mut darts: Vec<Dart> = Vec::new();
        let mut dirs: Vec<(i64, i64)> = Vec::new();
        let mut paths = Vec::with_capacity(ends.len());
        for (ei, &(a, b)) in ends.iter().enumerate() {
            let id = graph.edges()[ei].id;
            let dir = (coords[b].x - coords[a].x, coords[b].y - coords[a].y);
            let mut seq = vec![a];
            seq.extend(along[ei].iter().map(|&(_, c)| n + c));
            seq.push(b);
            let mut path = Vec::new();
            for w in seq.windows(2) {
                let s = darts.len();
                darts.push(Dart { node: w[0], twin: s + 1, edge: id });
                darts.push(Dart { node: w[1], twin: s, edge: id });
                dirs.push(dir);
                dirs.push((-dir.0, -dir.1));
                nodes[w[0]].rotation.push(s);
                nodes[w[1]].rotation.push(s + 1);
                path.push(s);
            }
            paths.push(path);
        }
        for node in &mut nodes {
            // clockwise is the reverse of counterclockwise
            node.rotation.sort_by(|&x: &DartId, &y: &DartId| ccw_cmp(dirs[y], dirs[x]));
        }
        let d = Drawing { graph, nodes, darts, paths }.canonical();
        d.check()?;
        Ok(d)
    }
}

fn normalize(num: i128, den: i128) -> Param {
    if den < 0 {
        Param { num: -num, den: -den }
    } else {
        Param { num, den }
    }
}
