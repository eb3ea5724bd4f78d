//! Straight-line and polyline layouts of a planarization, and SVG output.
//!
//! The first attempt pins the outer face on a regular polygon and places
//! every other node at the average of its neighbours. If the result does not
//! reproduce the rotations (or segments touch), the component is drawn
//! again on a refinement: every segment is subdivided twice and every face
//! is triangulated with a ring of corner points around a centre. That
//! refinement is a simple triangulation, so its barycentric layout is
//! planar, and edges come out as polylines through the subdivision points.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::drawing::{DartId, Drawing, NodeKind};
use crate::error::IoError;
use crate::graph::UnionFind;

pub type Pos = (f64, f64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayoutMethod {
    Barycentric,
    Routed,
}

#[derive(Clone, Debug)]
pub struct Layout {
    /// `Routed` if any component needed the fallback.
    pub method: LayoutMethod,
    /// Node positions, y axis pointing up.
    pub nodes: Vec<Pos>,
    /// One polyline per edge, in graph edge order.
    pub edges: Vec<Vec<Pos>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Width and height of the picture in pixels.
    pub size: u32,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { size: 640, labels: true }
    }
}

struct Part {
    nodes: Vec<usize>,
    faces: Vec<Vec<DartId>>,
}

fn parts(d: &Drawing) -> Vec<Part> {
    let mut uf = UnionFind::new(d.nodes().len());
    for x in d.darts() {
        uf.union(x.node, d.dart(x.twin).node);
    }
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out: Vec<Part> = Vec::new();
    let mut part_of = Vec::with_capacity(d.nodes().len());
    for v in 0..d.nodes().len() {
        let r = uf.find(v);
        let i = *by_root.entry(r).or_insert_with(|| {
            out.push(Part { nodes: Vec::new(), faces: Vec::new() });
            out.len() - 1
        });
        out[i].nodes.push(v);
        part_of.push(i);
    }
    for f in d.faces() {
        out[part_of[d.dart(f[0]).node]].faces.push(f);
    }
    out
}

/// Largest face, ties to the one holding the smallest dart.
fn outer_face(faces: &[Vec<DartId>]) -> usize {
    let key = |f: &Vec<DartId>| (std::cmp::Reverse(f.len()), *f.iter().min().unwrap());
    (0..faces.len()).min_by_key(|&i| key(&faces[i])).unwrap()
}

/// Solves the barycentric system: every free point is the mean of its
/// neighbours (with multiplicity). Conjugate gradients on the reduced
/// Laplacian, which is positive definite when every component of free
/// points touches a pinned one.
fn barycentric(adj: &[Vec<usize>], pinned: &[Option<Pos>]) -> Vec<Pos> {
    let n = adj.len();
    let free: Vec<usize> = (0..n).filter(|&i| pinned[i].is_none()).collect();
    let mut slot = vec![usize::MAX; n];
    for (k, &i) in free.iter().enumerate() {
        slot[i] = k;
    }
    let apply = |x: &[f64], y: &mut [f64]| {
        for (k, &i) in free.iter().enumerate() {
            let mut s = adj[i].len() as f64 * x[k];
            for &j in &adj[i] {
                if slot[j] != usize::MAX {
                    s -= x[slot[j]];
                }
            }
            y[k] = s;
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut out: Vec<Pos> = pinned.iter().map(|p| p.unwrap_or((0.0, 0.0))).collect();
    for axis in 0..2 {
        let coord = |p: Pos| if axis == 0 { p.0 } else { p.1 };
        let mut b = vec![0.0; free.len()];
        for (k, &i) in free.iter().enumerate() {
            for &j in &adj[i] {
                if let Some(p) = pinned[j] {
                    b[k] += coord(p);
                }
            }
        }
        let mut x = vec![0.0; free.len()];
        let mut r = b.clone();
        let mut p = r.clone();
        let mut ap = vec![0.0; free.len()];
        let mut rr = dot(&r, &r);
        let stop = 1e-26 * dot(&b, &b).max(1.0);
        for _ in 0..(20 * free.len() + 100) {
            if rr <= stop {
                break;
            }
            apply(&p, &mut ap);
            let alpha = rr / dot(&p, &ap);
            for k in 0..x.len() {
                x[k] += alpha * p[k];
                r[k] -= alpha * ap[k];
            }
            let next = dot(&r, &r);
            for k in 0..p.len() {
                p[k] = r[k] + next / rr * p[k];
            }
            rr = next;
        }
        for (k, &i) in free.iter().enumerate() {
            if axis == 0 {
                out[i].0 = x[k];
            } else {
                out[i].1 = x[k];
            }
        }
    }
    out
}

fn orient(a: Pos, b: Pos, c: Pos) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn dist_to_segment(p: Pos, a: Pos, b: Pos) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    ((a.0 + t * dx - p.0).powi(2) + (a.1 + t * dy - p.1).powi(2)).sqrt()
}

/// Whether the straight-line picture is an embedding with the given
/// clockwise rotations: points distinct, segments meet only at shared
/// endpoints, and the directions at each listed point turn clockwise once
/// around in rotation order.
fn faithful(points: &[Pos], segments: &[(usize, usize)], rotations: &[(usize, Vec<usize>)]) -> bool {
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for p in points {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    let eps = 1e-9 * (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-300);
    for (i, p) in points.iter().enumerate() {
        if !p.0.is_finite() || !p.1.is_finite() {
            return false;
        }
        if points[i + 1..].iter().any(|q| (p.0 - q.0).hypot(p.1 - q.1) < eps) {
            return false;
        }
    }
    for (c, around) in rotations {
        if around.len() < 2 {
            continue;
        }
        let o = points[*c];
        let angle: Vec<f64> = around.iter().map(|&q| (points[q].1 - o.1).atan2(points[q].0 - o.0)).collect();
        let mut total = 0.0;
        for i in 0..angle.len() {
            let turn = (angle[i] - angle[(i + 1) % angle.len()]).rem_euclid(TAU);
            if !(1e-9..=TAU - 1e-9).contains(&turn) {
                return false;
            }
            total += turn;
        }
        if (total - TAU).abs() > 1e-6 {
            return false;
        }
    }
    for (i, &(a, b)) in segments.iter().enumerate() {
        if a == b {
            return false;
        }
        for &(c, e) in &segments[i + 1..] {
            let shared = [a, b].iter().filter(|&&x| x == c || x == e).count();
            match shared {
                2 => return false,
                1 => {
                    let s = if a == c || a == e { a } else { b };
                    let p = if s == a { b } else { a };
                    let q = if s == c { e } else { c };
                    let (u, v) = (points[s], points[p]);
                    let w = points[q];
                    let cross = orient(u, v, w);
                    let along = (v.0 - u.0) * (w.0 - u.0) + (v.1 - u.1) * (w.1 - u.1);
                    let scale = (v.0 - u.0).hypot(v.1 - u.1) * (w.0 - u.0).hypot(w.1 - u.1);
                    if cross.abs() <= 1e-12 * scale && along > 0.0 {
                        return false;
                    }
                }
                _ => {
                    let (p1, p2, q1, q2) = (points[a], points[b], points[c], points[e]);
                    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
                    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
                    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                        return false;
                    }
                    if dist_to_segment(p1, q1, q2) < eps
                        || dist_to_segment(p2, q1, q2) < eps
                        || dist_to_segment(q1, p1, p2) < eps
                        || dist_to_segment(q2, p1, p2) < eps
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Local layout of one part: node positions and, per dart, the bend points
/// met when walking along it.
struct PartLayout {
    nodes: Vec<(usize, Pos)>,
    bends: Vec<(DartId, Vec<Pos>)>,
    method: LayoutMethod,
}

fn straight(d: &Drawing, part: &Part) -> Option<PartLayout> {
    let outer = &part.faces[outer_face(&part.faces)];
    let ring: Vec<usize> = outer.iter().map(|&x| d.dart(x).node).collect();
    let mut seen = ring.clone();
    seen.sort_unstable();
    seen.dedup();
    if ring.len() < 3 || seen.len() != ring.len() {
        return None;
    }
    let local: BTreeMap<usize, usize> = part.nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); part.nodes.len()];
    let mut segments = Vec::new();
    let mut rotations = Vec::new();
    for (i, &v) in part.nodes.iter().enumerate() {
        let mut around = Vec::new();
        for &x in &d.node(v).rotation {
            let w = local[&d.dart(d.dart(x).twin).node];
            if w == i {
                return None;
            }
            adj[i].push(w);
            around.push(w);
            if x < d.dart(x).twin {
                segments.push((i, w));
            }
        }
        rotations.push((i, around));
    }
    // Walking the outer face keeps it on the left, so the boundary goes
    // clockwise around the rest of the picture.
    let mut pinned = vec![None; part.nodes.len()];
    for (j, &v) in ring.iter().enumerate() {
        let a = -TAU * j as f64 / ring.len() as f64;
        pinned[local[&v]] = Some((a.cos(), a.sin()));
    }
    let pos = barycentric(&adj, &pinned);
    faithful(&pos, &segments, &rotations).then(|| PartLayout {
        nodes: part.nodes.iter().enumerate().map(|(i, &v)| (v, pos[i])).collect(),
        bends: Vec::new(),
        method: LayoutMethod::Barycentric,
    })
}

fn routed(d: &Drawing, part: &Part) -> Result<PartLayout, IoError> {
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &v) in part.nodes.iter().enumerate() {
        local.insert(v, i);
    }
    let mut count = part.nodes.len();
    // First subdivision point after leaving along each dart.
    let mut sub: BTreeMap<DartId, usize> = BTreeMap::new();
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    for &v in &part.nodes {
        for &x in &d.node(v).rotation {
            let y = d.dart(x).twin;
            if x < y {
                let (s1, s2) = (count, count + 1);
                count += 2;
                sub.insert(x, s1);
                sub.insert(y, s2);
                pieces.push((local[&v], s1));
                pieces.push((s1, s2));
                pieces.push((s2, local[&d.dart(y).node]));
            }
        }
    }
    let corner_count = count;
    let mut edges: Vec<(usize, usize)> = pieces.clone();
    let mut outer_pins = None;
    let outer = outer_face(&part.faces);
    for (fi, f) in part.faces.iter().enumerate() {
        let walk: Vec<usize> =
            f.iter().flat_map(|&x| [local[&d.dart(x).node], sub[&x], sub[&d.dart(x).twin]]).collect();
        let ring0 = count;
        let centre = count + walk.len();
        count = centre + 1;
        for i in 0..walk.len() {
            let r = ring0 + i;
            let r_next = ring0 + (i + 1) % walk.len();
            edges.push((r, walk[i]));
            edges.push((r, walk[(i + 1) % walk.len()]));
            edges.push((r, r_next));
            edges.push((r, centre));
        }
        if fi == outer {
            outer_pins = Some([ring0, ring0 + 1, centre]);
        }
    }
    let mut adj = vec![Vec::new(); count];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut pinned = vec![None; count];
    for (j, &p) in outer_pins.expect("every part has a face").iter().enumerate() {
        let a = TAU / 4.0 - TAU * j as f64 / 3.0;
        pinned[p] = Some((a.cos(), a.sin()));
    }
    let mut pos = barycentric(&adj, &pinned);
    pos.truncate(corner_count);

    let mut rotations = Vec::new();
    for (i, &v) in part.nodes.iter().enumerate() {
        rotations.push((i, d.node(v).rotation.iter().map(|x| sub[x]).collect::<Vec<_>>()));
    }
    let mut ok = faithful(&pos, &pieces, &rotations);
    if !ok {
        // The pinned triangle fixes only the picture up to reflection.
        for p in pos.iter_mut() {
            p.0 = -p.0;
        }
        ok = faithful(&pos, &pieces, &rotations);
    }
    if !ok {
        return Err(IoError::DegenerateLayout(format!(
            "refined layout of the part containing node {} is not an embedding",
            part.nodes[0]
        )));
    }
    let bends = sub
        .iter()
        .map(|(&x, &s)| (x, vec![pos[s], pos[sub[&d.dart(x).twin]]]))
        .collect();
    Ok(PartLayout {
        nodes: part.nodes.iter().enumerate().map(|(i, &v)| (v, pos[i])).collect(),
        bends,
        method: LayoutMethod::Routed,
    })
}

/// Lays out every connected part of the planarization in its own unit box,
/// left to right.
pub fn layout(d: &Drawing) -> Result<Layout, IoError> {
    let mut nodes = vec![(0.0, 0.0); d.nodes().len()];
    let mut bends: Vec<Vec<Pos>> = vec![Vec::new(); d.darts().len()];
    let mut method = LayoutMethod::Barycentric;
    let mut offset = 0.0;
    for part in parts(d) {
        let pl = if part.faces.is_empty() {
            PartLayout { nodes: vec![(part.nodes[0], (0.0, 0.0))], bends: Vec::new(), method: LayoutMethod::Barycentric }
        } else {
            match straight(d, &part) {
                Some(pl) => pl,
                None => routed(d, &part)?,
            }
        };
        if pl.method == LayoutMethod::Routed {
            method = LayoutMethod::Routed;
        }
        let all = pl.nodes.iter().map(|p| p.1).chain(pl.bends.iter().flat_map(|b| b.1.iter().copied()));
        let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
        for p in all {
            lo = (lo.0.min(p.0), lo.1.min(p.1));
            hi = (hi.0.max(p.0), hi.1.max(p.1));
        }
        let extent = (hi.0 - lo.0).max(hi.1 - lo.1);
        let scale = if extent > 0.0 { 1.0 / extent } else { 1.0 };
        let place = |p: Pos| (offset + (p.0 - lo.0) * scale, (p.1 - lo.1) * scale);
        for &(v, p) in &pl.nodes {
            nodes[v] = place(p);
        }
        for (x, b) in pl.bends {
            bends[x] = b.into_iter().map(place).collect();
        }
        offset += (hi.0 - lo.0) * scale + 0.25;
    }
    let edges = d
        .paths()
        .iter()
        .map(|path| {
            let mut line = vec![nodes[d.dart(path[0]).node]];
            for &x in path {
                line.extend(bends[x].iter().copied());
                line.push(nodes[d.dart(d.dart(x).twin).node]);
            }
            line
        })
        .collect();
    Ok(Layout { method, nodes, edges })
}

/// Fixed six-decimal rendering, with negative zero folded to zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000".to_string()
    } else {
        s
    }
}

/// SVG 1.1 picture: edges as polylines (`data-edge` holds the edge id),
/// real vertices as disks (`data-vertex`), crossings left as plain
/// intersections. Coordinates have six decimals.
pub fn render_svg(d: &Drawing, opts: &RenderOptions) -> Result<String, IoError> {
    let lay = layout(d)?;
    let size = f64::from(opts.size.max(16));
    let margin = 16.0;
    let (mut w, mut h) = (0.0f64, 0.0f64);
    for p in lay.nodes.iter().chain(lay.edges.iter().flatten()) {
        w = w.max(p.0);
        h = h.max(p.1);
    }
    let scale = (size - 2.0 * margin) / w.max(h).max(1e-9);
    let at = |p: Pos| (margin + p.0 * scale, margin + (h - p.1) * scale);
    let height = (2.0 * margin + h * scale).ceil();

    let mut out = String::new();
    let method = match lay.method {
        LayoutMethod::Barycentric => "barycentric",
        LayoutMethod::Routed => "routed",
    };
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}" data-layout="{method}">"#,
        size, height
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1.5">"#);
    for (e, line) in d.graph().edges().iter().zip(&lay.edges) {
        let pts: Vec<String> = line
            .iter()
            .map(|&p| {
                let (x, y) = at(p);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(out, r#"<polyline data-edge="{}" points="{}"/>"#, e.id.0, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="white" stroke="black" stroke-width="1.5">"#);
    for (i, n) in d.nodes().iter().enumerate() {
        if let NodeKind::Vertex(v) = n.kind {
            let (x, y) = at(lay.nodes[i]);
            let _ = writeln!(out, r#"<circle data-vertex="{}" cx="{}" cy="{}" r="7"/>"#, v.0, num(x), num(y));
        }
    }
    let _ = writeln!(out, "</g>");
    if opts.labels {
        let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="8" text-anchor="middle">"#);
        for (i, n) in d.nodes().iter().enumerate() {
            if let NodeKind::Vertex(v) = n.kind {
                let (x, y) = at(lay.nodes[i]);
                let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, num(x), num(y + 3.0), v.0);
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
