use std::path::PathBuf;

use oddplane::io::{layout, parse_drawing, render_svg, serialize_drawing, LayoutMethod, RenderOptions};
use oddplane::oracle::{convex_drawing, perturb_even, random_graph, random_planar_drawing};
use oddplane::redraw::{lemma1_redraw, OneVertexSketch};
use oddplane::{fixtures, Drawing, EdgeId, Ending, IoError, Side, VertexId};
use proptest::prelude::*;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn three_interleaved_loops() -> Drawing {
    let end = |e: u32, s: Side| Ending::new(EdgeId(e), s);
    let rot = vec![
        end(0, Side::Start),
        end(1, Side::Start),
        end(2, Side::Start),
        end(0, Side::End),
        end(1, Side::End),
        end(2, Side::End),
    ];
    lemma1_redraw(&OneVertexSketch::new(VertexId(0), rot).unwrap())
}

#[test]
fn round_trip_fixtures() {
    for d in [
        fixtures::triangle(),
        fixtures::square(),
        fixtures::k5_one_crossing(),
        fixtures::k33_one_crossing(),
        fixtures::square_double_crossing(),
        three_interleaved_loops(),
        Drawing::empty(),
    ] {
        let bytes = serialize_drawing(&d);
        let back = parse_drawing(&bytes).unwrap();
        assert_eq!(back, d.canonical());
        assert_eq!(serialize_drawing(&back), bytes);
    }
}

#[test]
fn corpus_files_are_canonical() {
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus()).unwrap() {
        let path = entry.unwrap().path();
        let bytes = std::fs::read(&path).unwrap();
        let d = parse_drawing(&bytes).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(serialize_drawing(&d), bytes, "{} is not in canonical form", path.display());
        assert_eq!(parse_drawing(&serialize_drawing(&d)).unwrap(), d);
        seen += 1;
    }
    assert!(seen >= 3);
    let k5 = parse_drawing(&std::fs::read(corpus().join("k5_one_crossing.json")).unwrap()).unwrap();
    assert!(k5.is_valid());
    assert_eq!(k5.crossing_node_count(), 1);
    assert_eq!(k5.vertex_count(), 5);
    assert_eq!(k5.edge_count(), 10);
}

#[test]
fn header_and_syntax_errors() {
    let good = String::from_utf8(serialize_drawing(&fixtures::triangle())).unwrap();
    let bumped = good.replace("\"version\": 1", "\"version\": 7");
    assert!(matches!(parse_drawing(bumped.as_bytes()), Err(IoError::Field { field, .. }) if field == "version"));
    let renamed = good.replace("oddplane-drawing", "other");
    assert!(matches!(parse_drawing(renamed.as_bytes()), Err(IoError::Field { field, .. }) if field == "format"));

    let broken = good.replacen("\"map\": {", "\"map\": {,", 1);
    let line = broken.lines().position(|l| l.contains("\"map\": {,")).unwrap() + 1;
    match parse_drawing(broken.as_bytes()) {
        Err(IoError::Parse { line: l, .. }) => assert_eq!(l, line),
        other => panic!("expected a parse error, got {other:?}"),
    }
    let unknown = good.replacen("\"format\"", "\"colour\": 1,\n  \"format\"", 1);
    assert!(matches!(parse_drawing(unknown.as_bytes()), Err(IoError::Parse { .. })));
}

#[test]
fn invalid_maps_are_rejected() {
    let good = String::from_utf8(serialize_drawing(&fixtures::k5_one_crossing())).unwrap();
    // Swap two darts in the crossing's rotation so its passes no longer alternate.
    let doc: serde_json::Value = serde_json::from_str(&good).unwrap();
    let mut doc = doc;
    let crossing = doc["map"]["nodes"].as_array().unwrap().iter().position(|n| n["kind"] == "crossing").unwrap();
    let rot = doc["map"]["nodes"][crossing]["rotation"].as_array_mut().unwrap();
    rot.swap(0, 1);
    let bad = serde_json::to_vec(&doc).unwrap();
    assert!(matches!(parse_drawing(&bad), Err(IoError::Validation(_))));

    let mut doc: serde_json::Value = serde_json::from_str(&good).unwrap();
    doc["map"]["twins"].as_array_mut().unwrap().pop();
    assert!(matches!(parse_drawing(&serde_json::to_vec(&doc).unwrap()), Err(IoError::Field { .. })));
}

struct Picture {
    vertices: Vec<(u32, (f64, f64))>,
    edges: Vec<(u32, Vec<(f64, f64)>)>,
}

fn attr<'a>(line: &'a str, name: &str) -> &'a str {
    let key = format!("{name}=\"");
    let start = line.find(&key).unwrap() + key.len();
    &line[start..start + line[start..].find('"').unwrap()]
}

fn read_svg(svg: &str) -> Picture {
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let mut pic = Picture { vertices: Vec::new(), edges: Vec::new() };
    for line in svg.lines() {
        if line.starts_with("<polyline") {
            let pts = attr(line, "points")
                .split(' ')
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect();
            pic.edges.push((attr(line, "data-edge").parse().unwrap(), pts));
        } else if line.starts_with("<circle") {
            let c = (attr(line, "cx").parse().unwrap(), attr(line, "cy").parse().unwrap());
            pic.vertices.push((attr(line, "data-vertex").parse().unwrap(), c));
        }
    }
    pic
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).hypot(a.1 - b.1) < 1e-3
}

/// Segment intersection point, if the closed segments meet in one point.
fn meet(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> Option<(f64, f64)> {
    let d = (q.0 - p.0) * (s.1 - r.1) - (q.1 - p.1) * (s.0 - r.0);
    if d.abs() < 1e-12 {
        return [p, q].into_iter().find(|&a| close(a, r) || close(a, s));
    }
    let t = ((r.0 - p.0) * (s.1 - r.1) - (r.1 - p.1) * (s.0 - r.0)) / d;
    let u = ((r.0 - p.0) * (q.1 - p.1) - (r.1 - p.1) * (q.0 - p.0)) / d;
    let tol = 1e-9;
    ((-tol..=1.0 + tol).contains(&t) && (-tol..=1.0 + tol).contains(&u))
        .then_some((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)))
}

/// Points where polylines of different edges meet away from the vertex disks.
fn intersections(pic: &Picture) -> Vec<(f64, f64)> {
    let mut found: Vec<(f64, f64)> = Vec::new();
    for (i, (_, a)) in pic.edges.iter().enumerate() {
        for (_, b) in &pic.edges[i + 1..] {
            for s in a.windows(2) {
                for t in b.windows(2) {
                    if let Some(x) = meet(s[0], s[1], t[0], t[1]) {
                        if !pic.vertices.iter().any(|v| close(v.1, x)) && !found.iter().any(|&y| close(x, y)) {
                            found.push(x);
                        }
                    }
                }
            }
        }
    }
    found
}

/// Clockwise order on screen of the edge ends at each vertex must match the
/// rotation system up to cyclic shift.
fn angular_audit(d: &Drawing, pic: &Picture) {
    for (v, endings) in d.rotation_system() {
        let c = pic.vertices.iter().find(|x| x.0 == v.0).unwrap().1;
        let mut around: Vec<(f64, Ending)> = Vec::new();
        for e in d.graph().edges() {
            let line = &pic.edges.iter().find(|x| x.0 == e.id.0).unwrap().1;
            let n = line.len();
            for (side, end, next) in [(Side::Start, e.ends.0, line[1]), (Side::End, e.ends.1, line[n - 2])] {
                if end == v {
                    // y grows downwards, so increasing angle is clockwise.
                    around.push(((next.1 - c.1).atan2(next.0 - c.0), Ending::new(e.id, side)));
                }
            }
        }
        around.sort_by(|a, b| a.0.total_cmp(&b.0));
        let got: Vec<Ending> = around.into_iter().map(|x| x.1).collect();
        let k = got.len();
        let shift = (0..k.max(1)).find(|&s| (0..k).all(|i| got[(s + i) % k] == endings[i]));
        assert!(shift.is_some(), "rotation at {v:?}: drew {got:?}, expected {endings:?}");
    }
}

fn check_render(d: &Drawing) -> Picture {
    let svg = render_svg(d, &RenderOptions::default()).unwrap();
    let pic = read_svg(&svg);
    assert_eq!(pic.vertices.len(), d.vertex_count());
    assert_eq!(pic.edges.len(), d.edge_count());
    angular_audit(d, &pic);
    assert_eq!(svg, render_svg(d, &RenderOptions::default()).unwrap());
    pic
}

#[test]
fn render_triangle() {
    let d = fixtures::triangle();
    let pic = check_render(&d);
    assert!(pic.edges.iter().all(|e| e.1.len() == 2));
    assert!(intersections(&pic).is_empty());
    assert_eq!(layout(&d).unwrap().method, LayoutMethod::Barycentric);
}

#[test]
fn render_k5_one_intersection() {
    let pic = check_render(&fixtures::k5_one_crossing());
    assert_eq!(intersections(&pic).len(), 1);
}

#[test]
fn render_three_interleaved_loops() {
    let d = three_interleaved_loops();
    assert_eq!(d.crossing_node_count(), 3);
    let pic = check_render(&d);
    assert_eq!(intersections(&pic).len(), 3);
}

#[test]
fn render_fixtures_and_disconnected() {
    for d in [fixtures::square(), fixtures::k33_one_crossing(), fixtures::square_double_crossing()] {
        let pic = check_render(&d);
        assert_eq!(intersections(&pic).len(), d.crossing_node_count());
    }
    let two = fixtures::triangle().disjoint_union(&fixtures::k5_one_crossing());
    let pic = check_render(&two);
    assert_eq!(intersections(&pic).len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serialization_round_trips(n in 1u32..8, m in 0usize..14, moves in 0usize..4, seed in any::<u64>()) {
        let c = convex_drawing(&random_graph(n, m, seed), seed);
        let (p, _) = perturb_even(&random_planar_drawing(n, m, seed), moves, seed);
        for d in [c, p] {
            let bytes = serialize_drawing(&d);
            let back = parse_drawing(&bytes).unwrap();
            prop_assert_eq!(&back, &d.canonical());
            prop_assert_eq!(serialize_drawing(&back), bytes);
        }
    }

    #[test]
    fn renders_keep_rotations_and_crossings(n in 2u32..7, m in 0usize..10, moves in 0usize..3, seed in any::<u64>()) {
        let c = convex_drawing(&random_graph(n, m, seed), seed);
        let (p, _) = perturb_even(&random_planar_drawing(n, m, seed), moves, seed);
        for d in [c, p] {
            let pic = check_render(&d);
            prop_assert_eq!(intersections(&pic).len(), d.crossing_node_count());
        }
    }
}
