use std::collections::BTreeSet;

use super::*;
use crate::fixtures;
use crate::stats::{PlanarityMode, Rule, Variant};

fn e(i: u32) -> EdgeId {
    EdgeId(i)
}

/// One vertex, one loop with a single self-crossing.
fn kinked_loop() -> Drawing {
    let g = Multigraph::from_pairs(1, &[(0, 0)]).unwrap();
    let d = Drawing::from_rotation_system(
        g,
        &BTreeMap::from([(VertexId(0), vec![Ending::new(e(0), Side::Start), Ending::new(e(0), Side::End)])]),
    )
    .unwrap();
    d.add_kink(0)
}

/// Inserts a new edge `u -> v` crossing exactly one segment of `through`.
fn route_across(d: &Drawing, id: u32, u: u32, v: u32, through: EdgeId) -> Drawing {
    let faces = d.faces();
    let face_of = |x: DartId| faces.iter().position(|f| f.contains(&x)).unwrap();
    let at = |vertex: u32, face: usize| {
        faces[face].iter().copied().find(|&x| d.nodes()[d.dart(x).node].kind == NodeKind::Vertex(VertexId(vertex)))
    };
    for c in 0..d.darts().len() {
        if d.dart(c).edge != through {
            continue;
        }
        let (f0, f1) = (face_of(c), face_of(d.dart(c).twin));
        if let (Some(a), Some(b)) = (at(u, f0), at(v, f1)) {
            return d.insert_routed_edge(EdgeId(id), a, &[c], b).unwrap();
        }
    }
    panic!("no single-crossing route");
}

#[test]
fn triangle_is_valid_with_two_faces() {
    let d = fixtures::triangle();
    assert!(d.validate().is_empty());
    assert_eq!(d.faces().len(), 2);
    assert_eq!(d.euler_characteristics(), vec![(0, 2)]);
}

#[test]
fn degree_three_crossing_is_rejected() {
    let g = Multigraph::from_pairs(3, &[(0, 1), (0, 2), (0, 0)]).unwrap();
    // star of three segments around a fake crossing node 3
    let nodes = vec![
        Node { kind: NodeKind::Vertex(VertexId(0)), rotation: vec![0, 2, 4] },
        Node { kind: NodeKind::Vertex(VertexId(1)), rotation: vec![] },
        Node { kind: NodeKind::Vertex(VertexId(2)), rotation: vec![] },
        Node { kind: NodeKind::Crossing, rotation: vec![1, 3, 5] },
    ];
    let darts = vec![
        Dart { node: 0, twin: 1, edge: e(0) },
        Dart { node: 3, twin: 0, edge: e(0) },
        Dart { node: 0, twin: 3, edge: e(1) },
        Dart { node: 3, twin: 2, edge: e(1) },
        Dart { node: 0, twin: 5, edge: e(2) },
        Dart { node: 3, twin: 4, edge: e(2) },
    ];
    let d = Drawing::from_parts(g, nodes, darts, vec![vec![0], vec![2], vec![4]]);
    let v = d.validate();
    assert!(v.contains(&Violation { kind: ViolationKind::NonQuadCrossing, locus: Locus::Node(3) }));
}

#[test]
fn non_alternating_crossing_is_rejected() {
    let d = fixtures::k5_one_crossing();
    let x = d.crossing_nodes().next().unwrap();
    let mut nodes = d.nodes().to_vec();
    nodes[x].rotation.swap(1, 2);
    let bad = Drawing::from_parts(d.graph().clone(), nodes, d.darts().to_vec(), d.paths().to_vec());
    assert!(bad.validate().iter().any(|v| v.kind == ViolationKind::NonAlternating));
}

#[test]
fn twisted_rotation_fails_euler() {
    // K4 drawn without crossings but with one vertex rotation reversed
    let g = Multigraph::complete(4);
    let pts = [Point::new(0, 0), Point::new(10, 0), Point::new(5, 10), Point::new(5, 3)];
    let d = Drawing::from_straight_line(g, &pts).unwrap();
    assert_eq!(d.crossing_node_count(), 0);
    let mut nodes = d.nodes().to_vec();
    nodes[3].rotation.swap(0, 1);
    let bad = Drawing::from_parts(d.graph().clone(), nodes, d.darts().to_vec(), d.paths().to_vec());
    assert_eq!(
        bad.validate(),
        vec![Violation { kind: ViolationKind::EulerFailure, locus: Locus::Node(0) }]
    );
}

#[test]
fn dangling_dart_and_bad_path() {
    let d = fixtures::triangle();
    let mut nodes = d.nodes().to_vec();
    nodes[0].rotation.pop();
    let bad = Drawing::from_parts(d.graph().clone(), nodes, d.darts().to_vec(), d.paths().to_vec());
    assert!(bad.validate().iter().all(|v| v.kind == ViolationKind::DanglingDart));
    assert!(!bad.validate().is_empty());

    let mut paths = d.paths().to_vec();
    paths[0] = vec![1];
    let bad = Drawing::from_parts(d.graph().clone(), d.nodes().to_vec(), d.darts().to_vec(), paths);
    assert!(bad.validate().iter().any(|v| v.kind == ViolationKind::BadEdgePath));
}

#[test]
fn k5_one_crossing_is_valid() {
    let d = fixtures::k5_one_crossing();
    assert!(d.is_valid());
    assert_eq!(d.crossing_node_count(), 1);
    assert_eq!(d.crossing_stats().cr, 1);
    // V = 6, E = 12 segments, so 8 faces
    assert_eq!(d.faces().len(), 8);
}

#[test]
fn k33_one_crossing_is_valid() {
    let d = fixtures::k33_one_crossing();
    assert!(d.is_valid());
    assert_eq!(d.crossing_node_count(), 1);
}

#[test]
fn crossing_counts() {
    let sq = fixtures::square();
    assert_eq!(sq.crossing_count(e(0), e(2)).unwrap(), 0);
    let dbl = fixtures::square_double_crossing();
    assert!(dbl.is_valid());
    assert_eq!(dbl.crossing_count(e(0), e(2)).unwrap(), 2);
    assert_eq!(dbl.crossing_count(e(2), e(0)).unwrap(), 2);
    let k = kinked_loop();
    assert!(k.is_valid());
    assert_eq!(k.self_crossing_count(e(0)).unwrap(), 1);
    assert_eq!(sq.crossing_count(e(0), e(9)), Err(crate::GraphError::UnknownEdge(e(9))));
}

#[test]
fn parity_sketch_entries() {
    let dbl = crate::ParitySketch::of(&fixtures::square_double_crossing());
    assert!(!dbl.is_odd(e(0), e(2)));
    let k5 = fixtures::k5_one_crossing();
    let x = k5.crossing_nodes().next().unwrap();
    let (a, b) = k5.passes(x);
    let sk = crate::ParitySketch::of(&k5);
    assert!(sk.is_odd(a, b));
    assert_eq!(sk.matrix().pair_count(), 1);
    assert_eq!(crate::ParitySketch::of(&fixtures::triangle()).matrix().pair_count(), 0);
}

#[test]
fn stats_planar_all_zero() {
    let s = fixtures::triangle().crossing_stats();
    for v in Variant::ALL {
        for r in Rule::ALL {
            assert_eq!(s.value(v, r), Some(0));
        }
    }
    assert!(s.rule_plus_admissible && s.star_admissible);
}

#[test]
fn stats_single_independent_crossing() {
    let s = fixtures::k5_one_crossing().crossing_stats();
    for v in Variant::ALL {
        assert_eq!(s.value(v, Rule::Zero), Some(1));
        assert_eq!(s.value(v, Rule::Minus), Some(1));
    }
    assert!(s.rule_plus_admissible);
}

#[test]
fn stats_with_adjacent_crossing() {
    // convex K4 minus edge 01: the diagonals 02 and 13 cross once; then 01
    // is added across edge 12, an adjacent pair
    let g = Multigraph::from_pairs(4, &[(1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
    let pts = [Point::new(0, 0), Point::new(10, 0), Point::new(10, 10), Point::new(0, 10)];
    let base = Drawing::from_straight_line(g, &pts).unwrap();
    let d = route_across(&base, 5, 0, 1, e(0));
    assert!(d.is_valid());
    let s = d.crossing_stats();
    assert_eq!(s.value(Variant::Cr, Rule::Zero), Some(2));
    assert_eq!(s.value(Variant::Cr, Rule::Minus), Some(1));
    assert_eq!(s.value(Variant::Cr, Rule::Plus), None);
    assert_eq!(s.value(Variant::Ocr, Rule::Star), None);
}

#[test]
fn planarity_classes() {
    let t = fixtures::triangle();
    for mode in [PlanarityMode::Plane, PlanarityMode::OddPlane] {
        assert!(t.is_k_class(0, mode));
    }
    let k5 = fixtures::k5_one_crossing();
    assert!(k5.is_k_class(1, PlanarityMode::Plane));
    assert!(!k5.is_k_class(0, PlanarityMode::Plane));
    let dbl = fixtures::square_double_crossing();
    assert!(dbl.is_k_class(0, PlanarityMode::OddPlane));
    assert!(!dbl.is_k_class(0, PlanarityMode::Plane));
}

#[test]
fn remove_edges_cases() {
    let k5 = fixtures::k5_one_crossing();
    assert_eq!(k5.remove_edges(&BTreeSet::new()).unwrap(), k5);

    let dbl = fixtures::square_double_crossing();
    let r = dbl.remove_edges(&BTreeSet::from([e(2)])).unwrap();
    assert!(r.is_valid());
    assert_eq!(r.crossing_node_count(), 0);

    let x = k5.crossing_nodes().next().unwrap();
    let (a, _) = k5.passes(x);
    let r = k5.remove_edges(&BTreeSet::from([a])).unwrap();
    assert!(r.is_valid());
    assert_eq!(r.edge_count(), 9);
    assert_eq!(r.crossing_node_count(), 0);
    assert!(k5.remove_edges(&BTreeSet::from([e(99)])).is_err());
}

#[test]
fn disjoint_union_cases() {
    let t = fixtures::triangle();
    let u = t.disjoint_union(&t);
    assert!(u.is_valid());
    assert_eq!((u.vertex_count(), u.edge_count(), u.crossing_node_count()), (6, 6, 0));

    let k5 = fixtures::k5_one_crossing();
    let kk = k5.disjoint_union(&k5);
    assert!(kk.is_valid());
    assert_eq!(kk.crossing_stats().cr, 2);
    assert!(kk.is_k_class(1, PlanarityMode::Plane));

    assert_eq!(k5.disjoint_union(&Drawing::empty()), k5);
    assert_eq!(Drawing::empty().disjoint_union(&k5), k5);
}

#[test]
fn induced_subdrawing_cases() {
    let k5 = fixtures::k5_one_crossing();
    let all: BTreeSet<_> = k5.graph().vertices().iter().copied().collect();
    assert_eq!(k5.induced_subdrawing(&all).unwrap(), k5);
    let none = k5.induced_subdrawing(&BTreeSet::new()).unwrap();
    assert_eq!((none.vertex_count(), none.edge_count()), (0, 0));
    assert!(none.is_valid());
    let four: BTreeSet<_> = (0..4).map(VertexId).collect();
    let k4 = k5.induced_subdrawing(&four).unwrap();
    assert!(k4.is_valid());
    assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
    assert!(k5.induced_subdrawing(&BTreeSet::from([VertexId(7)])).is_err());
}

#[test]
fn smoothing_a_kink() {
    let k = kinked_loop();
    let x = k.crossing_nodes().next().unwrap();
    let s = k.smooth_self_crossing(x).unwrap();
    assert!(s.is_valid());
    assert_eq!(s.crossing_node_count(), 0);
    assert_eq!(s.rotation_system(), k.rotation_system());
}

#[test]
fn canonical_form_is_idempotent() {
    let d = fixtures::square_double_crossing();
    assert_eq!(d.canonical(), d);
    for (i, dart) in d.darts().iter().enumerate() {
        assert_eq!(dart.twin, i ^ 1);
    }
}
