//! Small hand-checked drawings used by tests, benches and the CLI corpus.

use std::collections::BTreeMap;

use crate::drawing::{Drawing, Ending, Point, Side};
use crate::graph::{EdgeId, Multigraph, VertexId};

fn end(e: u32, side: Side) -> Ending {
    Ending::new(EdgeId(e), side)
}

/// Triangle 0-1-2 without crossings.
pub fn triangle() -> Drawing {
    let g = Multigraph::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let rot = BTreeMap::from([
        (VertexId(0), vec![end(0, Side::Start), end(2, Side::End)]),
        (VertexId(1), vec![end(1, Side::Start), end(0, Side::End)]),
        (VertexId(2), vec![end(2, Side::Start), end(1, Side::End)]),
    ]);
    Drawing::from_rotation_system(g, &rot).unwrap()
}

/// 4-cycle 0-1-2-3 without crossings; edges 0 and 2 are disjoint.
pub fn square() -> Drawing {
    let g = Multigraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let pts = [Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)];
    Drawing::from_straight_line(g, &pts).unwrap()
}

/// Straight-line K5 with exactly one crossing.
pub fn k5_one_crossing() -> Drawing {
    let pts = [Point::new(0, 0), Point::new(12, 0), Point::new(6, 12), Point::new(5, 4), Point::new(7, 4)];
    Drawing::from_straight_line(Multigraph::complete(5), &pts).unwrap()
}

/// Straight-line K3,3 (parts {0,1,2}, {3,4,5}) with exactly one crossing.
pub fn k33_one_crossing() -> Drawing {
    let pts = [
        Point::new(0, 0),
        Point::new(10, 20),
        Point::new(20, 0),
        Point::new(10, 6),
        Point::new(11, -10),
        Point::new(10, 40),
    ];
    Drawing::from_straight_line(Multigraph::complete_bipartite(3, 3), &pts).unwrap()
}

/// Square with edges 0 and 2 pushed across each other twice.
pub fn square_double_crossing() -> Drawing {
    let d = square();
    let faces = d.faces();
    for face in faces {
        let a = face.iter().copied().find(|&x| d.dart(x).edge == EdgeId(0));
        let b = face.iter().copied().find(|&x| d.dart(x).edge == EdgeId(2));
        if let (Some(a), Some(b)) = (a, b) {
            return d.add_double_crossing(a, b);
        }
    }
    unreachable!("square has a face bounded by both edges")
}
