//! Inputs shared by the benchmarks.

use oddplane::oracle::{k_odd_plane_drawing, perturb_even, random_planar_drawing};
use oddplane::redraw::OneVertexSketch;
use oddplane::{Drawing, EdgeId, Ending, Side, VertexId};

/// `l` loops at one vertex, every pair interleaved: `0- 1- ... 0+ 1+ ...`.
pub fn interleaved_loops(l: u32) -> OneVertexSketch {
    let starts = (0..l).map(|e| Ending::new(EdgeId(e), Side::Start));
    let ends = (0..l).map(|e| Ending::new(EdgeId(e), Side::End));
    OneVertexSketch::new(VertexId(0), starts.chain(ends).collect()).expect("two endings per loop")
}

/// Dense k-odd-plane drawing on `n` vertices with a few finger moves.
pub fn k_odd_plane(n: u32, k: usize, seed: u64) -> Drawing {
    k_odd_plane_drawing(n, (n * (n - 1) / 2) as usize, k, 4, seed)
}

/// Plane drawing with `2n` extra chords and `moves` finger moves.
pub fn perturbed_planar(n: u32, moves: usize, seed: u64) -> Drawing {
    perturb_even(&random_planar_drawing(n, 2 * n as usize, seed), moves, seed).0
}
