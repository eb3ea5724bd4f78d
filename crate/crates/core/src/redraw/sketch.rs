use serde::{Deserialize, Serialize};

use crate::drawing::{Ending, Side};
use crate::error::RedrawError;
use crate::graph::{EdgeId, VertexId};
use crate::parity::ParitySketch;

/// Loops at a single vertex, described only by the clockwise order of their
/// endings. Crossing parities are implied: two loops form an odd pair exactly
/// when their endings interleave.
///
/// The reference point sits in the gap just before the smallest ending.
/// Reading the rotation clockwise from there, the first ending of each loop
/// is its minus ending and the second its plus ending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneVertexSketch {
    vertex: VertexId,
    loops: Vec<EdgeId>,
    rotation: Vec<Ending>,
}

impl OneVertexSketch {
    pub fn new(vertex: VertexId, rotation: Vec<Ending>) -> Result<Self, RedrawError> {
        let mut loops: Vec<EdgeId> = rotation.iter().map(|x| x.edge).collect();
        loops.sort_unstable();
        loops.dedup();
        for &e in &loops {
            let mut sides: Vec<Side> = rotation.iter().filter(|x| x.edge == e).map(|x| x.side).collect();
            sides.sort_unstable();
            if sides != [Side::Start, Side::End] {
                return Err(RedrawError::MalformedSketch(format!(
                    "loop {e} must contribute one start and one end ending"
                )));
            }
        }
        Ok(OneVertexSketch { vertex, loops, rotation })
    }

    /// Collapses a parity sketch that has been contracted to one vertex.
    pub fn from_parity_sketch(sk: &ParitySketch) -> Result<Self, RedrawError> {
        let [v] = sk.vertices() else {
            return Err(RedrawError::MalformedSketch(format!(
                "expected one vertex, found {}",
                sk.vertices().len()
            )));
        };
        OneVertexSketch::new(*v, sk.rotation().get(v).cloned().unwrap_or_default())
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn loops(&self) -> &[EdgeId] {
        &self.loops
    }

    pub fn rotation(&self) -> &[Ending] {
        &self.rotation
    }

    /// Index into `rotation` of the ending right after the reference gap.
    pub fn reference_gap(&self) -> usize {
        (0..self.rotation.len()).min_by_key(|&i| self.rotation[i]).unwrap_or(0)
    }

    /// Rotation read clockwise from the reference gap.
    pub fn linear(&self) -> Vec<Ending> {
        let mut r = self.rotation.clone();
        r.rotate_left(self.reference_gap());
        r
    }

    /// Linear positions `(minus, plus)` for every loop, in `loops` order.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let lin = self.linear();
        self.loops
            .iter()
            .map(|&e| {
                let mut it = lin.iter().enumerate().filter(|(_, x)| x.edge == e).map(|(i, _)| i);
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect()
    }

    pub fn minus_ending(&self, e: EdgeId) -> Option<Ending> {
        self.linear().into_iter().find(|x| x.edge == e)
    }

    /// Exactly one ending of `f` lies strictly between the endings of `e`.
    pub fn interleaved(&self, e: EdgeId, f: EdgeId) -> bool {
        let iv = self.intervals();
        match (self.loop_index(e), self.loop_index(f)) {
            (Some(i), Some(j)) if i != j => interleave(iv[i], iv[j]),
            _ => false,
        }
    }

    /// `f` nested inside `e`: the order is reference, e-, f-, f+, e+.
    pub fn precedes(&self, f: EdgeId, e: EdgeId) -> bool {
        let iv = self.intervals();
        match (self.loop_index(e), self.loop_index(f)) {
            (Some(i), Some(j)) if i != j => nested(iv[j], iv[i]),
            _ => false,
        }
    }

    pub fn loop_index(&self, e: EdgeId) -> Option<usize> {
        self.loops.binary_search(&e).ok()
    }

    /// Loops in the order they are removed by the minimal-loop induction;
    /// ties among minimal loops go to the smallest id.
    pub fn removal_order(&self) -> Vec<EdgeId> {
        let iv = self.intervals();
        let mut remaining: Vec<usize> = (0..self.loops.len()).collect();
        let mut order = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let pick = remaining
                .iter()
                .position(|&i| !remaining.iter().any(|&j| j != i && nested(iv[j], iv[i])))
                .expect("a finite partial order has a minimal element");
            order.push(self.loops[remaining.remove(pick)]);
        }
        order
    }

    /// Whether the given parity sketch agrees with the interleaving law.
    pub fn agrees_with(&self, sk: &ParitySketch) -> bool {
        self.loops.iter().all(|&e| {
            self.loops.iter().all(|&f| e == f || sk.is_odd(e, f) == self.interleaved(e, f))
        })
    }
}

pub(crate) fn nested(inner: (usize, usize), outer: (usize, usize)) -> bool {
    outer.0 < inner.0 && inner.1 < outer.1
}

pub(crate) fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |p: usize| a.0 < p && p < a.1;
    inside(b.0) != inside(b.1)
}
