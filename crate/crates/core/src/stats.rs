//! Per-drawing crossing counts and the nine crossing-number variants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::drawing::Drawing;
use crate::error::GraphError;
use crate::graph::EdgeId;

/// Which quantity is minimized: crossings, crossing pairs, or odd pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Cr,
    Pcr,
    Ocr,
}

/// Treatment of crossings between adjacent edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Adjacent edges may not cross.
    Plus,
    /// Adjacent crossings are allowed and counted.
    Zero,
    /// Adjacent crossings are allowed and ignored.
    Minus,
    /// Adjacent edges must cross an even number of times.
    Star,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Cr, Variant::Pcr, Variant::Ocr];
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::Plus, Rule::Zero, Rule::Minus, Rule::Star];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanarityMode {
    Plane,
    OddPlane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub a: EdgeId,
    pub b: EdgeId,
    pub count: usize,
    pub adjacent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingStats {
    /// Nonzero counts only, ordered by pair.
    pub pairs: Vec<PairCount>,
    /// Nonzero self-crossing counts.
    pub self_crossings: BTreeMap<EdgeId, usize>,
    pub cr: usize,
    pub pcr: usize,
    pub ocr: usize,
    pub cr_minus: usize,
    pub pcr_minus: usize,
    pub ocr_minus: usize,
    /// No adjacent pair crosses.
    pub rule_plus_admissible: bool,
    /// Every adjacent pair crosses an even number of times.
    pub star_admissible: bool,
    /// Number of edges crossing each edge oddly.
    pub odd_degree: BTreeMap<EdgeId, usize>,
}

impl CrossingStats {
    /// Value of this drawing under a variant and rule; `None` when the rule
    /// does not admit the drawing.
    pub fn value(&self, variant: Variant, rule: Rule) -> Option<usize> {
        let zero = match variant {
            Variant::Cr => self.cr,
            Variant::Pcr => self.pcr,
            Variant::Ocr => self.ocr,
        };
        match rule {
            Rule::Zero => Some(zero),
            Rule::Minus => Some(match variant {
                Variant::Cr => self.cr_minus,
                Variant::Pcr => self.pcr_minus,
                Variant::Ocr => self.ocr_minus,
            }),
            Rule::Plus => self.rule_plus_admissible.then_some(zero),
            Rule::Star => self.star_admissible.then_some(zero),
        }
    }

    pub fn pair_count(&self, e: EdgeId, f: EdgeId) -> usize {
        let (a, b) = if e <= f { (e, f) } else { (f, e) };
        self.pairs
            .binary_search_by_key(&(a, b), |p| (p.a, p.b))
            .map_or(0, |i| self.pairs[i].count)
    }
}

impl Drawing {
    /// Crossing nodes shared by the paths of two distinct edges.
    pub fn crossing_count(&self, e: EdgeId, f: EdgeId) -> Result<usize, GraphError> {
        for x in [e, f] {
            self.graph().edge_index(x).ok_or(GraphError::UnknownEdge(x))?;
        }
        let key = if e <= f { (e, f) } else { (f, e) };
        Ok(self.crossing_nodes().filter(|&x| self.passes(x) == key).count())
    }

    /// Crossing nodes where both passes belong to `e`.
    pub fn self_crossing_count(&self, e: EdgeId) -> Result<usize, GraphError> {
        self.crossing_count(e, e)
    }

    pub fn crossing_stats(&self) -> CrossingStats {
        let g = self.graph();
        let mut counts: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
        let mut self_crossings = BTreeMap::new();
        for x in self.crossing_nodes() {
            let (a, b) = self.passes(x);
            if a == b {
                *self_crossings.entry(a).or_insert(0) += 1;
            } else {
                *counts.entry((a, b)).or_insert(0) += 1;
            }
        }
        let mut s = CrossingStats {
            pairs: Vec::with_capacity(counts.len()),
            self_crossings,
            cr: 0,
            pcr: 0,
            ocr: 0,
            cr_minus: 0,
            pcr_minus: 0,
            ocr_minus: 0,
            rule_plus_admissible: true,
            star_admissible: true,
            odd_degree: g.edges().iter().map(|e| (e.id, 0)).collect(),
        };
        for ((a, b), count) in counts {
            let adjacent = g.edge(a).unwrap().is_adjacent_to(g.edge(b).unwrap());
            let odd = count % 2 == 1;
            s.cr += count;
            s.pcr += 1;
            s.ocr += usize::from(odd);
            if adjacent {
                s.rule_plus_admissible = false;
                if odd {
                    s.star_admissible = false;
                }
            } else {
                s.cr_minus += count;
                s.pcr_minus += 1;
                s.ocr_minus += usize::from(odd);
            }
            if odd {
                *s.odd_degree.get_mut(&a).unwrap() += 1;
                *s.odd_degree.get_mut(&b).unwrap() += 1;
            }
            s.pairs.push(PairCount { a, b, count, adjacent });
        }
        s
    }

    /// Total crossings on each edge; a self-crossing counts once.
    pub fn crossings_per_edge(&self) -> BTreeMap<EdgeId, usize> {
        let mut per: BTreeMap<EdgeId, usize> = self.graph().edges().iter().map(|e| (e.id, 0)).collect();
        for x in self.crossing_nodes() {
            let (a, b) = self.passes(x);
            *per.get_mut(&a).unwrap() += 1;
            if a != b {
                *per.get_mut(&b).unwrap() += 1;
            }
        }
        per
    }

    /// k-plane: at most k crossings on every edge (self and adjacent
    /// crossings included). k-odd-plane: every edge crossed oddly by at most
    /// k other edges.
    pub fn is_k_class(&self, k: usize, mode: PlanarityMode) -> bool {
        match mode {
            PlanarityMode::Plane => self.crossings_per_edge().values().all(|&c| c <= k),
            PlanarityMode::OddPlane => self.crossing_stats().odd_degree.values().all(|&c| c <= k),
        }
    }
}
