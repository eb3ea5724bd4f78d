use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{edge_pairs, multisets, realize, EnumerationBudget, Meter};
use crate::error::OracleError;
use crate::graph::Multigraph;
use crate::stats::{Rule, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum OracleValue {
    /// Minimum over all drawings within the crossing budget.
    Found(usize),
    /// No admissible drawing within the budget; the value is at least this.
    LowerBoundOnly(usize),
}

/// Value a drawing with this crossing multiset takes; it depends only on
/// how often each pair crosses. `None` when the rule rejects it.
pub(crate) fn multiset_value(
    g: &Multigraph,
    pairs: &[(usize, usize)],
    ms: &[usize],
    variant: Variant,
    rule: Rule,
) -> Option<usize> {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in ms {
        *count.entry(p).or_insert(0) += 1;
    }
    let mut total = 0;
    for (&p, &c) in &count {
        let (a, b) = pairs[p];
        let adjacent = g.edges()[a].is_adjacent_to(&g.edges()[b]);
        match rule {
            Rule::Plus if adjacent => return None,
            Rule::Star if adjacent && c % 2 == 1 => return None,
            Rule::Minus if adjacent => continue,
            _ => {}
        }
        total += match variant {
            Variant::Cr => c,
            Variant::Pcr => 1,
            Variant::Ocr => c % 2,
        };
    }
    Some(total)
}

/// Minimum of a crossing-number variant under a rule over all drawings with
/// at most `budget.max_crossings` crossings. Work is split across threads by
/// crossing multiset; the answer does not depend on the thread count.
pub fn exact_crossing_value(
    g: &Multigraph,
    variant: Variant,
    rule: Rule,
    budget: &EnumerationBudget,
) -> Result<OracleValue, OracleError> {
    if !g.is_simple() {
        return Err(OracleError::NotSimple);
    }
    let run = || search(g, variant, rule, budget);
    match budget.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

fn search(g: &Multigraph, variant: Variant, rule: Rule, budget: &EnumerationBudget) -> Result<OracleValue, OracleError> {
    let meter = Meter::new(budget);
    let pairs = edge_pairs(g);
    let mut best: Option<usize> = None;
    for c in 0..=budget.max_crossings {
        let mut by_value: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for ms in multisets(pairs.len(), c) {
            if let Some(v) = multiset_value(g, &pairs, &ms, variant, rule) {
                if best.is_none_or(|b| v < b) {
                    by_value.entry(v).or_default().push(ms);
                }
            }
        }
        for (v, group) in by_value {
            let hit = group
                .par_iter()
                .map(|ms| realize(g, &pairs, ms, &meter, &mut |_| ControlFlow::Break(())).map(|f| f.is_break()))
                .collect::<Result<Vec<bool>, _>>()?
                .into_iter()
                .any(|x| x);
            if hit {
                best = Some(v);
                break;
            }
        }
        if best == Some(0) {
            break;
        }
    }
    Ok(match best {
        Some(v) => OracleValue::Found(v),
        None => OracleValue::LowerBoundOnly(budget.max_crossings + 1),
    })
}
