//! Edge-density upper bounds for k-plane and k-odd-plane graphs, lower bounds
//! on odd pairs, drawing audits, and the random-subgraph experiment.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::drawing::Drawing;
use crate::error::BoundsError;
use crate::parity::ParitySketch;
use crate::stats::PlanarityMode;

/// Ackerman–Schaefer constant for the pair crossing number with adjacent
/// crossings forbidden: `pcr(G) >= m^3 / (34.2 n^2)`. Reference only.
pub const PCR_PLUS_CONSTANT: Ratio<i128> = Ratio::new_raw(171, 5);

/// Ackerman's constant, `cr(G) >= m^3 / (29 n^2)` once `m >= 7n`.
/// Reference only; no audit check depends on it.
pub const CR_ACKERMAN_CONSTANT: Ratio<i128> = Ratio::new_raw(29, 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: u64,
    /// The value is known to equal the true maximum.
    pub exact: bool,
}

/// Largest known bound on edges of a k-plane simple graph on `n` vertices.
pub fn mk_upper(k: u64, n: u64) -> UpperBound {
    if n <= 2 {
        return UpperBound { value: n * n.saturating_sub(1) / 2, exact: true };
    }
    let linear = match k {
        0 => Some(3 * n - 6),
        1 => Some(4 * n - 8),
        2 => Some(5 * n - 10),
        3 => Some((11 * n - 22) / 2),
        4 => Some(6 * n - 12),
        _ => None,
    };
    let root = (k >= 2).then(|| sqrt_bound(k, n));
    let value = match (linear, root) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!(),
    };
    UpperBound { value, exact: k == 0 || (k == 1 && n >= 12) }
}

/// `floor(3.81 sqrt(k) n)` in integers.
fn sqrt_bound(k: u64, n: u64) -> u64 {
    let x = 145_161u128 * k as u128 * (n as u128) * (n as u128);
    (x.isqrt() / 100) as u64
}

/// Bound on edges of a k-odd-plane simple graph on `n` vertices.
pub fn modd_upper(k: u64, n: u64) -> u64 {
    let mk = mk_upper(k, n);
    if k == 0 || n <= 2 {
        return mk.value;
    }
    let mk = mk.value;
    let via_forest = mk + k * n.saturating_sub(1);
    let via_lemma = (32u128 * k as u128 * (n as u128) * (n as u128)).isqrt() as u64;
    via_forest.min(via_lemma)
}

/// Lower bound on odd pairs in any drawing of a simple graph with `n`
/// vertices and `m` edges.
pub fn ocr_linear_lower(n: u64, m: u64) -> u64 {
    let m = m as i128;
    let n = n as i128;
    (m - 3 * n).max(2 * m - 8 * n).max(0) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaVariant {
    /// Odd pairs, adjacent pairs crossing evenly: 1/54 once `m >= 6n`.
    OcrStar,
    /// Odd pairs: 1/64 once `m >= 4n`.
    OcrPt,
    /// Crossings: 1/60.75 once `m >= 4.5n`.
    CrClassic,
    /// Crossings: 1/29 once `m >= 7n`.
    CrAckerman,
}

impl LemmaVariant {
    pub const ALL: [LemmaVariant; 4] =
        [LemmaVariant::OcrStar, LemmaVariant::OcrPt, LemmaVariant::CrClassic, LemmaVariant::CrAckerman];

    pub fn constant(self) -> Ratio<i128> {
        match self {
            LemmaVariant::OcrStar => Ratio::from_integer(54),
            LemmaVariant::OcrPt => Ratio::from_integer(64),
            LemmaVariant::CrClassic => Ratio::new(243, 4),
            LemmaVariant::CrAckerman => CR_ACKERMAN_CONSTANT,
        }
    }

    /// Minimum `m / n` for the inequality to hold.
    pub fn threshold(self) -> Ratio<i128> {
        match self {
            LemmaVariant::OcrStar => Ratio::from_integer(6),
            LemmaVariant::OcrPt => Ratio::from_integer(4),
            LemmaVariant::CrClassic => Ratio::new(9, 2),
            LemmaVariant::CrAckerman => Ratio::from_integer(7),
        }
    }
}

/// `m^3 / (c n^2)` when the variant's edge threshold holds.
pub fn crossing_lemma_lower(n: u64, m: u64, variant: LemmaVariant) -> Option<Ratio<i128>> {
    let (n, m) = (n as i128, m as i128);
    if n == 0 || Ratio::from_integer(m) < variant.threshold() * n {
        return None;
    }
    Some(Ratio::from_integer(m * m * m) / (variant.constant() * n * n))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaBound {
    pub variant: LemmaVariant,
    pub applicable: bool,
    /// Smallest integer at least the bound; 0 when not applicable.
    pub ceil: u64,
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub mk_upper: UpperBound,
    pub modd_upper: u64,
    pub ocr_linear_lower: u64,
    pub lemmas: Vec<LemmaBound>,
    pub simple: bool,
    pub odd_pairs: u64,
    pub crossings: u64,
    pub star_admissible: bool,
    pub k_plane: bool,
    pub k_odd_plane: bool,
    pub checks: Vec<Check>,
}

impl BoundReport {
    /// No applicable check failed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }
}

/// Checks a concrete drawing against every applicable bound. A failed check
/// means a bug here, not a flaw in the bound. Bounds for simple graphs are
/// skipped for multigraphs.
pub fn audit_drawing(d: &Drawing, k: u64) -> BoundReport {
    let n = d.vertex_count() as u64;
    let m = d.edge_count() as u64;
    let stats = d.crossing_stats();
    let simple = d.graph().is_simple();
    let odd = stats.ocr as u64;
    let cr = stats.cr as u64;
    let k_plane = d.is_k_class(k as usize, PlanarityMode::Plane);
    let k_odd_plane = d.is_k_class(k as usize, PlanarityMode::OddPlane);
    let mk = mk_upper(k, n.max(1));
    let modd = modd_upper(k, n.max(1));
    let lin = ocr_linear_lower(n, m);

    let lemmas: Vec<LemmaBound> = LemmaVariant::ALL
        .iter()
        .map(|&variant| match crossing_lemma_lower(n, m, variant) {
            Some(r) => LemmaBound {
                variant,
                applicable: true,
                ceil: r.ceil().to_integer() as u64,
                value: Some(*r.numer() as f64 / *r.denom() as f64),
            },
            None => LemmaBound { variant, applicable: false, ceil: 0, value: None },
        })
        .collect();
    let lemma = |v: LemmaVariant| lemmas.iter().find(|l| l.variant == v).unwrap();

    let mut checks = Vec::new();
    let mut push = |name: &str, applicable: bool, passed: bool, detail: String| {
        checks.push(Check { name: name.into(), applicable, passed: !applicable || passed, detail });
    };
    push("ocr-linear", simple, odd >= lin, format!("odd pairs {odd} >= {lin}"));
    let star = lemma(LemmaVariant::OcrStar);
    push(
        "ocr-star-lemma",
        simple && star.applicable && stats.star_admissible,
        odd >= star.ceil,
        format!("odd pairs {odd} >= {} (m >= 6n, adjacent pairs even)", star.ceil),
    );
    let pt = lemma(LemmaVariant::OcrPt);
    push("ocr-lemma", simple && pt.applicable, odd >= pt.ceil, format!("odd pairs {odd} >= {} (m >= 4n)", pt.ceil));
    let classic = lemma(LemmaVariant::CrClassic);
    push(
        "cr-lemma",
        simple && classic.applicable,
        cr >= classic.ceil,
        format!("crossings {cr} >= {} (m >= 4.5n)", classic.ceil),
    );
    push("modd-upper", simple && k_odd_plane, m <= modd, format!("{m} edges <= {modd} (k-odd-plane)"));
    push(
        "mk-upper",
        simple && k_plane && mk.exact,
        m <= mk.value,
        format!("{m} edges <= {} (k-plane, exact)", mk.value),
    );

    BoundReport {
        n,
        m,
        k,
        mk_upper: mk,
        modd_upper: modd,
        ocr_linear_lower: lin,
        lemmas,
        simple,
        odd_pairs: odd,
        crossings: cr,
        star_admissible: stats.star_admissible,
        k_plane,
        k_odd_plane,
        checks,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub n: u64,
    pub m: u64,
    pub odd_pairs: u64,
    pub mean_n: f64,
    pub se_n: f64,
    pub mean_m: f64,
    pub se_m: f64,
    pub mean_x: f64,
    pub se_x: f64,
    /// `p n`.
    pub expected_n: f64,
    /// Sum over edges of `p^(number of ends)`; `p^2 m` without loops.
    pub expected_m: f64,
    /// Sum over odd pairs of `p^(vertices spanned)`; `p^4` times the odd
    /// pairs when no adjacent pair is odd.
    pub expected_x: f64,
    /// Samples with `x < 2m' - 8n'`.
    pub law_violations: u64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Sample {
    n: u64,
    m: u64,
    x: u64,
}

/// Samples vertex subsets independently with probability `p` and records the
/// size of each induced subdrawing and its odd pairs. Trial `t` draws from
/// `ChaCha8Rng::seed_from_u64(seed + t)`, so results do not depend on
/// scheduling.
pub fn sampling_experiment(d: &Drawing, p: f64, trials: u64, seed: u64) -> Result<SampleStats, BoundsError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(BoundsError::InvalidProbability(p));
    }
    if trials == 0 {
        return Err(BoundsError::NoTrials);
    }
    let g = d.graph();
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (g.vertex_index(e.ends.0).unwrap(), g.vertex_index(e.ends.1).unwrap()))
        .collect();
    let sk = ParitySketch::of(d);
    let odd: Vec<(usize, usize)> = sk
        .odd_pairs()
        .iter()
        .map(|&(a, b)| (g.edge_index(a).unwrap(), g.edge_index(b).unwrap()))
        .collect();
    let n = g.vertex_count();

    let samples: Vec<Sample> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
            let kept: Vec<bool> = ends.iter().map(|&(a, b)| keep[a] && keep[b]).collect();
            Sample {
                n: keep.iter().filter(|&&x| x).count() as u64,
                m: kept.iter().filter(|&&x| x).count() as u64,
                x: odd.iter().filter(|&&(a, b)| kept[a] && kept[b]).count() as u64,
            }
        })
        .collect();

    let (mean_n, se_n) = mean_se(samples.iter().map(|s| s.n as f64));
    let (mean_m, se_m) = mean_se(samples.iter().map(|s| s.m as f64));
    let (mean_x, se_x) = mean_se(samples.iter().map(|s| s.x as f64));
    let law_violations = samples.iter().filter(|s| (s.x as i64) < 2 * s.m as i64 - 8 * s.n as i64).count() as u64;
    let spanned = |vs: &[usize]| {
        let mut v = vs.to_vec();
        v.sort_unstable();
        v.dedup();
        p.powi(v.len() as i32)
    };
    Ok(SampleStats {
        p,
        trials,
        seed,
        n: n as u64,
        m: ends.len() as u64,
        odd_pairs: odd.len() as u64,
        mean_n,
        se_n,
        mean_m,
        se_m,
        mean_x,
        se_x,
        expected_n: p * n as f64,
        expected_m: ends.iter().map(|&(a, b)| spanned(&[a, b])).sum(),
        expected_x: odd
            .iter()
            .map(|&(e, f)| spanned(&[ends[e].0, ends[e].1, ends[f].0, ends[f].1]))
            .sum(),
        law_violations,
    })
}

fn mean_se(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
