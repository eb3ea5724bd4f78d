//! `oddplane` command line. Reports go to stdout as canonical JSON, a short
//! human summary goes to stderr.
//!
//! Exit codes: 0 success, 1 invalid input or failed precondition, 2 usage
//! error, 3 budget exceeded. Worker threads come from `ODDPLANE_THREADS`
//! (default: available parallelism). Randomized commands take `--seed`,
//! default 0, and echo it in their report.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use oddplane::bounds::{
    audit_drawing, crossing_lemma_lower, mk_upper, modd_upper, ocr_linear_lower, sampling_experiment, LemmaVariant,
};
use oddplane::io::{
    parse_drawing, render_svg, to_canonical_json, DrawingDocument, GraphSection, Meta, RenderOptions, TraceDocument,
};
use oddplane::oracle::{
    convex_drawing, exact_crossing_value, extremal_search, k_odd_plane_drawing, perturb_even, random_graph,
    random_planar_drawing, EnumerationBudget, OracleValue, SearchBudget,
};
use oddplane::redraw::{hanani_tutte_embed, lemma1_redraw, theorem2_transform, OneVertexSketch};
use oddplane::{Drawing, Edge, EdgeId, Multigraph, OracleError, ParitySketch, PlanarityMode, RedrawError, Rule, Variant, VertexId};

const THREADS_VAR: &str = "ODDPLANE_THREADS";

#[derive(Parser)]
#[command(name = "oddplane", version, about = "Combinatorial drawings, parity redrawing and crossing bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a drawing document.
    Validate { file: PathBuf },
    /// Crossing counts and all crossing-number variants of a drawing.
    Stats { file: PathBuf },
    /// Redraw a one-vertex drawing so odd pairs cross once and even pairs not at all.
    #[command(name = "redraw-lemma1")]
    RedrawLemma1 { file: PathBuf },
    /// Turn a k-odd-plane drawing into a k-plane drawing of a large subgraph.
    Transform {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Crossing-free redrawing of a drawing whose pairs all cross evenly.
    Embed { file: PathBuf },
    /// Edge-count and crossing-number bounds for given parameters.
    Bounds {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Check a drawing against every applicable bound.
    Audit {
        file: PathBuf,
        #[arg(long)]
        k: u64,
    },
    /// Random vertex-sampling experiment.
    Sample {
        file: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact crossing-number value of a small graph by exhaustive search.
    Oracle {
        /// Drawing document or bare graph section (`vertices`, `edges`).
        graph: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "zero")]
        rule: RuleArg,
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        max_candidates: Option<usize>,
        #[arg(long)]
        time_limit_ms: Option<u64>,
    },
    /// Local search for a dense k-odd-plane drawing.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
        /// Moves per restart.
        #[arg(long, default_value_t = 400)]
        budget: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded drawing generator.
    Generate {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Finger moves applied after the base drawing.
        #[arg(long, default_value_t = 0)]
        moves: usize,
        /// Odd-crossing limit for the `k-odd-plane` model.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a drawing as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 640)]
        size: u32,
        #[arg(long)]
        no_labels: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Cr,
    Pcr,
    Ocr,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Plus,
    Zero,
    Minus,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    /// Straight lines, vertices in convex position.
    Convex,
    /// Random plane drawing with `m - n + 1` chords, then finger moves.
    Planar,
    /// Convex drawing thinned to k-odd-plane, then finger moves.
    KOddPlane,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Cr => Variant::Cr,
            VariantArg::Pcr => Variant::Pcr,
            VariantArg::Ocr => Variant::Ocr,
        }
    }
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Plus => Rule::Plus,
            RuleArg::Zero => Rule::Zero,
            RuleArg::Minus => Rule::Minus,
            RuleArg::Star => Rule::Star,
        }
    }
}

enum Failure {
    Invalid(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

/// Error message prefixed with the variant name, e.g. `OddPairPresent: ...`.
fn named<E: std::fmt::Debug + std::fmt::Display>(e: &E) -> String {
    let debug = format!("{e:?}");
    let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    format!("{name}: {e}")
}

fn redraw_failure(e: RedrawError) -> Failure {
    Failure::Invalid(named(&e))
}

struct Report {
    json: String,
    summary: String,
}

fn report<T: Serialize>(value: &T, summary: impl Into<String>) -> Report {
    Report { json: to_canonical_json(value), summary: summary.into() }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Drawing, Failure> {
    parse_drawing(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {}", path.display(), named(&e))))
}

fn load_graph(path: &Path) -> Result<Multigraph, Failure> {
    let bytes = read(path)?;
    let value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Invalid(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    if value.get("format").is_some() {
        return Ok(load(path)?.graph().clone());
    }
    let section: GraphSection = serde_json::from_value(value.get("graph").cloned().unwrap_or(value))
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let edges = section
        .edges
        .iter()
        .map(|e| Edge { id: EdgeId(e.id), ends: (VertexId(e.ends[0]), VertexId(e.ends[1])) })
        .collect();
    Multigraph::new(section.vertices.into_iter().map(VertexId).collect(), edges)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn document(d: &Drawing) -> DrawingDocument {
    DrawingDocument::from_drawing(d, None)
}

fn run(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Validate { file } => {
            let bytes = read(&file)?;
            let d = parse_drawing(&bytes).map_err(|e| Failure::Invalid(named(&e)))?;
            Ok(report(
                &json!({"valid": true, "vertices": d.vertex_count(), "edges": d.edge_count(), "crossing_nodes": d.crossing_node_count()}),
                format!("valid: {} vertices, {} edges, {} crossings", d.vertex_count(), d.edge_count(), d.crossing_node_count()),
            ))
        }
        Command::Stats { file } => {
            let d = load(&file)?;
            let s = d.crossing_stats();
            let mut table = Vec::new();
            for v in Variant::ALL {
                for r in Rule::ALL {
                    table.push(json!({"variant": v, "rule": r, "value": s.value(v, r)}));
                }
            }
            let summary = format!("cr {} pcr {} ocr {} (rule 0)", s.cr, s.pcr, s.ocr);
            Ok(report(&json!({"stats": s, "variants": table}), summary))
        }
        Command::RedrawLemma1 { file } => {
            let d = load(&file)?;
            let sketch =
                OneVertexSketch::from_parity_sketch(&ParitySketch::of(&d)).map_err(redraw_failure)?;
            let out = lemma1_redraw(&sketch);
            let summary = format!("{} loops, {} crossings", sketch.loops().len(), out.crossing_node_count());
            Ok(report(&document(&out), summary))
        }
        Command::Transform { file, k } => {
            let d = load(&file)?;
            let t = theorem2_transform(&d, k).map_err(redraw_failure)?;
            let summary = format!(
                "kept {} of {} edges ({} removed), {} crossings, {}-plane: {}",
                t.output.edge_count(),
                d.edge_count(),
                t.removed.len(),
                t.output.crossing_node_count(),
                k,
                t.output.is_k_class(k, PlanarityMode::Plane)
            );
            Ok(report(&json!({"drawing": document(&t.output), "trace": TraceDocument::from(&t)}), summary))
        }
        Command::Embed { file } => {
            let d = load(&file)?;
            let out = hanani_tutte_embed(&d).map_err(redraw_failure)?;
            Ok(report(&document(&out), format!("plane drawing with {} edges", out.edge_count())))
        }
        Command::Bounds { k, n, m } => {
            let mk = mk_upper(k, n);
            let mut v = json!({"k": k, "n": n, "mk_upper": mk, "modd_upper": modd_upper(k, n)});
            let mut summary = format!("mk_upper {}{} modd_upper {}", mk.value, if mk.exact { "" } else { " (upper)" }, modd_upper(k, n));
            if let Some(m) = m {
                let lemmas: Vec<Value> = [LemmaVariant::OcrStar, LemmaVariant::OcrPt, LemmaVariant::CrClassic, LemmaVariant::CrAckerman]
                    .into_iter()
                    .map(|lv| {
                        let lower = crossing_lemma_lower(n, m, lv);
                        json!({
                            "variant": lv,
                            "applicable": lower.is_some(),
                            "lower": lower.map(|r| format!("{}/{}", r.numer(), r.denom())),
                            "ceil": lower.map(|r| r.ceil().to_integer()),
                        })
                    })
                    .collect();
                v["m"] = json!(m);
                v["ocr_linear_lower"] = json!(ocr_linear_lower(n, m));
                v["lemmas"] = json!(lemmas);
                summary.push_str(&format!(" ocr >= {}", ocr_linear_lower(n, m)));
            }
            Ok(report(&v, summary))
        }
        Command::Audit { file, k } => {
            let d = load(&file)?;
            let r = audit_drawing(&d, k);
            if !r.all_passed() {
                let failed: Vec<&str> =
                    r.checks.iter().filter(|c| c.applicable && !c.passed).map(|c| c.name.as_str()).collect();
                println!("{}", to_canonical_json(&r).trim_end());
                return Err(Failure::Invalid(format!("failed checks: {}", failed.join(", "))));
            }
            let applied = r.checks.iter().filter(|c| c.applicable).count();
            Ok(report(&r, format!("{applied} applicable checks passed")))
        }
        Command::Sample { file, p, trials, seed } => {
            let d = load(&file)?;
            let s = sampling_experiment(&d, p, trials, seed).map_err(|e| Failure::Usage(named(&e)))?;
            let summary = format!(
                "seed {seed}: mean n' {:.4} (exp {:.4}), mean m' {:.4} (exp {:.4}), law violations {}",
                s.mean_n, s.expected_n, s.mean_m, s.expected_m, s.law_violations
            );
            Ok(report(&s, summary))
        }
        Command::Oracle { graph, variant, rule, max_crossings, max_candidates, time_limit_ms } => {
            let g = load_graph(&graph)?;
            let mut budget = EnumerationBudget::crossings(max_crossings);
            if let Some(c) = max_candidates {
                budget.max_candidates = c;
            }
            budget.time_limit = time_limit_ms.map(Duration::from_millis);
            let (variant, rule) = (Variant::from(variant), Rule::from(rule));
            let value = exact_crossing_value(&g, variant, rule, &budget).map_err(|e| match e {
                OracleError::BudgetExceeded => Failure::Budget(named(&e)),
                other => Failure::Invalid(named(&other)),
            })?;
            let summary = match value {
                OracleValue::Found(x) => format!("{variant:?} under rule {rule:?} = {x}"),
                OracleValue::LowerBoundOnly(x) => format!("{variant:?} under rule {rule:?} >= {x}"),
            };
            let v = json!({"variant": variant, "rule": rule, "max_crossings": max_crossings, "value": value});
            Ok(report(&v, summary))
        }
        Command::Search { k, n, budget, restarts, time_limit_ms, seed } => {
            let b = SearchBudget { iterations: budget, restarts, time_limit: time_limit_ms.map(Duration::from_millis) };
            let r = extremal_search(k, n, &b, seed);
            let summary = format!(
                "seed {seed}: {} edges (modd_upper {}, mk_upper {})",
                r.edges, r.modd_upper, r.mk_upper
            );
            let meta = Meta { seed: Some(seed), generator: Some("search".into()), k: Some(k as u64) };
            let v = json!({
                "k": k, "n": n, "seed": seed, "edges": r.edges, "modd_upper": r.modd_upper, "mk_upper": r.mk_upper,
                "stats": r.stats, "report": r.report, "drawing": DrawingDocument::from_drawing(&r.best, Some(meta)),
            });
            Ok(report(&v, summary))
        }
        Command::Generate { model, n, m, moves, k, seed } => {
            let (d, name) = match model {
                ModelArg::Convex => (perturb_even(&convex_drawing(&random_graph(n, m, seed), seed), moves, seed).0, "convex"),
                ModelArg::Planar => {
                    let extra = m.saturating_sub(n.saturating_sub(1) as usize);
                    (perturb_even(&random_planar_drawing(n, extra, seed), moves, seed).0, "planar")
                }
                ModelArg::KOddPlane => (k_odd_plane_drawing(n, m, k, moves, seed), "k-odd-plane"),
            };
            let meta = Meta { seed: Some(seed), generator: Some(name.into()), k: matches!(model, ModelArg::KOddPlane).then_some(k as u64) };
            let summary = format!("seed {seed}: {} vertices, {} edges, {} crossings", d.vertex_count(), d.edge_count(), d.crossing_node_count());
            Ok(report(&DrawingDocument::from_drawing(&d, Some(meta)), summary))
        }
        Command::Render { file, output, size, no_labels } => {
            let d = load(&file)?;
            let svg = render_svg(&d, &RenderOptions { size, labels: !no_labels }).map_err(|e| Failure::Invalid(named(&e)))?;
            std::fs::write(&output, &svg)
                .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", output.display())))?;
            let layout = if svg.contains(r#"data-layout="routed""#) { "routed" } else { "barycentric" };
            Ok(report(
                &json!({"output": output.display().to_string(), "layout": layout, "bytes": svg.len()}),
                format!("wrote {} ({layout} layout)", output.display()),
            ))
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot start {threads} threads: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(r) => {
            print!("{}", r.json);
            eprintln!("{}", r.summary);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Invalid(msg) | Failure::Usage(msg) | Failure::Budget(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
