use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use oddplane::io::parse_drawing;
use oddplane::PlanarityMode;
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus").join(name)
}

fn oddplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddplane")).args(args).env_remove("ODDPLANE_THREADS").output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = oddplane(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_for_one_odd_plane() {
    let v = ok_json(&["bounds", "--k", "1", "--n", "10"]);
    assert_eq!(v["modd_upper"], 41);
    assert_eq!(v["mk_upper"]["value"], 32);
    let v = ok_json(&["bounds", "--k", "0", "--n", "12", "--m", "30"]);
    assert_eq!(v["mk_upper"]["value"], 30);
    assert_eq!(v["ocr_linear_lower"], 0);
}

#[test]
fn validate_and_stats() {
    let v = ok_json(&["validate", path(&corpus("k5_one_crossing.json"))]);
    assert_eq!(v["crossing_nodes"], 1);
    let s = ok_json(&["stats", path(&corpus("k5_one_crossing.json"))]);
    assert_eq!(s["stats"]["cr"], 1);
    assert_eq!(s["variants"].as_array().unwrap().len(), 12);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": \"oddplane-drawing\", \"version\": 9}").unwrap();
    assert_eq!(oddplane(&["validate", path(&bad)]).status.code(), Some(1));
    assert_eq!(oddplane(&["validate", path(&dir.path().join("missing.json"))]).status.code(), Some(1));
}

#[test]
fn embed_rejects_odd_pairs() {
    let out = oddplane(&["embed", path(&corpus("k5_one_crossing.json"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("OddPairPresent"));

    let v = ok_json(&["embed", path(&corpus("perturbed_planar_n8.json"))]);
    let d = parse_drawing(serde_json::to_string(&v).unwrap().as_bytes()).unwrap();
    assert_eq!(d.crossing_node_count(), 0);
    assert_eq!(d.edge_count(), 9 + 7);
}

#[test]
fn transform_output_validates() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(&["transform", path(&corpus("one_odd_plane_n8.json")), "--k", "1"]);
    let drawing = dir.path().join("out.json");
    std::fs::write(&drawing, serde_json::to_string_pretty(&v["drawing"]).unwrap()).unwrap();
    assert_eq!(oddplane(&["validate", path(&drawing)]).status.code(), Some(0));
    let d = parse_drawing(&std::fs::read(&drawing).unwrap()).unwrap();
    assert!(d.is_k_class(1, PlanarityMode::Plane));
    assert!(v["trace"]["removed"].as_array().unwrap().len() <= 7);

    let out = oddplane(&["transform", path(&corpus("k5_one_crossing.json")), "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotKOddPlane"));
}

#[test]
fn redraw_lemma1_on_loops() {
    let input = parse_drawing(&std::fs::read(corpus("three_loops_perturbed.json")).unwrap()).unwrap();
    assert_eq!(input.crossing_node_count(), 7);
    let v = ok_json(&["redraw-lemma1", path(&corpus("three_loops_perturbed.json"))]);
    let d = parse_drawing(serde_json::to_string(&v).unwrap().as_bytes()).unwrap();
    assert_eq!(d.crossing_node_count(), 3);
    assert_eq!(d.rotation_system(), input.rotation_system());

    let out = oddplane(&["redraw-lemma1", path(&corpus("k5_one_crossing.json"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_exit_codes() {
    let v = ok_json(&["oracle", path(&corpus("k33_one_crossing.json")), "--variant", "pcr", "--max-crossings", "1"]);
    assert_eq!(v["value"]["kind"], "found");
    assert_eq!(v["value"]["value"], 1);

    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.json");
    std::fs::write(
        &g,
        r#"{"vertices": [0, 1, 2, 3], "edges": [
            {"id": 0, "ends": [0, 1]}, {"id": 1, "ends": [0, 2]}, {"id": 2, "ends": [0, 3]},
            {"id": 3, "ends": [1, 2]}, {"id": 4, "ends": [1, 3]}, {"id": 5, "ends": [2, 3]}]}"#,
    )
    .unwrap();
    let v = ok_json(&["oracle", path(&g), "--variant", "cr", "--rule", "plus", "--max-crossings", "0"]);
    assert_eq!(v["value"]["value"], 0);

    let out = oddplane(&[
        "oracle",
        path(&corpus("k5_one_crossing.json")),
        "--variant",
        "cr",
        "--max-crossings",
        "2",
        "--max-candidates",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(oddplane(&["bounds", "--k", "1"]).status.code(), Some(2));
    assert_eq!(oddplane(&["nonsense"]).status.code(), Some(2));
    assert_eq!(oddplane(&["sample", path(&corpus("triangle.json")), "--p", "1.5", "--trials", "3"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_oddplane"))
        .args(["bounds", "--k", "1", "--n", "5"])
        .env("ODDPLANE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("k5.svg");
    let v = ok_json(&["render", path(&corpus("k5_one_crossing.json")), "-o", path(&svg)]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<svg"));
    assert_eq!(text.matches("<polyline").count(), 10);
    assert_eq!(text.matches("<circle").count(), 5);
    assert_eq!(v["bytes"], text.len());
}

#[test]
fn randomized_commands_echo_seed_and_repeat() {
    let file = corpus("one_odd_plane_n8.json");
    for args in [
        vec!["sample", path(&file), "--p", "0.5", "--trials", "500", "--seed", "9"],
        vec!["generate", "--model", "k-odd-plane", "--n", "8", "--m", "18", "--k", "2", "--moves", "2", "--seed", "4"],
        vec!["search", "--k", "1", "--n", "7", "--budget", "60", "--restarts", "2", "--seed", "3"],
    ] {
        let a = oddplane(&args);
        let b = oddplane(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        let seed = v.get("seed").or_else(|| v["meta"].get("seed")).unwrap();
        assert_eq!(seed.to_string(), args[args.len() - 1]);
    }
    let v = ok_json(&["sample", path(&file), "--p", "0.5", "--trials", "10"]);
    assert_eq!(v["seed"], 0);
}
