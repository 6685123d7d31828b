use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn qmed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmed"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("qmed runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = qmed(args);
    assert!(o.status.success(), "qmed {args:?} failed: {}", stderr(&o));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("valid JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const THREE: &str = "x,y\n0,0\n0.5,1\n1,0.5\n";
const SIX: &str = "-2,-2\n-1,3\n1,-1\n2,2\n3,4\n4,0\n";
const SYMMETRIC: &str = "1,0\n0,1\n-1,0\n0,-1\n";

fn has_solution(doc: &Value, theta: [f64; 2], alpha: f64) -> bool {
    doc["report"]["solutions"].as_array().unwrap().iter().any(|sol| {
        let t = &sol["theta"];
        (t[0].as_f64().unwrap() - theta[0]).abs() < 1e-12
            && (t[1].as_f64().unwrap() - theta[1]).abs() < 1e-12
            && (sol["alpha"].as_f64().unwrap() - alpha).abs() < 1e-12
    })
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn solve_three_points() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "three.csv", THREE);
    let doc = json(&["solve", "--input", s(&f), "--json", "--max-solutions", "100"]);
    assert!(has_solution(&doc, [0.5, 0.5], 0.0));
    let c = &doc["report"]["canonical"];
    for m in c["half_masses"].as_array().unwrap() {
        assert!(m.as_f64().unwrap() >= 0.5 - 1e-12);
    }
    for m in c["quad_masses"].as_array().unwrap() {
        assert!(m.as_f64().unwrap() >= 0.25 - 1e-12);
    }
    assert_eq!(doc["report"]["observations"], 3);
    assert_eq!(doc["manifest"]["tool"], "qmed");
}

#[test]
fn solve_six_points() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    let doc = json(&["solve", "--input", s(&f), "--json", "--max-solutions", "1000"]);
    assert!(has_solution(&doc, [2.0, 2.0], 0.0));
    assert!(!has_solution(&doc, [1.5, 1.0], 0.0));
    assert_eq!(
        doc["report"]["solution_count"].as_u64().unwrap() as usize,
        doc["report"]["solutions"].as_array().unwrap().len()
    );
}

#[test]
fn solve_scan_agrees_on_canonical_frame_validity() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    let doc = json(&["solve", "--input", s(&f), "--method", "scan", "--grid", "720", "--json"]);
    assert_eq!(doc["report"]["method"], "scan");
    let c = &doc["report"]["canonical"];
    assert!(c["quad_masses"].as_array().unwrap().iter().all(|m| m.as_f64().unwrap() >= 0.25 - 1e-12));
}

#[test]
fn solve_text_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "three.csv", THREE);
    let out = ok(&["solve", "--input", s(&f)]);
    assert!(out.starts_with("# qmed "));
    assert!(out.contains("# master_seed: -"));
    assert!(out.contains("alpha (rad)"));
}

#[test]
fn malformed_input_names_the_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.csv", "x,y\n1,2\na,b\n");
    let o = qmed(&["solve", "--input", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("a,b"), "{err}");
}

#[test]
fn empty_and_missing_inputs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.csv", "");
    assert_eq!(qmed(&["solve", "--input", s(&f)]).status.code(), Some(2));
    let f = write(&dir, "header.csv", "x,y\n");
    assert_eq!(qmed(&["curve", "--input", s(&f)]).status.code(), Some(2));
    let missing = dir.path().join("nope.csv");
    assert_eq!(qmed(&["scan", "--input", s(&missing)]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qmed(&["solve"]).status.code(), Some(2));
    assert_eq!(qmed(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qmed(&["sample", "--n", "5", "--family", "gumbel"]).status.code(), Some(2));
    assert_eq!(qmed(&["sample", "--n", "0"]).status.code(), Some(2));
    assert_eq!(qmed(&["simulate", "--reps", "2", "--estimators", "qmed,median"]).status.code(), Some(2));
}

#[test]
fn curve_grid_sizes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    for grid in [8, 16] {
        let out = ok(&["curve", "--input", s(&f), "--grid", &grid.to_string()]);
        let rows = data_rows(&out);
        assert_eq!(rows.len(), grid);
        assert!(out.lines().any(|l| l == "alpha,x,y,valid"));
    }
    assert_eq!(qmed(&["curve", "--input", s(&f), "--grid", "4"]).status.code(), Some(2));
}

#[test]
fn six_point_curve_at_zero_is_invalid() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    let rows = data_rows(&ok(&["curve", "--input", s(&f), "--grid", "8"]));
    assert_eq!(rows[0], ["0", "1.5", "1", "false"]);
}

#[test]
fn symmetric_curve_is_a_valid_point() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sym.csv", SYMMETRIC);
    let rows = data_rows(&ok(&["curve", "--input", s(&f), "--grid", "32"]));
    for r in rows {
        assert_eq!(&r[1..], ["0", "0", "true"]);
    }
}

#[test]
fn curve_and_scan_write_files() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    let svg = dir.path().join("c.svg");
    let csv = dir.path().join("c.csv");
    let doc = json(&["curve", "--input", s(&f), "--out-svg", s(&svg), "--out-csv", s(&csv), "--json"]);
    assert_eq!(doc["report"]["files"].as_array().unwrap().len(), 2);
    let text = fs::read_to_string(&svg).unwrap();
    let tree = roxmltree::Document::parse(&text).expect("well-formed SVG");
    assert_eq!(tree.root_element().tag_name().name(), "svg");
    assert!(tree.descendants().any(|n| n.attribute("class") == Some("invalid")));
    assert!(fs::read_to_string(&csv).unwrap().starts_with("# qmed "));

    let svg = dir.path().join("s.svg");
    ok(&["scan", "--input", s(&f), "--out-svg", s(&svg)]);
    let text = fs::read_to_string(&svg).unwrap();
    let tree = roxmltree::Document::parse(&text).expect("well-formed SVG");
    assert!(tree.descendants().any(|n| n.attribute("class") == Some("reference")));
}

#[test]
fn large_curve_svg_stays_small() {
    let dir = TempDir::new().unwrap();
    let data: String = (0..200).map(|i| format!("{},{}\n", (i * 37 % 101) as f64 / 7.0, (i * 53 % 89) as f64 / 3.0)).collect();
    let f = write(&dir, "many.csv", &data);
    let svg = dir.path().join("big.svg");
    ok(&["curve", "--input", s(&f), "--grid", "10000", "--out-svg", s(&svg)]);
    let len = fs::metadata(&svg).unwrap().len();
    assert!(len < 2_000_000, "{len} bytes");
    roxmltree::Document::parse(&fs::read_to_string(&svg).unwrap()).expect("well-formed SVG");
}

#[test]
fn unwritable_output_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    let target = dir.path().join("missing-dir").join("c.svg");
    assert_eq!(qmed(&["curve", "--input", s(&f), "--out-svg", s(&target)]).status.code(), Some(3));
    let target = dir.path().join("missing-dir").join("s.csv");
    assert_eq!(qmed(&["sample", "--n", "3", "--out-csv", s(&target)]).status.code(), Some(3));
}

#[test]
fn scan_counts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.csv", "3,4\n");
    let rows = data_rows(&ok(&["scan", "--input", s(&f), "--grid", "16"]));
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r[1] == "0"));

    let f = write(&dir, "sym.csv", SYMMETRIC);
    let doc = json(&["scan", "--input", s(&f), "--grid", "16", "--out-csv", s(&dir.path().join("s.csv")), "--json"]);
    let r = &doc["report"];
    assert_eq!(r["quarter"], 1.0);
    assert_eq!(r["max_count"], 1.0);
    assert!(r["hits"].as_u64().unwrap() > 0);
}

#[test]
fn sample_is_reproducible() {
    let a = ok(&["sample", "--n", "5", "--seed", "7"]);
    let b = ok(&["sample", "--n", "5", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(data_rows(&a).len(), 5);
    assert!(a.contains("# master_seed: 7"));
    let c = ok(&["sample", "--n", "5", "--seed", "8"]);
    assert_ne!(data_rows(&a), data_rows(&c));
}

#[test]
fn pearson2_sample_lies_in_unit_disk() {
    let out = ok(&["sample", "--n", "2000", "--family", "pearson2"]);
    for r in data_rows(&out) {
        let (x, y): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        assert!(x * x + y * y <= 1.0, "({x}, {y})");
    }
}

#[test]
fn cauchy_sample_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("cauchy.csv");
    ok(&["sample", "--n", "10000", "--family", "cauchy", "--out-csv", s(&path)]);
    let text = fs::read_to_string(&path).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 10_000);
    for r in &rows {
        for v in r {
            let x: f64 = v.parse().unwrap();
            assert_eq!(format!("{x}"), *v);
        }
    }
    let doc = json(&["curve", "--input", s(&path), "--grid", "8", "--out-csv", s(&dir.path().join("c.csv")), "--json"]);
    assert_eq!(doc["report"]["observations"], 10_000);
}

#[test]
fn sample_feeds_solve() {
    let dir = TempDir::new().unwrap();
    let families = ["normal", "double_exponential", "cauchy", "pearson2", "logistic"];
    for seed in 0..100u64 {
        let n = 1 + (seed * 7919 % 30);
        let path = dir.path().join("s.csv");
        ok(&[
            "sample",
            "--n",
            &n.to_string(),
            "--seed",
            &seed.to_string(),
            "--family",
            families[seed as usize % 5],
            "--lambda",
            "0.5",
            "--out-csv",
            s(&path),
        ]);
        ok(&["solve", "--input", s(&path)]);
    }
}

#[test]
fn simulate_smoke() {
    let doc = json(&["simulate", "--n", "20", "--reps", "2", "--estimators", "qmed,smed,omed,tmed,mean", "--json"]);
    let est = doc["report"]["estimators"].as_array().unwrap();
    assert_eq!(est.len(), 5);
    assert_eq!(doc["manifest"]["master_seed"], 1);
    assert_eq!(doc["report"]["reps"], 2);
}

#[test]
fn full_scale_rejects_model_flags() {
    assert_eq!(qmed(&["simulate", "--full-scale", "--family", "cauchy"]).status.code(), Some(2));
}

#[test]
fn efficiencies_table() {
    let doc = json(&["efficiencies", "--json"]);
    let rows = doc["report"].as_array().unwrap();
    let row = |name: &str| rows.iter().find(|r| r["family"] == name).unwrap().clone();
    let close = |v: &Value, x: f64| (v.as_f64().unwrap() - x).abs() < 1e-8;
    assert!(close(&row("normal")["eff_qmed_ml"], 2.0 / PI));
    assert!(close(&row("normal")["eff_mean_ml"], 1.0));
    assert!(close(&row("cauchy")["eff_qmed_ml"], 20.0 / (3.0 * PI * PI)));
    assert!(row("cauchy")["eff_mean_ml"].is_null());
    assert!(close(&row("logistic")["eff_mean_ml"], 0.90686321));
    assert!(close(&row("logistic")["eff_qmed_ml"], 0.46253446));

    let text = ok(&["efficiencies"]);
    assert!(text.contains("0.63661977"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", SIX);
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve", "--input", s(&f), "--json"],
        vec!["curve", "--input", s(&f), "--grid", "64"],
        vec!["scan", "--input", s(&f), "--grid", "64"],
        vec!["sample", "--n", "50", "--family", "logistic", "--lambda", "0.3"],
        vec!["simulate", "--n", "30", "--reps", "5", "--estimators", "qmed,smed"],
        vec!["efficiencies"],
    ];
    for args in runs {
        assert_eq!(ok(&args), ok(&args), "{args:?}");
    }
}
