use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SMALL: &str = "v1,v2,1,3\nv2,v0,3,5\nv0,v1,4,3\nv1,v2,5,7\nv2,v1,7,2\nv2,v0,8,1\n";

fn tinprov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tinprov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parses snapshot CSV into records keyed by header name.
fn rows(csv_text: &str) -> Vec<HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = r.headers().unwrap().clone();
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            headers
                .iter()
                .map(str::to_owned)
                .zip(rec.iter().map(str::to_owned))
                .collect()
        })
        .collect()
}

fn per_origin(rows: &[HashMap<String, String>], vertex: &str) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64)> = rows
        .iter()
        .filter(|r| r["vertex"] == vertex)
        .map(|r| (r["origin"].clone(), r["quantity"].parse().unwrap()))
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

fn report_value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in report:\n{text}"))
        .to_owned()
}

#[test]
fn lifo_final_snapshot() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "small.csv", SMALL);
    let out = tinprov(&["--policy", "lifo", s(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = rows(&stdout(&out));
    let v = |o: &str, q: f64| (o.to_owned(), q);
    assert_eq!(per_origin(&rows, "v0"), vec![v("v1", 1.0), v("v1", 2.0)]);
    assert_eq!(per_origin(&rows, "v1"), vec![v("v1", 2.0)]);
    assert_eq!(
        per_origin(&rows, "v2"),
        vec![v("v1", 1.0), v("v1", 1.0), v("v2", 2.0)]
    );
}

#[test]
fn lifo_paths_column() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "small.csv", SMALL);
    let out = tinprov(&["--policy", "lifo", "--paths", s(&input)]);
    let text = stdout(&out);
    assert!(text.starts_with("vertex,origin,quantity,path\n"));
    let at_v0: Vec<_> = rows(&text)
        .into_iter()
        .filter(|r| r["vertex"] == "v0")
        .collect();
    assert_eq!(at_v0.len(), 2);
    assert!(at_v0.iter().all(|r| r["path"] == "v1>v2"));
    assert!(
        report_value(&stderr(&out), "average_path_len")
            .parse::<f64>()
            .unwrap()
            > 1.0
    );
}

#[test]
fn empty_input_all_zero_report() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.csv", "");
    let out = tinprov(&["--policy", "noprov", s(&input)]);
    assert!(out.status.success());
    let report = stderr(&out);
    assert_eq!(report_value(&report, "interactions"), "0");
    assert_eq!(report_value(&report, "total_quantity"), "0");
    assert_eq!(report_value(&report, "peak_entries"), "0");
    assert_eq!(stdout(&out), "vertex,origin,quantity\n");
}

#[test]
fn budget_stream_reaches_worked_state() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "budget.csv",
        "v,H,1,1\nu,H,2,3\nw,H,3,2\nz,H,4,1\nx,S,5,2\nw,S,6,1\ny,S,7,4\nS,H,8,7\n",
    );
    let out = tinprov(&[
        "--policy",
        "prop-sparse",
        "--budget",
        "C=5,f=0.6",
        s(&input),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = rows(&stdout(&out));
    let want: Vec<(String, f64)> = [("?", 4.0), ("u", 3.0), ("w", 3.0), ("y", 4.0)]
        .iter()
        .map(|&(o, q)| (o.to_owned(), q))
        .collect();
    assert_eq!(per_origin(&rows, "H"), want);
    assert_eq!(report_value(&stderr(&out), "avg_shrinks_per_nonempty"), "1");
}

#[test]
fn bad_combinations_fail_before_reading_input() {
    let missing = "/nonexistent/stream.csv";
    for args in [
        vec!["--policy", "prop-dense", "--paths"],
        vec!["--policy", "lifo", "--window", "10"],
        vec!["--policy", "fifo", "--selective", "topk=3"],
        vec!["--policy", "noprov", "--budget", "C=5,f=0.5"],
        vec!["--policy", "prop-sparse", "--budget", "C=5,f=1.5"],
        vec!["--policy", "prop-sparse", "--budget", "five"],
        vec![
            "--policy",
            "prop-sparse",
            "--window",
            "5",
            "--budget",
            "C=5",
        ],
        vec!["--policy", "fifo", "--alert-threshold", "10"],
        vec!["--policy", "lrb", "--snapshot-at", "every-k=0"],
    ] {
        let mut full = args.clone();
        full.push(missing);
        let out = tinprov(&full);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert!(err.contains("configuration"), "{args:?}: {err}");
    }
}

#[test]
fn strict_rejects_bad_lines() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.csv", "a,b,1,5\na,b,2,0\na,b,x,1\n");
    let lenient = tinprov(&["--policy", "fifo", s(&input)]);
    assert!(lenient.status.success());
    let err = stderr(&lenient);
    assert!(err.contains("line 2") && err.contains("line 3"), "{err}");
    let strict = tinprov(&["--policy", "fifo", "--strict", s(&input)]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).is_empty());
}

#[test]
fn out_of_order_input_is_sorted_with_warning() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "shuffled.csv", "b,c,2,1\na,b,1,1\n");
    let out = tinprov(&["--policy", "fifo", s(&input)]);
    assert!(stderr(&out).contains("not in time order"));
    // a→b happened first, so b relays a's unit
    assert_eq!(
        per_origin(&rows(&stdout(&out)), "c"),
        vec![("a".to_owned(), 1.0)]
    );
}

#[test]
fn json_output_parses() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "small.csv", SMALL);
    let out = tinprov(&["--policy", "prop-dense", "--format", "json", s(&input)]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["interactions"], 6);
    let v0 = doc["snapshots"][0]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["vertex"] == "v0")
        .unwrap();
    let from_v1 = v0["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["origin"] == "v1")
        .unwrap()["quantity"]
        .as_f64()
        .unwrap();
    assert!((from_v1 - 71.0 / 35.0).abs() < 1e-9);
}

#[test]
fn snapshot_every_k() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "small.csv", SMALL);
    let out = tinprov(&["--policy", "lrb", "--snapshot-at", "every-k=2", s(&input)]);
    let rows = rows(&stdout(&out));
    let mut afters: Vec<&str> = rows.iter().map(|r| r["after"].as_str()).collect();
    afters.dedup();
    assert_eq!(afters, vec!["2", "4", "6"]);
    assert!(rows.iter().all(|r| !r["birth_time"].is_empty()));
}

#[test]
fn selective_and_grouped_scopes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "small.csv", SMALL);

    let top = tinprov(&[
        "--policy",
        "prop-sparse",
        "--selective",
        "topk=1",
        s(&input),
    ]);
    assert!(top.status.success(), "{}", stderr(&top));
    let origins: Vec<String> = rows(&stdout(&top))
        .into_iter()
        .map(|r| r["origin"].clone())
        .collect();
    assert!(origins.iter().all(|o| o == "v1" || o == "*"), "{origins:?}");
    assert!(origins.iter().any(|o| o == "*"));

    let list = write(&dir, "tracked.txt", "v2\n");
    let picked = tinprov(&[
        "--policy",
        "prop-sparse",
        "--selective",
        s(&list),
        s(&input),
    ]);
    let origins: Vec<String> = rows(&stdout(&picked))
        .into_iter()
        .map(|r| r["origin"].clone())
        .collect();
    assert!(origins.iter().any(|o| o == "v2") && origins.iter().any(|o| o == "*"));

    let groups = write(&dir, "groups.csv", "v0,left\nv1,left\nv2,right\n");
    let grouped = tinprov(&["--policy", "prop-dense", "--groups", s(&groups), s(&input)]);
    assert!(grouped.status.success(), "{}", stderr(&grouped));
    let rows = rows(&stdout(&grouped));
    assert!(rows
        .iter()
        .all(|r| r["origin"] == "left" || r["origin"] == "right"));

    let partial = write(&dir, "partial.csv", "v0,left\nv1,left\n");
    let bad = tinprov(&["--policy", "prop-dense", "--groups", s(&partial), s(&input)]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("v2"));
}

#[test]
fn alert_threshold() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.csv", "a,b,1,20000\nb,c,2,20000\n");
    let out = tinprov(&[
        "--policy",
        "prop-sparse",
        "--alert-threshold",
        "10000",
        s(&input),
    ]);
    let err = stderr(&out);
    assert!(
        err.contains("alert: interaction=1 vertex=c total=20000 contributors=1"),
        "{err}"
    );
    assert_eq!(report_value(&err, "alerts"), "1");
    let none = tinprov(&[
        "--policy",
        "prop-sparse",
        "--alert-threshold",
        "inf",
        s(&input),
    ]);
    assert_eq!(report_value(&stderr(&none), "alerts"), "0");
}

#[test]
fn synth_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = tinprov(&[
            "--synth",
            "hub",
            "--vertices",
            "50",
            "--interactions",
            "500",
            "--seed",
            "4",
            "--write-stream",
            s(p),
            "--policy",
            "fifo",
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    // the saved stream replays to the same snapshot
    let from_file = tinprov(&["--policy", "fifo", s(&a)]);
    let direct = tinprov(&[
        "--synth",
        "hub",
        "--vertices",
        "50",
        "--interactions",
        "500",
        "--seed",
        "4",
        "--policy",
        "fifo",
    ]);
    let sorted = |o: &Output| {
        let mut lines: Vec<String> = stdout(o).lines().map(str::to_owned).collect();
        lines.sort();
        lines
    };
    assert_eq!(sorted(&from_file), sorted(&direct));
}

#[test]
fn report_matches_snapshot() {
    let out = tinprov(&[
        "--synth",
        "uniform",
        "--vertices",
        "40",
        "--interactions",
        "2000",
        "--policy",
        "prop-sparse",
    ]);
    let rows = rows(&stdout(&out));
    let report = stderr(&out);
    let mut vertices: Vec<&str> = rows.iter().map(|r| r["vertex"].as_str()).collect();
    vertices.sort();
    vertices.dedup();
    assert_eq!(
        report_value(&report, "nonempty_buffers"),
        vertices.len().to_string()
    );
    let sum: f64 = rows
        .iter()
        .map(|r| r["quantity"].parse::<f64>().unwrap())
        .sum();
    let total: f64 = report_value(&report, "total_quantity").parse().unwrap();
    assert!((sum - total).abs() <= 1e-6 * total);
    assert_eq!(
        report_value(&report, "final_entries"),
        rows.len().to_string()
    );
}

#[test]
fn top_n_limits_snapshot() {
    let out = tinprov(&[
        "--synth",
        "uniform",
        "--vertices",
        "40",
        "--interactions",
        "500",
        "--policy",
        "lrb",
        "--top",
        "3",
    ]);
    let rows = rows(&stdout(&out));
    let mut vertices: Vec<&str> = rows.iter().map(|r| r["vertex"].as_str()).collect();
    vertices.sort();
    vertices.dedup();
    assert_eq!(vertices.len(), 3);
}
