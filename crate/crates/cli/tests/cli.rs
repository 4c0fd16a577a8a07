use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pushcops::game::Trace;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pushcops"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pushcops-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

const TRIANGLE: &str = "# directed triangle\n3 3\n0 1\n1 2\n2 0\n";

#[test]
fn solve_prints_json() {
    let dir = scratch("solve");
    let input = write(&dir, "tri.arcs", TRIANGLE);
    let (code, out, _) = run(bin().args(["solve", "--json", "--input"]).arg(&input));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "cop-win");
    assert_eq!(v["capture_rounds"], 2);

    let (code, out, _) =
        run(bin().args(["solve", "--json", "--push", "none", "--cop-number", "--cops", "3", "--input"]).arg(&input));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cop_number"], "2");
}

#[test]
fn missing_input_is_a_usage_error() {
    let (code, _, err) = run(bin().args(["solve", "--input", "/nonexistent/graph.arcs"]));
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/graph.arcs"), "{err}");
    let (code, _, _) = run(bin().args(["solve", "--bogus"]));
    assert_eq!(code, 1);
}

#[test]
fn pushdag_reports_sets_and_failures() {
    let dir = scratch("pushdag");
    let tri = write(&dir, "tri.arcs", TRIANGLE);
    let (code, out, _) = run(bin().args(["pushdag", "--normalize", "--input"]).arg(&tri));
    assert_eq!(code, 0);
    assert!(out.contains("push set: 0"), "{out}");
    assert!(out.contains("source:"), "{out}");

    let k4 = write(&dir, "k4.arcs", "4 6\n0 1\n0 2\n0 3\n1 2\n3 1\n2 3\n");
    let (code, _, err) = run(bin().args(["pushdag", "--input"]).arg(&k4));
    assert_eq!(code, 2, "{err}");
}

#[test]
fn gen_writes_arc_lists() {
    let dir = scratch("gen");
    let (code, out, _) = run(bin().args(["gen", "--family", "cycle", "--params", "5"]));
    assert_eq!(code, 0);
    assert!(out.contains("5 5"), "{out}");

    let out_dir = dir.join("out");
    let (code, _, _) =
        run(bin().args(["gen", "--family", "octahedron", "--orient", "random", "--count", "3", "--out"]).arg(&out_dir));
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_dir(&out_dir).unwrap().count(), 3);

    let (code, _, _) = run(bin().args(["gen", "--family", "nosuch"]));
    assert_eq!(code, 1);
}

#[test]
fn sweep_writes_reports() {
    let dir = scratch("sweep");
    let empty = write(&dir, "empty.json", "");
    let out = dir.join("empty-out");
    let (code, _, err) = run(bin().args(["sweep", "--spec"]).arg(&empty).arg("--out").arg(&out));
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);

    let spec = write(&dir, "cycles.json", r#"{"entries":[{"family":"cycle:4","push":["none","strong"]}]}"#);
    let out = dir.join("cycles-out");
    let (code, _, err) = run(bin().args(["sweep", "--spec"]).arg(&spec).arg("--out").arg(&out));
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn verify_runs_suites() {
    let dir = scratch("verify");
    let (code, out, _) = run(bin().args(["verify", "cycles", "--max-n", "5", "--out"]).arg(&dir));
    assert_eq!(code, 0);
    assert!(!out.is_empty());
    let (code, _, err) = run(bin().args(["verify", "no-such-suite"]));
    assert_eq!(code, 1);
    assert!(err.contains("theorem-dag"), "{err}");
}

#[test]
fn play_writes_a_replayable_trace() {
    let dir = scratch("play");
    let tri = write(&dir, "tri.arcs", TRIANGLE);
    let trace = dir.join("trace.json");
    let (code, _, err) = run(bin()
        .args(["play", "--cop", "dag", "--robber", "optimal", "--input"])
        .arg(&tri)
        .arg("--trace")
        .arg(&trace));
    assert_eq!(code, 0, "{err}");
    let t = Trace::from_json(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let end = t.replay().unwrap();
    assert!(end.is_captured());

    let (code, _, _) = run(bin().args(["play", "--cop", "four-regular", "--input"]).arg(&tri));
    assert_eq!(code, 2);
}
