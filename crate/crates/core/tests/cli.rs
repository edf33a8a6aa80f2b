use std::path::Path;
use std::process::Command;

use edgewise::cli::{self, Output, RunConfig};
use edgewise::io;
use edgewise::monoid::truncated_free_monoid;
use edgewise::segal::CheckReport;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("edgewise").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn theorem_on_the_truncated_free_monoid() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &io::monoid_to_string(&truncated_free_monoid(1)));
    let b = dir.path().join("b.json");
    let b = b.to_str().unwrap();
    assert_eq!(run(&["bar", &m, "--truncation", "7", "-o", b]).0, 0);
    let (code, out, _) = run(&["check", "theorem", b]);
    assert_eq!(code, 0);
    assert!(out.contains("2-Segal: pass"));
    assert!(out.contains("esd Segal: pass"));
    assert!(out.contains("Segal: fail at (2, 1)"));
    let (code, out, _) = run(&["check", "segal", b]);
    assert_eq!(code, 1);
    assert!(out.contains("fail at (2, 1): 3 -> 4; uncovered pair ((a), (a))"));
    assert_eq!(run(&["check", "2segal", b, "--reduced"]).0, 0);
}

#[test]
fn machine_reports_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let x = edgewise::monoid::bar(&truncated_free_monoid(2), 5).unwrap();
    let p = write(dir.path(), "x.json", &io::sset_to_string(&x));
    let (code, out, _) = run(&["--format", "machine", "--seed", "9", "--budget-iso-nodes", "77", "check", "segal", &p]);
    assert_eq!(code, 1);
    let parsed: Output<CheckReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.report, edgewise::segal::segal_check(&x, &p));
    assert_eq!(
        parsed.config,
        RunConfig {
            command: "check segal".into(),
            inputs: vec![p.clone()],
            truncation: None,
            seed: 9,
            budget_iso_nodes: 77,
            budget_fuzz_count: cli::DEFAULT_FUZZ_COUNT,
            format: cli::Format::Machine,
        }
    );
}

#[test]
fn draw_esd_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.dot");
    assert_eq!(run(&["draw", "esd-simplex", "2", "-o", out.to_str().unwrap()]).0, 0);
    let dot = std::fs::read_to_string(&out).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 9);
    assert_eq!(dot.matches("// face ").count(), 4);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count(), 6);
    assert_eq!(run(&["draw", "esd-simplex", "5"]).0, 2);
}

#[test]
fn validate_names_the_broken_identity() {
    let dir = tempfile::tempdir().unwrap();
    let x = edgewise::monoid::bar(&truncated_free_monoid(1), 3).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&io::sset_to_string(&x)).unwrap();
    v["face"]["2,0"]["(a,e)"] = "(a)".into();
    let p = write(dir.path(), "bad.json", &v.to_string());
    let (code, out, _) = run(&["validate", &p]);
    assert_eq!(code, 1);
    assert!(out.contains("d_i d_j = d_{j-1} d_i fails"));
    let (code, _, err) = run(&["check", "segal", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("not a simplicial set"));
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["--unknown-flag", "validate", "x"]).0, 2);
    assert_eq!(run(&["validate", dir.path().join("missing.json").to_str().unwrap()]).0, 2);
    let p = write(dir.path(), "junk.json", "{\"objects\": [");
    assert_eq!(run(&["validate", &p]).0, 2);
    assert_eq!(run(&["fuzz", "--count", "20", "--budget-fuzz-count", "10"]).0, 2);
    assert_eq!(run(&["gen", "coskeletal", "--spec", "3"]).0, 2);
    assert_eq!(run(&["sconstruction", "--max-card", "9", "--truncation", "2"]).0, 2);
    let target = dir.path().join("never.json");
    let (code, _, _) = run(&["bar", &p, "--truncation", "3", "-o", target.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!target.exists());
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn generation_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    assert_eq!(run(&["--seed", "4", "gen", "partial-monoid", "--size", "3", "-o", &d("m.json")]).0, 0);
    assert_eq!(run(&["validate", &d("m.json")]).0, 0);
    assert_eq!(run(&["spans", &d("m.json"), "-o", &d("spans.json")]).0, 0);
    assert_eq!(run(&["validate", &d("spans.json")]).0, 0);
    assert_eq!(run(&["--seed", "4", "gen", "category", "-o", &d("c.json")]).0, 0);
    assert_eq!(run(&["tw", &d("c.json"), "-o", &d("tw.json")]).0, 0);
    assert_eq!(run(&["nerve", &d("c.json"), "--truncation", "3", "-o", &d("n.json")]).0, 0);
    assert_eq!(run(&["check", "segal", &d("n.json")]).0, 0);
    assert_eq!(run(&["esd", &d("n.json"), "-o", &d("sd.json")]).0, 0);
    assert_eq!(run(&["nerve", &d("tw.json"), "--truncation", "1", "-o", &d("ntw.json")]).0, 0);
    assert_eq!(run(&["iso", &d("sd.json"), &d("ntw.json")]).0, 0);
    assert_eq!(run(&["--seed", "2", "gen", "coskeletal", "--spec", "2,2,5", "-o", &d("k.json")]).0, 0);
    assert_eq!(run(&["check", "2segal", &d("k.json")]).0, 1);
    assert_eq!(run(&["check", "theorem", &d("k.json")]).0, 0);
    assert_eq!(run(&["iso", &d("k.json"), &d("n.json")]).0, 1);
    assert_eq!(run(&["sconstruction", "--max-card", "2", "--truncation", "3", "-o", &d("s.json")]).0, 0);
    assert_eq!(run(&["validate", &d("s.json")]).0, 0);
    assert_eq!(run(&["check", "2segal", &d("s.json")]).0, 0);
    assert_eq!(run(&["check", "segal", &d("s.json")]).0, 1);
    assert_eq!(run(&["esd", &d("s.json"), "-o", &d("sds.json")]).0, 0);
    assert_eq!(run(&["check", "segal", &d("sds.json")]).0, 0);
    assert_eq!(run(&["--seed", "1", "fuzz", "--count", "12", "--mix", "coskeletal"]).0, 0);
    let (code, out, _) = run(&["draw", "sset", &d("ntw.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph sset {"));
}

#[test]
fn binary_matches_library_dispatch() {
    let out = Command::new(env!("CARGO_BIN_EXE_edgewise")).args(["draw", "esd-simplex", "1"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run(&["draw", "esd-simplex", "1"]).1);
    let bad = Command::new(env!("CARGO_BIN_EXE_edgewise")).args(["nonsense"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
