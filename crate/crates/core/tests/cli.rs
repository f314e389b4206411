use std::path::PathBuf;
use std::process::{Command, Output};

use ncproj::cli::{parse_spec, print_spec};
use ncproj::freealg::graded_dim;
use serde_json::Value;

fn spec(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../specs");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncproj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ncproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncproj")).args(args).output().unwrap()
}

fn with_report(args: &[&str], name: &str) -> (i32, Option<Value>) {
    let path = scratch(name);
    let _ = std::fs::remove_file(&path);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    all.extend(["--json", &p]);
    let out = ncproj(&all);
    let doc = std::fs::read(&path).ok().map(|b| serde_json::from_slice(&b).unwrap());
    (out.status.code().unwrap(), doc)
}

#[test]
fn hilbert_report_has_the_documented_shape() {
    let path = spec("quantum_plane.spec");
    let (code, doc) = with_report(&["hilbert", &path, "--max-degree", "4"], "hilbert.json");
    assert_eq!(code, 0);
    let doc = doc.unwrap();
    assert_eq!(doc["ncproj_report"], 1);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["exit_code"], 0);
    assert_eq!(doc["command"][0], "hilbert");
    assert!(doc.get("timing_ms").is_none());
    let sha = doc["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(sha.len(), 64);
    let text = serde_json::to_string(&doc["result"]).unwrap();
    assert!(text.contains("[1,2,3,4,5]"), "{}", text);
}

#[test]
fn timing_only_on_request() {
    let path = spec("line.spec");
    let (_, doc) = with_report(&["hilbert", &path, "--timing"], "timing.json");
    assert!(doc.unwrap().get("timing_ms").is_some());
}

#[test]
fn window_too_small_exits_3_with_report() {
    let path = spec("plane.spec");
    let (code, doc) = with_report(&["saturate", &path, "--input-window", "0:4"], "window.json");
    assert_eq!(code, 3);
    let doc = doc.unwrap();
    assert_eq!(doc["exit_code"], 3);
    assert!(doc.get("error").is_some());
}

#[test]
fn hypothesis_failure_exits_2() {
    let path = scratch("weighted.spec");
    std::fs::write(&path, "[generators]\nx y:2\n[relations]\nx*y - y*x\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let (code, doc) = with_report(&["segre", &p, &p], "segre.json");
    assert_eq!(code, 2);
    assert_eq!(doc.unwrap()["status"], "hypothesis_failure");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let path = scratch("bad.spec");
    std::fs::write(&path, "[generators]\nx y\n[relations]\nx*y - x\n").unwrap();
    let out = ncproj(&["hilbert", &path.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":4:"), "{}", err);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(ncproj(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ncproj(&["hilbert"]).status.code(), Some(1));
    assert_eq!(ncproj(&["hilbert", "/nonexistent/x.spec"]).status.code(), Some(1));
}

#[test]
fn finite_field_flag_changes_the_field() {
    let path = spec("quantum_plane.spec");
    // q = 2 is still a unit mod 3
    let out = ncproj(&["--field", "3", "hilbert", &path, "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn quiet_suppresses_the_table() {
    let path = spec("line.spec");
    let out = ncproj(&["--quiet", "hilbert", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let loud = ncproj(&["hilbert", &path]);
    assert!(String::from_utf8_lossy(&loud.stdout).contains("status: ok"));
}

#[test]
fn dg_check_reports_every_seed() {
    let (code, doc) = with_report(&["dg-check", "--suite", "delta", "--seed", "5", "--count", "3"], "dg.json");
    assert_eq!(code, 0);
    let text = serde_json::to_string(&doc.unwrap()["result"]).unwrap();
    for s in 5..8 {
        assert!(text.contains(&format!("\"seed\":{}", s)), "{}", text);
    }
}

#[test]
fn printed_specs_parse_back_to_the_same_algebra() {
    for name in ["quantum_plane.spec", "kanazawa.spec", "plane.spec", "free2.spec", "line.spec"] {
        let text = std::fs::read_to_string(spec(name)).unwrap();
        let p = parse_spec(&text, name, None).unwrap();
        let again = parse_spec(&print_spec(&p), name, None).unwrap();
        for d in 0..=4 {
            assert_eq!(graded_dim(&p, d, 4).unwrap().0, graded_dim(&again, d, 4).unwrap().0, "{} degree {}", name, d);
        }
    }
}

#[test]
fn kanazawa_product_condition_is_a_warning() {
    let path = scratch("skew.spec");
    std::fs::write(&path, "[construct]\nkanazawa n=2 phi=1 q01=2\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let (code, doc) = with_report(&["hilbert", &p, "--max-degree", "3"], "skew.json");
    assert_eq!(code, 0);
    let warnings = doc.unwrap()["warnings"].as_array().unwrap().len();
    assert_eq!(warnings, 2);
    let (_, plain) = with_report(&["hilbert", &spec("kanazawa.spec")], "plain.json");
    assert!(plain.unwrap().get("warnings").is_none());
}
