use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_digonlab"));
    c.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = c.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.pca", env!("CARGO_MANIFEST_DIR"))
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_grunbaum6() {
    let o = run(&["verify", &fixture("grunbaum6")], None);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["digon_count"], 10);
}

#[test]
fn report_schema() {
    let o = run(&["verify", &fixture("chain4")], None);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let r = json(&o);
    for key in ["n", "digon_count", "bound", "pruned_curves", "cyclic_order", "conditions", "parity_pairs", "planarity", "status"] {
        assert!(r.get(key).is_some(), "{key} missing");
        // pretty printing puts top-level keys at two spaces
        assert_eq!(text.matches(&format!("\n  \"{key}\":")).count(), 1, "{key}");
    }
    for c in ["A", "B", "C"] {
        assert!(r["conditions"][c]["passed"].is_u64());
    }
}

#[test]
fn truncated_input_is_an_input_error() {
    let src = std::fs::read_to_string(fixture("venn3")).unwrap();
    let cut: String = src.lines().take(4).map(|l| format!("{l}\n")).collect();
    let o = run(&["validate"], Some(&cut));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn invalid_arrangement_fails_validation() {
    let src = std::fs::read_to_string(fixture("venn3")).unwrap();
    // make curve 2 claim a dart of curve 0 and its reverse
    let bad = src.replace("curve: 0 0 0 0", "curve: 2 2 2 2");
    assert_ne!(bad, src);
    let o = run(&["validate", "-"], Some(&bad));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["report"]["valid"], false);
    assert_eq!(run(&["verify", "-"], Some(&bad)).status.code(), Some(2));
}

#[test]
fn sweep_three() {
    let o = run(&["sweep", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let s = json(&o);
    assert_eq!(s["failures"], 0);
    assert_eq!(s["total"], 2);
}

#[test]
fn five_curves_need_the_long_flag() {
    assert_eq!(run(&["enumerate", "--n", "5"], None).status.code(), Some(3));
}

#[test]
fn enumerate_streams_records() {
    let a = run(&["enumerate", "--n", "4", "--strategy", "a"], None);
    let b = run(&["enumerate", "--n", "4", "--strategy", "b"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.split("\n\n").count(), 8);
    assert_eq!(digonlab::pca::from_pca_many(&text).unwrap().len(), 8);
}

#[test]
fn construct_matches_fixture() {
    let o = run(&["construct", "grunbaum", "6"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), std::fs::read_to_string(fixture("grunbaum6")).unwrap());
    assert_eq!(run(&["construct", "chain", "3"], None).status.code(), Some(2));
    assert_eq!(run(&["construct", "spiral", "3"], None).status.code(), Some(2));
}

#[test]
fn render_is_deterministic() {
    let a = run(&["render", &fixture("grunbaum6")], None);
    let b = run(&["render", &fixture("grunbaum6")], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<!-- odd pairs: 0 [] -->"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["sweep"], None).status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_digonlab"))
        .args(["sweep", "--n", "3"])
        .env("DIGONLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_digonlab")).arg("selftest").env("DIGONLAB_THREADS", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}
