use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn kct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kct")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const IMP_FIGURE: &str = r#"{
  "sequent": "|- (a0:1 -> a0:1)",
  "rule": "ImpR",
  "witness": null,
  "children": [{"sequent": "a0:1 |- a0:1", "rule": null, "witness": null, "children": []}]
}"#;

const MODEL: &str = r#"{
  "carriers": {
    "0": ["d0", "d1"],
    "1": [{"name": "t0", "value": "t"}, {"name": "f0", "value": "f"}]
  },
  "objects": {"c": "d0"}
}"#;

#[test]
fn peirce_with_declared_atoms_is_proved() {
    let o = kct(&["prove", "|- ((P -> Q) -> P) -> P", "--atoms", "P,Q"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("proved:"));
}

#[test]
fn non_theorem_prints_its_countermodel() {
    let o = kct(&["prove", "|- a0:1 -> a1:1"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("a0:1 = t"), "{out}");
    assert!(out.contains("a1:1 = f"), "{out}");
    assert!(out.contains("H3       Pass"), "{out}");
}

#[test]
fn parse_errors_point_at_the_input() {
    let o = kct(&["prove", "|- ("]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse error at byte 4"), "{err}");
    assert!(err.contains("    ^"), "{err}");
}

#[test]
fn exhausted_budget_is_unknown() {
    let o = kct(&["prove", "(all x0:1 . (x0:1 -> a0:1)) |- a1:1", "--max-nodes", "40"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("unknown:"));
}

#[test]
fn systems_are_selectable() {
    for sys in ["kct", "kct_h", "kctt", "kctt_h"] {
        let o = kct(&["prove", "|- (a0:1 -> a0:1)", "--system", sys]);
        assert_eq!(code(&o), 0, "{sys}");
    }
    assert_eq!(code(&kct(&["prove", "|- (a0:1 -> a0:1)", "--system", "lk"])), 3);
}

#[test]
fn figures_are_checked_per_system() {
    let f = file(IMP_FIGURE);
    let path = f.path().to_str().unwrap();
    assert_eq!(code(&kct(&["check-proof", path, "--system", "kct"])), 0);
    let o = kct(&["check-proof", path, "--system", "kct_h"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("at node []"), "{}", stdout(&o));
    let bad = file("{\"sequent\": ");
    assert_eq!(code(&kct(&["check-proof", bad.path().to_str().unwrap()])), 3);
}

#[test]
fn chain_lists_both_implication_alternatives() {
    let o = kct(&["chain", "(a0:1 -> a1:1) |- a2:1", "--steps", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("[R3.1a]") && out.contains("[R3.1b]"), "{out}");
    assert!(out.contains("(a0:1 -> (all x0:1 . x0:1)) |- a2:1"), "{out}");
    assert!(out.contains("a1:1 |- a2:1"), "{out}");
}

#[test]
fn rank_of_an_implication() {
    let o = kct(&["rank", "(a0:1 -> a1:1)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn models_decide_sequents() {
    let m = file(MODEL);
    let path = m.path().to_str().unwrap();
    assert_eq!(code(&kct(&["eval-model", path, "|- _|_"])), 1);
    assert_eq!(code(&kct(&["eval-model", path, "|- (a0:1 -> a0:1)"])), 0);
    let o = kct(&["eval-model", path, "|- (all x0:0 . a0:(0)(x0:0))"]);
    assert_eq!(code(&o), 3, "no carrier for (0)");
}

#[test]
fn json_output_is_reproducible() {
    let args = ["prove", "(a0:1 -> a1:1), a1:1 |- (a2:1 -> a0:1)", "--format", "json"];
    let (a, b) = (kct(&args), kct(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "refuted");
    assert!(v["tableau"].is_object());
}

#[test]
fn selftest_passes() {
    let o = kct(&["selftest"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 10, "{out}");
    assert_eq!(code(&o), 0);
}
