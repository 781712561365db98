use std::path::PathBuf;
use std::process::Command;

use ordlab::cli::{run, ErrorKind, Outcome, RegularOutput, RunReport, WalkOutput};
use ordlab::formats::{PosetFile, TreeFile};
use ordlab_core::cseq::standard_csequence;
use ordlab_core::walks::{walk_with_code, Rho0Code};
use ordlab_core::Ordinal;
use tempfile::TempDir;

fn ordlab(args: &[&str]) -> ordlab::cli::Execution {
    run(std::iter::once("ordlab").chain(args.iter().copied()))
}

fn write_json<T: serde::Serialize>(dir: &TempDir, name: &str, value: &T) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn fork() -> PosetFile {
    PosetFile {
        n: 3,
        le: vec![[0, 2], [1, 2]],
        top: Some(2),
    }
}

#[test]
fn ord_add_absorbs_on_the_left() {
    let done = ordlab(&["ord", "add", "1", "w"]);
    assert_eq!(done.text, "w\n");
    assert_eq!(done.report.exit_code(), 0);
    assert_eq!(done.report.result, serde_json::json!("w"));
}

#[test]
fn ord_compare_and_codes() {
    assert_eq!(ordlab(&["ord", "compare", "w*2", "w+5"]).text, "w*2 > w+5\n");
    assert_eq!(ordlab(&["ord", "encode", "3,0,7"]).text, "4120\n");
    assert_eq!(ordlab(&["ord", "decode", "4120"]).text, "<3, 0, 7>\n");
    assert_eq!(ordlab(&["ord", "parse", "w^(1)*1+0"]).report.exit_code(), 2);
    assert_eq!(ordlab(&["ord", "parse", "w^(2)+w*3"]).text, "w^(2)+w*3 (limit)\n");
}

#[test]
fn walk_example() {
    let done = ordlab(&["walk", "--alpha", "w", "--beta", "w*2"]);
    assert!(done.text.starts_with("steps: w*2, w\ncode: 0\n"), "{}", done.text);
    let out: WalkOutput = serde_json::from_value(done.report.result).unwrap();
    let (walk, code) = walk_with_code(&standard_csequence(), &"w".parse().unwrap(), &"w*2".parse().unwrap()).unwrap();
    assert_eq!(out.walk, walk);
    assert_eq!(out.code, code);
    assert_eq!(out.code, Rho0Code { entries: vec![0] });
}

#[test]
fn walk_against_the_order_is_an_input_error() {
    let done = ordlab(&["walk", "--alpha", "w*2", "--beta", "w"]);
    assert!(matches!(
        done.report.outcome,
        Outcome::Error {
            kind: ErrorKind::Input,
            ..
        }
    ));
    assert_eq!(done.report.exit_code(), 2);
}

#[test]
fn check_regular_reports_violations() {
    let dir = TempDir::new().unwrap();
    let p = write_json(&dir, "p.json", &fork());
    let done = ordlab(&[
        "poset",
        "check-regular",
        "--poset",
        p.to_str().unwrap(),
        "--subset",
        "0",
    ]);
    assert_eq!(done.report.exit_code(), 1);
    assert!(matches!(done.report.outcome, Outcome::Violations { .. }));
    let out: RegularOutput = serde_json::from_value(done.report.result).unwrap();
    assert!(out.suborder && !out.regular);

    let done = ordlab(&[
        "poset",
        "check-regular",
        "--poset",
        p.to_str().unwrap(),
        "--subset",
        "0,1,2",
    ]);
    assert_eq!(done.report.exit_code(), 0);
    assert_eq!(done.text, "regular\n");
}

#[test]
fn closure_and_antichains() {
    let dir = TempDir::new().unwrap();
    let p = write_json(&dir, "p.json", &fork());
    let done = ordlab(&["poset", "closure", "--poset", p.to_str().unwrap(), "--subset", "0"]);
    let closure: Vec<usize> = serde_json::from_value(done.report.result).unwrap();
    assert!(closure.contains(&0) && closure.contains(&1));
    let done = ordlab(&["poset", "antichains", "--poset", p.to_str().unwrap()]);
    let all: Vec<Vec<usize>> = serde_json::from_value(done.report.result).unwrap();
    assert!(all.contains(&vec![0, 1]));
}

#[test]
fn delta_from_a_sets_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sets.txt");
    std::fs::write(&path, "1,2,3\n1,4,5\n# comment\n1,6,7\n2,4\n").unwrap();
    let done = ordlab(&["refine", "delta", "--sets", path.to_str().unwrap(), "--k", "3"]);
    assert_eq!(done.report.exit_code(), 0);
    let ds: ordlab_core::refine::DeltaSystem = serde_json::from_value(done.report.result).unwrap();
    assert_eq!(ds.root, [1]);
    assert_eq!(ds.members, [0, 1, 2]);
}

#[test]
fn spec_commands() {
    let dir = TempDir::new().unwrap();
    // 0 - 1 - 2, and 0 - 3
    let tree = write_json(
        &dir,
        "t.json",
        &TreeFile {
            nodes: 4,
            parent: vec![None, Some(0), Some(1), Some(0)],
        },
    );
    let t = tree.to_str().unwrap();
    assert_eq!(
        ordlab(&["spec", "compat", "--tree", t, "--p", "0:1", "--q", "2:1"]).text,
        "incompatible\n"
    );
    assert_eq!(
        ordlab(&["spec", "compat", "--tree", t, "--p", "2:1", "--q", "3:1"]).text,
        "compatible: {2:1,3:1}\n"
    );
    let done = ordlab(&[
        "spec",
        "refute-tree",
        "--tree",
        t,
        "--q",
        "0:3",
        "--t",
        "2",
        "--beta",
        "1",
    ]);
    assert_eq!(done.text, "{0:3,1:0}\n");
    assert_eq!(done.report.exit_code(), 0);
    let done = ordlab(&[
        "spec",
        "refute-tree",
        "--tree",
        t,
        "--q",
        "1:0",
        "--t",
        "2",
        "--beta",
        "1",
    ]);
    assert_eq!(done.report.exit_code(), 2);

    let done = ordlab(&[
        "spec",
        "refute-linked",
        "--lambda",
        "3",
        "--x",
        "010,011,110",
        "--a",
        "010",
        "--point",
        "110",
    ]);
    assert_eq!(done.report.exit_code(), 0, "{}", done.text);
    let out: ordlab::cli::RefuteLinkedOutput = serde_json::from_value(done.report.result).unwrap();
    assert!(out.extends_q && out.incompatible);
    assert_eq!(out.r.s.len(), 1);
    assert_eq!(out.r.s[0].to_string(), "1");
}

#[test]
fn tree_emit_dot_and_file() {
    let dir = TempDir::new().unwrap();
    let done = ordlab(&["tree", "emit", "--seed", "w*3,w^(2)+2", "--levels", "w,w*2", "--dot"]);
    assert_eq!(done.report.exit_code(), 0, "{}", done.text);
    assert!(done.text.starts_with("digraph rho0 {"));
    assert!(done.text.contains("w@"));
    let out = dir.path().join("t.json");
    let done = ordlab(&[
        "tree",
        "emit",
        "--seed",
        "w*3",
        "--levels",
        "w",
        "--out",
        out.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(done.report.artifacts, std::slice::from_ref(&out));
    let written: ordlab::emit::TreeEmit = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let reported: ordlab::emit::TreeEmit = serde_json::from_value(done.report.result).unwrap();
    assert_eq!(written, reported);
}

#[test]
fn cseq_entry_respects_avoidance() {
    let plain = ordlab(&["cseq", "entry", "--alpha", "w^(2)", "--i", "2"]);
    assert_eq!(plain.text, "w*2\n");
    let avoided = ordlab(&["cseq", "entry", "--alpha", "w^(2)", "--i", "2", "--avoid", "w*2"]);
    let x: Option<Ordinal> = serde_json::from_value(avoided.report.result).unwrap();
    assert_ne!(x, Some("w*2".parse().unwrap()));
}

#[test]
fn suite_runs_selected_criteria() {
    let done = ordlab(&["suite", "--only", "11,12", "--seed", "7"]);
    assert_eq!(done.report.exit_code(), 0, "{}", done.text);
    let results: Vec<ordlab::suite::CriterionResult> = serde_json::from_value(done.report.result).unwrap();
    assert_eq!(results.iter().map(|r| r.id).collect::<Vec<_>>(), [11, 12]);
}

#[test]
fn usage_errors_name_the_flag() {
    let done = ordlab(&["walk", "--alpha", "w", "--bogus", "1"]);
    assert_eq!(done.report.exit_code(), 2);
    match &done.report.outcome {
        Outcome::Error { kind, message } => {
            assert_eq!(*kind, ErrorKind::Usage);
            assert!(message.contains("--bogus"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(ordlab(&["walk", "--alpha", "w+", "--beta", "w"]).report.exit_code(), 2);
    assert_eq!(
        ordlab(&["poset", "closure", "--poset", "/nonexistent.json"])
            .report
            .exit_code(),
        2
    );
    assert_eq!(ordlab(&["--help"]).report.exit_code(), 0);
}

#[test]
fn binary_json_report_roundtrips() {
    let out = Command::new(env!("CARGO_BIN_EXE_ordlab"))
        .args(["--json", "walk", "--alpha", "3", "--beta", "w^(2)+1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.command[0], "--json");
    let walk: WalkOutput = serde_json::from_value(report.result.clone()).unwrap();
    let again = serde_json::to_value(&walk).unwrap();
    assert_eq!(again, report.result);
    let steps: Vec<String> = walk.walk.steps.iter().map(|x| x.to_string()).collect();
    assert_eq!(steps, ["w^(2)+1", "w^(2)", "w", "3"]);

    let bad = Command::new(env!("CARGO_BIN_EXE_ordlab"))
        .args(["walk"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
