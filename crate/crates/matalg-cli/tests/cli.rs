//! End-to-end tests of the `matalg` binary: exit codes, JSON artifacts, and
//! output determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn matalg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matalg"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).expect("write input");
    path.to_str().expect("utf8 path").to_owned()
}

const COUNTEREXAMPLE_PAIR: &str = r#"{
  "lambda": [[1,1,0,1],[2,1,0,1]],
  "A": {"n": 2, "entries": [[[0,1,0,1],[1,1,0,1]],[[0,1,0,1],[0,1,0,1]]]}
}"#;

const THREE_CYCLE_PAIR: &str = r#"{
  "lambda": [[1,1,0,1],[2,1,0,1],[3,1,0,1]],
  "A": {"n": 3, "entries": [
    [[0,1,0,1],[5,7,0,1],[0,1,0,1]],
    [[0,1,0,1],[0,1,0,1],[-2,3,0,1]],
    [[1,1,0,1],[0,1,0,1],[0,1,0,1]]]}
}"#;

#[test]
fn classify_counterexample_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pair.json", COUNTEREXAMPLE_PAIR);
    let out = matalg(&["classify", "--input", &input], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["irreducible"], false);
    assert_eq!(report["schur_irreducible"], true);
    assert_eq!(report["indecomposable"], true);
    assert_eq!(report["witness"], serde_json::json!([1]));
    assert_eq!(report["support"]["edges"], serde_json::json!([[1, 2]]));
}

#[test]
fn classify_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pair.json", THREE_CYCLE_PAIR);
    let a = matalg(&["classify", "--input", &input], dir.path());
    let b = matalg(&["classify", "--input", &input], dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn classify_verify_three_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pair.json", THREE_CYCLE_PAIR);
    let report_path = dir.path().join("report.json");
    let out = matalg(
        &["classify", "--input", &input, "--verify", "--output", report_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["irreducible"], true);
    assert_eq!(report["invariant_subsets"], serde_json::json!([]));
}

#[test]
fn repeated_eigenvalues_exit_3_naming_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "pair.json",
        r#"{"lambda": [[1,1,0,1],[1,1,0,1]],
            "A": {"n": 2, "entries": [[[0,1,0,1],[1,1,0,1]],[[0,1,0,1],[0,1,0,1]]]}}"#,
    );
    let out = matalg(&["classify", "--input", &input], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("distinct"));
}

#[test]
fn zero_eigenvalue_exit_3_naming_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "pair.json",
        r#"{"lambda": [[1,1,0,1],[0,1,0,1]],
            "A": {"n": 2, "entries": [[[0,1,0,1],[1,1,0,1]],[[0,1,0,1],[0,1,0,1]]]}}"#,
    );
    let out = matalg(&["classify", "--input", &input], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonzero"));
}

#[test]
fn malformed_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pair.json", "{not json");
    let out = matalg(&["classify", "--input", &input], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("nope.json");
    let out = matalg(&["classify", "--input", missing.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = matalg(&["tables", "--max-n", "2", "--frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn float_entries_respect_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "pair.json",
        r#"{"lambda": [[1,1,0,1],[2,1,0,1]],
            "A": {"n": 2, "entries_f": [[[0.0,0.0],[1e-12,0.0]],[[0.0,0.0],[0.0,0.0]]]}}"#,
    );
    // default tolerance 1e-9 wipes the 1e-12 entry: zero matrix, decomposable
    let out = matalg(&["classify", "--input", &input], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schur_irreducible"], false);
    assert_eq!(report["support"]["edges"], serde_json::json!([]));

    // tolerance 0 keeps it: the counterexample shape again
    let out = matalg(&["classify", "--input", &input, "--tolerance", "0"], dir.path());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schur_irreducible"], true);
    assert_eq!(report["support"]["edges"], serde_json::json!([[1, 2]]));
}

#[test]
fn subspaces_listing() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pair.json", COUNTEREXAMPLE_PAIR);
    let out = matalg(&["subspaces", "--input", &input], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(listing["invariant_subspaces"], serde_json::json!([[1]]));
}

#[test]
fn closure_of_single_edge_with_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pattern.json", r#"{"n":2,"edges":[[1,2]]}"#);
    let out = matalg(&["closure", "--input", &input, "--with-diagonal"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let pattern: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(pattern["edges"], serde_json::json!([[1, 1], [1, 2], [2, 2]]));
}

#[test]
fn subalgebras_n3_lists_six() {
    let dir = tempfile::tempdir().unwrap();
    let out = matalg(&["subalgebras", "--n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(listing["count"], 6);
    assert_eq!(listing["subalgebras"].as_array().unwrap().len(), 6);
    // first entry is the upper-left corner subset {1}
    assert_eq!(listing["subalgebras"][0]["subset"], serde_json::json!([1]));
    assert_eq!(
        listing["subalgebras"][0]["invariant_subspace"],
        serde_json::json!([1])
    );
}

#[test]
fn subalgebras_n4_shape_class_multiplicities() {
    let dir = tempfile::tempdir().unwrap();
    let out = matalg(&["subalgebras", "--n", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let subs = listing["subalgebras"].as_array().unwrap();
    assert_eq!(subs.len(), 14);
    let mut by_size = [0usize; 5];
    for s in subs {
        by_size[s["subset"].as_array().unwrap().len()] += 1;
    }
    assert_eq!(by_size[1..=3], [4, 6, 4]);
}

#[test]
fn subalgebras_recursion_matches_lift_arrows() {
    let dir = tempfile::tempdir().unwrap();
    let out = matalg(&["subalgebras", "--n", "3", "--recursion"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        listing["derivation"],
        serde_json::json!([
            {"parent": [1], "corner": [[1], [1, 3]], "shifted": [[2], [1, 2]]},
            {"parent": [2], "corner": [[2], [2, 3]], "shifted": [[3], [1, 3]]}
        ])
    );
}

#[test]
fn subalgebras_range_violation_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(matalg(&["subalgebras", "--n", "13"], dir.path()).status.code(), Some(5));
    assert_eq!(matalg(&["subalgebras", "--n", "1"], dir.path()).status.code(), Some(5));
    assert_eq!(
        matalg(&["subalgebras", "--n", "2", "--recursion"], dir.path()).status.code(),
        Some(5)
    );
}

#[test]
fn enumerate_stream_n3_is_the_reference_list() {
    let dir = tempfile::tempdir().unwrap();
    let stream_path = dir.path().join("g3.jsonl");
    let out = matalg(
        &["enumerate", "--n", "3", "--stream", stream_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let row: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(row["labeled"], 5);

    let streamed: Vec<matalg::Pattern> = fs::read_to_string(&stream_path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let mut expected = matalg::golden::minimal_scc_3_patterns();
    let mut got = streamed.clone();
    expected.sort();
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn enumerate_cap_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let out = matalg(&["enumerate", "--n", "7"], dir.path());
    assert_eq!(out.status.code(), Some(5));
    let out = matalg(&["tables", "--max-n", "7", "--labeled"], dir.path());
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn tables_golden_pass_and_thread_invariance() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_matalg"))
            .args(["tables", "--max-n", "5", "--labeled", "--unlabeled", "--golden"])
            .env("MATALG_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let rows: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
        rows.iter()
            .map(|r| (r["labeled"].as_u64(), r["unlabeled"].as_u64()))
            .collect::<Vec<_>>()
    };
    let counts = run("1");
    assert_eq!(
        counts,
        vec![
            (Some(1), Some(1)),
            (Some(1), Some(1)),
            (Some(5), Some(2)),
            (Some(58), Some(5)),
            (Some(1069), Some(15)),
        ]
    );
    assert_eq!(run("2"), counts);
}

#[test]
fn tables_bad_thread_env_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_matalg"))
        .args(["tables", "--max-n", "2", "--labeled"])
        .env("MATALG_THREADS", "many")
        .current_dir(dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn emitted_artifacts_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pair.json", THREE_CYCLE_PAIR);
    let out = matalg(&["classify", "--input", &input], dir.path());
    let report: matalg::ClassificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.irreducible);

    let out = matalg(&["subalgebras", "--n", "4"], dir.path());
    let listing: matalg::json::SubalgebraListing = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(listing.count, 14);

    let out = matalg(&["enumerate", "--n", "4", "--unlabeled"], dir.path());
    let row: matalg::CountRow = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(row.unlabeled, Some(5));
}
