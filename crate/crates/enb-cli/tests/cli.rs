//! End-to-end checks of the binary: exit codes, JSON round-trips through the
//! overrides input, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn enb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enb"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

#[test]
fn invalid_q_exits_1() {
    let out = enb(&["params", "--q", "12", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("q must be a prime power"), "stderr: {stderr}");
}

#[test]
fn exhausted_search_exits_2() {
    let out = enb(&["params", "--q", "4", "--n", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn n_torsion_aux_override_exits_1_with_message() {
    let dir = std::env::temp_dir().join(format!("enb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-aux.json");
    std::fs::write(
        &path,
        r#"{"curve":{"p":13,"q_modulus":null,"a":[4,1,9,3,8]},"torsion":[0,10],"aux":[0,7],"a":6,"b":0}"#,
    )
    .unwrap();
    let out = enb(&["bounds", "--q", "13", "--n", "7", "--overrides", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("auxiliary point is n-torsion"), "stderr: {stderr}");
}

#[test]
fn params_json_roundtrips_through_overrides() {
    let first = enb(&[
        "params", "--q", "13", "--n", "7", "--overrides", "presets/example1.json",
    ]);
    assert_eq!(first.status.code(), Some(0));
    let doc = String::from_utf8(first.stdout).unwrap();

    let dir = std::env::temp_dir().join(format!("enb-cli-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("replay.json");
    std::fs::write(&path, &doc).unwrap();

    let second = enb(&["params", "--q", "13", "--n", "7", "--overrides", path.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));
    let replayed = String::from_utf8(second.stdout).unwrap();
    assert_eq!(doc, replayed, "replay changed the parameter document");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "exact", "--q", "7", "--n", "6", "--overrides", "presets/example3.json", "--seed", "9",
    ];
    let first = enb(&args);
    let second = enb(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let sweep_args = ["sweep", "--q", "5", "--n", "4", "--budget-curves", "4000"];
    let s1 = enb(&sweep_args);
    let s2 = enb(&sweep_args);
    assert_eq!(s1.status.code(), Some(0));
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn sweep_produces_csv_rows() {
    let out = enb(&["sweep", "--q", "5", "--n", "4", "--budget-curves", "5000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,n,a1,a2,a3,a4,a6,tx,ty,Rx,Ry,lower,upper,exact,middle_sum"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty(), "expected feasible parameter sets for q = 5");
    for row in rows {
        assert_eq!(row.split(',').count(), 15, "malformed row: {row}");
        assert!(row.starts_with("5,"));
    }
}

#[test]
fn sweep_with_unusable_budget_is_empty_but_clean() {
    let out = enb(&["sweep", "--q", "5", "--n", "3", "--budget-curves", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "q,n,a1,a2,a3,a4,a6,tx,ty,Rx,Ry,lower,upper,exact,middle_sum\n");
}

#[test]
fn multiply_with_explicit_vectors() {
    let out = enb(&[
        "multiply", "--q", "7", "--n", "6", "--overrides", "presets/example3.json",
        "--x", "[1,0,0,0,0,0]", "--y", "[0,3,0,1,0,0]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verified"], serde_json::json!(true));
    assert_eq!(doc["product"].as_array().unwrap().len(), 6);
}

#[test]
fn multiply_length_mismatch_exits_1() {
    let out = enb(&[
        "multiply", "--q", "7", "--n", "6", "--overrides", "presets/example3.json",
        "--x", "[1,0,0]", "--y", "[0,3,0,1,0,0]",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn multiply_unit_coordinate_gives_rows() {
    // x = e (coords of alpha_0), y = e_2: the product is the k = 2 row,
    // which equals the reduced middle convolution
    let out = enb(&[
        "multiply", "--q", "13", "--n", "7", "--overrides", "presets/example1.json",
        "--x", "[1,0,0,0,0,0,0]", "--y", "[0,0,1,0,0,0,0]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["product"], serde_json::json!([3, 5, 3, 11, 11, 11, 11]));
}
