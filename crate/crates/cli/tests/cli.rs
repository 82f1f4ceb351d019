use std::process::{Command, Output};

fn precanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_precanon")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn basis_zero_weight_is_single_term() {
    let out = precanon(&["basis", "--family", "A", "--rank", "3", "--weight", "0,0,0", "--level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["element"]["terms"].as_array().unwrap().len(), 1);
    assert_eq!(doc["element"]["basis"], "canon");
}

#[test]
fn basis_in_standard_coordinates() {
    let out = precanon(&[
        "basis", "--family", "A", "--rank", "3", "--weight", "1,0,1", "--level", "2", "--in", "std", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "basis,weight,coeff\nstd,\"(1,0,1)\",1\nstd,\"(0,0,0)\",q^3\n");
}

#[test]
fn transition_rows_in_a3() {
    let out = precanon(&["transition", "--family", "A", "--rank", "3", "--box", "1", "--level", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"(1,1,1)\",\"(0,1,0)\",q\n"));
    assert!(text.contains("\"(1,0,1)\",\"(0,0,0)\",q\n"));
}

#[test]
fn transition_monomials_in_a4() {
    let out = precanon(&["transition", "--family", "A", "--rank", "4", "--box", "1", "--level", "4"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        let coeffs = row["coeff"].as_array().unwrap();
        assert_eq!(coeffs.iter().filter(|c| c.as_i64() != Some(0)).count(), 1, "{line}");
    }
}

#[test]
fn transition_rejects_top_level() {
    let out = precanon(&["transition", "--family", "A", "--rank", "3", "--box", "1", "--level", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no higher basis"));
}

#[test]
fn usage_errors_exit_two() {
    let bad_len = precanon(&["basis", "--family", "A", "--rank", "3", "--weight", "1,1", "--level", "2"]);
    assert_eq!(bad_len.status.code(), Some(2));
    let bad_basis =
        precanon(&["basis", "--family", "A", "--rank", "3", "--weight", "1,1,1", "--level", "2", "--in", "x"]);
    assert_eq!(bad_basis.status.code(), Some(2));
    let bad_suite = precanon(&["verify", "--suite", "a4", "--family", "A", "--rank", "3", "--box", "1"]);
    assert_eq!(bad_suite.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "a3", "--box", "3"],
        vec!["verify", "--suite", "nhalf", "--family", "A", "--rank", "4", "--box", "2"],
        vec!["verify", "--suite", "a4", "--box", "1"],
        vec!["verify", "--suite", "low-levels", "--family", "D", "--rank", "4", "--box", "1"],
    ] {
        let out = precanon(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let last = stdout(&out).lines().last().unwrap().to_string();
        let summary: serde_json::Value = serde_json::from_str(&last).unwrap();
        assert_eq!(summary["summary"]["fail"], 0, "{args:?}");
    }
}

#[test]
fn type_d_positivity_is_reported_not_asserted() {
    let out = precanon(&["verify", "--suite", "positivity", "--family", "D", "--rank", "4", "--box", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let witness = precanon(&["verify", "--suite", "d4witness", "--box", "2"]);
    assert_eq!(witness.status.code(), Some(0));
    assert!(stdout(&witness).contains(r#""claim":"d4witness.negative_found","instance":{"box":2,"family":"D","rank":4},"status":"pass""#));
}

#[test]
fn output_is_independent_of_workers() {
    let args = ["verify", "--suite", "all", "--family", "A", "--rank", "3", "--box", "2"];
    let one = precanon(&[&args[..], &["--workers", "1"]].concat());
    let three = precanon(&[&args[..], &["--workers", "3"]].concat());
    let again = precanon(&[&args[..], &["--workers", "1"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, again.stdout);
    let scan = ["scan", "--family", "A", "--rank", "4", "--box", "2", "--sample", "20", "--seed", "3"];
    let s1 = precanon(&[&scan[..], &["--workers", "1"]].concat());
    let s2 = precanon(&[&scan[..], &["--workers", "2"]].concat());
    assert_eq!(s1.stdout, s2.stdout);
    assert_eq!(stdout(&s1).lines().count(), 20 * 4);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let args = ["transition", "--family", "A", "--rank", "2", "--box", "2", "--level", "2"];
    let printed = precanon(&args);
    let written = precanon(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
}
