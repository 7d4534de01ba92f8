use std::process::{Command, Output};

use serde_json::Value;

fn qcells(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcells")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn report_s1_s1() {
    let v = json(&qcells(&["report", "--type", "A2", "--wplus", "1", "--wminus", "1"]));
    assert_eq!(v["I"], serde_json::json!([2]));
    assert_eq!(v["leaf"]["k"], 1);
    assert_eq!(v["center_dimension"], 2);
    assert_eq!(v["stabilizer"]["equations"], serde_json::json!(["t1^2 = 1", "t2 = 1"]));
}

#[test]
fn report_identity_pair() {
    let v = json(&qcells(&["report", "--type", "A2", "--wplus", "", "--wminus", ""]));
    assert_eq!(v["center_dimension"], 2);
    assert_eq!(v["stabilizer"]["group"], "trivial");
}

#[test]
fn all_pairs_table_has_36_rows() {
    let out = qcells(&["report", "--type", "A2", "--all-pairs", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("strata: 36"));
    let v = json(&qcells(&["report", "--type", "A2", "--all-pairs"]));
    assert_eq!(v["strata"].as_array().unwrap().len(), 36);
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_exit_codes() {
    let ok = qcells(&["verify", "--type", "B2", "--word", "1,2,1,2", "--check", "ls-support"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["checks"][0]["name"], "ls-support");
    assert_eq!(v["checks"][0]["passed"], true);

    assert_eq!(
        qcells(&["verify", "--type", "A2", "--word", "1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(qcells(&["verify", "--type", "Q7"]).status.code(), Some(2));
    assert_eq!(
        qcells(&["verify", "--type", "A2", "--check", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcells(&["report", "--type", "A2", "--wplus", "1,4"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_a2_single_word_passes() {
    let out = qcells(&["verify", "--type", "A2", "--word", "1,2,1", "--height", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["instances"].as_u64().unwrap() > 0));
}

#[test]
fn ls_single_term() {
    let v = json(&qcells(&["ls", "--type", "A2", "--word", "1,2,1", "--pair", "1,3"]));
    assert_eq!(
        v["terms"]
            .as_array()
            .map(Vec::len)
            .or_else(|| v["terms"].as_object().map(|o| o.len())),
        Some(1)
    );
    assert_eq!(v["rhs"], "X2");
    assert_eq!(v["supported_between"], true);
}

#[test]
fn normal_degree_a1() {
    let v = json(&qcells(&["normal", "--type", "A2", "--word", "1,2", "--degree", "a1"]));
    assert_eq!(v["dimension"], 1);
    let out = qcells(&[
        "normal", "--type", "A2", "--word", "1,2", "--degree", "a1", "--format", "text",
    ]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("    X1\n"));
}

#[test]
fn center_reports_trivial() {
    let out = qcells(&["center", "--type", "A2", "--word", "1,2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("trivial up to height 6"), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qcells-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = qcells(&[
        "report",
        "--type",
        "B2",
        "--wplus",
        "w0",
        "--wminus",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["datum"], "B2");
    std::fs::remove_dir_all(dir).unwrap();
}
