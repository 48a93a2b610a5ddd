use std::process::{Command, Output};

use serde_json::Value;

fn coxlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn verify_grid_2_3() {
    let o = coxlab(&["verify", "grid", "--m", "2", "--n", "3", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "coxlab/1");
    assert_eq!(v["order"]["k"], 6);
    assert_eq!(v["order"]["sign"], 1);
    assert_eq!(v["order"]["exact"], 6);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn verify_grid_2_2_is_antiperiodic() {
    let o = coxlab(&["verify", "grid", "--m", "2", "--n", "2", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["order"]["k"], 5);
    assert_eq!(v["order"]["sign"], -1);
    assert_eq!(v["order"]["exact"], 10);
}

#[test]
fn verify_grid_1_1_text() {
    let o = coxlab(&["verify", "grid", "--m", "1", "--n", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("exact order 3"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_grid_respects_caps() {
    let o = coxlab(&[
        "verify",
        "grid",
        "--m",
        "5",
        "--n",
        "5",
        "--order-cap",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = coxlab(&[
        "verify",
        "grid",
        "--m",
        "2",
        "--n",
        "3",
        "--skip-exactness",
        "--json",
    ]);
    let v = json(&o);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["name"] != "exactness_projective"));
}

#[test]
fn cominuscule_matches_grid() {
    let a = json(&coxlab(&[
        "verify",
        "cominuscule",
        "--type",
        "A",
        "--rank",
        "4",
        "--root",
        "2",
        "--json",
    ]));
    let g = json(&coxlab(&[
        "verify", "grid", "--m", "2", "--n", "3", "--json",
    ]));
    assert_eq!(a["order"], g["order"]);
    assert_eq!(a["subject"]["type"], "A");
}

#[test]
fn cominuscule_type_d_and_e() {
    let o = coxlab(&[
        "verify",
        "cominuscule",
        "--type",
        "D",
        "--rank",
        "5",
        "--root",
        "1",
        "--json",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["order"]["exact"], 18);
    let o = coxlab(&[
        "verify",
        "cominuscule",
        "--type",
        "E",
        "--rank",
        "6",
        "--root",
        "1",
        "--json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["lattice_size"], 27);
    assert_eq!(26 % v["order"]["exact"].as_u64().unwrap(), 0);
}

#[test]
fn open_case_never_fails() {
    let o = coxlab(&[
        "verify",
        "cominuscule",
        "--type",
        "C",
        "--rank",
        "4",
        "--root",
        "4",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("OPEN CASE"));
}

#[test]
fn rejects_non_cominuscule_root() {
    let o = coxlab(&[
        "verify",
        "cominuscule",
        "--type",
        "B",
        "--rank",
        "3",
        "--root",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not cominuscule"));
}

#[test]
fn orbit_worked_example() {
    let o = coxlab(&[
        "orbit",
        "--m",
        "5",
        "--n",
        "3",
        "--alpha",
        "(|1,1,2,3,3|)",
        "--json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[1]["alpha"], "(0|1^2,2|3)");
    assert_eq!(rows[1]["interval"][0], "(0,0,1,2,2)");
    assert_eq!(rows[1]["interval"][1], "(0,1,1,2,3)");
    assert_eq!(rows[1]["config"], "{-5,-2,0,1,2}");
    assert_eq!(rows[9]["alpha"], rows[0]["alpha"]);
    assert_eq!(rows[9]["sign"], 1);
    assert_eq!(v["closes"], true);
}

#[test]
fn orbit_of_empty_ideal_closes() {
    let o = coxlab(&["orbit", "--m", "2", "--n", "2", "--alpha", "(0^2||)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("closes: true"));
}

#[test]
fn orbit_rejects_bad_input() {
    assert_eq!(
        coxlab(&["orbit", "--m", "2", "--n", "2", "--alpha", "(0|1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coxlab(&["orbit", "--m", "2", "--n", "2", "--alpha", "(|0,1|)"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn export_grid_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.dot");
    let o = coxlab(&[
        "export",
        "grid",
        "--m",
        "2",
        "--n",
        "3",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph lattice {"));
    assert_eq!(dot.matches("[label=").count(), 10);
}

#[test]
fn export_cominuscule_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d5.dot");
    let o = coxlab(&[
        "export",
        "cominuscule",
        "--type",
        "D",
        "--rank",
        "5",
        "--root",
        "1",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    let (poset, lattice) = dot.split_once("digraph lattice").unwrap();
    assert_eq!(poset.matches("[label=").count(), 8);
    assert_eq!(lattice.matches("[label=").count(), 10);
}

#[test]
fn export_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = coxlab(&[
        "export",
        "grid",
        "--m",
        "2",
        "--n",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: coxlab::VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.order.unwrap().exact, 10);
    let mut a: Value = serde_json::from_str(&text).unwrap();
    let mut b = serde_json::to_value(&report).unwrap();
    a["ms"] = Value::Null;
    b["ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn export_reports_io_errors() {
    let o = coxlab(&[
        "export",
        "grid",
        "--m",
        "1",
        "--n",
        "1",
        "--format",
        "dot",
        "--out",
        "/nonexistent/dir/x.dot",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/dir/x.dot"));
}

#[test]
fn reports_are_reproducible() {
    let run = || {
        let mut v = json(&coxlab(&[
            "verify", "grid", "--m", "3", "--n", "2", "--json",
        ]));
        v["ms"] = Value::Null;
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_coxlab"))
        .args(["verify", "grid", "--m", "2", "--n", "3"])
        .env("COXLAB_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
}
