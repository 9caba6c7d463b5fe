use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn chipqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chipqed")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_writes_json_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let device = fixture("two_qubit_chip.json");
    let o = chipqed(&["analyze", device.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["design_rules"]["overall_pass"], true);
    assert_eq!(report["qubits"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_text_report() {
    let device = fixture("two_qubit_chip.json");
    let o = chipqed(&["analyze", device.to_str().unwrap(), "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[qubits]") && text.contains("[design_rules]"));
    assert!(text.contains("4.437"));
    assert!(text.contains("overall: PASS"));
}

#[test]
fn analyze_stdout_json_is_deterministic() {
    let device = fixture("two_qubit_chip.json");
    let a = chipqed(&["analyze", device.to_str().unwrap()]);
    let b = chipqed(&["analyze", device.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn strict_thresholds_exit_one() {
    let device = fixture("two_qubit_chip.json");
    let t = fixture("strict_thresholds.json");
    let o = chipqed(&["analyze", device.to_str().unwrap(), "--text", "--thresholds", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"qubits": [{"name": "q", "colour": "red"}]}"#).unwrap();
    let o = chipqed(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));

    let o = chipqed(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = chipqed(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_rereads_a_saved_result() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let device = fixture("two_qubit_chip.json");
    assert_eq!(chipqed(&["analyze", device.to_str().unwrap(), "--json", out.to_str().unwrap()]).status.code(), Some(0));

    let o = chipqed(&["check", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall: PASS"));

    let t = fixture("strict_thresholds.json");
    let o = chipqed(&["check", out.to_str().unwrap(), "--thresholds", t.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["overall_pass"], false);

    std::fs::write(&out, "{}").unwrap();
    assert_eq!(chipqed(&["check", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn capmatrix_reduce_and_extract() {
    let m = fixture("pads.csv");
    let o = chipqed(&["capmatrix", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Q1A"));

    let o = chipqed(&["capmatrix", m.to_str().unwrap(), "--keep", "Q1A,R1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nets"], serde_json::json!(["Q1A", "R1"]));

    let o = chipqed(&["capmatrix", m.to_str().unwrap(), "--keep", "Q1A,Q1B,R1,GND", "--ground", "GND", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["shunt_ff"]["Q1A"], 73.0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "# units: fF\na,b\n10,5\n5,10\n").unwrap();
    let o = chipqed(&["capmatrix", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tune_curve_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("q2.csv");
    let device = fixture("two_qubit_chip.json");
    let o = chipqed(&["tune-curve", device.to_str().unwrap(), "--element", "q2", "--points", "11", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("flux_phi0,e01_ghz,anharmonicity_ghz"));
    assert_eq!(lines.count(), 11);

    let o = chipqed(&["tune-curve", device.to_str().unwrap(), "--element", "q1"]);
    assert_eq!(o.status.code(), Some(2), "fixed-frequency qubit is not tunable");
}

#[test]
fn fit_targets_reports_components() {
    let o = chipqed(&["fit-targets", "--f01", "4.43", "--alpha", "0.198", "--resonator-f", "6.55", "--inductance", "1.96"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = v["transmon"]["c_shunt"].as_f64().unwrap();
    assert!((c / 108.0 - 1.0).abs() < 0.05);
    let cr = v["resonator"]["c_total_ff"].as_f64().unwrap();
    assert!((cr / 744.0 - 1.0).abs() < 0.005);

    assert_eq!(chipqed(&["fit-targets", "--f01", "4.43", "--alpha", "10"]).status.code(), Some(2));
    assert_eq!(chipqed(&["fit-targets", "--f01", "4.43"]).status.code(), Some(2));
    assert_eq!(chipqed(&["fit-targets"]).status.code(), Some(2));
}
