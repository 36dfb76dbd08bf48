use std::path::PathBuf;
use std::process::{Command, Output};

use braided_dunkl::cli::{parse_report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bdunkl"))
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bdunkl-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &std::path::Path, file: &str, text: &str) -> PathBuf {
    let path = dir.join(file);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn verify_writes_a_round_trippable_report() {
    let dir = scratch_dir("verify");
    let cfg = write(
        &dir,
        "c.json",
        r#"{"check": "anticommute", "family": "w_cc", "m": 2, "m'": 1, "n": 3, "c1": "1/2", "D": 4}"#,
    );
    let out = dir.join("report.json");
    let o = run(bin().arg("verify").arg(&cfg).arg("--out").arg(&out));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let report = parse_report(&text).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert_eq!(report.check, "anticommute");
    assert_eq!(report.params["m'"], 1);
    assert_eq!(report.version, env!("CARGO_PKG_VERSION"));
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(raw["duration_ms"].is_u64());
    assert_eq!(report.to_json(), text);
}

#[test]
fn failing_check_reports_counterexample_and_exit_code() {
    let dir = scratch_dir("fail");
    let cfg = write(
        &dir,
        "c.json",
        r#"{"check": "pbw", "family": "w_cc", "m": 2, "m'": 1, "n": 2, "c1": "1/2", "corrupt": true, "trials": 50, "seed": 4}"#,
    );
    let o = run(bin().arg("verify").arg(&cfg));
    assert_eq!(o.status.code(), Some(1));
    let report = parse_report(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(report.status, Status::Fail);
    assert!(report.counterexample.unwrap()["word"].is_string());
}

#[test]
fn expected_failure_exits_zero() {
    let dir = scratch_dir("expect");
    let cfg = write(
        &dir,
        "c.json",
        r#"{"check": "nq-membership", "q": {"constant": -1, "n": 2}, "matrices": [[["3/5", "-4/5"], ["4/5", "3/5"]]], "expect": "fail"}"#,
    );
    let o = run(bin().arg("verify").arg(&cfg));
    assert!(o.status.success());
    let report = parse_report(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(report.status, Status::Fail);
    assert!(report.as_expected());
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = scratch_dir("bad");
    let cfg = write(
        &dir,
        "c.json",
        r#"{"check": "blocks", "q": {"constant": -1, "n": 2}, "colour": 1}"#,
    );
    let o = run(bin().arg("verify").arg(&cfg));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("config.colour"));
}

#[test]
fn blocks_subcommand() {
    let dir = scratch_dir("blocks");
    let q = write(&dir, "q.json", r#"{"constant": -1, "n": 3}"#);
    let o = run(bin().arg("blocks").arg("--q").arg(&q));
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["partition"], serde_json::json!([[1, 2, 3]]));
    assert_eq!(v["sign"], serde_json::json!(["negative"]));

    let q = write(
        &dir,
        "q2.json",
        r#"{"q": [[1, -1, 1], [-1, 1, 1], [1, 1, 1]]}"#,
    );
    let o = run(bin().arg("blocks").arg("--q").arg(&q));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["partition"], serde_json::json!([[1, 2], [3]]));
    assert_eq!(v["sign"], serde_json::json!(["negative", "positive"]));
}

#[test]
fn group_subcommand_enumerates() {
    let dir = scratch_dir("group");
    let spec = write(
        &dir,
        "g.json",
        r#"{"family": "gmpn", "m": 4, "p": 2, "n": 2}"#,
    );
    let o = run(bin()
        .arg("group")
        .arg("--spec")
        .arg(&spec)
        .arg("--enumerate"));
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("order 16"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn batch_verify_writes_one_report_per_check() {
    let dir = scratch_dir("batch");
    let cfg = write(
        &dir,
        "c.json",
        r#"[{"check": "hilbert", "q": {"constant": -1, "n": 2}, "d_max": 3, "name": "h"},
            {"check": "group-order", "group": {"family": "w_cc", "m": 2, "m'": 1, "n": 3}, "expected_order": 24}]"#,
    );
    let out = dir.join("reports");
    let o = run(bin().arg("verify").arg(&cfg).arg("--out").arg(&out));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<_> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names, ["000_h.json", "001_group_order.json"]);
}
