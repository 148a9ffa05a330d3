use std::process::{Command, Output};

use h3_cli::{run_suite, CliError, Param, RunConfig, Status, Suite};
use serde_json::Value;

fn h3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_group_passes() {
    let o = h3(&["verify", "group"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS  group.order: order 120, 15 reflections"));
    assert!(text.contains("orbit lengths [12, 20, 30]"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(h3(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(h3(&["--nu", "one/third", "verify", "group"]).status.code(), Some(2));
    assert_eq!(h3(&["--delta", "1,0,1", "verify", "discrete"]).status.code(), Some(2));
    assert_eq!(h3(&["--n", "40", "verify", "group"]).status.code(), Some(2));
    assert_eq!(h3(&["emit", "nothing"]).status.code(), Some(2));
}

#[test]
fn json_report_schema_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["verify", "gauge", "qes", "--format", "json", "--report", path.to_str().unwrap()];
    let first = h3(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = h3(&args);
    assert_eq!(first.stdout, second.stdout);
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file.as_bytes(), &first.stdout[..]);
    let v: Value = serde_json::from_str(&file).unwrap();
    assert_eq!(v["config"]["nu"], "1/3");
    assert_eq!(v["config"]["suites"], serde_json::json!(["gauge", "qes"]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(v["summary"]["pass"].as_u64().unwrap() as usize, checks.len());
    assert_eq!(v["summary"]["fail"], 0);
    for c in checks {
        assert!(c["check_id"].is_string() && c["summary"].is_string());
        assert_eq!(c["status"], "pass");
        assert!(c["elapsed"].is_null());
    }
}

#[test]
fn discrete_compare_itemizes() {
    let o = h3(&["discrete", "compare", "--delta", "1/2,1/3,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("DIFF  discrete.table-h: 22 derived points, footprint [4, 6, 4], 22 table entries, 1 differ"));
    assert!(text.contains("S[0, -3, 1]"));
    assert!(text.contains("DIFF  discrete.table-f"));
    assert!(!text.contains("isospectral"));
}

#[test]
fn gamma_labels_reported_at_level_8() {
    let o = h3(&["--n", "8", "integral", "check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS  integral.commutation"));
    assert!(text.contains("DIFF  integral.gamma: WithoutOffset leaves 1 of 23 unmatched; WithOffset leaves 23 of 23 unmatched"));
}

#[test]
fn hamiltonian_tables_agree() {
    let o = h3(&["hamiltonian", "derive", "--formal"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("diff\n  none\n"));
    assert!(text.contains("A11 = (4/1)*t1^1"));
}

#[test]
fn emit_artifacts() {
    let o = h3(&["emit", "invariants"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("tau1 = "));

    let v: Value = serde_json::from_slice(&h3(&["emit", "discrete-h", "--format", "json"]).stdout).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 22);
    assert!(records.iter().all(|r| r["shift"].is_array() && r["coefficient"].is_string()));

    let v: Value = serde_json::from_slice(&h3(&["--n", "3", "emit", "spectrum", "--format", "json"]).stdout).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 5);
    let phi31 = records.iter().find(|r| r["n2"] == 1).unwrap();
    // ε = 6ω, γ = 21 + 90ν at ν = 1/3
    assert_eq!(phi31["epsilon"], "(6/1)");
    assert_eq!(phi31["gamma"], "(51/1)");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("block.txt");
    let o = h3(&["emit", "qes-block", "--k", "0", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("ground energy"));
}

#[test]
fn formal_parameters_are_accepted() {
    let o = h3(&["--nu", "formal", "--om", "formal", "emit", "integral"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nu^1"));
}

#[test]
fn library_validates_before_running() {
    let cfg = RunConfig {
        suites: vec![],
        ..RunConfig::default()
    };
    assert!(matches!(run_suite(&cfg), Err(CliError::Config(_))));
    assert_eq!("formal".parse::<Param>().unwrap(), Param::Formal);
    let cfg = RunConfig {
        suites: vec![Suite::Group, Suite::Group],
        ..RunConfig::default()
    };
    let reports = run_suite(&cfg).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.status == Status::Pass));
}
