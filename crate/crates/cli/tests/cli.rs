use std::process::{Command, Output};

fn qg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qg")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn qb_generic_and_specialized() {
    let o = qg(&["qb", "--N", "4", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "v^4 + v^2 + 2 + v^-2 + v^-4");
    assert_eq!(stdout(&qg(&["qb", "--N", "3", "--t", "1", "--lprime", "3", "--p", "2"])), "0");
    assert_eq!(stdout(&qg(&["qb", "--N", "4", "--t", "3", "--lprime", "3", "--p", "0"])), "1");
}

#[test]
fn qb_routes_agree() {
    for (n, t) in [(7, 3), (9, 4), (12, 5)] {
        let (n, t) = (n.to_string(), t.to_string());
        let base = ["qb", "--N", &n, "--t", &t, "--lprime", "3", "--p", "2", "--h", "2"];
        let direct = stdout(&qg(&base));
        let mut ladic = base.to_vec();
        ladic.push("--ladic");
        assert_eq!(direct, stdout(&qg(&ladic)));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qg(&["qb", "--N", "3"]).status.code(), Some(2));
    assert_eq!(qg(&["qb", "--N", "3", "--t", "1", "--lprime", "3"]).status.code(), Some(2));
    assert_eq!(qg(&["qb", "--N", "3", "--t", "-1"]).status.code(), Some(2));
    assert_eq!(qg(&["qb", "--N", "3", "--t", "1", "--lprime", "4", "--p", "2"]).status.code(), Some(2));
    assert_eq!(qg(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(qg(&["mult", "--ctx", "schur", "--n", "2", "E12", "E21"]).status.code(), Some(2));
}

#[test]
fn mult_kwindow_two_terms() {
    let o = qg(&["mult", "--ctx", "kwindow", "--n", "2", "E12", "E21"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let mats: Vec<&serde_json::Value> = terms.iter().map(|t| &t["matrix"]).collect();
    assert!(mats.contains(&&serde_json::json!([[0, 1], [1, -1]])));
    assert!(mats.contains(&&serde_json::json!([[1, 0], [0, 0]])));
}

#[test]
fn mult_schur_text() {
    let o = qg(&["mult", "--ctx", "schur", "--n", "2", "--r", "1", "--text", "E12", "E21"]);
    assert_eq!(stdout(&o), "[diag(1,0)]");
}

#[test]
fn mult_quotient_not_composable_is_zero() {
    let o = qg(&[
        "mult", "--ctx", "quotient", "--n", "2", "--lprime", "3", "--p", "2", "E12+diag(0,1)", "E12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"], serde_json::json!([]));
}

#[test]
fn verify_det_reports_mismatch() {
    let o = qg(&["verify", "det", "--max-m", "4", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "det");
    let checks = v["checks"].as_array().unwrap();
    let pass = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap()["pass"].clone();
    assert_eq!(pass("det X_1 = (-2)^(2^1-1)"), true);
    assert_eq!(pass("det X_2 differs from (-2)^2"), true);
    assert_eq!(pass("det X_2 = (-2)^(2^1) det(X_1)^2"), true);
}

#[test]
fn verify_realization_small() {
    let o = qg(&["verify", "realization", "--n", "2", "--lprime", "3", "--p", "2", "--h", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"rank\":81"));
}

#[test]
fn verify_report_schema_and_determinism() {
    let dir = std::env::temp_dir().join(format!("qg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |jobs: &str, file: &str| {
        let path = dir.join(file);
        let o = qg(&[
            "verify", "tau", "--lprime", "3", "--p", "2", "--samples", "20", "--seed", "7", "--jobs", jobs,
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        for key in ["suite", "params", "checks", "seed", "runtime_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        v["runtime_ms"] = 0.into();
        v
    };
    let a = run("1", "a.json");
    let b = run("4", "b.json");
    assert_eq!(a["seed"], 7);
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_gauss_skips_inadmissible_pairs() {
    let o = qg(&["verify", "gauss", "--lprime", "3,4", "--p", "2,3", "--h", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("l'=3 p=3"));
}
