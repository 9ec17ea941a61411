use std::process::{Command, Output};

use serde_json::Value;

fn forcekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forcekit"))
        .args(args)
        .env_remove("FORCEKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = forcekit(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn computed(report: &Value, parameter: &str) -> u64 {
    report["computed"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["parameter"] == parameter)
        .unwrap()["value"]
        .as_u64()
        .unwrap()
}

#[test]
fn analyze_wheel() {
    let r = json(&["analyze", "--family", "wheel:7", "--json"]);
    assert_eq!(computed(&r, "F"), 4);
    assert_eq!(computed(&r, "Fplus"), 4);
    assert_eq!(computed(&r, "Z"), 3);
    assert_eq!(computed(&r, "Zplus"), 3);
    assert_eq!(r["consistent"], true);
    assert!(r["theorems"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["pass"] == true));
}

#[test]
fn analyze_small_families() {
    let p1 = json(&["analyze", "--family", "path:1", "--json"]);
    assert_eq!(computed(&p1, "F"), 0);
    let k22 = json(&["analyze", "--family", "biclique:2,2", "--json"]);
    assert_eq!((computed(&k22, "F"), computed(&k22, "Fplus")), (2, 1));
}

#[test]
fn analyze_rule_and_params_select_columns() {
    let r = json(&["analyze", "--family", "cycle:5", "--rule", "psd", "--json"]);
    let names: Vec<&str> = r["computed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["parameter"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["Zplus", "Fplus"]);
    let r = json(&["analyze", "--family", "cycle:5", "--params", "F", "--json"]);
    assert_eq!(r["computed"].as_array().unwrap().len(), 1);
    assert!(r["computed"][0].get("millis").is_none());
    let r = json(&[
        "analyze",
        "--family",
        "cycle:5",
        "--params",
        "F",
        "--timings",
        "--json",
    ]);
    assert!(r["computed"][0]["millis"].is_number());
}

#[test]
fn analyze_tsv_columns() {
    let out = forcekit(&["analyze", "--family", "cycle:4", "--rule", "standard"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "graph\tn\tparameter\tvalue\twitness\tmethod\tpredicted\tagrees"
    );
    assert!(text.contains("cycle:4\t4\tF\t2\t"));
}

#[test]
fn analyze_from_file() {
    let dir = std::env::temp_dir().join(format!("forcekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.txt");
    std::fs::write(&path, "# a 4-cycle\n4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let r = json(&["analyze", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(computed(&r, "F"), 2);
    assert_eq!(computed(&r, "Fplus"), 1);
    assert!(r["predictions"].as_array().unwrap().is_empty());

    std::fs::write(&path, "2 1\n0 0\n").unwrap();
    let out = forcekit(&["analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(
        forcekit(&["analyze", "--family", "wheel:3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        forcekit(&["analyze", "--family", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        forcekit(&["analyze", "--file", "/nonexistent/graph"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        forcekit(&["verify", "--suite", "table9"]).status.code(),
        Some(2)
    );
    assert_eq!(forcekit(&["table", "3"]).status.code(), Some(2));
    assert_eq!(
        forcekit(&["analyze", "--family", "hypercube:4", "--budget", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        forcekit(&["verify", "--suite", "table1", "--budget", "5"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_forcekit"))
        .args(["analyze", "--family", "hypercube:4"])
        .env("FORCEKIT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for suite in ["exhaustive6", "table51", "characterizations"] {
        let r = json(&["verify", "--suite", suite, "--json"]);
        assert!(r["failures"].as_array().unwrap().is_empty(), "{suite}");
    }
    let r = json(&["verify", "--suite", "linalg", "--seed", "7", "--json"]);
    assert!(r["failures"].as_array().unwrap().is_empty());
    assert_eq!(r["seed"], 7);
    let tallies = r["tallies"].as_object().unwrap();
    assert!(tallies["Cor 2.10"]["passed"].as_u64().unwrap() >= 100);
    assert!(tallies["Prop 2.12"]["passed"].as_u64().unwrap() >= 100);
}

#[test]
fn verify_tsv_summary() {
    let out = forcekit(&["verify", "--suite", "table2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theorem\tpassed\tfailed\n"));
    assert!(text.lines().last().unwrap().starts_with("suite table2: "));
}

#[test]
fn tables_render() {
    let out = forcekit(&["table", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\tK_n, n>=2\tn-2\tiff n=3\t"));
    let out = forcekit(&["table", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\tC_n, n>=3\t1\tiff n=3\t"));
    assert!(text.contains("\tH_s, s>=2\t2s-4\tiff s=4\t"));
}

#[test]
fn matrix_text() {
    let out = forcekit(&["matrix", "--family", "path:3", "--seed", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][2], 0.0);
    assert_ne!(rows[0][1], 0.0);
    assert_eq!(rows[0][1], rows[1][0]);
}
