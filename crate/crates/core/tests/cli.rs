use std::process::{Command, Output};

fn stabhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabhull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = stabhull(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn facets_json_has_two_n_halfspaces() {
    let v = json(&[
        "facets", "--n", "9", "--k", "3", "--r", "2", "--format", "json",
    ]);
    assert_eq!(v["params"]["n"], 9);
    assert_eq!(v["result"]["halfspaces"].as_array().unwrap().len(), 18);
    assert_eq!(v["result"]["empirical"], false);
    assert_eq!(v["meta"]["tool"], "stabhull");
}

#[test]
fn facets_outside_the_theorem_are_flagged_empirical() {
    let v = json(&[
        "facets", "--n", "6", "--k", "2", "--r", "3", "--format", "json",
    ]);
    assert_eq!(v["result"]["empirical"], true);
}

#[test]
fn gorenstein_report_for_6_2_2() {
    let v = json(&[
        "gorenstein",
        "--n",
        "6",
        "--k",
        "2",
        "--r",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(v["result"]["gorenstein"], true);
    assert_eq!(v["result"]["reflexive"], true);
    assert_eq!(v["result"]["codegree"], 3);
}

#[test]
fn ehrhart_csv_row() {
    let out = stabhull(&[
        "ehrhart", "--n", "4", "--k", "2", "--r", "1", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,k,r,d,delta_0"));
    assert!(lines.next().unwrap().contains("1,2,1,0"));
}

#[test]
fn vertices_csv_lists_stable_vectors() {
    let out = stabhull(&[
        "vertices", "--n", "5", "--k", "2", "--r", "2", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split(',').filter(|x| *x == "1").count() == 2));
}

#[test]
fn triangulate_counts_circuits() {
    let v = json(&["triangulate", "--n", "5", "--k", "2", "--format", "json"]);
    let circuits = v["result"]["circuits"]
        .as_array()
        .or_else(|| v["result"].as_array())
        .unwrap();
    assert_eq!(circuits.len(), 11);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        stabhull(&["facets", "--n", "6", "--k", "2", "--r", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stabhull(&["facets", "--n", "6", "--k", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(stabhull(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        stabhull(&["ehrhart", "--n", "4", "--k", "2", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = stabhull(&["verify", "--max-n", "7", "--format", "json"]);
    let b = stabhull(&["verify", "--max-n", "7", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["failures"], 0);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("stabhull-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("facets.json");
    let out = stabhull(&[
        "facets",
        "--n",
        "6",
        "--k",
        "2",
        "--r",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["count"], 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_stabhull"))
            .args(["verify", "--max-n", "7"])
            .env("STABHULL_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
