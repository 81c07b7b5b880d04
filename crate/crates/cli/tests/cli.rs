use std::process::{Command, Output};

use serde_json::Value;

fn redwords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redwords"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = redwords(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn exit_code(args: &[&str]) -> i32 {
    redwords(args).status.code().expect("exited normally")
}

#[test]
fn exact_counts() {
    assert_eq!(stdout(&["count-red", "5,4,2,7,8,3,1,6"]), "730158");
    assert_eq!(stdout(&["count-red", "54278316"]), "730158");
    assert_eq!(stdout(&["count-red", "1"]), "1");
    assert_eq!(stdout(&["count-red", "--oracle", "4,3,8,1,7,6,2,5"]), "2085655");
    assert_eq!(stdout(&["f-shape", "6,4,2,2,1"]), "243243");
    assert_eq!(stdout(&["f-skew", "12,10,9,9/4,3,3"]), "73064598262110");
    assert_eq!(stdout(&["count-hecke", "3,1,5,2,4", "--len", "5"]), "32");
    assert_eq!(stdout(&["f-setvalued", "3,1", "--len", "5"]), "17");
    assert_eq!(stdout(&["f-skew-setvalued", "2,2/1", "--len", "3"]), "2");
    assert_eq!(stdout(&["eg", "2,1,4,3,6,5"]), "EG 4\nQ 2");
}

#[test]
fn lehmer_code_input() {
    // code (3,2,0,2,2,1) is 54278316 up to trailing fixed points
    assert_eq!(stdout(&["count-red", "--code", "4,3,1,3,3,1"]), "730158");
}

#[test]
fn json_integers_are_strings() {
    let v = json(&["count-red", "5,4,2,7,8,3,1,6"]);
    assert_eq!(v["count"], "730158");
    let leaves = v["leaves"].as_array().unwrap();
    assert_eq!(leaves.len(), 4);
    assert!(leaves.iter().all(|l| l["f"].is_string() && l["multiplicity"].is_string()));
    let v = json(&["euler-bn", "--g", "45", "--r", "3", "--d", "43", "--alpha", "0,1,1,4", "--beta", "0,0,1,3"]);
    assert_eq!(v["chi"], "-1291486305101353278967153196099766");
    assert_eq!(v["shape"], "(12,10,9,9)/(4,3,3)");
}

#[test]
fn estimates_report_mean_sem_and_trial_means() {
    let args = ["estimate", "hecke", "3,5,1,6,2,4", "--len", "13", "--alg", "h", "--samples", "200", "--trials", "4", "--seed", "9"];
    let v = json(&args);
    assert!(v["mean"].is_string() && v["sem"].is_string());
    assert_eq!(v["trial_means"].as_array().unwrap().len(), 4);
    let text = stdout(&args);
    assert!(text.contains("+/-") && text.contains("4 trials of 200 samples"), "{text}");
}

#[test]
fn thread_count_does_not_change_output() {
    let base = ["estimate", "red", "4,3,8,1,7,6,2,5", "--samples", "300", "--seed", "4", "--json"];
    let one = stdout(&[&base[..], &["--threads", "1"]].concat());
    let three = stdout(&[&base[..], &["--threads", "3"]].concat());
    assert_eq!(one, three);
}

#[test]
fn tree_export() {
    let v: Value = serde_json::from_str(&stdout(&["count-red", "5,4,2,7,8,3,1,6", "--tree-out", "json"])).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 7);
    assert_eq!(nodes[0]["word"], "5,4,2,7,8,3,1,6");
    assert_eq!(nodes.iter().filter(|n| !n["leaf_shape"].is_null()).count(), 4);
    let dot = stdout(&["count-red", "2,1,4,3", "--tree-out", "dot"]);
    assert!(dot.starts_with("digraph") && dot.contains("n0 -> n2;"), "{dot}");
}

#[test]
fn diagram_and_distribution() {
    let text = stdout(&["diagram", "5,4,2,7,8,3,1,6"]);
    assert!(text.contains("accessible (5,6)"), "{text}");
    assert!(text.contains("pivots (1,5) (2,4) (3,2)"), "{text}");
    let v = json(&["eg-distribution", "--n", "4", "--exhaustive"]);
    assert_eq!(v["histogram"]["1"], "23");
    assert_eq!(v["histogram"]["2"], "1");
    let v = json(&["eg-distribution", "--n", "6", "--samples", "50", "--seed", "1"]);
    assert_eq!(v["permutations"], "50");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("redwords-cli-test-{}.txt", std::process::id()));
    let out = redwords(&["f-shape", "3,3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "5\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["count-red"]), 1);
    assert_eq!(exit_code(&["no-such-command"]), 1);
    assert_eq!(exit_code(&["count-red", "--oracle", "--tree-out", "dot", "21"]), 1);
    assert_eq!(exit_code(&["eg-distribution", "--n", "4"]), 1);
    assert_eq!(exit_code(&["estimate", "hecke", "321"]), 1);
    assert_eq!(exit_code(&["estimate", "red", "321", "--trials", "1"]), 1);
    assert_eq!(exit_code(&["count-red", "3,3,1"]), 2);
    assert_eq!(exit_code(&["f-shape", "2,3"]), 2);
    assert_eq!(exit_code(&["f-skew", "2,1/3"]), 2);
    assert_eq!(exit_code(&["euler-bn", "--g", "4", "--r", "1", "--d", "3", "--alpha", "0", "--beta", "0,0"]), 2);
    assert_eq!(exit_code(&["count-hecke", "3,2,1", "--len", "40", "--memo-cap", "5"]), 3);
    assert_eq!(exit_code(&["count-red", "5,4,2,7,8,3,1,6", "--node-cap", "3"]), 3);
    assert_eq!(exit_code(&["--help"]), 0);
}
