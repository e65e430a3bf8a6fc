use std::process::{Command, Output};

use serde_json::Value;

fn invstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invstab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn decide_fq_stable() {
    let out = invstab(&["decide-fq", "--p", "5", "--d", "2", "--c", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"], "InverselyStable");
    assert_eq!(v["field"]["p"], 5);
    assert_eq!((v["preperiod"].as_u64(), v["period"].as_u64()), (Some(1), Some(2)));
    let ratios: Vec<u64> = v["ratios"].as_array().unwrap().iter().map(|r| r.as_u64().unwrap()).collect();
    let mut distinct = ratios.clone();
    distinct.sort();
    distinct.dedup();
    assert_eq!(distinct, vec![2, 3]);
}

#[test]
fn decide_fq_reducible_and_usage_errors() {
    let out = invstab(&["decide-fq", "--p", "5", "--d", "2", "--c", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "PhiReducible");
    assert_eq!(invstab(&["decide-fq", "--p", "4", "--d", "2", "--c", "1"]).status.code(), Some(64));
    assert_eq!(invstab(&["decide-fq", "--p", "5", "--d", "2"]).status.code(), Some(64));
    assert_eq!(invstab(&["decide-fq", "--p", "5", "--d", "2", "--c", "x"]).status.code(), Some(64));
    assert_eq!(invstab(&["decide-fq", "--p", "5", "--d", "1", "--c", "2"]).status.code(), Some(64));
    assert_eq!(invstab(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(invstab(&["--help"]).status.code(), Some(0));
}

#[test]
fn decide_fq_inconclusive_under_tiny_cap() {
    let out = invstab(&["decide-fq", "--p", "17", "--d", "8", "--c", "5", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verdict"], "Inconclusive");
}

#[test]
fn decide_fq_extension_field_and_negative_c() {
    let out = invstab(&["decide-fq", "--p", "3", "--k", "2", "--d", "2", "--c", "1,1"]);
    assert!(matches!(out.status.code(), Some(0 | 1)));
    assert_eq!(json(&out)["c"], serde_json::json!([1, 1]));
    let neg = json(&invstab(&["decide-fq", "--p", "5", "--d", "2", "--c", "-3"]));
    let pos = json(&invstab(&["decide-fq", "--p", "5", "--d", "2", "--c", "2"]));
    assert_eq!(neg["verdict"], pos["verdict"]);
}

#[test]
fn guarantee_commands() {
    let out = invstab(&["guarantee", "--ring", "z", "--d", "3", "--c", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Guaranteed");
    let out = invstab(&["guarantee", "--ring", "ft", "--d", "3", "--c", "t"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Guaranteed");
    let out = invstab(&["guarantee", "--ring", "z", "--d", "2", "--c", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "NotApplicable");
    assert_eq!(invstab(&["guarantee", "--ring", "ft", "--d", "2", "--c", "t"]).status.code(), Some(64));
    assert_eq!(invstab(&["guarantee", "--ring", "ft", "--d", "3", "--c", "t^"]).status.code(), Some(64));
}

#[test]
fn guarantee_with_internals() {
    let out = invstab(&["guarantee", "--ring", "ft", "--d", "3", "--c", "t^2+1", "--internals", "--depth", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let degrees = &json(&out)["internals"]["degrees"];
    assert_eq!(degrees, &serde_json::json!([2, 8, 26, 80]));
    let out = invstab(&["guarantee", "--ring", "z", "--d", "3", "--c", "2", "--internals"]);
    let certs = json(&out)["certificates"].as_array().unwrap().clone();
    assert_eq!(certs.len(), 3);
    assert!(certs.iter().all(|c| c["verdict"] != "Reducible"));
}

#[test]
fn enumerate_fermat_outputs() {
    let out = invstab(&["enumerate-cor28", "--p", "17", "--verify-stability"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["S"], 2);
    assert_eq!(v["qualifying_c"], serde_json::json!([5, 10]));

    let out = invstab(&["enumerate-cor28", "--p", "17", "--verify-stability", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c,legendre(c-1),legendre(c),legendre(c+1),verdict");
    assert_eq!(&lines[1..], ["5,1,-1,-1,InverselyStable", "10,1,-1,-1,InverselyStable"]);

    let v = json(&invstab(&["enumerate-cor28", "--p", "257"]));
    assert!(v["S"].as_u64().unwrap() >= 28);
    assert_eq!(invstab(&["enumerate-cor28", "--p", "19"]).status.code(), Some(64));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("invstab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verdict.json");
    let out = invstab(&["decide-fq", "--p", "5", "--d", "2", "--c", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "InverselyStable");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_suites_deterministic() {
    let a = invstab(&["selftest", "--suite", "charsum", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["passed"], true);
    let b = invstab(&["selftest", "--suite", "lemma33", "--seed", "7"]);
    let c = invstab(&["selftest", "--suite", "lemma33", "--seed", "7"]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn selftest_all_passes() {
    let out = invstab(&["selftest", "--suite", "all", "--seed", "42", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("[crossval]") && text.contains("[norm]"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn thread_override() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_invstab"));
    let out = cmd.env("INVSTAB_THREADS", "2").args(["selftest", "--suite", "crossval"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_invstab"));
    let out = cmd.env("INVSTAB_THREADS", "zero").args(["selftest", "--suite", "crossval"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}
