use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nutensor"))
        .args(args)
        .env("NUTENSOR_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(cache: &Path, args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = run(cache, &all);
    let v = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    (out.status.code().unwrap(), v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn tensor_c2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["tensor", "C2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["kind"], "tensor");
    assert_eq!(v["result"]["data"]["tensor_order"], 2);
    assert_eq!(v["result"]["data"]["nu_order"], 8);
}

#[test]
fn verify_s3_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "S3", "--lemmas", "i..v"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches(" ok ").count(), 5, "{text}");
}

#[test]
fn catalog_lists_orders() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["catalog", "list"]);
    assert_eq!(code, 0);
    let rows = v["result"]["data"].as_array().unwrap();
    assert!(rows.len() >= 12);
    assert!(rows.iter().all(|r| r["order"].as_u64().unwrap() >= 1));
}

#[test]
fn counterexample_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(
        dir.path(),
        &["engel", "S3", "-p", "2", "-m", "1", "-n", "1"],
    );
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert_eq!(v["result"]["data"]["scan"]["all_pairs_satisfied"], false);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["tensor", "NoSuchGroup"][..],
        &["verify", "S3", "--lemmas", "vi"],
        &["tensor"],
        &["lie", "S3", "-p", "2"],
        &["tensor", "S4"],
        &["tensor", "@missing.perm"],
        &["engel", "D4", "-p", "4", "-m", "1", "-n", "1"],
    ] {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn coset_limit_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["tensor", "D4", "--max-cosets", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit exceeded"));
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let perm = dir.path().join("klein.perm");
    std::fs::write(
        &perm,
        "# Klein four-group\ndegree 4\n(0 1)(2 3)\n(0 2)(1 3)\n",
    )
    .unwrap();
    let pres = dir.path().join("s3.pres");
    std::fs::write(&pres, "# S3\ngens: a b\nrels: a^2, b^3, (a b)^2\n").unwrap();
    let arg = format!("@{}", perm.display());
    let (code, v) = json(dir.path(), &["tensor", &arg]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["data"]["tensor_order"], 16);
    assert_eq!(v["input"]["kind"], "perm-file");
    let arg = format!("@{}", pres.display());
    let (code, v) = json(dir.path(), &["nu", &arg, "--mode", "gens"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["data"]["nu_order"], 216);
    assert_eq!(v["result"]["data"]["routes"]["agree"], true);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "verify",
        "D5",
        "--samples",
        "300",
        "--seed",
        "11",
        "--no-cache",
    ];
    let (_, a) = json(dir.path(), &args);
    let (_, b) = json(dir.path(), &args);
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn cache_round_trip_and_recovery() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["lie", "D8", "-p", "2", "--lazard", "4"];
    let (_, first) = json(&cache, &args);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    // a hit returns the stored report, timing included
    let (_, second) = json(&cache, &args);
    assert_eq!(first, second);

    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "not a cache entry").unwrap();
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = run(&cache, &all);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache entry"));
    let third: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(without_timing(third), without_timing(first));
    assert!(std::fs::read_to_string(&entry)
        .unwrap()
        .starts_with("nutensor-cache/1"));
}

#[test]
fn json_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(
        dir.path(),
        &[
            "identity-f",
            "D4",
            "-n",
            "2",
            "-p",
            "2",
            "-m",
            "1",
            "--json",
            path.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["kind"], "identity-f");
    assert_eq!(v["result"]["data"]["holds"], true);
}
