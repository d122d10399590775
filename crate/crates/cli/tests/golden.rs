//! The JSON reports shown in the book are regenerated and compared with the
//! files under `book/src/reports`, timing aside.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

const CASES: &[(&str, &[&str])] = &[
    ("tensor", &["tensor", "S3"]),
    ("nu", &["nu", "S3"]),
    ("verify", &["verify", "C2xC2", "--lemmas", "iii,closed"]),
    ("engel", &["engel", "C3", "-p", "3", "-m", "1", "-n", "1"]),
    ("lie", &["lie", "D4", "-p", "2", "--lazard", "2"]),
    ("catalog", &["catalog", "list"]),
    ("identity-f", &["identity-f", "C2xC2", "-n", "1", "-p", "2", "-m", "1"]),
];

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn book_reports_are_current() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../book/src/reports");
    for (name, args) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_nutensor"))
            .args(["--no-cache", "--json", "-"])
            .args(*args)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{name}");
        let fresh: Value = serde_json::from_slice(&out.stdout).unwrap();
        let path = dir.join(format!("{name}.json"));
        let text = std::fs::read_to_string(&path).unwrap();
        let golden: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            without_timing(fresh),
            without_timing(golden),
            "{} is stale",
            path.display()
        );
    }
}
