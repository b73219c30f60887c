#![allow(dead_code)]

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_wiltonlab");

pub fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(BIN);
    c.args(args).env_remove("SOURCE_DATE_EPOCH");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

pub fn schema_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json")
}

fn schema() -> Value {
    serde_json::from_str(&std::fs::read_to_string(schema_path()).expect("schema shipped")).expect("schema is JSON")
}

/// Schema errors for a report envelope, empty when valid.
pub fn schema_errors(doc: &Value) -> Vec<String> {
    let v = jsonschema::validator_for(&schema()).expect("schema compiles");
    v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect()
}

/// Errors for one self-test line against the check definition.
pub fn check_line_errors(line: &Value) -> Vec<String> {
    let mut s = schema();
    let defs = s["$defs"].clone();
    let mut check = defs["check"].clone();
    check["$defs"] = defs;
    check["$schema"] = s["$schema"].take();
    let v = jsonschema::validator_for(&check).expect("schema compiles");
    v.iter_errors(line).map(|e| e.to_string()).collect()
}
