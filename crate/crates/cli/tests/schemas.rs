//! Every JSON document the CLI emits validates against its schema file.

use std::path::PathBuf;
use std::process::Command;

use jsonschema::{Registry, Validator};
use serde_json::Value;

const BASE: &str = "https://gdof.invalid/schemas/";

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn validator(name: &str) -> Validator {
    let registry = Registry::new()
        .add(format!("{BASE}common.schema.json"), load("common.schema.json"))
        .unwrap()
        .prepare()
        .unwrap();
    jsonschema::options()
        .with_base_uri(BASE)
        .with_registry(&registry)
        .build(&load(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run(args: &[&str]) -> String {
    let o = Command::new(env!("CARGO_BIN_EXE_gdof"))
        .args(args)
        .env_remove("GDOF_OUT_DIR")
        .output()
        .unwrap();
    String::from_utf8(o.stdout).unwrap()
}

fn check(schema: &str, doc: &str) {
    let v = validator(schema);
    let value: Value = serde_json::from_str(doc).unwrap();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{doc}");
}

#[test]
fn region_documents() {
    for csit in ["delayed", "perfect", "dof", "tin"] {
        check("region.schema.json", &run(&["region", "--config", "2,4,3,3", "--alpha", "1.4", "--csit", csit]));
    }
}

#[test]
fn sum_document() {
    check("sum.schema.json", &run(&["sum", "--config", "1,2,1,2", "--csit", "delayed,perfect,dof,tin"]));
}

#[test]
fn compare_document() {
    check("compare.schema.json", &run(&["compare", "--config", "1,2,1,1", "--alpha", "0.4", "--csit", "delayed,perfect,dof,tin"]));
}

#[test]
fn corners_documents() {
    for a in ["0", "0.4", "1.4", "3"] {
        check("corners.schema.json", &run(&["corners", "--config", "2,2,3,2", "--alpha", a]));
    }
}

#[test]
fn verify_lines() {
    let out = run(&["verify", "--config", "3,1,2,1", "--config", "2,4,3,3", "--alpha-grid", "0,0.5,1.5"]);
    for line in out.lines() {
        check("verify-line.schema.json", line);
    }
}

#[test]
fn oracle_document() {
    check("oracle-rank.schema.json", &run(&["oracle", "rank", "--max-antennas", "2", "--max-m2", "3"]));
}

#[test]
fn validate_documents() {
    check("validate.schema.json", &run(&["validate", "--config", "2,2,3,2", "--alpha", "1.4", "--term", "common-r1", "--samples", "50"]));
    check("validate.schema.json", &run(&["validate", "--fterm", "1,1,1,0,0", "--samples", "50"]));
}

#[test]
fn schemas_reject_malformed_rationals() {
    let v = validator("region.schema.json");
    let bad = serde_json::json!({
        "config": {"m1": 1, "m2": 1, "n1": 1, "n2": 1},
        "alpha": "0.5",
        "halfplanes": [],
        "vertices": []
    });
    assert!(!v.is_valid(&bad));
}
