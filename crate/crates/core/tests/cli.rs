use std::process::{Command, Output};

use heun_atlas::shell::{run_all, CheckStatus, Profile, REPORT_SCHEMA};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heun-atlas")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = cli(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (v, out.status.code().unwrap())
}

#[test]
fn quick_profile_has_no_failures() {
    let r = run_all(Profile::Quick).unwrap();
    assert!(!r.failed(), "{}", r.to_text(false));
    assert_eq!(r.count(CheckStatus::Pass) + r.count(CheckStatus::Warn), r.checks.len());
}

#[test]
fn run_report_shape_and_determinism() {
    let first = cli(&["--json", "all", "--profile", "quick"]);
    let second = cli(&["--json", "all", "--profile", "quick"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["schema"], REPORT_SCHEMA);
    assert_eq!(v["summary"]["fail"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string() && c["detail"].is_string());
        assert!(matches!(c["status"].as_str(), Some("PASS" | "WARN" | "FAIL")));
        assert!(c.get("elapsed_ms").is_none());
    }
}

#[test]
fn timings_are_opt_in() {
    let (v, _) = json(&["--json", "--timings", "all", "--profile", "quick"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["elapsed_ms"].is_u64()));
}

#[test]
fn count_and_character_formula_agree() {
    let p = "[2]^2+1=[5]=2+2+1";
    let (count, code) = json(&["--json", "count", "--pattern", p]);
    assert_eq!(code, 0);
    assert_eq!(count["orbit_count"], 1);
    let (sigma, _) = json(&["--json", "sigma", "--pattern", p]);
    assert_eq!(sigma["count"], count["raw_count"]);
}

#[test]
fn pattern_listing_carries_heun_exponents() {
    let (v, code) = json(&["--json", "patterns", "--type", "(2,3)", "--degree", "4"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        assert_eq!(r["degree"], 4);
        assert_eq!(r["heun"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn unrealizable_pattern_is_refuted() {
    let (v, code) = json(&["--json", "nonexist", "--pattern", "[2]^5=[3]^3+1=6+3+1"]);
    assert_eq!(code, 0);
    assert!(!v["verdict"]["chain"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_exits_with_two() {
    let out = cli(&["count", "--pattern", "garbage"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(cli(&["patterns", "--type", "(2,3,k)"]).status.code(), Some(2));
}

#[test]
fn verify_single_entry() {
    let out = cli(&["verify", "--id", "H1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn report_matches_published_schema_keys() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schemas/run-report.v1.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(schema["$id"], REPORT_SCHEMA);
    let (v, _) = json(&["--json", "--timings", "all", "--profile", "quick"]);
    let keys = |s: &Value| s["properties"].as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    let mut top: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    top.sort();
    assert_eq!(top, keys(&schema));
    let item = &schema["properties"]["checks"]["items"];
    for c in v["checks"].as_array().unwrap() {
        for k in c.as_object().unwrap().keys() {
            assert!(item["properties"].get(k).is_some(), "{k}");
        }
    }
}
