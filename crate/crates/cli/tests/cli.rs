use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_steiner-sieve"));
    cmd.env_remove("STEINER_SIEVE_CAPS").env_remove("STEINER_SIEVE_THREADS");
    cmd
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_valid(schema_file: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema_file);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let messages: Vec<String> = match compiled.validate(instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(messages.is_empty(), "{schema_file}: {messages:?}");
}

/// Validates the envelope and the command-specific result.
fn assert_report(schema_file: &str, report: &Value) {
    assert_valid("report.schema.json", report);
    assert_valid(schema_file, &report["result"]);
}

fn leaves(value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => map.values().for_each(|v| leaves(v, out)),
        Value::Array(items) => items.iter().for_each(|v| leaves(v, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Number(n) => out.push(n.to_string()),
        Value::Bool(b) => out.push(b.to_string()),
        Value::Null => {}
    }
}

#[test]
fn verify_design_passes_on_the_fixture() {
    let path = fixture("d3_10_4.txt");
    let out = run(&["verify-design", "--design", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_report("coverage.schema.json", &report);
    assert_eq!(report["status"], "consistent");
    assert_eq!(report["result"]["is_steiner"], true);
    assert_eq!(report["result"]["lambda_map"]["1"], 120);
}

#[test]
fn broken_design_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    let text = std::fs::read_to_string(fixture("d3_10_4.txt")).unwrap().replacen("1 5 7 6", "1 5 7 9", 1);
    std::fs::write(&path, text).unwrap();
    let out = run(&["verify-design", "--design", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_report("coverage.schema.json", &report);
    assert_eq!(report["status"], "check_failed");
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["verify-design", "--design", "no-such-file.txt"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let out = run(&["verify-design", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = run(&["reproduce", "no_such_case"]);
    assert_eq!(code(&out), 2);
    let out = run(&["search", "--group", fixture("a5_degree10.txt").to_str().unwrap(), "--space", "cubes:3", "--k", "4", "--method", "invariant:5"]);
    assert_eq!(code(&out), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbled.txt");
    std::fs::write(&path, "10 4\n1 2 x 4\n").unwrap();
    assert_eq!(code(&run(&["verify-design", "--design", path.to_str().unwrap()])), 2);
}

#[test]
fn reproduce_a5_lists_ten_candidates() {
    let out = run(&["reproduce", "a5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_report("case.schema.json", &report);
    assert_eq!(report["result"]["consistent"], true);
    let candidates = report["result"]["searches"][0]["candidates"].as_array().unwrap();
    assert_eq!(candidates.len(), 10);
    assert!(candidates.iter().all(|c| c["verdict"] != "steiner"));
    assert_valid("search.schema.json", &report["result"]["searches"][0]);
}

#[test]
fn every_case_validates() {
    for case in ["a6_family", "pgl29", "m10", "aut_a6", "s8_degree56", "a8_degree56", "sweeps"] {
        let out = run(&["reproduce", case]);
        assert_eq!(code(&out), 0, "{case}");
        assert_report("case.schema.json", &json(&out));
    }
}

#[test]
fn sieve_sweep_subdegree_and_search_outputs_validate() {
    let out = run(&["sieve", "--v", "36", "--group-order", "720", "--subdegree", "35"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_report("sieve.schema.json", &report);
    assert!(report["result"].as_array().unwrap().iter().all(|v| v["surviving"] == false));

    for case in ["intransitive", "imprimitive", "primitive"] {
        let out = run(&["sweep", case]);
        assert_eq!(code(&out), 0);
        assert_report("sweep.schema.json", &json(&out));
    }
    let out = run(&["sweep", "intransitive"]);
    assert_eq!(json(&out)["result"]["survivors"], serde_json::json!([[8, 3, 11]]));

    let out = run(&["subdegrees", "subsets", "--n", "9", "--m", "3", "--oracle"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_report("subdegrees.schema.json", &report);
    assert_eq!(report["result"]["agree"], true);
    let out = run(&["subdegrees", "partitions", "--m", "4", "--l", "3"]);
    assert_eq!(code(&out), 0);
    assert_report("subdegrees.schema.json", &json(&out));

    let group = fixture("s6_2.txt");
    let stab = fixture("s6_2_block_stabilizer.txt");
    let method = format!("orbit-union:{}", stab.display());
    let out = run(&["search", "--group", group.to_str().unwrap(), "--space", "points:10", "--k", "4", "--method", &method]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_report("search.schema.json", &report);
    assert_eq!(report["result"]["designs"].as_array().unwrap().len(), 1);

    let out = run(&["search", "--group", group.to_str().unwrap(), "--space", "points:10", "--k", "4", "--method", "invariant:3"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_report("search.schema.json", &report);
    assert_eq!(report["result"]["designs"].as_array().unwrap().len(), 1);

    // A 5-element on 10 points has two 5-orbits, so no union has 4 points.
    let out = run(&["search", "--group", group.to_str().unwrap(), "--space", "points:10", "--k", "4", "--method", "invariant:5"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no union"));
}

#[test]
fn text_carries_the_json_values() {
    let args = ["reproduce", "a5"];
    let as_json = json(&run(&args));
    let text_out = run(&["reproduce", "a5", "--format", "text"]);
    assert_eq!(code(&text_out), 0);
    let text = String::from_utf8(text_out.stdout).unwrap();
    let mut values = Vec::new();
    leaves(&as_json["result"], &mut values);
    for v in values {
        assert!(text.contains(&v), "text output lacks `{v}`");
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let path = fixture("a5_degree10.txt");
    let stab = format!("orbit-union:{}", fixture("a5_block_stabilizer.txt").display());
    let args = ["search", "--group", path.to_str().unwrap(), "--space", "points:10", "--k", "4", "--method", &stab];
    let first = run(&args);
    let second = run(&args);
    let single = bin().args(args).env("STEINER_SIEVE_THREADS", "1").output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, single.stdout);
    let bad = bin().args(args).env("STEINER_SIEVE_THREADS", "zero").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn caps_come_from_the_environment() {
    let args = ["subdegrees", "subsets", "--n", "9", "--m", "3", "--oracle"];
    let capped = bin().args(args).env("STEINER_SIEVE_CAPS", "oracle_space=50").output().unwrap();
    assert_eq!(code(&capped), 1);
    assert!(String::from_utf8_lossy(&capped.stderr).contains("oracle_space"));
    let bad = bin().args(args).env("STEINER_SIEVE_CAPS", "oracle_space").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn fixtures_ship_byte_identical() {
    for (name, embedded) in steiner_core::fixtures::ALL {
        let on_disk = std::fs::read(fixture(name)).unwrap();
        assert_eq!(on_disk, embedded.as_bytes(), "{name}");
    }
}

#[test]
fn reproduce_all_runs_cases_and_acceptance() {
    let out = run(&["reproduce", "all"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_valid("report.schema.json", &report);
    let cases = report["result"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 8);
    for case in cases {
        assert_valid("case.schema.json", case);
    }
    let criteria = report["result"]["acceptance"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    assert!(criteria.iter().all(|c| c["pass"] == true));
}
