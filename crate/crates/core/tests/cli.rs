use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn bredon(args: &[&str], cache: Option<&Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bredon"));
    cmd.args(args).env_remove("BREDON_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("BREDON_CACHE_DIR", dir);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str], cache: Option<&Path>) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = bredon(&full, cache);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}{err}"));
    (code, value)
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

const SAMPLES: &[&[&str]] = &[
    &["group", "-n", "1", "-s", "0", "-p", "2", "-q", "1"],
    &["group", "-n", "5", "-s", "2", "-p", "8", "-q", "3"],
    &["ring", "-n", "3", "-s", "0"],
    &["ring", "-n", "6", "-s", "0"],
    &["ring", "-n", "2", "-s", "1"],
    &["mul", "-n", "2", "-s", "1", "h", "h"],
    &["mul", "-n", "4", "-s", "0", "h^4", "h"],
    &["e2", "-n", "1", "-q", "0"],
    &["e2", "-n", "4", "-q", "0"],
    &["chow", "-n", "4"],
    &["table", "-n", "3", "-s", "1", "--window", "0:4:-2:2"],
    &["verify", "--suite", "lemma-id", "--m-max", "8", "--series-order", "10"],
    &["verify", "--suite", "coeff-ring"],
    &["verify", "--suite", "pfister", "--r-max", "2"],
    &["verify", "--suite", "mod2", "--n-max", "2"],
];

#[test]
fn payloads_validate_against_schema() {
    let validator = schema();
    for args in SAMPLES {
        let (code, value) = json(args, None);
        assert!(code == 0 || code == 1, "{args:?} exited {code}");
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn records_round_trip() {
    for args in SAMPLES {
        let (_, value) = json(args, None);
        let record: quadric_bredon::cli::OutputRecord = serde_json::from_value(value.clone()).unwrap();
        assert_eq!(serde_json::to_value(&record).unwrap(), value);
    }
}

#[test]
fn group_examples() {
    let (code, v) = json(&["group", "-n", "1", "-s", "0", "-p", "2", "-q", "1"], None);
    assert_eq!(code, 0);
    assert_eq!(v["result"], serde_json::json!({"rank": 1, "torsion": []}));
    let (_, v) = json(&["group", "-n", "1", "-s", "0", "-p", "1", "-q", "1"], None);
    assert_eq!(v["result"], serde_json::json!({"rank": 0, "torsion": [2]}));
}

#[test]
fn exit_codes() {
    assert_eq!(bredon(&["group", "-n", "1", "-s", "1", "-p", "0", "-q", "0"], None).0, 2);
    assert_eq!(bredon(&["verify", "--suite", "nonsense"], None).0, 2);
    assert_eq!(bredon(&["frobnicate"], None).0, 2);
    assert_eq!(bredon(&["--help"], None).0, 0);
    assert_eq!(bredon(&["verify", "--suite", "lemma-id", "--m-max", "4", "--series-order", "6"], None).0, 0);
    // The literal isotropic ideal is a verification failure, not a usage error.
    let lit = ["verify", "--suite", "theorem-a", "-n", "2", "-s", "1", "--reading", "literal"];
    assert_eq!(bredon(&lit, None).0, 1);
    let cor = ["verify", "--suite", "theorem-a", "-n", "2", "-s", "1", "--reading", "corrected"];
    assert_eq!(bredon(&cor, None).0, 0);
    // Ideal inequality in the Pfister comparison is reported, not failed.
    let (code, v) = json(&["verify", "--suite", "pfister", "--r-max", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["paper_discrepancy"], Value::Bool(true));
}

#[test]
fn products() {
    let product = |args: &[&str]| json(args, None).1["result"]["product"].as_str().unwrap().to_string();
    assert_eq!(product(&["mul", "-n", "2", "-s", "1", "h", "h"]), "2*eta");
    assert_eq!(product(&["mul", "-n", "2", "-s", "1", "eta", "eta"]), "0");
    assert_eq!(product(&["mul", "-n", "4", "-s", "0", "h^4", "h"]), "0");
}

/// `(rank, torsion)` from the text form, e.g. `Z^2 + (Z/2)^3`.
fn parse_group(text: &str) -> (u64, Vec<u64>) {
    let mut rank = 0;
    let mut torsion = Vec::new();
    if text == "0" {
        return (rank, torsion);
    }
    for part in text.split(" + ") {
        let (base, mult) = match part.rsplit_once('^') {
            Some((b, m)) => (b.trim_matches(['(', ')']), m.parse::<usize>().unwrap()),
            None => (part, 1),
        };
        match base.strip_prefix("Z/") {
            Some(order) => torsion.extend(std::iter::repeat_n(order.parse::<u64>().unwrap(), mult)),
            None => rank += mult as u64,
        }
    }
    (rank, torsion)
}

fn group_numbers(v: &Value) -> (u64, Vec<u64>) {
    let torsion = v["torsion"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect();
    (v["rank"].as_u64().unwrap(), torsion)
}

#[test]
fn text_and_json_agree() {
    for (n, s) in [(1, 0), (3, 0), (4, 1), (5, 2)] {
        for (p, q) in [(0, 0), (1, 1), (2, -3), (4, 2), (6, 3), (8, 3)] {
            let args = ["group", "-n", &n.to_string(), "-s", &s.to_string(), "-p", &p.to_string(), "-q", &q.to_string()];
            let text = bredon(&args, None).1;
            let (_, v) = json(&args, None);
            assert_eq!(parse_group(text.trim()), group_numbers(&v["result"]), "{args:?}");
        }
    }
    let args = ["table", "-n", "4", "-s", "1", "--window", "0:8:-3:3"];
    let text = bredon(&args, None).1;
    let (_, v) = json(&args, None);
    let rows = v["result"]["rows"].as_array().unwrap();
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), rows.len());
    for (line, row) in lines.iter().zip(rows) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[0].parse::<i64>().unwrap(), row["p"].as_i64().unwrap());
        assert_eq!(cols[1].parse::<i64>().unwrap(), row["q"].as_i64().unwrap());
        let torsion = cols[3].split(',').filter(|t| !t.is_empty()).map(|t| t.parse().unwrap()).collect();
        assert_eq!((cols[2].parse().unwrap(), torsion), group_numbers(&row["group"]));
        assert_eq!(parse_group(cols[4]), group_numbers(&row["group"]));
    }
}

#[test]
fn cache_does_not_change_payloads() {
    let dir = tempfile::tempdir().unwrap();
    for args in SAMPLES {
        let (_, plain) = json(args, None);
        let (_, first) = json(args, Some(dir.path()));
        let (_, cached) = json(args, Some(dir.path()));
        assert_eq!(plain, first, "{args:?}");
        assert_eq!(plain, cached, "{args:?}");
    }
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), SAMPLES.len());
    assert!(files.iter().all(|f| f.to_string_lossy().ends_with(".json")));
}
