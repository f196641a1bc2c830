//! End-to-end tests of the binary: determinism, exit codes, config files
//! and schema conformance of every artifact kind.

use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zipstrata"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

// ---- a small structural JSON-Schema interpreter ------------------------

fn type_matches(v: &Value, ty: &str) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(tys) = schema.get("type") {
        let ok = match tys {
            Value::String(t) => type_matches(v, t),
            Value::Array(ts) => ts.iter().any(|t| type_matches(v, t.as_str().unwrap())),
            _ => true,
        };
        if !ok {
            return Err(format!("{path}: type mismatch, got {v}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(|e| e.as_array()) {
        if !allowed.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if v.is_object() {
        if let Some(req) = schema.get("required").and_then(|r| r.as_array()) {
            for key in req {
                let key = key.as_str().unwrap();
                if v.get(key).is_none() {
                    return Err(format!("{path}: missing required field '{key}'"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
            for (key, sub) in props {
                if let Some(field) = v.get(key) {
                    validate(sub, field, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let (true, Some(items)) = (v.is_array(), schema.get("items")) {
        for (i, item) in v.as_array().unwrap().iter().enumerate() {
            validate(items, item, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn assert_schema(name: &str, v: &Value) {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/schemas");
    let text = std::fs::read_to_string(format!("{dir}/{name}")).expect("schema file");
    let schema: Value = serde_json::from_str(&text).unwrap();
    if let Err(e) = validate(&schema, v, "$") {
        panic!("{name}: {e}");
    }
}

// ---- tests --------------------------------------------------------------

#[test]
fn weights_table_matches_block_form_and_schema() {
    let out = run(&["weights", "--family", "sp", "--n", "4", "--q", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_schema("weights.schema.json", &v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["lambda"], serde_json::json!([1, 0, 0, -3]));
    assert_eq!(rows[3]["lambda"], serde_json::json!([-2, -2, -2, -2]));

    let out = run(&["weights", "--family", "u-inert", "--r", "2", "--s", "1", "--q", "5"]);
    let v = stdout_json(&out);
    assert_schema("weights.schema.json", &v);
    assert_eq!(v["rows"][0]["lambda"], serde_json::json!([1, 0, 5]));
    assert_eq!(v["lambda_det"], serde_json::json!([6, 6, 6]));
}

#[test]
fn verify_runs_are_byte_identical() {
    let args = [
        "verify", "--family", "u-inert", "--r", "2", "--s", "1", "--q", "5", "--samples", "60",
        "--seed", "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical for fixed config+seed");
    let v = stdout_json(&a);
    assert_schema("verify-report.schema.json", &v);
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn verify_requires_a_seed() {
    let out = run(&["verify", "--family", "sp", "--n", "2", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["weights", "--family", "e8", "--n", "2", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["weights", "--family", "gl", "--n", "2", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gs-cone", "--family", "sp", "--n", "2", "--q", "3", "--lambda", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["identity"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["weights", "--family", "u-inert", "--n", "3", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--family", "sp", "--n", "2", "--q", "5", "--seed", "1", "--d", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_bytes() {
    let args = ["verify", "--family", "sp", "--n", "2", "--q", "5", "--samples", "40", "--seed", "3"];
    let one = bin().env("ZIPSTRATA_THREADS", "1").args(args).output().unwrap();
    let four = bin().env("ZIPSTRATA_THREADS", "4").args(args).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn strata_export_and_dot() {
    let out = run(&["strata", "--family", "sp", "--n", "2", "--q", "3", "--kind", "zip"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_schema("poset.schema.json", &v);
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert_eq!(v["covers"].as_array().unwrap().len(), 3);

    let out = run(&["strata", "--family", "sp", "--n", "2", "--q", "3", "--kind", "flag", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    // Bruhat Hasse diagram of W(C_2): 2 + 4 + 4 + 2 covering pairs.
    assert_eq!(text.matches("->").count(), 12);
}

#[test]
fn identity_reports() {
    let out = run(&["identity", "--binomial", "8"]);
    assert!(out.status.success(), "sharp-region sweep must be clean");
    let v = stdout_json(&out);
    assert_schema("identity-binomial.schema.json", &v);
    assert!(v["cases_checked"].as_u64().unwrap() > 0);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert!(!v["nominal_region_counterexamples"].as_array().unwrap().is_empty());

    let out = run(&["identity", "--socle", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_schema("identity-socle.schema.json", &v);
    assert_eq!(v["contained"], Value::Bool(false));
    assert_eq!(v["m"], serde_json::json!(7));
}

#[test]
fn gs_cone_and_steinberg_reports() {
    let out = run(&["gs-cone", "--family", "sp", "--n", "2", "--q", "3", "--lambda", "0,-1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_schema("gs-cone.schema.json", &v);
    assert_eq!(v["in_cone"], Value::Bool(true));
    assert_eq!(v["vgs_full"], Value::Bool(true));

    let out = run(&["gs-cone", "--family", "sp", "--n", "2", "--q", "3", "--lambda", "1,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["in_cone"], Value::Bool(false));
    assert_eq!(v["vgs_full"], Value::Bool(false));

    let out = run(&["steinberg", "--family", "gl", "--n", "1", "--q", "3", "--lambda", "4"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_schema("steinberg.schema.json", &v);
    assert_eq!(v["digits"], serde_json::json!([[1], [1]]));

    // A weight whose digit recursion cannot terminate reports failure and
    // exits 1.
    let out = run(&["steinberg", "--family", "gl", "--n", "2", "--q", "3", "--lambda", "0,-1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], Value::Bool(false));
    assert_eq!(v["digits"], Value::Null);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("zipstrata-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    std::fs::write(
        &cfg,
        serde_json::json!({
            "command": "weights",
            "family": "sp",
            "n": 2,
            "q": 3
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["n"], serde_json::json!(2));
    assert_eq!(v["q"], serde_json::json!(3));

    // Explicit flags override the config values.
    let out = run(&["weights", "--n", "3", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["n"], serde_json::json!(3));

    // Output file routing.
    let artifact = dir.join("table.json");
    let out = run(&[
        "weights", "--family", "sp", "--n", "2", "--q", "3", "--output",
        artifact.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&artifact).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_schema("weights.schema.json", &v);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_cap_env_is_accepted() {
    let out = bin()
        .env("ZIPSTRATA_THREADS", "1")
        .args(["strata", "--family", "gl", "--n", "3", "--q", "5", "--kind", "flag"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn root_datum_serialization_schema() {
    use zipstrata::root::{Family, RootDatum};
    let d = RootDatum::build_classical(Family::UInert, 3, 5, Some((2, 1))).unwrap();
    assert_schema("root-datum.schema.json", &d.to_json());
}
