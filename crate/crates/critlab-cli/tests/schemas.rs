//! Every JSON document the binary emits must validate against the published
//! schemas in docs/schemas. The validator covers the subset of JSON Schema
//! those files use: type, required, properties, items, enum, const and
//! additionalProperties.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn load_schema(name: &str) -> Value {
    let path = schema_dir().join(name);
    let body = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    serde_json::from_str(&body).unwrap()
}

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
        "number" => v.is_number(),
        other => panic!("schema uses unsupported type {other}"),
    }
}

fn validate(schema: &Value, doc: &Value, path: &str) -> Result<(), String> {
    if let Some(c) = schema.get("const") {
        if doc != c {
            return Err(format!("{path}: expected {c}, got {doc}"));
        }
    }
    if let Some(allowed) = schema.get("enum") {
        if !allowed.as_array().unwrap().contains(doc) {
            return Err(format!("{path}: {doc} not in {allowed}"));
        }
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|v| v.as_str().unwrap()).collect(),
            other => panic!("bad type spec {other}"),
        };
        if !types.iter().any(|ty| type_matches(ty, doc)) {
            return Err(format!("{path}: {doc} is not any of {types:?}"));
        }
    }
    if let Some(obj) = doc.as_object() {
        if let Some(req) = schema.get("required") {
            for r in req.as_array().unwrap() {
                let key = r.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key '{key}'"));
                }
            }
        }
        let props = schema.get("properties").and_then(|p| p.as_object());
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(sub, v, &format!("{path}.{key}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{path}: undocumented key '{key}'"));
                    }
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), doc.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn run(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_critlab"))
        .args(args)
        .env_remove("CRITLAB_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let doc = serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim())
        .expect("JSON output");
    (out.status.code().unwrap(), doc)
}

fn check(schema_name: &str, args: &[&str], stdin: &str, expect_code: i32) -> Value {
    let schema = load_schema(schema_name);
    let (code, doc) = run(args, stdin);
    assert_eq!(code, expect_code, "{args:?} exit code; doc: {doc}");
    if let Err(msg) = validate(&schema, &doc, "$") {
        panic!("{args:?} violates {schema_name}: {msg}\ndoc: {doc}");
    }
    doc
}

const TOFT5: &str = "SheA@?OA?N_}@{@{?}??O?@C?AG?AG?@c\n";

#[test]
fn construct_outputs_validate() {
    check("construct.schema.json", &["construct", "toft", "5"], "", 0);
    check("construct.schema.json", &["construct", "turan", "9", "3"], "", 0);
    check("construct.schema.json", &["construct", "cycle", "7", "--seed", "3"], "", 0);
}

#[test]
fn color_outputs_validate_in_both_modes() {
    check("color.schema.json", &["color"], "C~\n", 0);
    check("color.schema.json", &["color", "-k", "3"], "C~\n", 0);
    check("color.schema.json", &["color", "-k", "5"], "C~\n", 0);
}

#[test]
fn verify_critical_output_validates() {
    check("verify-critical.schema.json", &["verify-critical", "-k", "4"], "C~\n", 0);
    // non-critical input still emits a schema-conforming full report
    check("verify-critical.schema.json", &["verify-critical", "-k", "4"], "DLo\n", 1);
}

#[test]
fn witness_outputs_validate() {
    check(
        "witness-matching.schema.json",
        &["witness", "matching", "-k", "4", "--clique", "5", "-u", "0", "-w", "1,4"],
        "Ehfw\n",
        0,
    );
    check("witness-xy.schema.json", &["witness", "xy", "--cycle", "1,2,3,5"], "Ehfw\n", 0);
}

#[test]
fn check_outputs_validate() {
    check("check-2path.schema.json", &["check", "2path"], TOFT5, 0);
    check("check-cliques.schema.json", &["check", "cliques", "-k", "4"], TOFT5, 0);
    check(
        "check-partition.schema.json",
        &["check", "partition", "--parts", "0,1;2,3;4,5"],
        "Ehfw\n",
        0,
    );
    check("check-partition.schema.json", &["check", "partition", "--stability", "3"], TOFT5, 0);
}

#[test]
fn bounds_output_validates_for_k4_and_k6() {
    check("bounds.schema.json", &["bounds", "-k", "4", "--n", "100,1000"], "", 0);
    check("bounds.schema.json", &["bounds", "-k", "6", "--n", "50"], "", 0);
}

#[test]
fn enumerate_output_and_checkpoint_validate() {
    check("enumerate.schema.json", &["enumerate", "-n", "5", "-k", "4"], "", 0);
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    let wit = dir.path().join("wit");
    check(
        "enumerate.schema.json",
        &[
            "enumerate", "-n", "6", "-k", "4",
            "--checkpoint", cp.to_str().unwrap(),
            "--out-dir", wit.to_str().unwrap(),
        ],
        "",
        0,
    );
    let state: Value =
        serde_json::from_str(&std::fs::read_to_string(&cp).unwrap()).unwrap();
    let schema = load_schema("checkpoint.schema.json");
    validate(&schema, &state, "$").unwrap();
}

#[test]
fn ftable_output_validates_including_gap_rows() {
    check("ftable.schema.json", &["ftable", "-k", "4", "--nmax", "6"], "", 0);
    check("ftable.schema.json", &["ftable", "-k", "3", "--nmax", "6"], "", 0);
}

#[test]
fn error_outputs_validate_for_all_three_kinds() {
    check("error.schema.json", &["construct", "toft", "4"], "", 1);
    check("error.schema.json", &["check", "partition"], "C~\n", 2);
    check(
        "error.schema.json",
        &["verify-critical", "-k", "4", "--budget", "1"],
        TOFT5,
        3,
    );

    // budget failure inside a checkpointed run reports resume information
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    std::fs::write(
        &cp,
        r#"{"n":6,"k":4,"pending":[{"parent":"DLo"}],"done":[],"found":[]}"#,
    )
    .unwrap();
    let doc = check(
        "error.schema.json",
        &["enumerate", "-n", "6", "-k", "4", "--budget", "1", "--checkpoint", cp.to_str().unwrap()],
        "",
        3,
    );
    assert_eq!(doc["pending_units"], 1);
    assert!(doc["checkpoint"].as_str().unwrap().ends_with("cp.json"));
}
