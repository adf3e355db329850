//! Helpers shared by the binary-level tests: running the `strata` binary
//! with captured output and validating reports against the shipped schema.
//!
//! The validator covers exactly the keywords the schema uses (`type`,
//! `properties`, `required`, `additionalProperties`, `items`, `enum`,
//! `oneOf`) so the tests need no external schema crate.

use std::process::Command;

use serde_json::Value;

/// Runs the built binary with the given arguments and no inherited
/// environment surprises, returning (exit code, stdout, stderr).
pub fn run_strata(args: &[&str]) -> (i32, String, String) {
    run_strata_with(args, &[])
}

/// Same as [`run_strata`] with extra environment variables set.
pub fn run_strata_with(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_strata"));
    cmd.args(args);
    cmd.env_remove("STRATA_OUT_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("binary exits normally"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

/// Loads the schema shipped next to the crate sources.
pub fn report_schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file exists"))
        .expect("schema file is json")
}

/// Parses stdout as a report and validates it against the schema, panicking
/// with the offending path on mismatch.
pub fn parse_valid_report(stdout: &str) -> Value {
    let value: Value = serde_json::from_str(stdout).expect("stdout is json");
    if let Err(e) = validate(&report_schema(), &value, "$") {
        panic!("report does not match schema: {e}");
    }
    value
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn matches_type(v: &Value, ty: &str) -> bool {
    match ty {
        "integer" => matches!(v, Value::Number(n) if n.is_i64() || n.is_u64()),
        "number" => v.is_number(),
        other => type_name(v) == other,
    }
}

/// Checks `value` against `schema`, reporting the first violation with its
/// JSON path.
pub fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let schema = schema
        .as_object()
        .ok_or_else(|| format!("{path}: schema node is not an object"))?;

    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let hits = options
            .iter()
            .filter(|s| validate(s, value, path).is_ok())
            .count();
        if hits != 1 {
            return Err(format!("{path}: matches {hits} of {} oneOf branches", options.len()));
        }
        return Ok(());
    }

    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} is not one of {allowed:?}"));
        }
        return Ok(());
    }

    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        if !matches_type(value, ty) {
            return Err(format!("{path}: expected {ty}, found {}", type_name(value)));
        }
    }

    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key `{key}`"));
                }
            }
        }
        let empty = serde_json::Map::new();
        let props = schema
            .get("properties")
            .and_then(Value::as_object)
            .unwrap_or(&empty);
        let sealed = schema.get("additionalProperties") == Some(&Value::Bool(false));
        for (key, v) in obj {
            match props.get(key) {
                Some(sub) => validate(sub, v, &format!("{path}.{key}"))?,
                None if sealed => return Err(format!("{path}: unexpected key `{key}`")),
                None => {}
            }
        }
    }

    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{path}[{i}]"))?;
        }
    }

    Ok(())
}
