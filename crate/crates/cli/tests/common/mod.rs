#![allow(dead_code)]

//! Shared test support: running the binary and validating emitted JSON
//! against the shipped schemas.
//!
//! The validator covers the subset of JSON Schema draft-07 the schemas under
//! `schemas/` actually use: type, const, enum, pattern, required, properties,
//! additionalProperties (boolean), items, minItems, maxItems, minimum,
//! maximum, anyOf, and local or cross-file $ref. Patterns are matched by a
//! closed table so an unrecognized pattern fails loudly instead of passing
//! vacuously.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_troplab"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Run expecting success; return stdout as a string.
pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "troplab {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

pub struct SchemaStore {
    schemas: BTreeMap<String, Value>,
}

impl SchemaStore {
    pub fn load() -> Self {
        let mut schemas = BTreeMap::new();
        for entry in fs::read_dir(schema_dir()).expect("schemas directory exists") {
            let path = entry.expect("dir entry").path();
            let name = path.file_name().unwrap().to_string_lossy().to_string();
            if !name.ends_with(".schema.json") {
                continue;
            }
            let text = fs::read_to_string(&path).expect("schema readable");
            schemas.insert(name, serde_json::from_str(&text).expect("schema is JSON"));
        }
        assert!(!schemas.is_empty(), "no schemas found");
        SchemaStore { schemas }
    }

    pub fn validate(&self, schema_file: &str, doc: &Value) {
        if let Err(e) = self.try_validate(schema_file, doc) {
            panic!("document violates {schema_file}: {e}\n{doc:#}");
        }
    }

    pub fn try_validate(&self, schema_file: &str, doc: &Value) -> Result<(), String> {
        let schema = self
            .schemas
            .get(schema_file)
            .ok_or_else(|| format!("no schema named {schema_file}"))?;
        self.check(schema, schema, doc, "$")
    }

    fn check(&self, root: &Value, schema: &Value, doc: &Value, path: &str) -> Result<(), String> {
        if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
            return if let Some(frag) = r.strip_prefix("#/definitions/") {
                let def = root
                    .get("definitions")
                    .and_then(|d| d.get(frag))
                    .ok_or_else(|| format!("{path}: missing definition {frag}"))?;
                self.check(root, def, doc, path)
            } else {
                let target = self
                    .schemas
                    .get(r)
                    .ok_or_else(|| format!("{path}: unknown schema reference {r}"))?;
                self.check(target, target, doc, path)
            };
        }
        if let Some(branches) = schema.get("anyOf").and_then(Value::as_array) {
            if branches
                .iter()
                .any(|b| self.check(root, b, doc, path).is_ok())
            {
                return Ok(());
            }
            return Err(format!("{path}: no anyOf branch matches"));
        }
        if let Some(c) = schema.get("const") {
            if doc != c {
                return Err(format!("{path}: expected {c}, got {doc}"));
            }
        }
        if let Some(options) = schema.get("enum").and_then(Value::as_array) {
            if !options.contains(doc) {
                return Err(format!("{path}: {doc} not in enum {options:?}"));
            }
        }
        if let Some(ty) = schema.get("type") {
            let allowed: Vec<&str> = match ty {
                Value::String(s) => vec![s.as_str()],
                Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
                _ => return Err(format!("{path}: malformed type keyword")),
            };
            let actual = match doc {
                Value::Null => "null",
                Value::Bool(_) => "boolean",
                Value::Number(n) if n.is_i64() || n.is_u64() => "integer",
                Value::Number(_) => "number",
                Value::String(_) => "string",
                Value::Array(_) => "array",
                Value::Object(_) => "object",
            };
            let ok = allowed
                .iter()
                .any(|t| *t == actual || (*t == "number" && actual == "integer"));
            if !ok {
                return Err(format!("{path}: expected type {allowed:?}, got {actual}"));
            }
        }
        match doc {
            Value::String(s) => {
                if let Some(p) = schema.get("pattern").and_then(Value::as_str) {
                    if !pattern_match(p, s) {
                        return Err(format!("{path}: {s:?} fails pattern {p}"));
                    }
                }
            }
            Value::Number(n) => {
                let v = n
                    .as_i64()
                    .ok_or_else(|| format!("{path}: number out of i64 range"))?;
                if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
                    if v < min {
                        return Err(format!("{path}: {v} below minimum {min}"));
                    }
                }
                if let Some(max) = schema.get("maximum").and_then(Value::as_i64) {
                    if v > max {
                        return Err(format!("{path}: {v} above maximum {max}"));
                    }
                }
            }
            Value::Array(items) => {
                if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
                    if (items.len() as u64) < min {
                        return Err(format!("{path}: fewer than {min} items"));
                    }
                }
                if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
                    if (items.len() as u64) > max {
                        return Err(format!("{path}: more than {max} items"));
                    }
                }
                if let Some(isch) = schema.get("items") {
                    for (i, item) in items.iter().enumerate() {
                        self.check(root, isch, item, &format!("{path}[{i}]"))?;
                    }
                }
            }
            Value::Object(map) => {
                if let Some(req) = schema.get("required").and_then(Value::as_array) {
                    for key in req.iter().filter_map(Value::as_str) {
                        if !map.contains_key(key) {
                            return Err(format!("{path}: missing required property {key}"));
                        }
                    }
                }
                let props = schema.get("properties").and_then(Value::as_object);
                if schema.get("additionalProperties").and_then(Value::as_bool) == Some(false) {
                    let known = props.map(|p| p.keys().collect::<Vec<_>>()).unwrap_or_default();
                    for key in map.keys() {
                        if !known.contains(&key) {
                            return Err(format!("{path}: unexpected property {key}"));
                        }
                    }
                }
                if let Some(props) = props {
                    for (key, sub) in props {
                        if let Some(v) = map.get(key) {
                            self.check(root, sub, v, &format!("{path}.{key}"))?;
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Closed pattern table: every regex appearing in the shipped schemas.
fn pattern_match(pattern: &str, s: &str) -> bool {
    match pattern {
        "^-?[0-9]+(/[1-9][0-9]*)?$" => {
            let body = s.strip_prefix('-').unwrap_or(s);
            let (num, den) = match body.split_once('/') {
                Some((n, d)) => (n, Some(d)),
                None => (body, None),
            };
            let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
            digits(num)
                && den.map_or(true, |d| digits(d) && !d.starts_with('0'))
        }
        "^[01]+$" => !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1'),
        _ => panic!("pattern {pattern:?} is not in the validator's table; extend pattern_match"),
    }
}
