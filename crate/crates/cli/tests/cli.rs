use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(format!("{name}.json"))
}

/// Runs `nah` and returns (exit code, parsed stdout).
fn nah(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_nah")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {text}"));
    (out.status.code().expect("exited"), v)
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = nah(args);
    assert_eq!(code, 0, "{args:?} -> {v}");
    v
}

fn with_input(cmd: &str, verb: &str, input: &Value) -> Value {
    ok(&[cmd, verb, "--inline", &input.to_string()])
}

// A validator for the subset of JSON Schema used under schemas/: type,
// required, properties, items, enum, anyOf and local $ref.
fn validate(schema: &Value, v: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").expect("local ref");
        return validate(&root["$defs"][name], v, root, path);
    }
    if let Some(alts) = schema.get("anyOf").and_then(Value::as_array) {
        if !alts.iter().any(|s| validate(s, v, root, path).is_ok()) {
            return Err(format!("{path}: no alternative matches {v}"));
        }
    }
    if let Some(opts) = schema.get("enum").and_then(Value::as_array) {
        if !opts.contains(v) {
            return Err(format!("{path}: {v} not in {opts:?}"));
        }
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => panic!("bad type in schema"),
        };
        let fits = |t: &str| match t {
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "boolean" => v.is_boolean(),
            "array" => v.is_array(),
            "object" => v.is_object(),
            "null" => v.is_null(),
            other => panic!("unsupported type {other}"),
        };
        if !types.iter().any(|t| fits(t)) {
            return Err(format!("{path}: expected {types:?}, got {v}"));
        }
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for k in req.iter().filter_map(Value::as_str) {
            if v.get(k).is_none() {
                return Err(format!("{path}: missing {k}"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (schema.get("properties").and_then(Value::as_object), v.as_object()) {
        for (k, s) in props {
            if let Some(x) = obj.get(k) {
                validate(s, x, root, &format!("{path}.{k}"))?;
            }
        }
    }
    if let (Some(items), Some(xs)) = (schema.get("items"), v.as_array()) {
        for (i, x) in xs.iter().enumerate() {
            validate(items, x, root, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn conforms(schema: &str, v: &Value) {
    let p = root().join("schemas/v1").join(format!("{schema}.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&p).expect("schema exists")).expect("schema is JSON");
    if let Err(e) = validate(&s, v, &s, "$") {
        panic!("{schema}: {e}");
    }
}

#[test]
fn membership_worked_example() {
    let v = ok(&["gmquot", "membership", "--weights", "0,1,2", "--a", "-1/2", "--point", "1:1:0"]);
    assert_eq!(v, json!({"status": "in_U"}));
    conforms("gmquot.membership", &v);
    let v = ok(&["gmquot", "membership", "--weights", "0,1,2", "--a", "-1/2", "--point", "0:1:1"]);
    assert_eq!(v["status"], "in_Y-");
}

#[test]
fn langton_reduce_fixture() {
    let v = ok(&["langton", "reduce", "--input", fixture("langton-reduce-upper").to_str().unwrap()]);
    assert_eq!(v["steps"], 1);
    assert_eq!(v["final_type"], json!([0, 0]));
    conforms("langton.reduce", &v);
    // the reduced family re-parses and is already balanced
    let again = with_input("langton", "reduce", &json!({"family": v["family"]}));
    assert_eq!(again["steps"], 0);
    let gen = with_input("langton", "generic", &json!({"family": v["family"]}));
    assert_eq!(gen["splitting_type"], v["generic_type"]);
}

#[test]
fn langton_gap_four_is_reduced() {
    let v = ok(&["langton", "reduce", "--input", fixture("langton-reduce-gap4").to_str().unwrap()]);
    assert_eq!(v["final_type"], json!([0, 0]));
    assert_eq!(v["trail"][0]["special_type"], json!([2, -2]));
}

#[test]
fn rees_build_then_recover() {
    let v = ok(&["rees", "build", "--input", fixture("rees-build-trivial").to_str().unwrap()]);
    assert_eq!(v["weights"], json!([0, 0, 0]));
    conforms("rees.build", &v);
    let flag = ok(&["rees", "build", "--input", fixture("rees-build-flag").to_str().unwrap()]);
    assert_eq!(flag["weights"], json!([1, 0]));
    let back = with_input("rees", "recover", &json!({"module": flag}));
    conforms("rees.recover", &back);
    assert_eq!(back["steps"][1]["basis"], json!([["1", "0"]]));
    let fib = with_input("rees", "fiber", &json!({"point": 0, "module": flag}));
    conforms("rees.fiber", &fib);
    assert_eq!(fib["graded"].as_array().map(Vec::len), Some(2));
}

#[test]
fn rees_glue_elliptic_is_pure() {
    let v = ok(&["rees", "glue", "--input", fixture("rees-glue-elliptic").to_str().unwrap()]);
    conforms("rees.glue", &v);
    assert_eq!(v["splitting_type"], json!([1, 1]));
    assert_eq!(v["pure"], true);
    // the glued bundle re-parses and splits the same way
    let s = with_input("rings", "split", &json!({"bundle": v["bundle"]}));
    assert_eq!(s["splitting_type"], json!([1, 1]));
}

#[test]
fn every_fixture_matches_its_schema() {
    let mut seen = 0;
    for entry in std::fs::read_dir(root().join("fixtures")).expect("fixtures dir") {
        let path = entry.expect("entry").path();
        let stem = path.file_stem().and_then(|s| s.to_str()).expect("name").to_string();
        let (cmd, rest) = stem.split_once('-').expect("cmd-verb-name");
        let verb = if cmd == "gmquot" && rest.starts_with("orbit-eq") {
            "orbit-eq"
        } else {
            rest.split('-').next().expect("verb")
        };
        let v = ok(&[cmd, verb, "--input", path.to_str().unwrap(), "--seed", "11"]);
        conforms(&format!("{cmd}.{verb}"), &v);
        seen += 1;
    }
    assert!(seen >= 15, "only {seen} fixtures");
}

#[test]
fn worked_examples_through_the_cli() {
    let v = ok(&["rings", "split", "--input", fixture("rings-split-upper-triangular").to_str().unwrap()]);
    assert_eq!(v["splitting_type"], json!([0, 0]));
    assert_eq!(v["certificate"]["D"], json!([0, 0]));
    let v = ok(&["rings", "snf", "--input", fixture("rings-snf-diag").to_str().unwrap()]);
    assert_eq!(v["invariant_factors"], json!([1, 6]));
    let v = ok(&["rings", "eval", "--input", fixture("rings-eval-character").to_str().unwrap()]);
    assert_eq!(v["value"], "1-i");
    let v = ok(&["twistor", "section", "--input", fixture("twistor-section-through").to_str().unwrap()]);
    assert_eq!(v["section"]["a"], json!(["1/2", "-1/2"]));
    let v = ok(&["twistor", "bundle", "--input", fixture("twistor-bundle-r2").to_str().unwrap()]);
    assert_eq!(v["splitting_type"], json!([1, 1, 1, 1]));
    assert_eq!(v["h0"], 8);
    let v = ok(&["jumploci", "contains", "--input", fixture("jumploci-contains-subtorus").to_str().unwrap()]);
    assert_eq!(v["contains"], true);
    let v = ok(&["lambda", "classify", "--input", fixture("lambda-classify-degree2").to_str().unwrap()]);
    assert_eq!(v["verdict"], "not-invariant");
    let v = ok(&["gmquot", "arc", "--input", fixture("gmquot-arc-newton").to_str().unwrap()]);
    assert_eq!(v["gauge"]["eps"], "1");
    assert_eq!(v["gauge"]["landing"], json!(["1", "1", "0"]));
    let v = ok(&["gmquot", "orbit-eq", "--weights", "0,1,2", "--a", "-1/2", "--point", "1:1:1", "--point", "1:2:4"]);
    assert_eq!(v["equivalent"], true);
    conforms("gmquot.orbit-eq", &v);
}

#[test]
fn lambda_outputs_chain() {
    let p = with_input("lambda", "pref", &json!({"h": {"nu": ["1/2"], "thetaPrime": ["1+i"]}, "lambda": "i"}));
    conforms("lambda.pref", &p);
    let s = with_input("lambda", "sigma", &json!({"point": p}));
    conforms("lambda.sigma", &s);
    let back = with_input("lambda", "sigma", &json!({"point": s}));
    assert_eq!(back, p);
}

#[test]
fn scan_is_seed_stable_and_filtered() {
    let f = fixture("jumploci-scan-augmentation");
    let a = ok(&["jumploci", "scan", "--input", f.to_str().unwrap(), "--seed", "4"]);
    let b = ok(&["jumploci", "scan", "--input", f.to_str().unwrap(), "--seed", "4"]);
    assert_eq!(a, b);
    for p in a["points"].as_array().expect("points") {
        assert_eq!(p[0], "1");
    }
}

#[test]
fn randomized_verbs_need_a_seed() {
    let f = fixture("jumploci-scan-augmentation");
    let (code, v) = nah(&["jumploci", "scan", "--input", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "precondition");
    conforms("error", &v);
    let (code, _) = nah(&["selftest", "run"]);
    assert_eq!(code, 1);
}

#[test]
fn errors_are_reported_as_json() {
    let (code, v) = nah(&["gmquot", "bogus"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "usage");
    let (code, v) = nah(&["rees", "build", "--inline", "{}"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "parse");
    let (code, v) = nah(&["gmquot", "decompose", "--weights", "0,1,2", "--a", "-1"]);
    assert_eq!(code, 1, "{v}");
    conforms("error", &v);
    let (code, v) = nah(&["langton", "step", "--inline", r#"{"rank":1,"entries":[[[{"zexp":0,"coeff":"1"}]]]}"#]);
    assert_eq!(code, 1, "{v}");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("nah-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let out = dir.join("r.json");
    let status = Command::new(env!("CARGO_BIN_EXE_nah"))
        .args(["rings", "conj", "--inline", r#"{"scalar":"i"}"#, "--out", out.to_str().unwrap()])
        .status()
        .expect("binary runs");
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).expect("written")).expect("JSON");
    assert_eq!(v["conj"], "-i");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn quick_selftest_passes() {
    let v = ok(&["selftest", "run", "--quick", "--seed", "20240611"]);
    conforms("selftest.run", &v);
    assert_eq!(v["passed"], true);
}
