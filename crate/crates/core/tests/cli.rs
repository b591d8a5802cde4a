use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use blade_arrangements::cli::run;
use blade_arrangements::Blade;
use jsonschema::JSONSchema;
use serde_json::Value;

const SCHEMA_BASE: &str = "https://blade-arrangements.invalid/schemas/";

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["blades"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn schema_doc(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema: &str, text: &str) -> Value {
    let instance: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    let compiled = JSONSchema::options()
        .with_document(format!("{SCHEMA_BASE}cell.schema.json"), schema_doc("cell.schema.json"))
        .compile(&schema_doc(schema))
        .unwrap();
    if let Err(errors) = compiled.validate(&instance) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{schema}: {msgs:?}\n{text}");
    }
    instance
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("blades-cli-{}-{name}", std::process::id()))
}

#[test]
fn blade_conversions_round_trip() {
    for (n, v, want) in [
        ("8", "1,2,4,7", "((128_2 34_1 567_1))"),
        ("8", "2,4,6,8", "((12_1 34_1 56_1 78_1))"),
        ("8", "1,3,4,5,7", "((18_1 2345_3 67_1))"),
        ("5", "3,5", "((123_1 45_1))"),
        ("6", "1,2,4", "((1256_2 34_1))"),
    ] {
        let out = ok(&["blade", "--n", n, "--vertex", v]);
        assert_eq!(out.trim(), want);
        let b = Blade::parse(out.trim()).unwrap();
        assert_eq!(b.to_string(), want);
    }
    let out = ok(&["blade", "--n", "12", "--vertex", "1,2,10"]);
    let b = Blade::parse(out.trim()).unwrap();
    assert_eq!(b.to_string(), out.trim());
    assert!(out.contains('['));
}

#[test]
fn check_ws_outputs() {
    assert_eq!(ok(&["check-ws", "--n", "6", "--sets", "124,246,256,346"]), "true\n");
    assert_eq!(ok(&["check-ws", "--n", "4", "--sets", "13,24"]), "false\n");
    assert_valid("check-ws.schema.json", &ok(&["check-ws", "--n", "4", "--sets", "13,24"]));
    let v = assert_valid("check-ws.schema.json", &ok(&["check-ws", "--n", "4", "--sets", "13,24", "--explain"]));
    assert_eq!(v["weakly_separated"], false);
    assert_eq!(v["violation"], serde_json::json!([[1, 3], [2, 4]]));
    let v = assert_valid("check-ws.schema.json", &ok(&["check-ws", "--n", "5", "--sets", "13,14", "--explain"]));
    assert_eq!(v["violation"], Value::Null);
}

#[test]
fn subdivide_and_matroidal_validate() {
    let v = assert_valid("subdivision.schema.json", &ok(&["subdivide", "--n", "5", "--sets", "13,14,24,25,35"]));
    assert_eq!(v["cell_count"], 11);
    let mut v = assert_valid("subdivision.schema.json", &ok(&["subdivide", "--n", "4", "--sets", "13,24"]));
    assert_eq!(v["cell_count"], 4);
    v["cells"][0].as_object_mut().unwrap().remove("dim");
    let compiled = JSONSchema::options()
        .with_document(format!("{SCHEMA_BASE}cell.schema.json"), schema_doc("cell.schema.json"))
        .compile(&schema_doc("subdivision.schema.json"))
        .unwrap();
    assert!(!compiled.is_valid(&v));

    let v = assert_valid("matroidal.schema.json", &ok(&["matroidal", "--n", "4", "--sets", "13,24"]));
    assert_eq!(v["matroidal"], false);
    assert!(v["exchange_violation"].is_object());
    let v = assert_valid(
        "matroidal.schema.json",
        &ok(&["matroidal", "--n", "8", "--k", "4", "--osp", "((12_1 34_1 56_1 78_1))", "--osp", "((12_1 78_1 56_1 34_1))"]),
    );
    assert_eq!(v["matroidal"], false);
    let v = assert_valid(
        "matroidal.schema.json",
        &ok(&["matroidal", "--n", "6", "--k", "3", "--osp", "((12_1 34_1 56_1))", "--osp", "((12_1 56_1 34_1))"]),
    );
    assert_eq!(v["matroidal"], true);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn boundary_outputs() {
    let v = assert_valid(
        "collection.schema.json",
        &ok(&["boundary", "--n", "6", "--sets", "124,246,256,346", "--j", "3"]),
    );
    assert_eq!(v["vertices"], serde_json::json!([[2, 6], [4, 6]]));
    assert_eq!(v["sigma"], serde_json::json!([1, 2, 4, 5, 6]));
    let v = assert_valid(
        "collection.schema.json",
        &ok(&["boundary", "--n", "6", "--sets", "124,246,256,346", "--j", "3", "--keep-frozen"]),
    );
    assert_eq!(v["vertices"], serde_json::json!([[1, 2], [2, 6], [4, 6]]));

    let v = assert_valid("boundary-blade.schema.json", &ok(&["boundary", "--osp", "((18_1 2345_3 67_1))", "--j", "4"]));
    assert_eq!(v["blade"], "((18_1 235_2 67_1))");
    assert_eq!(v["trivial"], false);
    let printed = v["blade"].as_str().unwrap();
    assert_eq!(Blade::parse(printed).unwrap().to_string(), printed);
    let v = assert_valid("boundary-blade.schema.json", &ok(&["boundary", "--osp", "((1256_2 34_1))", "--j", "3"]));
    assert_eq!(v["trivial"], true);
}

#[test]
fn enumerate_outputs() {
    let v = assert_valid("enumerate.schema.json", &ok(&["enumerate", "--k", "3", "--n", "6"]));
    assert_eq!(v["maximal_count"], 34);
    assert_eq!(v["purity"], true);
    let v = assert_valid(
        "enumerate.schema.json",
        &ok(&["enumerate", "--k", "3", "--n", "6", "--filter", "two-interval", "--threads", "1"]),
    );
    assert_eq!(v["maximal_count"], 18);
    let v = assert_valid("enumerate.schema.json", &ok(&["enumerate", "--k", "2", "--n", "6", "--materialize"]));
    assert_eq!(v["collections"].as_array().unwrap().len(), 14);
    assert_eq!(call(&["enumerate", "--k", "4", "--n", "8", "--time-budget-secs", "0"]).0, 1);
    assert_eq!(call(&["enumerate", "--k", "3", "--n", "6", "--filter", "odd"]).0, 2);
}

#[test]
fn eval_outputs() {
    let on = ok(&["eval", "--osp", "((12_1 34_1))", "--point", "1/2,1/2,1/2,1/2"]);
    assert_eq!(assert_valid("eval.schema.json", &on), Value::Bool(true));
    let off = ok(&["eval", "--osp", "((1 2 3))", "--point", "-1,2,-1", "--method", "tropical"]);
    assert_eq!(assert_valid("eval.schema.json", &off), Value::Bool(false));
    let t = ok(&["eval", "--n", "6", "--vertex", "1,2,4", "--point", "1,0,1,0,1,0"]);
    assert_eq!(t.trim(), "true");
    assert_eq!(call(&["eval", "--osp", "((12_1 34_1))", "--point", "1,0,1,0", "--method", "tropical"]).0, 1);
    assert_eq!(call(&["eval", "--osp", "((12_1 34_1))", "--point", "1,0,1"]).0, 1);
    assert_eq!(call(&["eval", "--osp", "((12_1 34_1", "--point", "1,0,1,0"]).0, 2);
}

#[test]
fn dot_outputs() {
    let dot = ok(&["trees", "--n", "7", "--sets", "124,247,267,347,457,467"]);
    assert_eq!(dot.matches("graph facet_").count(), 7);
    let one = ok(&["trees", "--n", "7", "--sets", "124,247,267,347,457,467", "--j", "5"]);
    assert!(one.starts_with("graph facet_5 {"));
    let dual = ok(&["dualgraph", "--n", "5", "--sets", "13,14,24,25,35"]);
    assert!(dual.starts_with("graph dual {"));
    assert_eq!(dual.matches(" -- ").count(), 15);
}

#[test]
fn file_input_and_output() {
    let input = temp_path("in.json");
    let output = temp_path("out.json");
    std::fs::write(&input, r#"{"n": 6, "k": 3, "vertices": [[1,2,4],[2,4,6],[2,5,6],[3,4,6]]}"#).unwrap();
    assert_valid("collection.schema.json", &std::fs::read_to_string(&input).unwrap());
    let code = call(&[
        "boundary",
        "--in",
        input.to_str().unwrap(),
        "--j",
        "3",
        "--out",
        output.to_str().unwrap(),
    ])
    .0;
    assert_eq!(code, 0);
    let v = assert_valid("collection.schema.json", &std::fs::read_to_string(&output).unwrap());
    assert_eq!(v["k"], 2);

    std::fs::write(&input, r#"{"n": 6, "k": 3, "vertices": [[1,2,4]], "extra": 1}"#).unwrap();
    assert_eq!(call(&["check-ws", "--in", input.to_str().unwrap()]).0, 2);
    std::fs::write(&input, r#"{"n": 6, "k": 3, "sigma": [2,1,3,4,5,6], "vertices": [[1,3,5]]}"#).unwrap();
    assert_eq!(call(&["check-ws", "--in", input.to_str().unwrap(), "--n", "7"]).0, 1);
    let _ = std::fs::remove_file(&input);
    let _ = std::fs::remove_file(&output);
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blades"))
        .args(["check-ws", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"n": 4, "k": 2, "vertices": [[1,3],[2,4]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "false\n");

    let status = Command::new(env!("CARGO_BIN_EXE_blades"))
        .args(["blade", "--n", "4"])
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_blades"))
        .args(["enumerate", "--k", "3", "--n", "7"])
        .env("BLADES_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = assert_valid("enumerate.schema.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["maximal_count"], 259);
}
