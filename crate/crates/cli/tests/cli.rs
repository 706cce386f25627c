use std::process::Command;

use serde_json::Value;

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_subfactor"));
    cmd.args(args).env_remove("SUBFACTOR_LEVEL_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn run(args: &[&str]) -> (i32, String) {
    run_with_env(args, &[])
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}")),
    )
}

/// Validates against one definition of the published schema.
fn assert_schema(def: &str, doc: &Value) {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema.json");
    let mut schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let root = schema.as_object_mut().unwrap();
    root.remove("anyOf");
    root.insert("$ref".into(), Value::String(format!("#/$defs/{def}")));
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{def}: {errors:#?}");
}

#[test]
fn angle_both_methods_agree_on_d52() {
    let (code, doc) = json(&["angle", "--pointed", "D5,2", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["cos"]["radical"], "√2−1");
    let methods: Vec<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["closed-form", "path-oracle"]);
    assert_schema("angle", &doc);
}

#[test]
fn angle_on_type_a_is_a_hypothesis_failure() {
    let (code, doc) = json(&["angle", "--pointed", "A5", "--method", "closed"]);
    assert_eq!(code, 2);
    assert_eq!(doc["agreement"], false);
    assert_eq!(doc["results"][0]["error"]["kind"], "no_trivalent_vertex");
    assert_schema("angle", &doc);
}

#[test]
fn fusion_pow_golden_value() {
    let (code, doc) = json(&[
        "fusion",
        "pow",
        "--mode",
        "truncated:12",
        "--vector",
        "1,2,2",
        "--power",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"], serde_json::json!([9, 20, 20, 12, 4]));
    assert_schema("fusion_power", &doc);
    let (_, text) = run(&[
        "fusion",
        "pow",
        "--mode",
        "truncated:12",
        "--vector",
        "1,2,2",
        "--output",
        "text",
    ]);
    assert_eq!(
        text,
        "(V_0 + 2V_1 + 2V_2)^2 = 9V_0 + 20V_1 + 20V_2 + 12V_3 + 4V_4\n"
    );
}

#[test]
fn fusion_fuse_and_dims() {
    let (code, doc) = json(&["fusion", "fuse", "--vector", "1,2,1", "--vector", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["product"], serde_json::json!([3, 6, 4, 1]));
    assert_schema("fusion_product", &doc);
    let (code, doc) = json(&[
        "fusion",
        "dims",
        "--mode",
        "truncated:12",
        "--vector",
        "1,2,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["total"]["radical"], "7+4√3");
    assert_schema("fusion_dims", &doc);
    let (_, doc) = json(&["fusion", "dims", "--vector", "1,2,1"]);
    assert_eq!(doc["total"], "x^2 - x");
    assert_schema("fusion_dims", &doc);
}

#[test]
fn fusion_window_violation_exits_two() {
    let (code, doc) = json(&["fusion", "pow", "--vector", "1,3,4", "--window", "3"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "beyond_supertransitivity");
    assert_schema("failure", &doc);
}

#[test]
fn classify_noncocommuting() {
    let (code, doc) = json(&["classify", "--branch", "noncocommuting"]);
    assert_eq!(code, 0);
    assert_eq!(doc["cases"].as_array().unwrap().len(), 6);
    let survivors = doc["survivors"].as_array().unwrap();
    assert_eq!(survivors.len(), 1);
    assert_eq!(survivors[0]["alpha"]["radical"], "2+√2");
    assert_eq!(survivors[0]["beta"]["radical"], "2+√2");
    assert_schema("classification", &doc);
}

#[test]
fn classify_cocommuting_flags_the_printed_sum() {
    let (code, doc) = json(&["classify", "--branch", "cocommuting", "--format", "json"]);
    assert_eq!(code, 0);
    let survivors = doc["survivors"].as_array().unwrap();
    assert_eq!(survivors[0]["gamma"]["radical"], "6");
    let case3 = doc["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["case"] == "V0+2V1+V2")
        .unwrap();
    assert!(!case3["flags"].as_array().unwrap().is_empty());
    assert_schema("classification", &doc);
}

#[test]
fn output_is_byte_stable() {
    let a = run(&["classify"]);
    let b = run(&["classify"]);
    assert_eq!(a, b);
    let (_, doc) = json(&["classify"]);
    assert_schema("classification_all", &doc);
    let a = run(&["selfcheck", "--output", "text"]).1;
    let b = run(&["selfcheck", "--output", "text"]).1;
    // timings aside, the report is identical
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains(" in "))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn principal_graph_and_index() {
    let (code, doc) = json(&["ghj", "principal-graph", "--pointed", "D5,2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["depth"], 3);
    assert_eq!(doc["norm_squared"]["radical"], "6+4√2");
    assert_schema("principal_graph", &doc);
    let (_, dot) = run(&[
        "ghj",
        "principal-graph",
        "--pointed",
        "D5,2",
        "--output",
        "dot",
    ]);
    assert!(dot.starts_with("graph principal_D5_2 {"));
    let (code, doc) = json(&["ghj", "index", "--pointed", "A4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["index"]["radical"], "(3+√5)/2");
    assert_schema("ghj_index", &doc);
}

#[test]
fn level_cap_from_flag_and_environment() {
    let (code, out) = run(&[
        "ghj",
        "principal-graph",
        "--pointed",
        "D5,2",
        "--level-cap",
        "2",
    ]);
    assert_eq!(code, 2);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["error"]["kind"], "not_stabilized");
    assert_schema("failure", &doc);
    let (code, _) = run_with_env(
        &["ghj", "index", "--pointed", "D5,2"],
        &[("SUBFACTOR_LEVEL_CAP", "2")],
    );
    assert_eq!(code, 2);
    let (code, out) = run(&[
        "tower",
        "build",
        "--graph",
        "D5",
        "--levels",
        "5",
        "--level-cap",
        "4",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("level_cap_exceeded"));
    let (code, _) = run(&["ghj", "index", "--pointed", "D5,2", "--level-cap", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn selfcheck_passes_and_fails_under_a_tiny_cap() {
    let (code, doc) = json(&["selfcheck"]);
    assert_eq!(code, 0, "{doc:#}");
    assert_eq!(doc["passed"], 9);
    assert_schema("selfcheck", &doc);
    let (code, out) = run_with_env(
        &["selfcheck", "--output", "text"],
        &[("SUBFACTOR_LEVEL_CAP", "2")],
    );
    assert_eq!(code, 2);
    assert!(
        out.contains("FAIL 4 principal_graph: not stabilized"),
        "{out}"
    );
    assert!(out.contains("8/9 passed"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["angle", "--pointed", "X9"]).0, 1);
    assert_eq!(run(&["angle", "--pointed", "D5,2", "--bogus"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(
        run(&["fusion", "pow", "--mode", "truncated:2", "--vector", "1"]).0,
        1
    );
    assert_eq!(
        run(&[
            "fusion",
            "pow",
            "--mode",
            "truncated:5",
            "--vector",
            "0,0,1"
        ])
        .0,
        1
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn graphs_and_towers() {
    let (code, doc) = json(&["graphs", "list", "--max-a", "4", "--max-d", "5"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = doc["graphs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"D5,2") && names.contains(&"E8,1"));
    assert_schema("graphs_list", &doc);
    let (code, doc) = json(&["graphs", "show", "D5"]);
    assert_eq!(code, 0);
    assert_schema("graph", &doc);
    let (code, doc) = json(&["graphs", "show", "E6,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["d"], 2);
    let (code, doc) = json(&["tower", "build", "--pointed", "D5,2", "--levels", "3"]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = doc["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 1, 3, 10]);
    assert_schema("tower", &doc);
    let (_, dot) = run(&[
        "tower", "build", "--graph", "A3", "--levels", "2", "--output", "dot",
    ]);
    assert!(dot.starts_with("digraph bratteli_A3"));
}

#[test]
fn precision_rewrites_approximations() {
    let (_, doc) = json(&[
        "angle",
        "--pointed",
        "D5,2",
        "--method",
        "closed",
        "--precision",
        "30",
    ]);
    assert_eq!(doc["cos"]["approx"], "0.414213562373095048801688724210");
}

#[test]
#[should_panic(expected = "failure")]
fn schema_rejects_a_malformed_failure() {
    assert_schema("failure", &serde_json::json!({"status": "ok"}));
}
