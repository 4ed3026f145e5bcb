use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn hoops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hoops(&all);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn reports_carry_schema_command_and_fingerprint() {
    let g3 = fixture("g3.hoop");
    let (code, v) = json(&["sqrt", &g3]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"][0], "sqrt");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["fingerprint"].as_str().unwrap().len(), 64);
    assert_eq!(v["result"]["identity"], true);
    assert_eq!(v["result"]["classification"]["good"], true);
    assert_eq!(v["result"]["oracle_agrees"], true);
}

#[test]
fn relabelled_copies_share_no_fingerprint_but_are_isomorphic() {
    let (_, a) = json(&["check", &fixture("g3.hoop")]);
    let (_, b) = json(&["check", &fixture("l3.hoop")]);
    assert_ne!(a["fingerprint"], b["fingerprint"]);
    let (code, v) = json(&["iso", &fixture("g3.hoop"), &fixture("l3.hoop")]);
    assert_eq!((code, &v["result"]["isomorphic"]), (0, &Value::Bool(false)));
    let (_, v) = json(&["iso", &fixture("b4.hoop"), &fixture("b4.hoop")]);
    assert_eq!(v["result"]["isomorphic"], true);
}

#[test]
fn certification_failures_exit_one_with_witnesses() {
    let (code, v) = json(&["check", &fixture("hoop6-literal.hoop")]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let unit = v["result"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["axiom"] == "H1-unit")
        .unwrap();
    assert_eq!(unit["witness"], serde_json::json!(["1", "0"]));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let b4 = fixture("b4.hoop");
    for args in [
        vec!["quotient", b4.as_str(), "--filter", "a,q"],
        vec!["quotient", b4.as_str(), "--filter", "a"],
        vec!["audit", b4.as_str(), "--catalog", "no-such-entry"],
        vec!["audit", "--model", "heyting"],
        vec!["hunt", "--identity", "x +"],
        vec!["enumerate", "--size", "6"],
        vec!["root", "-n", "0", b4.as_str()],
        vec!["check", "/no/such/file.hoop"],
        vec!["frobnicate"],
    ] {
        assert_eq!(hoops(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn syntax_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.hoop");
    let text = std::fs::read_to_string(fixture("g3.hoop"))
        .unwrap()
        .replace("0 m m\n", "0 m\n");
    std::fs::write(&path, text).unwrap();
    let out = hoops(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 8,"));
}

#[test]
fn out_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = hoops(&[
        "filters",
        &fixture("b4.hoop"),
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let maximal: Vec<&Value> = v["result"]["filters"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["maximal"] == true)
        .map(|f| &f["members"])
        .collect();
    assert_eq!(maximal.len(), 2);
}

#[test]
fn quotient_by_labels() {
    let (code, v) = json(&["quotient", &fixture("b4.hoop"), "--filter", "a, 1"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["classes"],
        serde_json::json!([["0", "b"], ["a", "1"]])
    );
    assert_eq!(v["result"]["root_image_isomorphic"], true);
}

#[test]
fn product_of_two_chains_is_the_boolean_square() {
    let dir = tempfile::tempdir().unwrap();
    let two = fixture("two.hoop");
    let (code, v) = json(&["product", &two, &two]);
    assert_eq!(code, 0);
    let path = dir.path().join("square.hoop");
    std::fs::write(&path, v["result"]["product"].as_str().unwrap()).unwrap();
    let (_, iso) = json(&["iso", path.to_str().unwrap(), &fixture("b4.hoop")]);
    assert_eq!(iso["result"]["isomorphic"], true);
}

#[test]
fn audits_of_models_and_files() {
    let (code, v) = json(&[
        "audit",
        "--model",
        "lukasiewicz",
        "--seed",
        "7",
        "--samples",
        "256",
    ]);
    assert_eq!(code, 0);
    let c = &v["result"]["model"]["classification"];
    assert_eq!(
        (c["strict"].clone(), c["good"].clone()),
        (Value::Bool(true), Value::Bool(false))
    );
    assert_eq!(v["result"]["tally"]["fail"], 0);
    assert_eq!(v["result"]["model"]["plan"]["seed"], 7);

    let (code, v) = json(&[
        "audit",
        &fixture("b4.hoop"),
        "--catalog",
        "sqrt-square,involutive-antipode",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn hunting_reports_the_first_counterexample() {
    let (code, v) = json(&[
        "hunt",
        "--identity",
        "(x->y)->y = (y->x)->x",
        "--max-size",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["witness"]["size"], 3);
    let (code, _) = json(&["hunt", "--identity", "x * (x -> y) = y * (y -> x)"]);
    assert_eq!(code, 0);
}

#[test]
fn census_of_size_three() {
    let (code, v) = json(&["enumerate", "--size", "3", "--census"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 2);
    for row in v["result"]["census"].as_array().unwrap() {
        assert!(row["sqrt_identity"].is_null() || row["sqrt_identity"] == true);
    }
    let text = String::from_utf8(hoops(&["enumerate", "--size", "3", "--census"]).stdout).unwrap();
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("index,size,bounded"));
}

#[test]
fn text_reports_end_with_a_status_line() {
    let out = hoops(&["subsets", &fixture("hoop6.hoop")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("boolean: {0, b, c, 1}"));
    assert!(text.ends_with("status: pass\n"));
    let out = hoops(&["root", "-n", "3", &fixture("l3.hoop")]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("no root of degree 3"));
}
