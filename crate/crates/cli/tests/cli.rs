use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enright")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json output"))
}

#[test]
fn identities_pass_and_sentinel_fails() {
    let o = run(&["identities", "--max-n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 5);
    assert_eq!(run(&["identities", "--max-n", "1"]).status.code(), Some(0));
    let bad = run(&["identities", "--max-n", "4", "--negate", "iv"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL iv"));
    assert_eq!(run(&["identities", "--max-n", "51"]).status.code(), Some(2));
}

#[test]
fn complete_examples() {
    let o = run(&["complete", "--shape", "M(-4)", "--window", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C(M) = M(2)"));
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["complete", "--shape", "T(3)", "--window", "6"]);
    assert!(stdout(&o).contains("C(M) = T(3) (complete)"));
    let (code, v) = json(&["complete", "--shape", "M(-3)+T(0)", "--window", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["completion"], "M(1) + T(0)");
    assert_eq!(v["report"]["pass"], true);
}

#[test]
fn graph_examples() {
    let chain = stdout(&run(&["graph", "--shape", "M(0)", "--window", "4"]));
    assert_eq!(chain.matches("->").count(), 4);
    assert!(chain.contains("(0, m, 0, 0)"));
    let t = stdout(&run(&["graph", "--shape", "T(2)", "--window", "3"]));
    assert!(t.contains("(0, v, 1, 0)") && t.contains("(0, z, 1, -6)"));
    let low = stdout(&run(&["graph", "--shape", "M(-1)", "--window", "2"]));
    assert!(low.contains("(0, m, 0, -1)") && low.contains("(0, m, 2, -5)"));
    assert_eq!(low, stdout(&run(&["graph", "--shape", "M(-1)", "--window", "2"])));
}

#[test]
fn deodhar_and_sn_compare() {
    assert!(stdout(&run(&["deodhar", "--n", "3", "--k", "4"])).contains(": in C(M)"));
    let (_, v) = json(&["deodhar", "--n", "3", "--k", "5"]);
    assert_eq!(v["in_completion"], false);
    let o = run(&["sn-compare", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equal"));
}

#[test]
fn decompose_twisted_t1() {
    let dir = std::env::temp_dir().join(format!("enright-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t1.json");
    // presented z is z + f^(2) v
    let presentation = r#"{"base": [{"kind": "T", "parameter": 1}], "twists": {"-3": [["1", "1"], ["0", "1"]]}}"#;
    std::fs::write(&path, presentation).unwrap();
    let (code, v) = json(&["decompose", "--twist", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let summands = v["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 1);
    assert_eq!(summands[0]["type"], "T");
    assert_eq!(summands[0]["parameter"], 1);
    assert_eq!(v["report"]["pass"], true);
    let out = dir.join("cert.json");
    let o = run(&["decompose", "--shape", "T(1)", "--twist", path.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, v);
    assert_eq!(run(&["decompose", "--shape", "T(2)", "--twist", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["complete", "--shape", "Q(3)"]).status.code(), Some(2));
    assert_eq!(run(&["deodhar", "--n", "1", "--k", "1", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "--shape", "M(0)", "--window", "0"]).status.code(), Some(2));
    assert_eq!(run(&["decompose"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}
