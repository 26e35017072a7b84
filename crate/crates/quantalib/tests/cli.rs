use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quantalib::format::{class_list_from_json, load_input, quantaloid_from_json};
use quantalib::report::MorphismRef;
use quantalib::suites::Corpus;
use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantalib")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn check_sample_locale() {
    let out = run(&["--format", "json", "check", &data("locale3.json"), "--predicates", "grothendieck"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"][0]["verdict"], "pass");
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"objects\": [\"*\",\n").unwrap();
    let out = run(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    let out = run(&["check", "no-such-file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_quantaloid_is_vacuous() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.json");
    std::fs::write(&p, r#"{"objects": [], "homs": {}, "comp": {}, "id": {}, "inv": {}}"#).unwrap();
    let out = run(&["--format", "json", "check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["reports"].as_array().unwrap().len() >= 12);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "verify", "--suite", "e-theorems"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn construct_outputs_reload() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = |n: &str| -> PathBuf { dir.path().join(n) };
    for (input, op) in
        [("locale3", "ssi"), ("z2-groupoid", "split"), ("boolean", "rel-q"), ("site2chain", "crible-quantaloid")]
    {
        let p = out_path(&format!("{input}-{op}.json"));
        let out = run(&["construct", input, "--op", op, "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{input} {op}");
        let q = quantaloid_from_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
        if op == "ssi" {
            assert_eq!(q.n(), 3);
        }
        if op == "crible-quantaloid" {
            assert!(q.closed_crible_violation().is_none());
        }
    }
    let p = out_path("sh.json");
    let out = run(&["construct", "z2-groupoid", "--op", "sh-q", "--max", "2", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (_, classes) = class_list_from_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(classes.len(), 6);
    let p = out_path("site.json");
    let out = run(&["construct", "site2chain", "--op", "site-roundtrip", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    load_input(p.to_str().unwrap()).unwrap();
}

#[test]
fn injected_fault_is_reported_with_a_resolvable_counterexample() {
    let out = run(&["--format", "json", "verify", "--suite", "d-theorems", "--inject-fault", "powerset2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let mutant = Corpus::builtin().with_fault("powerset2").unwrap();
    let q = mutant.get("powerset2").unwrap();
    let failed: Vec<&Value> = v["reports"].as_array().unwrap().iter().filter(|r| r["verdict"] == "fail").collect();
    assert!(!failed.is_empty());
    let w = failed.iter().find_map(|r| r.get("witness")).expect("a witness");
    for m in w["morphisms"].as_object().unwrap().values() {
        let r = MorphismRef {
            src: m["src"].as_str().unwrap().into(),
            dst: m["dst"].as_str().unwrap().into(),
            elt: m["elt"].as_str().unwrap().into(),
        };
        r.resolve(q).unwrap();
    }
}

#[test]
fn caps_map_to_exit_three() {
    let out = run(&["--max-presheaves", "1", "construct", "z2-groupoid", "--op", "sh-q"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_command_runs() {
    let out = run(&["--format", "json", "oracle", "--kind", "gsets", "--input", &data("z3.json"), "--max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"][0]["data"]["count"], 3);
}
