use std::path::Path;
use std::process::Command;

use mgce::run_args;
use serde_json::Value;

const OK: i32 = 0;
const VIOLATION: i32 = 1;
const INPUT: i32 = 2;
const TRUNCATED: i32 = 3;

fn run(args: &[&str]) -> mgce::Outcome {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    run_args(std::iter::once("mgce").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
}

fn betti_column(report: &Value) -> Vec<(i64, u64)> {
    report["tables"]["betti"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r[0].as_i64().unwrap(), r[1].as_u64().unwrap()))
        .collect()
}

fn temp_manifest(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("mgce-test-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn validate_sl2_is_ok() {
    let (code, r) = json(&["validate", "fixtures/sl2.json"]);
    assert_eq!(code, OK);
    assert_eq!(r["checks"]["lie_algebra"], "ok");
    assert_eq!(r["checks"]["representation:adjoint"], "ok");
}

#[test]
fn heis3_cohomological_betti() {
    let (code, r) = json(&["betti", "--side", "cohom", "--max-degree", "3", "fixtures/heis3.json"]);
    assert_eq!(code, OK);
    assert_eq!(betti_column(&r), vec![(0, 1), (1, 2), (2, 2), (3, 1)]);
    assert_eq!(r["params"]["max_weight"], 3);
    assert_eq!(r["params"]["pbw_degree"], 5);
}

#[test]
fn report_keys_are_canonical() {
    let out = run(&["betti", "fixtures/aff1.json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "input", "params", "tables", "warnings"]);
}

#[test]
fn paper_example_passes() {
    let (code, r) = json(&["check-paper-example"]);
    assert_eq!(code, OK);
    assert_eq!(r["checks"]["example_assignment"], "ok");
    assert_eq!(r["checks"]["ce_weight_2"], "ok");
    let rows = r["tables"]["eps_of_u_e1e2"]["rows"].as_array().unwrap();
    let unit: Vec<(String, String)> = rows
        .iter()
        .filter(|row| row[0] == "1")
        .map(|row| (row[1].as_str().unwrap().to_string(), row[2].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(
        unit,
        [("1 ⊗ ~e1".to_string(), "-1".to_string()), ("e1 ⊗ ~e2".into(), "1".into()), ("e2 ⊗ ~e1".into(), "-1".into())]
    );
}

#[test]
fn whitehead_vanishing_with_adjoint_coefficients() {
    let (code, r) = json(&["betti", "--side", "cohom", "--coeff", "adjoint", "fixtures/sl2.json"]);
    assert_eq!(code, OK);
    assert!(betti_column(&r).iter().all(|&(_, k)| k == 0));
}

#[test]
fn character_coefficients_on_aff1() {
    // e2 acts by 1/2 on a line: the cochain complex k → k² → k has δ injective
    // on degree 0 and rank 1 from degree 1, so everything is acyclic
    let (code, r) = json(&["betti", "--side", "cohom", "--coeff", "character", "fixtures/aff1.json"]);
    assert_eq!(code, OK);
    assert!(betti_column(&r).iter().all(|&(_, k)| k == 0), "{r}");
}

#[test]
fn quasi_isomorphic_models_have_the_same_betti_numbers() {
    let (_, small) = json(&["betti", "--max-weight", "4", "--degrees", "0..4", "fixtures/aff1.json"]);
    let (code, big) =
        json(&["betti", "--max-weight", "4", "--degrees", "0..4", "--allow-truncated", "fixtures/aff1_ext.json"]);
    assert_eq!(code, OK);
    assert_eq!(betti_column(&small), betti_column(&big));
}

#[test]
fn duality_and_monoidality_pass_on_fixtures() {
    for f in ["aff1", "heis3", "sl2", "aff1_x_sl2"] {
        let (code, r) = json(&["duality", &format!("fixtures/{f}.json")]);
        assert_eq!((code, r["checks"]["duality"].clone()), (OK, Value::from("ok")), "{f}");
    }
    let (code, r) = json(&["monoidality", "--max-weight", "4", "fixtures/aff1.json", "--with", "fixtures/sl2.json"]);
    assert_eq!(code, OK);
    assert_eq!(r["checks"]["monoidality"], "ok");
    assert_eq!(r["input"]["with_name"], "sl2");
}

#[test]
fn ce_and_tate_checks() {
    for side in ["hom", "cohom"] {
        let (code, r) = json(&["ce", "--side", side, "fixtures/heis3.json"]);
        assert_eq!(code, OK, "{side}");
        assert_eq!(r["checks"]["square_zero"], "ok");
    }
    let (code, r) = json(&["tate", "--pbw-degree", "3", "fixtures/aff1.json"]);
    assert_eq!(code, OK);
    assert_eq!(r["checks"]["resolution_nested_windows"], "ok");
    let (code, r) = json(&["tate", "--floor", "-1", "fixtures/aff1.json"]);
    assert_eq!(code, OK);
    assert_eq!(r["params"]["floor"], -1);
}

#[test]
fn violations_exit_1() {
    // [x, y] = x, [x, z] = y: the Jacobiator of (x, y, z) is -y
    let path = temp_manifest(
        "not-lie",
        r#"{"name": "not_lie", "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}, {"name": "z", "degree": 0}],
            "bracket": [{"left": "x", "right": "y", "value": {"x": "1"}}, {"left": "x", "right": "z", "value": {"y": "1"}}]}"#,
    );
    for cmd in ["validate", "betti", "ce", "duality"] {
        let (code, r) = json(&[cmd, &path]);
        assert_eq!(code, VIOLATION, "{cmd}");
        assert!(r["checks"]["lie_algebra"]["violated"].as_str().unwrap().contains("Jacobi"), "{r}");
    }
    let (code, r) = json(&["monoidality", "fixtures/aff1.json", "--with", &path]);
    assert_eq!(code, VIOLATION);
    assert!(r["checks"]["second_factor"]["violated"].is_string());
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["validate", "fixtures/missing.json"]).code, INPUT);
    assert_eq!(run(&["betti", "--coeff", "nope", "fixtures/sl2.json"]).code, INPUT);
    assert_eq!(run(&["betti", "--side", "hom", "--coeff", "adjoint", "fixtures/sl2.json"]).code, INPUT);
    assert_eq!(run(&["tate", "--floor", "1", "fixtures/aff1.json"]).code, INPUT);
    assert_eq!(run(&["betti", "--degrees", "3..1", "fixtures/aff1.json"]).code, INPUT);
    assert_eq!(run(&["frobnicate", "fixtures/aff1.json"]).code, INPUT);
    let bad = temp_manifest(
        "bad-rational",
        r#"{"name": "b", "generators": [{"name": "x", "degree": 0}],
        "differential": [{"src": "x", "image": {"x": 0.5}}]}"#,
    );
    let out = run(&["validate", &bad]);
    assert_eq!(out.code, INPUT);
    assert!(out.stderr.contains("bad rational"), "{}", out.stderr);
}

#[test]
fn visible_truncation_exits_3_unless_allowed() {
    let out = run(&["betti", "fixtures/trivial_shifted.json"]);
    assert_eq!(out.code, TRUNCATED);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert_eq!(run(&["betti", "--allow-truncated", "fixtures/trivial_shifted.json"]).code, OK);
    assert_eq!(run(&["betti", "--max-weight", "2", "fixtures/heis3.json"]).code, TRUNCATED);
}

#[test]
fn reports_are_deterministic() {
    let args = ["ce", "--side", "cohom", "fixtures/aff1_x_sl2.json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn golden_reports() {
    let cases: [(&str, &[&str]); 6] = [
        ("validate_sl2.json", &["validate", "fixtures/sl2.json"]),
        ("betti_heis3_cohom.json", &["betti", "--side", "cohom", "--max-degree", "3", "fixtures/heis3.json"]),
        (
            "betti_sl2_adjoint.tsv",
            &["betti", "--side", "cohom", "--coeff", "adjoint", "fixtures/sl2.json", "--out", "tsv"],
        ),
        ("ce_aff1.tsv", &["ce", "fixtures/aff1.json", "--out", "tsv"]),
        ("check_paper_example.json", &["check-paper-example"]),
        ("tate_aff1.tsv", &["tate", "fixtures/aff1.json", "--out", "tsv"]),
    ];
    for (file, args) in cases {
        let want =
            std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file)).unwrap();
        assert_eq!(run(args).stdout, want, "{file}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mgce");
    let dir = env!("CARGO_MANIFEST_DIR");
    let status = |args: &[&str]| Command::new(bin).current_dir(dir).args(args).output().unwrap();
    let ok = status(&["betti", "--side", "cohom", "fixtures/heis3.json", "--out", "tsv"]);
    assert_eq!(ok.status.code(), Some(OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "# betti\ndegree\tbetti\n0\t1\n1\t2\n2\t2\n3\t1\n");
    assert_eq!(status(&["validate", "fixtures/nope.json"]).status.code(), Some(INPUT));
    assert_eq!(status(&["betti", "fixtures/trivial_shifted.json"]).status.code(), Some(TRUNCATED));
    assert_eq!(status(&["--help"]).status.code(), Some(OK));
}
