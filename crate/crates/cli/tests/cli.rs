//! End-to-end runs of the `welding` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn welding(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_welding"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = welding(&full);
    serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)))
}

fn schema(name: &str) -> JSONSchema {
    let path: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "schemas",
        &format!("{name}.v1.json"),
    ]
    .iter()
    .collect();
    let text = std::fs::read_to_string(&path).expect("schema file");
    JSONSchema::compile(&serde_json::from_str(&text).expect("schema json")).expect("valid schema")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{name}: {msgs:?}\n{v:#}");
}

#[test]
fn moments_examples() {
    assert_eq!(
        json(&["moments", "--level", "1"]),
        serde_json::json!({ "1|1": "1/2" })
    );
    assert_eq!(
        json(&["moments", "--level", "0"]),
        serde_json::json!({ "|": "1" })
    );
    let o = welding(&["moments", "--level", "2", "--verify"]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).contains("1+1|1+1 = 17/42 PASS"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn moments_verify_keeps_json_parseable() {
    let o = welding(&["moments", "--level", "3", "--verify", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["3|3"], "1/4");
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

#[test]
fn operator_examples() {
    assert_eq!(
        stdout(&welding(&["operators", "pn", "--n", "2"])).trim(),
        "7*u1^2 - 4*u2"
    );
    let k = json(&["operators", "kernel", "--n", "3"]);
    assert_eq!(k["basis"], serde_json::json!(["u1^3 + 2*u1*u2"]));
    assert_eq!(
        stdout(&welding(&["operators", "diagonal-lemma", "--n", "2"])).trim(),
        "PASS (exact)"
    );
}

#[test]
fn diagonal_examples() {
    let l = stdout(&welding(&[
        "diagonal", "laplace", "--beta", "1", "--lambda", "0",
    ]));
    assert!(l.starts_with("1.000000000000000 "), "{l}");
    let e = json(&["diagonal", "cardy", "--rho", "0.1", "--report", "exponent"]);
    let v: f64 = e["value"].as_str().unwrap().parse().unwrap();
    assert!((v - 5.0 * std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-6);
    let s = json(&[
        "diagonal",
        "sandwich",
        "--beta",
        "12.0",
        "--grid",
        "0.5:10:0.5",
    ]);
    assert_eq!(s["rows"].as_array().unwrap().len(), 20);
}

#[test]
fn family_examples() {
    let f = json(&["family", "--N", "1", "--w", "1/2", "--order", "200"]);
    assert_eq!(f["a_closed"], "3/4");
    let a: f64 = f["a_truncated"].as_str().unwrap().parse().unwrap();
    assert!((a - 0.75).abs() < 1e-8);

    let z = json(&["family", "--N", "2", "--w", "0"]);
    assert_eq!(z["a_closed"], "1");
    assert!(z["p_checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["p_u"] == "0" && c["pass"] == true));

    let t = json(&["family", "--N", "2", "--w", "1/3", "--check-pn", "8"]);
    let p = |n: usize| t["p_checks"][n - 1]["p_u"].clone();
    // (m + 1) w^m at m = 2 and m = 4.
    assert_eq!(p(4), "1/3");
    assert_eq!(p(8), "5/81");
    assert_eq!(p(3), "0");
}

#[test]
fn every_json_artifact_matches_its_schema() {
    let cases: &[(&str, &[&str])] = &[
        ("moments", &["moments", "--level", "3"]),
        ("moments", &["moments", "--level", "0"]),
        (
            "operators-pn",
            &["operators", "pn", "--n", "3", "--side", "l"],
        ),
        ("operators-matrices", &["operators", "matrices", "--n", "3"]),
        ("operators-matrices", &["operators", "matrices", "--n", "1"]),
        ("operators-kernel", &["operators", "kernel", "--n", "4"]),
        (
            "operators-commutators",
            &[
                "operators",
                "commutators",
                "--range",
                "1",
                "--max-weight",
                "2",
            ],
        ),
        (
            "operators-stress",
            &["operators", "stress", "--window", "2"],
        ),
        (
            "operators-diagonal-lemma",
            &["operators", "diagonal-lemma", "--n", "1"],
        ),
        (
            "operators-diagonal-lemma",
            &["operators", "diagonal-lemma", "--n", "1", "--m", "2"],
        ),
        (
            "operators-minus-diagnostic",
            &["operators", "minus-diagnostic"],
        ),
        (
            "diagonal-scalar",
            &["diagonal", "cdf", "--x", "2", "--beta", "1", "--c", "0.5"],
        ),
        (
            "diagonal-scalar",
            &["diagonal", "laplace", "--lambda", "1", "--beta", "5"],
        ),
        (
            "diagonal-scalar",
            &["diagonal", "ode", "--lambda", "1", "--beta", "1"],
        ),
        (
            "diagonal-scalar",
            &["diagonal", "cardy", "--rho", "0.05", "--small-rho"],
        ),
        (
            "diagonal-scalar",
            &["diagonal", "cardy", "--rho", "3", "--report", "log"],
        ),
        (
            "diagonal-scalar",
            &["diagonal", "bessel", "--alpha", "-0.5", "--x", "3"],
        ),
        (
            "diagonal-scalar",
            &[
                "diagonal",
                "cumint",
                "--x",
                "50",
                "--beta",
                "1",
                "--mode",
                "series-large",
            ],
        ),
        (
            "diagonal-sandwich",
            &["diagonal", "sandwich", "--beta", "100", "--grid", "1:3:1"],
        ),
        (
            "family",
            &["family", "--N", "3", "--w", "1/4-1/5i", "--order", "60"],
        ),
    ];
    for (name, args) in cases {
        assert_valid(name, &json(args));
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["moments", "--level", "4", "--format", "json"][..],
        &[
            "diagonal",
            "sandwich",
            "--beta",
            "12",
            "--grid",
            "0.5:5:0.5",
            "--format",
            "csv",
        ],
        &[
            "family", "--N", "2", "--w", "1/3+1/7i", "--order", "40", "--format", "json",
        ],
    ] {
        let a = welding(args);
        let b = welding(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = welding(&[
        "moments",
        "--level",
        "4",
        "--format",
        "json",
        "--threads",
        "1",
    ]);
    let four = welding(&[
        "moments",
        "--level",
        "4",
        "--format",
        "json",
        "--threads",
        "4",
    ]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(code(&welding(&["moments"])), 1);
    assert_eq!(
        code(&welding(&["moments", "--level", "2", "--format", "yaml"])),
        1
    );
    assert_eq!(code(&welding(&["moments", "--level", "7"])), 1);
    assert_eq!(
        code(&welding(&[
            "diagonal", "sandwich", "--beta", "1", "--grid", "3:1:1"
        ])),
        1
    );
    // Domain errors.
    assert_eq!(
        code(&welding(&["family", "--N", "1", "--w", "3/5+4/5i"])),
        1
    );
    assert_eq!(
        code(&welding(&[
            "diagonal", "bessel", "--alpha", "1", "--x", "500"
        ])),
        1
    );
    assert_eq!(
        code(&welding(&["diagonal", "cdf", "--x", "1", "--beta", "-1"])),
        1
    );
    // A failing identity: part (b) of the diagonal lemma at (m, n) = (1, 0).
    let o = welding(&["operators", "diagonal-lemma", "--n", "0", "--m", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("FAIL"));
    assert_eq!(code(&welding(&["--help"])), 0);
}

#[test]
fn csv_has_header_row() {
    let o = welding(&["moments", "--level", "2", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,value"));
    assert_eq!(lines.count(), 4);
    let s = stdout(&welding(&[
        "diagonal", "cdf", "--x", "2", "--beta", "1", "--format", "csv",
    ]));
    assert!(s.starts_with("quantity,value,error_bound\ncdf,"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("level2.json");
    let o = welding(&[
        "moments",
        "--level",
        "2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["1+1|1+1"], "17/42");
    assert_valid("moments", &v);
}

#[test]
fn reproduce_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let o = welding(&["reproduce-paper", "--output", path.to_str().unwrap()]);
    let md = std::fs::read_to_string(&path).unwrap();
    assert_eq!(md.matches("\n## ").count(), 11);
    let failed: Vec<&str> = md
        .lines()
        .filter(|l| l.starts_with("## ") && l.ends_with("FAIL"))
        .collect();
    // Only the diagonal-lemma criterion is expected to fail, through its (1,0) case.
    assert_eq!(failed, ["## 7. Diagonal lemma: FAIL"], "{md}");
    assert!(md.contains("FAIL (b) (m,n) = (1,0)"));
    assert_eq!(code(&o), 2);
}
