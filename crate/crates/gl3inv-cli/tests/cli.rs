use std::process::{Command, Output};

use serde_json::Value;

fn gl3inv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl3inv"))
        .args(args)
        .env_remove("GL3INV_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn f1_echoes_exact_rational_inputs() {
    let out = gl3inv(&[
        "f1", "--a", "1/3", "--b", "1/3", "--bp", "1/3", "--c", "1", "--x", "0.2", "--y", "-0.1",
        "--method", "both",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(complex(&v["input"]["a"]), (1.0 / 3.0, 0.0));
    assert_eq!(complex(&v["input"]["y"]), (-0.1, 0.0));
    let (s, e) = (complex(&v["series"]), complex(&v["euler"]));
    assert!((s.0 - e.0).abs() < 1e-10 && s.1.abs() < 1e-14);
    assert!((s.0 - 1.0).abs() < 0.05);
}

#[test]
fn deriv_reads_a_map_file() {
    let dir = std::env::temp_dir().join(format!("gl3inv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("map.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "u1": [[[1, 0], [1, 0]], [[2, 0], [0.5, 0]]], "u2": [[[0, 1], [1, 0]]]}"#,
    )
    .unwrap();
    let out = gl3inv(&["deriv", "--map", path.to_str().unwrap(), "--at", "0.3,-0.2"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    for k in ["brace_x", "brace_y", "bracket_x", "bracket_y"] {
        assert!(v["derivatives"][k].is_array(), "{k}");
    }
    assert_eq!(complex(&v["jacobian"]), (1.3, 0.0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn modular_solve_returns_two_roots_with_residuals() {
    let v = json(&gl3inv(&[
        "picard",
        "modular-solve",
        "--u",
        "2,3",
        "--v2",
        "4",
    ]));
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    for r in v["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn heisenberg_words_are_verified() {
    let v = json(&gl3inv(&[
        "heisenberg",
        "decompose",
        "--alpha",
        "1,2",
        "--beta",
        "3,3",
    ]));
    assert_eq!(v["verified"], true);
    let out = gl3inv(&["heisenberg", "decompose", "--alpha", "1,0", "--beta", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_filters_by_suite_and_signals_failures() {
    let out = gl3inv(&["verify", "eta"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["suite"] == "eta"));

    let out = gl3inv(&["verify", "derivs", "--tol", "derivs.chain-rule=0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["summary"]["failed"], 1);

    let out = Command::new(env!("CARGO_BIN_EXE_gl3inv"))
        .args(["verify", "evolution", "--format", "text"])
        .env("GL3INV_TOL", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL MT4-galilean"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "nonsense"][..],
        &["verify", "group", "--tol", "no.such.check=1"],
        &[
            "f1", "--a", "1/0", "--b", "0", "--bp", "0", "--c", "1", "--x", "0", "--y", "0",
        ],
        &["picard", "j"],
        &["deriv", "--map", "/nonexistent/map.json", "--at", "0,0"],
    ] {
        assert_eq!(gl3inv(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn samples_flag_changes_loop_counts() {
    let v = json(&gl3inv(&["verify", "derivs", "--samples", "3"]));
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "derivs.gl3-invariance")
        .unwrap()
        .clone();
    assert_eq!(c["samples"], 3);
}
