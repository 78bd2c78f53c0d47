use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cstar-ineq"));
    c.env_remove("CSTAR_INEQ_TOL");
    c
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn t_file() -> PathBuf {
    fixture("t.json", r#"{"rows": 2, "cols": 2, "entries": [[2, 1], [1, 2]]}"#)
}

fn x_file() -> PathBuf {
    fixture("x.json", r#"{"rows": 2, "cols": 2, "entries": [[1, 1], [0, 1]]}"#)
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn check(r: &str, out: &str) -> Command {
    let mut c = bin();
    c.args(["--out", out, "check", "--family", "loewner", "--r", r, "--t"])
        .arg(t_file())
        .arg("--x")
        .arg(x_file());
    c
}

#[test]
fn verify_prints_layout_and_flags_the_second_instance() {
    let (code, out, err) = run(bin().arg("verify-paper"));
    assert!(out.contains("98.0000"), "{out}");
    assert!(out.contains("342.0000"));
    assert!(out.contains("-2.0426"));
    assert!(out.contains("verdict: not PSD"));
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("r = 1/4") && err.contains("det(C)"));

    let (_, again, _) = run(bin().arg("verify-paper"));
    assert_eq!(out, again);
}

#[test]
fn verify_json_reports_both_instances() {
    let (code, out, _) = run(bin().args(["--out", "json", "verify-paper"]));
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exit_code"], 2);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["report"]["holds"], false);
    assert_eq!(reports[0]["report"]["lhs"]["entries"][0][1], 183.0);
}

#[test]
fn check_at_r_one_is_equality() {
    let (code, out, _) = run(&mut check("1", "json"));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let d = &v["reports"][0]["difference"]["entries"];
    for row in d.as_array().unwrap() {
        for e in row.as_array().unwrap() {
            assert_eq!(e.as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn check_violation_exits_one() {
    let (code, out, _) = run(&mut check("3", "json"));
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exit_code"], 1);
    assert_eq!(v["reports"][0]["holds"], false);
    assert_eq!(v["reports"][0]["min_eigenvalue"].as_f64().unwrap(), -2.18270820541);
}

#[test]
fn tolerance_flag_and_environment_override() {
    let (code, _, _) = run(check("3", "text").args(["--tol", "10"]));
    assert_eq!(code, 0);
    let (code, _, _) = run(check("3", "text").env("CSTAR_INEQ_TOL", "10"));
    assert_eq!(code, 0);
    let (code, _, err) = run(check("3", "text").env("CSTAR_INEQ_TOL", "ten"));
    assert_eq!(code, 2);
    assert!(err.contains("CSTAR_INEQ_TOL"));
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let (_, json_out, _) = run(&mut check("3", "json"));
    let (_, text_out, _) = run(&mut check("3", "text"));
    let v: Value = serde_json::from_str(&json_out).unwrap();
    let rep = &v["reports"][0];
    for key in ["min_eigenvalue", "tolerance"] {
        let line = format!("{key}: {}", rep[key]);
        assert!(text_out.contains(&line), "missing {line:?} in\n{text_out}");
    }
    let rhs = rep["rhs"]["entries"].to_string().replace(',', ", ");
    assert!(text_out.contains(&format!("entries: {rhs}")), "{rhs}\n{text_out}");
}

#[test]
fn empty_search_exits_zero() {
    let (code, out, _) = run(bin().args([
        "--out", "json", "search", "--dim", "2", "--r-min", "2.5", "--r-max", "3.5", "--trials", "0",
        "--seed", "1", "--dist", "integer-small", "--family", "loewner-r>1",
    ]));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["findings"], 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn search_with_findings_exits_one() {
    let (code, out, _) = run(bin().args([
        "--out", "json", "search", "--dim", "2", "--r-min", "2.5", "--r-max", "3.5", "--trials", "200",
        "--seed", "1", "--dist", "integer-small", "--family", "loewner-r>1",
    ]));
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let n = v["reports"][0]["findings"].as_u64().unwrap();
    assert!(n > 0);
    assert_eq!(v["reports"].as_array().unwrap().len() as u64, n + 1);
}

#[test]
fn gns_and_supporting_line_pass() {
    let rho = fixture("rho.json", r#"{"rows": 2, "cols": 2, "entries": [[0.5, 0], [0, 0.5]]}"#);
    let (code, out, _) = run(bin()
        .args(["--out", "json", "gns", "--m", "2", "--n", "2", "--f", "pow:3", "--samples", "8", "--seed", "3", "--rho"])
        .arg(&rho)
        .arg("--t")
        .arg(t_file()));
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["dim_quotient"], 4);
    assert_eq!(v["reports"][0]["transport"]["induced_norm"], 3.0);

    let (code, out, _) = run(bin().args([
        "--out", "json", "supporting-line", "--f", "negpow:0.5", "--a", "0", "--b", "1", "--x0", "0", "--eps", "0.01",
    ]));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["line"]["case"], "left-steep");
}

#[test]
fn usage_and_input_errors_exit_two_with_one_line() {
    let ragged = fixture("ragged.json", r#"{"rows": 2, "cols": 2, "entries": [[1, 2], [3]]}"#);
    let bad_shape = fixture("x3.json", r#"{"rows": 3, "cols": 3, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#);
    let cases: Vec<Command> = vec![
        {
            let mut c = bin();
            c.args(["check", "--bogus"]);
            c
        },
        {
            let mut c = check("3", "text");
            c.args(["--family", "nope"]);
            c
        },
        {
            let mut c = bin();
            c.args(["check", "--family", "loewner", "--r", "3", "--t", "/nonexistent/t.json", "--x"])
                .arg(x_file());
            c
        },
        {
            let mut c = bin();
            c.args(["check", "--family", "loewner", "--r", "3", "--t"]).arg(&ragged).arg("--x").arg(x_file());
            c
        },
        {
            let mut c = bin();
            c.args(["check", "--family", "loewner", "--r", "3", "--t"]).arg(t_file()).arg("--x").arg(&bad_shape);
            c
        },
        {
            let mut c = bin();
            c.args(["search", "--dim", "2", "--r-min", "0.5", "--r-max", "2", "--trials", "5"]);
            c
        },
    ];
    for mut c in cases {
        let (code, _, err) = run(&mut c);
        assert_eq!(code, 2, "{c:?}: {err}");
        assert_eq!(err.trim_end().lines().count(), 1, "{c:?}: {err}");
    }
}
