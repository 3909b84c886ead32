//! End-to-end CLI checks: exit-code matrix, golden outputs for the
//! documented examples, config and environment precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

fn nct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nct"))
        .args(args)
        .env_remove("NCT_PRECISION")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_code_matrix() {
    // 0: success
    assert_eq!(nct(&["unit", "--theta", "sqrt:2"]).status.code(), Some(0));
    // 1: usage errors — unknown flag, unknown subcommand, malformed grammar
    assert_eq!(
        nct(&["unit", "--theta", "sqrt:2", "--bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(nct(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nct(&["unit", "--theta", "sqrt:abc"]).status.code(), Some(1));
    assert_eq!(
        nct(&["snf", "--matrix", "1,2;3"]).status.code(),
        Some(1),
        "ragged matrix is a usage error"
    );
    assert_eq!(
        nct(&["localzeta", "--prime", "3"]).status.code(),
        Some(1),
        "needs exactly one of --theta/--modulus"
    );
    // 2: domain errors
    assert_eq!(nct(&["unit", "--theta", "int:3"]).status.code(), Some(2));
    assert_eq!(
        nct(&["localzeta", "--theta", "sqrt:2", "--prime", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        nct(&["compare", "--curve", "0,0", "--theta", "sqrt:2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        nct(&["lfunction", "--theta", "sqrt:2", "--s", "2"]).status.code(),
        Some(2),
        "degenerate excluded-prime set"
    );
    // help exits 0
    assert_eq!(nct(&["--help"]).status.code(), Some(0));
}

#[test]
fn golden_examples() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["unit", "--theta", "sqrt:2"],
            r#"{"theta":"quad:0,1,1,2","epsilon":"quad:1,1,1,2","epsilon_norm":-1,"epsilon_conductor":1,"epsilon_minpoly":[-1,-2,1],"power":1,"lambda":"quad:1,1,1,2","matrix":"1,1;2,1"}"#,
        ),
        (
            &["unit", "--theta", "sqrt:3"],
            r#"{"theta":"quad:0,1,1,3","epsilon":"quad:2,1,1,3","epsilon_norm":1,"epsilon_conductor":1,"epsilon_minpoly":[1,-4,1],"power":1,"lambda":"quad:2,1,1,3","matrix":"2,1;3,2"}"#,
        ),
        (
            &["localzeta", "--theta", "sqrt:2", "--prime", "2"],
            r#"{"p":2,"n":1,"theta":"quad:0,1,1,2","matrix":"6,2;-1,0","denominator":[1,-6,2]}"#,
        ),
        (
            &["localzeta", "--modulus", "4", "--char", "1", "--prime", "3"],
            r#"{"p":3,"n":0,"modulus":4,"char":1,"chi_p":-1,"denominator":[1,1]}"#,
        ),
        (
            &["snf", "--matrix", "2,4;6,8"],
            r#"{"matrix":"2,4;6,8","U":"1,0;3,-1","S":"2,0;0,4","V":"1,-2;0,1","check":true}"#,
        ),
        (
            &["functor", "--matrix", "2,1;3,4"],
            r#"{"input":"2,1;3,4","normalized":"6,-5;1,0","image":"6,-5;-1,0"}"#,
        ),
        (
            &["unit-index", "--theta", "sqrt:2", "--n", "5"],
            r#"{"theta":"quad:0,1,1,2","n":5,"epsilon":"quad:1,1,1,2","g":3,"epsilon_pow_g":"quad:7,5,1,2"}"#,
        ),
    ];
    for (args, want) in cases {
        let out = nct(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out).trim_end(), *want, "golden mismatch for {args:?}");
    }
}

#[test]
fn lfunction_values_against_known_constants() {
    // zeta(2) partial product at 10^5 should sit within 1e-5 of pi^2/6.
    let out = nct(&["lfunction", "--modulus", "1", "--s", "2", "--prime-bound", "100000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let re = text
        .split("\"value_re\":")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap();
    let value: f64 = re.parse().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-5);
}

#[test]
fn csv_mirror_matches_json_columns() {
    let json_out = nct(&[
        "compare", "--curve", "-1,0", "--theta", "sqrt:2", "--prime-bound", "20",
    ]);
    let csv_out = nct(&[
        "compare", "--curve", "-1,0", "--theta", "sqrt:2", "--prime-bound", "20",
        "--format", "csv",
    ]);
    assert!(json_out.status.success() && csv_out.status.success());
    let csv = stdout(&csv_out);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,ap,trAp,curve_factor,torus_factor,excluded,equal"
    );
    let first = lines.next().unwrap();
    assert_eq!(first, "5,-2,82,1;2;5,1;-82;5,true,false");
    // csv is rejected for non-tabular commands
    assert_eq!(
        nct(&["unit", "--theta", "sqrt:2", "--format", "csv"]).status.code(),
        Some(1)
    );
}

#[test]
fn out_flag_writes_identical_bytes() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("nct_cli_test_compare.json");
    let _ = std::fs::remove_file(&path);
    let to_file = Command::new(env!("CARGO_BIN_EXE_nct"))
        .args([
            "compare", "--curve", "-1,0", "--theta", "sqrt:2", "--prime-bound", "20",
            "--out", path.to_str().unwrap(),
        ])
        .env_remove("NCT_PRECISION")
        .output()
        .unwrap();
    assert!(to_file.status.success());
    let on_disk = std::fs::read(&path).unwrap();
    let to_stdout = nct(&[
        "compare", "--curve", "-1,0", "--theta", "sqrt:2", "--prime-bound", "20",
    ]);
    assert_eq!(on_disk, to_stdout.stdout);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn config_file_and_env_precedence() {
    let dir = std::env::temp_dir();
    let cfg_path = dir.join("nct_cli_test.conf");
    std::fs::write(&cfg_path, "# test config\nprime_bound = 30\nprecision = 96\n").unwrap();

    // Config raises the bound from the default 100 down to 30: rows to 29.
    let with_cfg = Command::new(env!("CARGO_BIN_EXE_nct"))
        .args([
            "compare", "--curve", "-1,0", "--theta", "sqrt:2",
            "--config", cfg_path.to_str().unwrap(),
        ])
        .env_remove("NCT_PRECISION")
        .output()
        .unwrap();
    assert!(with_cfg.status.success());
    let body = stdout(&with_cfg);
    assert!(body.contains("\"p\":29"));
    assert!(!body.contains("\"p\":31"));

    // Flag beats config.
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_nct"))
        .args([
            "compare", "--curve", "-1,0", "--theta", "sqrt:2",
            "--config", cfg_path.to_str().unwrap(),
            "--prime-bound", "10",
        ])
        .env_remove("NCT_PRECISION")
        .output()
        .unwrap();
    assert!(!stdout(&flag_wins).contains("\"p\":11"));

    // NCT_PRECISION is a fallback: applied when neither flag nor config sets
    // precision; rejected when invalid.
    let env_prec = Command::new(env!("CARGO_BIN_EXE_nct"))
        .args(["lfunction", "--modulus", "1", "--s", "2", "--prime-bound", "50"])
        .env("NCT_PRECISION", "96")
        .output()
        .unwrap();
    assert!(stdout(&env_prec).contains("\"precision\":96"));
    let env_low = Command::new(env!("CARGO_BIN_EXE_nct"))
        .args(["lfunction", "--modulus", "1", "--s", "2"])
        .env("NCT_PRECISION", "32")
        .output()
        .unwrap();
    assert_eq!(env_low.status.code(), Some(1), "precision below 64 is rejected");

    let _ = std::fs::remove_file(&cfg_path);
}

#[test]
fn text_format_renders() {
    let out = nct(&["unit", "--theta", "sqrt:2", "--format", "text"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.contains("epsilon"));
    assert!(body.contains("1,1;2,1"));
}
