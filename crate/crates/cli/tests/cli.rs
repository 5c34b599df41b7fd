use std::process::{Command, Output};

fn malcev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malcev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_malcev_passes() {
    let o = malcev(&["verify", "--algebra", "S", "--variety", "malcev"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS]"));
}

#[test]
fn verify_jacobi_fails_with_witness() {
    let o = malcev(&["verify", "--algebra", "S", "--variety", "jacobi"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("a, b, c => -6d"));
}

#[test]
fn multiply_engines_agree() {
    for engine in ["generic", "closedform"] {
        let o = malcev(&[
            "multiply",
            "--algebra",
            "S",
            "--engine",
            engine,
            "abc",
            "bc",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), "ab²c² - 2abcd + 2d²");
    }
    let o = malcev(&[
        "multiply",
        "--algebra",
        "S",
        "--engine",
        "quotient",
        "c",
        "b",
    ]);
    assert_eq!(stdout(&o).trim(), "bc - 2d");
}

#[test]
fn multiply_json_round_trips() {
    let o = malcev(&["--format", "json", "multiply", "--algebra", "T", "b", "a"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["product"]["display"], "ab - c");
    let terms = v["product"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["exponents"], serde_json::json!([0, 0, 1, 0, 0]));
    assert_eq!(terms[0]["coeff"], "-1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        malcev(&[
            "multiply",
            "--algebra",
            "LV5",
            "--engine",
            "closedform",
            "x",
            "y"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        malcev(&["verify", "--algebra", "bad.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        malcev(&["verify", "--algebra", "S", "--variety", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(malcev(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        malcev(&["--jobs", "0", "catalog-list"]).status.code(),
        Some(2)
    );
    assert_eq!(
        malcev(&[
            "multiply",
            "--algebra",
            "S",
            "--engine",
            "quotient",
            "bd",
            "a"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn malformed_json_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let o = malcev(&["verify", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
}

#[test]
fn json_file_algebra_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl2.json");
    let json = serde_json::to_string(&malcev::catalog::sl2().to_json()).unwrap();
    std::fs::write(&path, json).unwrap();
    let o = malcev(&[
        "verify",
        "--algebra",
        path.to_str().unwrap(),
        "--variety",
        "jacobi",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn crosscheck_reports_pair_count() {
    let o = malcev(&[
        "--format",
        "json",
        "crosscheck",
        "--algebra",
        "S",
        "--cap",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["checked"], 1225);
    assert_eq!(
        malcev(&["crosscheck", "--algebra", "M_split"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_independent_of_jobs() {
    let a = malcev(&[
        "--jobs",
        "1",
        "--format",
        "json",
        "crosscheck",
        "--algebra",
        "T",
        "--cap",
        "2",
        "--engine",
        "quotient",
    ]);
    let b = malcev(&[
        "--jobs",
        "3",
        "--format",
        "json",
        "crosscheck",
        "--algebra",
        "T",
        "--cap",
        "2",
        "--engine",
        "quotient",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn alternators_vanish_after_reduction() {
    let o = malcev(&["alternators", "--algebra", "S", "--cap", "2"]);
    assert!(stdout(&o).contains("(a, bc, bc) = 2d²"));
    let o = malcev(&["alternators", "--algebra", "S", "--cap", "2", "--reduce"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 nonzero"));
}

#[test]
fn quotient_table_lists_products() {
    let o = malcev(&["quotient-table", "--algebra", "S", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(c)(b) = bc - 2d"));
    assert!(stdout(&o).contains("(d)(d) = 0"));
}

#[test]
fn octonion_verify_passes() {
    let o = malcev(&["octonion-verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("isomorphism: "));
}

#[test]
fn identities_decompose_g() {
    let o = malcev(&["--format", "json", "identities", "--decompose-g"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decomposition"]["member"], true);
    assert_eq!(v["decomposition"]["space_dim"], 120);
    assert!(!v["decomposition"]["coefficients"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn identities_bol() {
    let o = malcev(&["identities", "--bol"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Lie triple system"));
}

#[test]
fn catalog_list_names_everything() {
    let o = malcev(&["catalog-list"]);
    for name in malcev::catalog::NAMES {
        assert!(stdout(&o).contains(name));
    }
}
