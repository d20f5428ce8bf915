//! End-to-end checks of the command-line interface: exit codes, report
//! shapes, file round trips, and byte stability.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bincup"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_core_suite_passes() {
    let out = run(&[
        "verify",
        "--builder",
        "torus",
        "--ring",
        "Z",
        "--identity",
        "steenrod",
        "--trials",
        "50",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["reports"][0]["identity"], "steenrod");
}

#[test]
fn verify_random_complex_mod_p() {
    let out = run(&[
        "verify",
        "--builder",
        "random:30",
        "--ring",
        "Zp:5",
        "--identity",
        "left-hirsch",
        "--trials",
        "60",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["status"], "pass");
}

#[test]
fn verify_nc_identities() {
    let out = run(&[
        "verify",
        "--builder",
        "torus",
        "--identity",
        "nc-steenrod",
        "--identity",
        "nc-left-hirsch",
        "--trials",
        "20",
    ]);
    assert!(out.status.success());
}

#[test]
fn tampered_input_exits_2() {
    let dir = std::env::temp_dir().join("bincup-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    // the triangle's face maps violate the simplicial identity
    std::fs::write(
        &path,
        r#"{"dim":2,"simplices":{"0":["v0","v1","v2"],"1":[{"id":"e01","faces":["v1","v0"]},{"id":"e12","faces":["v2","v1"]},{"id":"e02","faces":["v2","v0"]}],"2":[{"id":"t0","faces":["e02","e12","e01"]}]}}"#,
    )
    .unwrap();
    let out = run(&["cohomology", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn valid_input_file_round_trips() {
    let dir = std::env::temp_dir().join("bincup-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("simplex.json");
    std::fs::write(
        &path,
        r#"{"dim":2,"simplices":{"0":["v0","v1","v2"],"1":[{"id":"e01","faces":["v1","v0"]},{"id":"e12","faces":["v2","v1"]},{"id":"e02","faces":["v2","v0"]}],"2":[{"id":"t0","faces":["e12","e02","e01"]}]}}"#,
    )
    .unwrap();
    let out = run(&["cohomology", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["h1"]["free_rank"], 0);
    assert_eq!(v["h2"]["free_rank"], 0);
}

#[test]
fn undefined_product_strict_exits_3() {
    // the torus classes have a nonzero cup product, so the triple product
    // is undefined
    let base = [
        "massey",
        "--builder",
        "torus",
        "--variant",
        "triple",
        "--classes",
        "a1;a1;a2",
    ];
    let out = run(&base);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["defined"], false);
    let mut strict: Vec<&str> = base.to_vec();
    strict.push("--strict");
    let out = run(&strict);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn restricted_product_on_family() {
    let out = run(&[
        "massey",
        "--builder",
        "xk:3",
        "--variant",
        "restricted",
        "--classes",
        "u1;u2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let rep = v["representative"][0].as_str().unwrap();
    let val: i64 = rep.parse().unwrap();
    assert_eq!(val.abs(), 3);
    assert_eq!(v["contains_zero"], false);
}

#[test]
fn coordinate_classes_accepted() {
    let out = run(&[
        "massey",
        "--builder",
        "sphere:3",
        "--ring",
        "Zp:3",
        "--variant",
        "nfold-zeta",
        "--classes",
        "c:1",
        "--fold",
        "3",
    ]);
    assert!(out.status.success());
}

#[test]
fn distinguish_verdicts() {
    let out = run(&["distinguish", "--k", "1", "--l", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "distinguished");
    let out = run(&["distinguish", "--k", "2", "--l", "2"]);
    assert_eq!(stdout_json(&out)["verdict"], "not distinguished");
}

#[test]
fn paper_suite_passes() {
    let out = run(&["paper-suite"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], "pass");
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    for expected in [
        "torus-cup-one",
        "no-right-hirsch",
        "mod3-triple-bockstein",
        "mod3-fold-bockstein",
        "mod5-fold-bockstein",
        "abbassi",
        "undefined-triple",
        "family-table",
    ] {
        assert!(names.contains(&expected), "missing check {expected}");
    }
}

#[test]
fn reports_are_byte_stable() {
    let args = [
        "verify",
        "--builder",
        "random:20",
        "--ring",
        "Zp:3",
        "--identity",
        "cup1-d",
        "--trials",
        "40",
        "--seed",
        "123",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = ["paper-suite", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join("bincup-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "cohomology",
        "--builder",
        "sphere:3",
        "--ring",
        "Zp:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["h1"]["free_rank"], 1);
    assert_eq!(v["h2"]["free_rank"], 1);
}

#[test]
fn bad_ring_rejected() {
    let out = run(&["cohomology", "--builder", "torus", "--ring", "Zp:4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pretty_flag_renders_indented_json() {
    let out = run(&["cohomology", "--builder", "torus", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\n  "));
    let _: serde_json::Value = serde_json::from_str(&text).unwrap();
}
