//! End-to-end checks of the command-line interface: output contents,
//! exit codes, and JSON round trips.

use std::process::Command;

fn knotcolour(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_knotcolour"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn invariant_text_output() {
    let (stdout, _, code) = knotcolour(&[
        "invariant",
        "--knot",
        "trefoil_left",
        "--group",
        "A5",
        "--basepoint",
        "(1,2,3,4,5)",
        "--symmetries",
        "all",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("P(id) = 1 + 5*t"));
    assert!(stdout.contains("P(obv) = 1 + 5*t^4"));
    assert!(stdout.contains("P(inv) = 1 + 5*t^4"));
    assert!(stdout.contains("P(rev) = 1 + 5*t"));
}

#[test]
fn invariant_json_round_trips() {
    let (stdout, _, code) = knotcolour(&[
        "invariant",
        "--braid",
        "s1^-3",
        "--group",
        "A5",
        "--basepoint",
        "(1,2,3,4,5)",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(json["group"], "A5");
    let ring = &json["results"][0]["ring"];
    // reparse the emitted polynomial into the same ring element
    let group = knotcolour::group::PointedGroup::alternating(
        5,
        &knotcolour::group::BasepointSpec::Cycles("(1,2,3,4,5)".into()),
    )
    .unwrap();
    let parsed = knotcolour::ring::RingElement::from_json(group.clone(), ring).unwrap();
    let code = knotcolour::diagram::BraidWord::parse("s1^-3", None)
        .unwrap()
        .to_long_wirtinger()
        .unwrap();
    let direct = knotcolour::colouring::colouring_polynomial(
        &code,
        &group,
        &knotcolour::colouring::EngineConfig::default(),
    )
    .unwrap();
    assert_eq!(parsed, direct.element);
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |workers: &str| {
        knotcolour(&[
            "invariant",
            "--knot",
            "fig8",
            "--group",
            "PSL2_7",
            "--basepoint",
            "order:7",
            "--workers",
            workers,
        ])
        .0
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn exit_code_parse_error() {
    let (_, stderr, code) = knotcolour(&["invariant", "--braid", "x7", "--group", "A5"]);
    assert_eq!(code, 2, "stderr: {}", stderr);
    let (_, _, code) = knotcolour(&["invariant", "--knot", "no_such", "--group", "A5"]);
    assert_eq!(code, 2);
    let (_, _, code) = knotcolour(&["invariant", "--braid", "s1^3", "--group", "Q8"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_code_hypothesis_error() {
    // Λ(S6, (1,2)) is non-abelian, so the state-sum pipeline refuses
    let (_, stderr, code) = knotcolour(&[
        "statesum",
        "--braid",
        "s1^-3",
        "--group",
        "S6",
        "--basepoint",
        "(1,2)",
    ]);
    assert_eq!(code, 3, "stderr: {}", stderr);
    // multi-component closures are rejected as input errors of class 3
    let (_, _, code) = knotcolour(&["invariant", "--braid", "s1^2", "--group", "A5"]);
    assert_eq!(code, 3);
}

#[test]
fn exit_code_limit_error() {
    let (_, stderr, code) = knotcolour(&[
        "invariant",
        "--knot",
        "fig8",
        "--group",
        "A5",
        "--node-cap",
        "1",
    ]);
    assert_eq!(code, 4, "stderr: {}", stderr);
}

#[test]
fn verify_suite_runs() {
    let (stdout, _, code) = knotcolour(&["verify", "cocycle"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("checks passed"));
    let (_, _, code) = knotcolour(&["verify", "no_such_suite"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_json_summary() {
    let (stdout, _, code) = knotcolour(&["verify", "yb", "--format", "json"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(json["passed"], true);
}

#[test]
fn fixtures_listing() {
    let (stdout, _, code) = knotcolour(&["fixtures"]);
    assert_eq!(code, 0);
    for name in ["trefoil_left", "kinoshita_terasaka", "8_17"] {
        assert!(stdout.contains(name));
    }
    let (stdout, _, code) = knotcolour(&["fixtures", "bretzel_3_5_7"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("encoding: pd"));
}

#[test]
fn colourings_json_dump() {
    let (stdout, _, code) = knotcolour(&[
        "colourings",
        "--braid",
        "s1^-3",
        "--group",
        "A5",
        "--basepoint",
        "(1,2,3,4,5)",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(json["colourings"].as_array().unwrap().len(), 6);
}

#[test]
fn wirtinger_source_accepted() {
    // raw codes compute, but symmetry variants are refused
    let (stdout, _, code) = knotcolour(&[
        "invariant",
        "--wirtinger",
        "2+ 0+ 1+",
        "--group",
        "A5",
        "--basepoint",
        "(1,2,3,4,5)",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("P(id)"));
    let (_, _, code) = knotcolour(&[
        "invariant",
        "--wirtinger",
        "2+ 0+ 1+",
        "--group",
        "A5",
        "--symmetries",
        "obv",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn fixture_directory_override() {
    let dir = std::env::temp_dir().join("knotcolour_fixture_override_test");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("unknot.knot"),
        "name: unknot\nencoding: braid\ndata: s1\nprovenance: kinked override\ncalibration: none\n",
    )
    .unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_knotcolour"))
        .args(["fixtures", "unknot"])
        .env("KNOTCOLOUR_FIXTURES", &dir)
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("kinked override"));
    // the override still computes as an unknot
    let output = Command::new(env!("CARGO_BIN_EXE_knotcolour"))
        .args([
            "invariant", "--knot", "unknot", "--group", "A5", "--basepoint", "(1,2,3,4,5)",
        ])
        .env("KNOTCOLOUR_FIXTURES", &dir)
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&output.stdout).contains("P(id) = 1 "));
    std::fs::remove_dir_all(&dir).ok();
}
