//! End-to-end tests of the ratdec binary: output shapes, exit codes,
//! JSON round-trips and the determinism contract.

use std::path::Path;
use std::process::{Command, Output};

fn ratdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratdec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decompose_additive_poly_over_f4() {
    let out = ratdec(&["decompose", "x^4+x", "--q", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "three inequivalent chains: {text}");
    assert!(lines.contains(&"x^2+x ∘ x^2+x"));
}

#[test]
fn decompose_reports_indecomposable_and_units() {
    let out = ratdec(&["decompose", "x^5", "--q", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x^5 is indecomposable");

    let out = ratdec(&["decompose", "x+1", "--q", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("unit"));
}

#[test]
fn chains_text_matches_expected_counts() {
    let out = ratdec(&["chains", "--q", "5"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "all maximal chains: 4 groups (11 chains)"
    );

    let out = ratdec(&["chains", "--q", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "chain lengths differ: 3 groups x4, 4 groups x3"
    );
}

#[test]
fn chains_export_matches_golden_file() {
    let dir = std::env::temp_dir().join("ratdec_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gamma0_f3_lattice.json");
    let out = ratdec(&["chains", "--q", "3", "--export", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let golden_path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/gamma0_f3_lattice.json");
    let golden = std::fs::read_to_string(golden_path).unwrap();
    assert_eq!(written, golden);
}

#[test]
fn group_lists_translations() {
    let out = ratdec(&["group", "x^4+x", "--q", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("order 4\n"));
    assert!(text.contains("x+1"));
    assert!(text.contains("x+t"));
}

#[test]
fn fixfield_of_translation_subgroup() {
    let out = ratdec(&["fixfield", "x+1", "--q", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "group order 2\nx^2+x\n");
}

#[test]
fn construct_prints_the_three_invariants() {
    let out = ratdec(&["construct", "--q", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P_q = x^6+x^4+x^2"));
    assert!(text.contains("h_q = (x^4+x+1)/x^3"));
}

#[test]
fn joint_generator_of_powers() {
    let out = ratdec(&["joint", "x^2", "x^3", "--q", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x");
}

#[test]
fn decompose_json_round_trips() {
    let out = ratdec(&["decompose", "x^4+x", "--q", "4", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["field"]["p"], 2);
    assert_eq!(value["field"]["m"], 2);
    let ctx = ratdec::gf::FieldCtx::with_modulus(
        2,
        2,
        &ratdec::parse::parse_modulus(value["field"]["modulus"].as_str().unwrap(), 2).unwrap(),
    )
    .unwrap();
    let input = ratdec::parse::parse_ratfunc(value["input"].as_str().unwrap(), &ctx).unwrap();
    let chains = value["result"]["decompositions"].as_array().unwrap();
    assert_eq!(chains.len(), 3);
    for chain in chains {
        // Every printed component reparses, and the chain recomposes to
        // the input function.
        let parts: Vec<ratdec::ratfunc::RatFunc> = chain
            .as_array()
            .unwrap()
            .iter()
            .map(|s| ratdec::parse::parse_ratfunc(s.as_str().unwrap(), &ctx).unwrap())
            .collect();
        let mut acc = parts.last().unwrap().clone();
        for g in parts.iter().rev().skip(1) {
            acc = g.compose(&acc);
        }
        assert_eq!(acc, input);
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = ratdec(&["verify", "--q", "3", "--json"]);
    assert!(a.status.success());
    let b = ratdec(&["verify", "--q", "3", "--json"]);
    assert_eq!(
        a.stdout, b.stdout,
        "identical invocations must be byte-identical"
    );
    let value: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    for check in value["result"].as_array().unwrap() {
        let status = check["status"].as_str().unwrap();
        assert!(status == "pass" || status == "skipped", "{check}");
    }
}

#[test]
fn field_flags_take_p_and_m() {
    let out = ratdec(&["construct", "--p", "2", "--m", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("P_q = x^12+x^9+x^6+x^3"));

    let out = ratdec(&[
        "fixfield",
        "x+1",
        "--p",
        "2",
        "--m",
        "2",
        "--modulus",
        "t^2+t+1",
    ]);
    assert!(out.status.success());
}

#[test]
fn input_errors_exit_1() {
    // not a prime power
    let out = ratdec(&["decompose", "x^2", "--q", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    // syntax error
    let out = ratdec(&["decompose", "x^^2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(1));

    // constant input
    let out = ratdec(&["group", "7", "--q", "3"]);
    assert_eq!(out.status.code(), Some(1));

    // reducible modulus
    let out = ratdec(&["construct", "--p", "2", "--m", "2", "--modulus", "t^2+1"]);
    assert_eq!(out.status.code(), Some(1));

    // missing field spec
    let out = ratdec(&["construct"]);
    assert_eq!(out.status.code(), Some(1));

    // non-unit generator for fixfield
    let out = ratdec(&["fixfield", "x^2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_errors_exit_2() {
    // Γ(F_7) has 336 elements, above the default lattice bound.
    let out = ratdec(&["chains", "--q", "7", "--full"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
