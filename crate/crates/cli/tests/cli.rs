//! End-to-end tests driving the `fdp` binary: exit codes, file formats,
//! diagnostics and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fdp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("fdp-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn construct_then_verify_exits_zero() {
    let path = tmp("dircon1.json");
    let out = run(&[
        "construct",
        "--family",
        "dircon1",
        "--m",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = run(&["verify", "--pair", path.to_str().unwrap(), "--primitive"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("formally dual"), "{text}");
    assert!(text.contains("primitive"), "{text}");
    std::fs::remove_file(path).ok();
}

#[test]
fn theta_of_teichmuller_pair_is_nine() {
    let path = tmp("dircon2.json");
    let out = run(&[
        "construct",
        "--family",
        "dircon2",
        "--m",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = run(&["theta", "--pair", path.to_str().unwrap(), "--side", "t"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "9");
    // upper-case side spelling is accepted too
    let out = run(&["theta", "--pair", path.to_str().unwrap(), "--side", "T"]);
    assert_eq!(stdout(&out).trim(), "9");
    std::fs::remove_file(path).ok();
}

#[test]
fn minimal_handwritten_pair_file_verifies() {
    let path = tmp("jj.json");
    std::fs::write(&path, r#"{"group":[4],"S":[[0],[1]],"T":[[0],[1]]}"#).unwrap();
    let out = run(&["verify", "--pair", path.to_str().unwrap(), "--primitive"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    std::fs::remove_file(path).ok();
}

#[test]
fn size_precheck_failure_exits_one_with_witness() {
    let path = tmp("z5.json");
    std::fs::write(
        &path,
        r#"{"group":[5],"S":[[0],[1]],"T":[[0],[1]]}"#,
    )
    .unwrap();
    let out = run(&["verify", "--pair", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("size precheck"), "{text}");
    assert!(text.contains('4') && text.contains('5'), "{text}");
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_file_exits_two() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{\"group\": [4], \"S\": [[0]").unwrap();
    let out = run(&["verify", "--pair", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid pair file"));
    std::fs::remove_file(path).ok();
}

#[test]
fn out_of_range_coordinate_names_the_index() {
    let path = tmp("range.json");
    std::fs::write(
        &path,
        r#"{"group":[4],"S":[[0],[4]],"T":[[0],[1]]}"#,
    )
    .unwrap();
    let out = run(&["verify", "--pair", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("S[1][0]") && err.contains("Z4"), "{err}");
    std::fs::remove_file(path).ok();
}

#[test]
fn duplicate_element_rejected() {
    let path = tmp("dup.json");
    std::fs::write(
        &path,
        r#"{"group":[4],"S":[[0],[0]],"T":[[0],[1]]}"#,
    )
    .unwrap();
    let out = run(&["verify", "--pair", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("duplicate element in S"), "{}", stderr(&out));
    std::fs::remove_file(path).ok();
}

#[test]
fn spectrum_lines_are_sorted_values() {
    let path = tmp("spec.json");
    run(&[
        "construct",
        "--family",
        "dircon1",
        "--m",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    let out = run(&[
        "spectrum",
        "--pair",
        path.to_str().unwrap(),
        "--side",
        "t",
        "--kind",
        "difference",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 9\n2 16\n4 6\n8 1\n");
    std::fs::remove_file(path).ok();
}

#[test]
fn predict_values() {
    let out = run(&["predict", "--family", "mix-theta", "--m1", "1", "--m2", "1"]);
    assert_eq!(stdout(&out).trim(), "255");
    let out = run(&["predict", "--family", "dircon2-theta", "--m", "4"]);
    assert_eq!(stdout(&out).trim(), "92511");
    let out = run(&["predict", "--family", "dircon1-spectrum", "--m", "1"]);
    assert_eq!(stdout(&out), "0 9\n2 16\n4 6\n8 1\n");
}

#[test]
fn search_z4_primitive_pairs() {
    let out = run(&[
        "search",
        "--group",
        "4",
        "--size-s",
        "2",
        "--size-t",
        "2",
        "--primitive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# 4 pair(s)"), "{text}");
    assert!(text.contains("S={(0),(1)} T={(0),(1)}"), "{text}");
    assert!(text.contains("S={(0),(3)} T={(0),(3)}"), "{text}");
}

#[test]
fn construct_output_is_canonical_and_stable() {
    let p1 = tmp("canon1.json");
    let p2 = tmp("canon2.json");
    run(&["construct", "--family", "mix", "--m1", "1", "--m2", "1", "--out", p1.to_str().unwrap()]);
    run(&["construct", "--family", "mix", "--m1", "1", "--m2", "1", "--out", p2.to_str().unwrap()]);
    let b1 = std::fs::read(&p1).unwrap();
    let b2 = std::fs::read(&p2).unwrap();
    assert_eq!(b1, b2);

    // verify twice: identical verdict bytes
    let v1 = run(&["--json", "verify", "--pair", p1.to_str().unwrap(), "--primitive"]);
    let v2 = run(&["--json", "verify", "--pair", p1.to_str().unwrap(), "--primitive"]);
    assert_eq!(v1.stdout, v2.stdout);
    assert_eq!(v1.status.code(), Some(0));
    std::fs::remove_file(p1).ok();
    std::fs::remove_file(p2).ok();
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let a = run(&["selftest"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = run(&["selftest"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for id in 1..=10 {
        assert!(text.contains(&format!("criterion {id:2}")), "{text}");
    }
    assert!(!text.contains("FAIL"), "{text}");
}
