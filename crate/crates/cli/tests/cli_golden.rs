//! Byte-for-byte reports of the documented invocations, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn shiftspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftspace"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"))
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .expect("golden file")
}

/// Runs twice and checks the exit code and the report against the golden file.
fn check(args: &[&str], code: i32, name: &str) {
    let first = shiftspace(args);
    let second = shiftspace(args);
    assert_eq!(
        first.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(first.stdout, second.stdout, "{args:?} is not deterministic");
    assert_eq!(
        String::from_utf8(first.stdout).unwrap(),
        golden(name),
        "{args:?}"
    );
}

#[test]
fn space_check_reports_member() {
    check(
        &["space-check", "spec.json", "--point", "(01)^- . (01)^+"],
        0,
        "space_check.txt",
    );
}

#[test]
fn space_minimalize_emits_one_and_two() {
    check(
        &["space-minimalize", "exampleD.json"],
        0,
        "space_minimalize.txt",
    );
    check(
        &["--json", "space-minimalize", "exampleD.json"],
        0,
        "space_minimalize.json",
    );
}

#[test]
fn edge_build_emits_the_golden_mean_graph() {
    check(
        &[
            "edge-build",
            "goldenmean.json",
            "-M",
            "1",
            "--cutoff",
            "2",
            "--dot",
        ],
        0,
        "edge_build.dot",
    );
}

#[test]
fn verdicts_and_input_errors_set_the_exit_code() {
    let non_member = shiftspace(&["space-check", "spec.json", "--point", "(1)^- . (1)^+"]);
    assert_eq!(non_member.status.code(), Some(1));
    assert_eq!(
        String::from_utf8(non_member.stdout).unwrap(),
        "not a member\n"
    );
    assert_eq!(
        shiftspace(&[
            "bridge-project",
            "exampleA.json",
            "--n-budget",
            "2",
            "--cutoff",
            "2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        shiftspace(&["bridge-lift", "star_one.json", "--cutoff", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        shiftspace(&["code-check", "halving.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        shiftspace(&["space-check", "missing.json", "--point", "@"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        shiftspace(&["space-check", "spec.json", "--point", "(("])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(shiftspace(&["no-such-verb"]).status.code(), Some(2));
}

#[test]
fn points_are_read_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_shiftspace"))
        .args(["code-apply", "halving.json"])
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"(1)^- . 2 (1)^+\n\n(3)^- . (3)^+\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "(1)^- . 2 (1)^+ -> (1)^- . (1)^+\n(3)^- . (3)^+ -> (2)^- . (2)^+\n"
    );
}
