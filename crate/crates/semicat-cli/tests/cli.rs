//! End-to-end runs of the binary: generation, validation, the rigidity and
//! tensor verdicts with their exit codes, and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semicat"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("semicat-cli-test-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn gen_fixture(kind_args: &[&str], name: &str) -> PathBuf {
    let path = tmp(name);
    let mut args = vec!["generate"];
    args.extend_from_slice(kind_args);
    args.push("-o");
    let pstr = path.to_str().unwrap().to_string();
    args.push(&pstr);
    let out = run(&args);
    assert!(out.status.success(), "generate failed: {}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn generated_documents_validate_with_exit_zero() {
    let path = gen_fixture(&["bimodule-proj", "--algebra", "dual-numbers"], "bimod.json");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pass"));
}

#[test]
fn tensor_verdicts_exit_zero_with_certificates() {
    let gp = gen_fixture(&["group-proj", "--group", "z2", "--char", "2"], "gp.json");
    let out = run(&["decide-tensor", gp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("yes"));

    let bm = gen_fixture(&["bimodule-proj", "--algebra", "dual-numbers"], "bm.json");
    let out = run(&["decide-tensor", bm.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("no"));
    assert!(stdout.contains("stable ideal"));
}

#[test]
fn rigid_fails_with_zigzag_witness_on_the_zero_structure() {
    let z = gen_fixture(&["zero", "--objects", "A,B"], "zero.json");
    let out = run(&["rigid", z.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("zigzag"), "diagnostic names the failing axiom: {stdout}");
}

#[test]
fn usage_and_format_errors_exit_two() {
    let out = run(&["validate", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"format\": 1").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["generate", "no-such-kind"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let bm = gen_fixture(&["bimodule-proj", "--algebra", "dual-numbers"], "det.json");
    let a = run(&["decide-tensor", bm.to_str().unwrap(), "--json", "--seed", "3"]);
    let b = run(&["decide-tensor", bm.to_str().unwrap(), "--json", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "no");
}

#[test]
fn lift_checks_module_sections() {
    let ok = gen_fixture(
        &["group-proj", "--group", "z2", "--char", "2", "--module", "regular"],
        "lift-ok.json",
    );
    let out = run(&["lift", ok.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = gen_fixture(
        &["bimodule-proj", "--algebra", "dual-numbers", "--module", "zero-action"],
        "lift-bad.json",
    );
    let out = run(&["lift", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("S ⋆ M = M"));
}

#[test]
fn rigid_can_embed_the_certificate_for_later_runs() {
    let bm = gen_fixture(&["bimodule-proj", "--algebra", "k"], "embed.json");
    let out_path = tmp("embedded.json");
    let out = run(&["rigid", bm.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // the embedded certificate is picked up and verifies
    let out = run(&["rigid", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("rigidity"));
}
