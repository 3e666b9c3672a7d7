use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn ortho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ortho"))
        .args(args)
        .output()
        .expect("ortho runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen_file(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = ortho(&[&["gen"], args].concat());
    assert!(out.status.success());
    write(dir, name, &String::from_utf8(out.stdout).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_pipes_into_validate() {
    let generated = ortho(&["gen", "mo", "2"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_ortho"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&generated.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let bad_ortho = write(
        dir.path(),
        "bad.txt",
        "lattice b\nelements 0 a b 1\ncovers 0 a\ncovers 0 b\ncovers a 1\ncovers b 1\n\
         ortho 0 1\northo a a\northo b b\nend\n",
    );
    assert_eq!(ortho(&["validate", s(&bad_ortho)]).status.code(), Some(1));
    assert_eq!(ortho(&["frobnicate"]).status.code(), Some(2));
    let syntax = write(
        dir.path(),
        "syn.txt",
        "lattice x\nelements 0 1\nfoo 0\nend\n",
    );
    assert_eq!(ortho(&["validate", s(&syntax)]).status.code(), Some(4));
    let undeclared = write(
        dir.path(),
        "und.txt",
        "lattice x\nelements 0 1\ncovers 0 q\nend\n",
    );
    assert_eq!(ortho(&["validate", s(&undeclared)]).status.code(), Some(5));
    let b2 = gen_file(dir.path(), "b2.txt", &["boolean", "2"]);
    let over = ortho(&["check", "adjunction", s(&b2), s(&b2), "--budget", "0"]);
    assert_eq!(over.status.code(), Some(3));
}

#[test]
fn syntax_errors_report_position_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "syn.txt",
        "lattice x\nelements 0 1\n   foo 0\nend\n",
    );
    let out = ortho(&["--json", "validate", s(&p)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "syntax");
    assert_eq!(
        (v["line"].as_u64(), v["column"].as_u64()),
        (Some(3), Some(4))
    );
}

#[test]
fn adjunction_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = gen_file(dir.path(), "c2.txt", &["chain", "2"]);
    let two = write(
        dir.path(),
        "two.txt",
        "frame two-point\npoints x y\nperp x y\nend\n",
    );
    let out = ortho(&["--json", "check", "adjunction", s(&c2), s(&two)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["certificate"]["lattice_homs"].as_array().unwrap().len(),
        1
    );
}

#[test]
fn complete_canonical_on_monadic_mo2() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen_file(
        dir.path(),
        "m.txt",
        &["mo", "2", "--quantifier", "collapse"],
    );
    let out = ortho(&["--json", "complete", s(&m), "--canonical"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["passed"], true);
    let mac = ortho(&["complete", s(&m), "--macneille"]);
    assert_eq!(mac.status.code(), Some(0));
}

#[test]
fn frames_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen_file(dir.path(), "m.txt", &["mo", "2"]);
    let out = ortho(&["--json", "frame", s(&m), "--maclaren"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        (v["points"].as_u64(), v["perp_pairs"].as_u64()),
        (Some(5), Some(2))
    );
    let frame_file = write(dir.path(), "f.txt", v["text"].as_str().unwrap());
    let dot = String::from_utf8(ortho(&["render", s(&frame_file), "--dot"]).stdout).unwrap();
    assert_eq!(dot.matches("dir=none").count(), 2);
    let b2 = gen_file(dir.path(), "b2.txt", &["boolean", "2"]);
    let first = ortho(&["render", s(&b2), "--dot"]).stdout;
    assert_eq!(first, ortho(&["render", s(&b2), "--dot"]).stdout);
    assert_eq!(String::from_utf8(first).unwrap().matches("->").count(), 4);
}

#[test]
fn monadic_goldblatt_frame_requires_quantifier() {
    let dir = tempfile::tempdir().unwrap();
    let plain = gen_file(dir.path(), "b2.txt", &["boolean", "2"]);
    assert_ne!(
        ortho(&["frame", s(&plain), "--goldblatt", "--monadic"])
            .status
            .code(),
        Some(0)
    );
    let m = gen_file(
        dir.path(),
        "b2c.txt",
        &["boolean", "2", "--quantifier", "collapse"],
    );
    let out = ortho(&["--json", "frame", s(&m), "--goldblatt", "--monadic"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["points"].as_u64(), Some(3));
    assert_eq!(v["relation_pairs"].as_u64(), Some(9));
}
