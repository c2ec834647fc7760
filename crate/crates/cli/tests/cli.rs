use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use bhf_core::io;
use bhf_core::ktd::{ktd_basefree, ktd_basis};
use bhf_core::type_da::{box_da_d, elliptic};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn bhf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhf"))
        .args(args)
        .env_remove("BHF_SEED")
        .output()
        .unwrap()
}

fn bhf_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bhf"))
        .args(args)
        .env_remove("BHF_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn trefoil() -> bhf_core::KnotComplex {
    io::parse_cfk(&std::fs::read_to_string(fixture("trefoil.cfk.json")).unwrap(), true).unwrap()
}

#[test]
fn validate_fixtures() {
    for f in ["unknot.cfk.json", "trefoil.cfk.json", "fig13a.cfk.json", "h_cancellations.script"] {
        let o = bhf(&["validate", &fixture(f)]);
        assert!(o.status.success(), "{f}");
        assert_eq!(stdout(&o), "valid\n");
    }
}

#[test]
fn invalid_complex_fails_validation() {
    let o = bhf_stdin(&["validate", "-"], "x: A=0 M=1\ny: A=0 M=0\nx -> y\n");
    assert!(o.status.success());
    let o = bhf_stdin(&["validate", "-"], "x: A=0 M=0\ny: A=0 M=5\nx -> y\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Maslov"));
}

#[test]
fn flip_matches_library() {
    let o = bhf(&["flip", &fixture("trefoil.cfk.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), io::write_cfk(&trefoil().flip().unwrap()));
}

#[test]
fn tau_of_fixtures() {
    for (f, tau) in [("unknot.cfk.json", "0"), ("trefoil.cfk.json", "1"), ("lh_trefoil.cfk.json", "-1")] {
        let o = bhf(&["tau", &fixture(f)]);
        assert_eq!(stdout(&o).trim(), tau, "{f}");
    }
}

#[test]
fn cfd_matches_library() {
    let o = bhf(&["cfd", &fixture("trefoil.cfk.json"), "--framing", "-7", "--algo", "basefree"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), io::write_type_d(&ktd_basefree(&trefoil(), 7).unwrap()));

    let s = trefoil().simultaneous_simplify(64).unwrap().unwrap();
    let o = bhf(&["cfd", &fixture("trefoil.cfk.json"), "--framing", "-1"]);
    assert_eq!(stdout(&o), io::write_type_d(&ktd_basis(&s, -1).unwrap()));
}

#[test]
fn framing_too_small_is_an_error() {
    let o = bhf(&["cfd", &fixture("trefoil.cfk.json"), "--framing", "-2", "--algo", "basefree"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn pipeline_through_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("trefoil.dmod.json");
    let d = d.to_str().unwrap();
    let o = bhf(&["cfd", &fixture("trefoil.cfk.json"), "--framing", "-7", "--algo", "basefree", "-o", d]);
    assert!(o.status.success() && o.stdout.is_empty());

    let o = bhf(&["tensor", "--bimodule", "H", d]);
    assert!(o.status.success());
    let expected = box_da_d(&elliptic(), &ktd_basefree(&trefoil(), 7).unwrap()).unwrap();
    assert_eq!(stdout(&o), io::write_type_d(&expected));

    let o = bhf_stdin(&["reduce", "-"], &stdout(&o));
    assert!(o.status.success());
    assert_eq!(stdout(&o), io::write_type_d(&expected.reduced()));
}

#[test]
fn build_h_is_isomorphic_to_builtin() {
    let o = bhf(&["build-h", "--script", &fixture("h_cancellations.script")]);
    assert!(o.status.success());
    let o = bhf_stdin(&["iso", "-", "builtin:H"], &stdout(&o));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("isomorphic\n"));
}

#[test]
fn verify_exit_codes() {
    let o = bhf(&["verify", &fixture("trefoil.cfk.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("verified"));
    let o = bhf(&["verify", &fixture("fig13a.cfk.json"), "--algo", "basis"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn seeded_reduction_honours_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("product.dmod.json");
    let product = box_da_d(&elliptic(), &ktd_basefree(&trefoil(), 7).unwrap()).unwrap();
    std::fs::write(&d, io::write_type_d(&product)).unwrap();
    let d = d.to_str().unwrap();
    let by_flag = stdout(&bhf(&["reduce", d, "--seed", "5"]));
    let by_env = Command::new(env!("CARGO_BIN_EXE_bhf"))
        .args(["reduce", d, "--seed", "9"])
        .env("BHF_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&by_env), by_flag);
    let expected = product.reduce(&bhf_core::type_d::ReductionOrder::Seeded(5)).unwrap().0;
    assert_eq!(by_flag, io::write_type_d(&expected));
}

#[test]
fn dot_output() {
    let o = bhf(&["dot", "builtin:tau-mu"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("digraph {") && text.ends_with("}\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(bhf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bhf(&["cfd", &fixture("unknot.cfk.json")]).status.code(), Some(2));
}

#[test]
fn strict_mode_rejects_invalid_input() {
    let bad = "x: A=0 M=0\ny: A=0 M=5\nx -> y\n";
    assert_eq!(bhf_stdin(&["--strict", "flip", "-"], bad).status.code(), Some(1));
}
