mod common;

use std::process::{Command, Output};

use common::fixture_path;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibrantkit"))
        .args(args)
        .env_remove("FIBRANTKIT_DIM")
        .env_remove("FIBRANTKIT_KMAX")
        .env_remove("FIBRANTKIT_LMAX")
        .env_remove("FIBRANTKIT_MORPHISM_CAP")
        .env_remove("FIBRANTKIT_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn validate_reports_axioms() {
    let ok = cli(&["validate", &path("semilattice_m3")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("semilattice_m3: 5 objects, 12 morphisms"));
    let bad = cli(&["validate", &path("no_terminal")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("cfo.E         fail"));
}

#[test]
fn parse_and_usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.fix");
    std::fs::write(&empty, "").unwrap();
    let o = cli(&["validate", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at line 1"));
    assert_eq!(cli(&["suite"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cli(&["hom", &path("semilattice_m3"), "e0", "nope"]).status.code(), Some(2));
}

#[test]
fn homology_of_a_lattice_is_a_point() {
    let o = cli(&["homology", &path("semilattice_m3"), "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H0 = Z\nH1 = 0\nH2 = 0\n");
}

#[test]
fn nerve_counts_simplices() {
    let o = cli(&["nerve", &path("chain4"), "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    // Chains in 0 < 1 < 2 < 3: 4 vertices, 10 arrows, 20 composable pairs.
    assert_eq!(stdout(&o), "0: 4 simplices, 4 nondegenerate\n1: 10 simplices, 6 nondegenerate\n2: 20 simplices, 4 nondegenerate\n");
}

#[test]
fn hom_and_cocycles_print_representatives() {
    let o = cli(&["hom", &path("lattice_isos5"), "e0", "e4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[e0,e4]: 1 classes"));
    let o = cli(&["cocycles", &path("semilattice_m3"), "e1", "e2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FCorr(e1,e2): "));
}

#[test]
fn suite_exit_codes_follow_failures() {
    assert_eq!(cli(&["suite", &path("terminal")]).status.code(), Some(0));
    let o = cli(&["suite", &path("broken_v"), "--report", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fixture"], "broken_v");
}

#[test]
fn flags_override_environment() {
    let run = |env: &str, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_fibrantkit"));
        c.arg("homology").arg(path("terminal")).env("FIBRANTKIT_DIM", env);
        if let Some(d) = flag {
            c.args(["--dim", d]);
        }
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run("2", None).lines().count(), 2);
    assert_eq!(run("2", Some("4")).lines().count(), 4);
}

#[test]
fn generate_writes_loadable_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.fix");
    let out = out.to_str().unwrap();
    let o = cli(&["generate", "semilattice", "5", "--seed", "2", "-o", out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(cli(&["validate", out]).status.code(), Some(0));
    assert_eq!(cli(&["generate", "semilattice", "-o", out]).status.code(), Some(2));
    assert_eq!(cli(&["generate", "bounded_groupoids", "1", "4", "-o", out]).status.code(), Some(1));
}
