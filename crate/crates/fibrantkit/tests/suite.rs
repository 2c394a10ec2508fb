mod common;

use std::time::{Duration, Instant};

use common::{shipped, NEGATIVE_CONTROLS};
use fibrantkit::report::Report;
use fibrantkit::suite::EXPECT_ID;
use fibrantkit::{run_suite, Status, SuiteConfig};

fn failing(r: &Report) -> Vec<&str> {
    r.failures().map(|c| c.id.as_str()).collect()
}

#[test]
fn m3_has_no_failures_and_no_refutations() {
    let r = run_suite(&shipped("semilattice_m3"), &SuiteConfig::default());
    assert!(failing(&r).is_empty(), "{}", r.to_text());
    assert!(r.checks.iter().all(|c| c.status != Status::Skipped && c.status != Status::SizeCap), "{}", r.to_text());
    assert_eq!(r.check("06.calculus.condition5").unwrap().status, Status::Certified);
}

#[test]
fn negative_controls_fail_exactly_as_declared() {
    for name in NEGATIVE_CONTROLS {
        let f = shipped(name);
        let r = run_suite(&f, &SuiteConfig::default());
        let mut declared: Vec<&str> = f.expect.failures.iter().map(String::as_str).collect();
        declared.sort();
        assert_eq!(failing(&r), declared, "{name}\n{}", r.to_text());
        assert!(r.as_expected());
    }
}

#[test]
fn undeclared_failures_fail_the_expectation() {
    let mut f = shipped("broken_v");
    f.expect.failures.clear();
    let r = run_suite(&f, &SuiteConfig::default());
    let expect = r.check(EXPECT_ID).unwrap();
    assert_eq!(expect.status, Status::Fail);
    assert!(expect.witness.contains("06.calculus.condition4"));
}

#[test]
fn terminal_fixture_passes_in_under_a_second() {
    let start = Instant::now();
    let r = run_suite(&shipped("terminal"), &SuiteConfig::default());
    assert!(start.elapsed() < Duration::from_secs(1));
    assert!(r.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Certified)), "{}", r.to_text());
}

#[test]
fn reports_are_sorted_and_anchored() {
    let r = run_suite(&shipped("chain4"), &SuiteConfig::default());
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    sorted.dedup();
    assert_eq!(ids.len(), sorted.len());
    assert!(r.checks.iter().all(|c| !c.anchor.is_empty()));
    assert!(r.checks.iter().all(|c| c.ms == 0));
}

#[test]
fn json_reports_follow_the_schema_and_are_thread_independent() {
    let f = shipped("lattice_isos5");
    let run = |threads| run_suite(&f, &SuiteConfig { threads: Some(threads), ..SuiteConfig::default() }).to_json();
    let one = run(1);
    assert_eq!(one, run(3));
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["suite"], "fibrantkit");
    assert_eq!(v["fixture"], "lattice_isos5");
    for c in v["checks"].as_array().unwrap() {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["anchor", "id", "ms", "status", "witness"]);
    }
    let back: Report = serde_json::from_str(&one).unwrap();
    assert_eq!(back.to_json(), one);
}

#[test]
fn text_reports_end_with_a_summary() {
    let r = run_suite(&shipped("no_terminal"), &SuiteConfig::default());
    let text = r.to_text();
    assert!(text.starts_with("fixture no_terminal\n"));
    assert!(text.trim_end().ends_with("2 failing"), "{text}");
}

#[test]
fn tiny_caps_are_recorded_not_fatal() {
    let config = SuiteConfig { limits: fibrantkit::core::Limits::with_morphism_cap(8), ..SuiteConfig::default() };
    let r = run_suite(&shipped("semilattice_m3"), &config);
    assert!(r.checks.iter().any(|c| c.status == Status::SizeCap), "{}", r.to_text());
    assert!(failing(&r).is_empty(), "{}", r.to_text());
}
