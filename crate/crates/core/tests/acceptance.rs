//! One test per acceptance criterion. Each prints a single pass/fail line,
//! written straight to stderr so it shows up without `--nocapture`.

use std::io::Write;

use kaug_core::rational::fmt_rat;
use kaug_core::toolkit::harness::{run_suite, HarnessConfig, SuiteReport};

fn report_line(n: usize, what: &str, rep: &SuiteReport) -> String {
    let status = if rep.passed() { "pass" } else { "FAIL" };
    let mut line = format!(
        "criterion {n:>2} {what}: {status} ({} cases, {} skipped, {} failures",
        rep.cases,
        rep.skipped,
        rep.failures.len()
    );
    for (key, val) in &rep.maxima {
        line.push_str(&format!(", max {key} {}", fmt_rat(val)));
    }
    line.push(')');
    line
}

fn criterion(n: usize, what: &str, suite: &str) {
    let rep = run_suite(suite, &HarnessConfig::default()).expect("known suite");
    let line = report_line(n, what, &rep);
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(rep.skipped == 0 && rep.passed(), "{}", rep.to_table());
}

#[test]
fn criterion_01_end_to_end_ratio() {
    criterion(1, "pipeline cost <= 6 opt, k = 2, n 10..14", "pipeline-ratio");
}

#[test]
fn criterion_02_rooted_ratio() {
    criterion(2, "rooted step cost <= 2 opt", "rooted-ratio");
}

#[test]
fn criterion_03_half_edge_when_rogue_free() {
    criterion(3, "basic optimum has x_e >= 1/2 on rogue-free graphs", "half-edge");
}

#[test]
fn criterion_04_terminals_meet_both_pieces() {
    criterion(4, "deficient set-pairs meet R on both sides after ROOTED(R)", "rooted-terminals");
}

#[test]
fn criterion_05_large_n_branch_is_rogue_free() {
    criterion(5, "large-n branch leaves no rogue set", "large-n-rogue-free");
}

#[test]
fn criterion_06_rogue_union_bound() {
    criterion(6, "rogue union <= k^3(k-1) after ROOTED(R0)", "rogue-union");
}

#[test]
fn criterion_07_uncrossing_identities() {
    criterion(7, "uncrossing identities on 10^4 samples", "uncross-identities");
}

#[test]
fn criterion_08_rogue_free_is_independence_free() {
    criterion(8, "rogue-free graphs are independence-free", "independence-free");
}

#[test]
fn criterion_09_h_minimization() {
    criterion(9, "h minimization matches subset scan", "h-min");
}

#[test]
fn criterion_10_separation() {
    criterion(10, "separation matches set-pair enumeration", "separation");
}

#[test]
fn criterion_11_oracle_consistency() {
    criterion(11, "branch-and-bound equals exhaustive, LP <= opt", "oracle-consistency");
}
