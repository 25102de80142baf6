use std::path::PathBuf;
use std::process::{Command, Output};

fn kaug(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kaug")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// A fresh scratch file under the target temp dir.
fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const CHORD: &str = "kaug 1\nn 3 k 2\ne 0 1\ne 1 2\nc 0 2 5/1\n";

#[test]
fn gen_is_deterministic_and_parseable() {
    let args = ["gen", "--n", "12", "--k", "2", "--seed", "4", "--max-purchasable", "25"];
    let a = kaug(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&kaug(&args)));
    let text = stdout(&a);
    assert!(text.starts_with("kaug 1\nn 12 k 2\n"));
    assert!(text.lines().filter(|l| l.starts_with("c ")).count() <= 25);

    let path = scratch("gen.kaug", "");
    let out = kaug(&["gen", "--n", "12", "--k", "2", "--seed", "4", "--max-purchasable", "25", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn solve_in_regime() {
    let gen = kaug(&["gen", "--n", "11", "--k", "2", "--seed", "9", "--max-purchasable", "20"]);
    let path = scratch("solve.kaug", &stdout(&gen));
    let report = path.with_extension("report");
    let out = kaug(&["solve", path.to_str().unwrap(), "--trace", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.ends_with("connected 2 true\n"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("cost ") && l.contains('/')));
    let rep = std::fs::read_to_string(report).unwrap();
    assert!(rep.starts_with("report 1\nn 11\nk 2\nmode guaranteed\nregime true\n"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.lines().all(|l| l.starts_with("iter ")), "{stderr}");

    let sol = scratch("solve.sol", &text);
    let check = kaug(&["check", path.to_str().unwrap(), "--solution", sol.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert!(stdout(&check).ends_with("connected 2 true\n"));
}

#[test]
fn regime_violation_exits_3() {
    let path = scratch("chord.kaug", CHORD);
    let out = kaug(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = kaug(&["solve", path.to_str().unwrap(), "--mode", "best-effort"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "f 0 2\ncost 5/1\nconnected 2 true\n");
}

#[test]
fn infeasible_exits_2() {
    let path = scratch("stuck.kaug", "kaug 1\nn 3 k 2\ne 0 1\ne 1 2\n");
    let p = path.to_str().unwrap();
    assert_eq!(kaug(&["solve", p, "--mode", "best-effort"]).status.code(), Some(2));
    assert_eq!(kaug(&["exact", p]).status.code(), Some(2));
    assert_eq!(kaug(&["lp", p]).status.code(), Some(2));
}

#[test]
fn exact_and_check() {
    let path = scratch("exact.kaug", CHORD);
    let p = path.to_str().unwrap();
    for oracle in ["auto", "exhaustive", "bnb"] {
        let out = kaug(&["exact", p, "--oracle", oracle]);
        assert_eq!(stdout(&out), "f 0 2\ncost 5/1\nconnected 2 true\n");
    }
    let out = kaug(&["check", p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "connected 2 false\nwitness 0 2 cut {1}\n");
    assert_eq!(stdout(&kaug(&["check", p, "--k", "1"])), "connected 1 true\n");
}

#[test]
fn lp_dump() {
    let path = scratch("lp.kaug", CHORD);
    let out = kaug(&["lp", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("minimize"));
    assert!(text.contains("x_0_2"));
    assert!(text.ends_with("\\ objective 5/1\n\\ x_0_2 = 1/1\n"), "{text}");
}

#[test]
fn rooted_terminals() {
    let path = scratch("rooted.kaug", "kaug 1\nn 4 k 2\ne 0 1\ne 1 2\ne 2 3\nc 0 2 1/1\nc 0 3 1/1\nc 1 3 1/1\n");
    let p = path.to_str().unwrap();
    // the path ends are already joined by two disjoint routes through the root
    assert_eq!(stdout(&kaug(&["rooted", p, "--terminals", "0,3"])), "cost 0/1\nconnected 2 false\n");
    assert_eq!(stdout(&kaug(&["rooted", p, "--terminals", "0,1"])), "f 0 3\ncost 1/1\nconnected 2 true\n");
    let bad = kaug(&["rooted", p, "--terminals", "0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn harness_suite() {
    let out = kaug(&["harness", "independence-free", "--cases", "20"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("suite independence-free: 20 cases, 0 skipped, 0 failures: PASS\n"));
    assert_eq!(kaug(&["harness", "nope"]).status.code(), Some(1));
}

#[test]
fn bad_input() {
    let path = scratch("bad.kaug", "kaug 2\n");
    assert_eq!(kaug(&["solve", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(kaug(&["solve"]).status.code(), Some(1));
    assert_eq!(kaug(&["--help"]).status.code(), Some(0));
}
