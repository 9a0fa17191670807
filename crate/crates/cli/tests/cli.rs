use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cayleyham"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("CAYLEYHAM_BUDGET", "5000000").output().unwrap()
}

fn corpus_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn search_prints_a_certificate_that_verifies() {
    let out = run(&["search", "--group", "Z5", "--gens", "a=1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("a a a a a"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z5.cert");
    fs::write(&path, &text).unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    let good = corpus_file("xv1_y.cert");
    assert_eq!(run(&["verify", good.to_str().unwrap()]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cert");
    fs::write(&bad, "group: Z5\ngen a = (1)\ntokens:\na a a a\n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("wrong-length") || String::from_utf8_lossy(&out.stderr).contains("wrong-length"));

    let garbled = dir.path().join("garbled.cert");
    fs::write(&garbled, "group: Y7\n").unwrap();
    assert_eq!(run(&["verify", garbled.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["search", "--group", "Q7", "--gens", "a=1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn parity_filter_with_no_cycle_exits_3() {
    let out = run(&["search", "--group", "Z3 x Z4", "--gens", "a=(1,0),b=(0,1)", "--parity-filter", "a"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tiny_budget_exits_4() {
    let out = bin()
        .args(["search", "--group", "G150_D6", "--gens", "a=(1,0,1,0),b=(0,1,0,1)", "--budget", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn quotient_and_lift() {
    let out = run(&["quotient", "--group", "D30 x Z5", "--normal", "(0,0,1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("30"));

    let dir = tempfile::tempdir().unwrap();
    let cycle = dir.path().join("q.cert");
    let walk = format!("{} f {} f", ["c"; 14].join(" "), ["c"; 14].join(" "));
    fs::write(&cycle, format!("group: D30 x Z5\ngen c = (0,1,1)\ngen f = (1,0,0)\ntokens:\n{walk}\n")).unwrap();
    let out = run(&["lift", "--group", "D30 x Z5", "--normal", "(0,0,1)", "--cycle", cycle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("voltage: (0,0,3) (generates N: true)"), "{text}");
}

#[test]
fn catalog_and_lint() {
    let out = run(&["enumerate-groups"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("G150_D6"));
    let out = run(&["corpus-lint"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn reproduce_is_deterministic_with_one_job() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = run(&["reproduce", "--jobs", "1", "--preset", "G150_D6", "--out", d.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
    for file in ["report.txt", "summary.jsonl"] {
        let a = fs::read(dirs[0].path().join(file)).unwrap();
        let b = fs::read(dirs[1].path().join(file)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{file} differs");
    }
    let certs = fs::read_dir(dirs[0].path().join("certs")).unwrap().count();
    assert!(certs > 0);
}
