use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn kpairs(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kpairs"))
        .args(args)
        .env_remove("RUST_BACKTRACE")
        .env_remove("RUST_LIB_BACKTRACE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = kpairs(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn machine(args: &[&str], stdin: Option<&str>) -> Value {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full, stdin)).unwrap()
}

fn quantity<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["quantities"].as_array().unwrap().iter().find(|q| q["name"] == name).unwrap_or_else(|| panic!("{name}"))
}

fn count(text: &str, keyword: &str) -> usize {
    text.lines().filter(|l| l.split_whitespace().next() == Some(keyword)).count()
}

#[test]
fn gen_sizes() {
    let n1 = ok(&["gen", "n1", "--k", "3"], None);
    assert_eq!(n1.lines().find(|l| l.starts_with("nodes")).unwrap().split_whitespace().count() - 1, 8);
    assert_eq!(count(&n1, "edge"), 10);
    let hu = ok(&["gen", "hu"], None);
    assert_eq!((count(&hu, "edge"), count(&hu, "commodity")), (8, 3));
    let t2 = ok(&["gen", "bipartite", "--type", "II", "--m", "2", "--n", "2"], None);
    assert_eq!(count(&t2, "commodity"), 6);
}

#[test]
fn invalid_parameters_fail_cleanly() {
    for args in [&["gen", "n1", "--k", "1"][..], &["gen", "bipartite", "--type", "I", "--m", "0", "--n", "2"]] {
        let out = kpairs(args, None);
        assert!(!out.status.success());
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn parse_errors_name_the_line() {
    let out = kpairs(&["bounds", "-"], Some("directed 0\nnodes a b\nedge a x\n"));
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains('x'), "{err}");
}

#[test]
fn pipe_matches_file() {
    let text = ok(&["gen", "hu"], None);
    let path = write_temp("hu.net", &text);
    let from_file = ok(&["--format", "machine", "bounds", path.to_str().unwrap()], None);
    let from_pipe = ok(&["--format", "machine", "bounds", "-"], Some(&text));
    assert_eq!(from_file, from_pipe);
}

#[test]
fn machine_output_is_deterministic() {
    let text = ok(&["gen", "n1", "--k", "3"], None);
    let first = ok(&["--format", "machine", "gap", "-"], Some(&text));
    let second = ok(&["--format", "machine", "--jobs", "1", "gap", "-"], Some(&text));
    assert_eq!(first, second);
    assert!(!first.contains("ms"));
}

#[test]
fn hu_reports() {
    let hu = ok(&["gen", "hu"], None);
    let bounds = machine(&["bounds", "-"], Some(&hu));
    assert_eq!(quantity(&bounds, "sparsity")["value"], "4/3");
    assert_eq!(quantity(&bounds, "wiener_bound")["value"], "8/7");
    assert_eq!(quantity(&bounds, "sparsity")["witness_commodities"].as_array().unwrap().len(), 3);
    let check = machine(&["check", "-"], Some(&hu));
    assert_eq!(check["verdicts"][0]["valid"], true);
    assert_eq!(check["verdicts"][0]["symmetric_bound"], "8/7");
    assert_eq!(check["verdicts"][0]["informal_steps"].as_array().unwrap().len(), 1);
    let human = ok(&["gap", "-"], Some(&hu));
    assert!(human.contains("conjecture confirmed on this instance"));
    assert!(human.contains("(1.14286)"));
}

#[test]
fn route_scheme_and_lp_dump() {
    let t2 = ok(&["gen", "bipartite", "--type", "II", "--m", "2", "--n", "2"], None);
    let report = machine(&["route", "--scheme", "-"], Some(&t2));
    assert_eq!(quantity(&report, "routing_rate")["value"], "1/2");
    assert!(!report["scheme"].as_array().unwrap().is_empty());
    let lp = ok(&["route", "--dump-lp", "-"], Some(&t2));
    assert!(lp.contains("maximize"));
}

#[test]
fn truncated_certificate_is_invalid() {
    let hu = ok(&["gen", "hu"], None);
    let net = write_temp("hu_trunc.net", &hu);
    let cert = ok(&["cert", "--bundled", "hu"], None);
    let mut lines: Vec<&str> = cert.lines().collect();
    lines.pop();
    let cert = write_temp("hu_trunc.cert", &(lines.join("\n") + "\n"));
    let report = machine(&["check", net.to_str().unwrap(), "--cert", cert.to_str().unwrap()], None);
    assert_eq!(report["verdicts"][0]["valid"], false);
    assert!(!report["verdicts"][0]["residual"].as_str().unwrap().is_empty());
}

#[test]
fn side_condition_failure_exits_nonzero() {
    let hu = ok(&["gen", "hu"], None);
    let without_bg: String = hu.lines().filter(|l| *l != "edge b g").map(|l| format!("{l}\n")).collect();
    let net = write_temp("hu_no_bg.net", &without_bg);
    let cert = write_temp("hu_full.cert", &ok(&["cert", "--bundled", "hu"], None));
    let out = kpairs(&["check", net.to_str().unwrap(), "--cert", cert.to_str().unwrap()], None);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("b>g"));
}

#[test]
fn caps_are_enforced() {
    let hu = ok(&["gen", "hu"], None);
    let out = kpairs(&["--cap-edges", "4", "bounds", "-"], Some(&hu));
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let n1 = ok(&["gen", "n1", "--k", "4"], None);
    let report = machine(&["--cap-edges", "10", "bounds", "-"], Some(&n1));
    assert_eq!(quantity(&report, "meagerness")["method"], "min-cut");
    assert_eq!(quantity(&report, "meagerness")["value"], "1");
    assert!(quantity(&report, "sparsity")["skipped"].is_string());
}

#[test]
fn network_and_certificate_cannot_share_stdin() {
    let out = kpairs(&["check", "-", "--cert", "-"], Some(""));
    assert!(!out.status.success());
}

#[test]
fn cert_listing_and_lookup() {
    let list = ok(&["cert", "--list"], None);
    assert!(list.lines().any(|l| l == "hu"));
    assert!(list.lines().any(|l| l == "n1_k6"));
    let t1 = ok(&["gen", "bipartite", "--type", "I", "--m", "3", "--n", "4"], None);
    let cert = ok(&["cert", "-"], Some(&t1));
    assert!(cert.lines().any(|l| l.starts_with("target ")));
    let triangle = "directed 0\nnodes a b c\nedge a b\nedge b c\nedge a c\ncommodity x a b\n";
    assert!(!kpairs(&["check", "-"], Some(triangle)).status.success());
    let gap = machine(&["gap", "-"], Some(triangle));
    assert!(quantity(&gap, "coding_bound")["skipped"].is_string());
}
