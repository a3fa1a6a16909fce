use std::io::Write;
use std::process::{Command, Output, Stdio};

use btw_core::kernel::reduce;
use btw_core::rational::{parse_ratio_string, ratio};
use btw_core::{gen_complete, gen_random, parse_str};
use serde_json::Value;

fn btw(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_btw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = btw(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    serde_json::from_str(&ok(&args, stdin)).unwrap()
}

fn fails_with(args: &[&str], stdin: &str, code: i32) -> String {
    let out = btw(args, stdin);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty(), "data written on failure");
    String::from_utf8(out.stderr).unwrap()
}

#[test]
fn verify_without_input() {
    let report = json(&["verify"], "");
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert_eq!(
        checks[0]["computed"],
        "12/1 3/1 -6/1 24/1 36/1 -18/1 -6/1 -44/1"
    );
}

#[test]
fn verify_reduced_random_instance() {
    let inst = reduce(&gen_random(12, 60, 9).unwrap()).reduced;
    let report = json(&["verify", "-"], &inst.to_text());
    assert_eq!(report["passed"], true);
    let bound = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "second_moment_lower_bound")
        .unwrap();
    assert_eq!(bound["status"], "pass");
    let second = parse_ratio_string(bound["computed"].as_str().unwrap()).unwrap();
    assert!(second >= ratio(11 * inst.m() as i64, 768));
}

#[test]
fn verify_skips_bound_on_reducible_input() {
    let text = ok(&["verify", "-"], &gen_complete(4).unwrap().to_text());
    assert!(text.contains("SKIP second_moment_lower_bound"));
    assert!(text.contains("not irreducible"));
    assert!(text.ends_with("all checks passed\n"));
}

#[test]
fn kernelize_sparse_instance() {
    let inst = gen_random(10, 50, 3).unwrap().to_text();
    let report = json(&["kernelize", "--kappa", "1"], &inst);
    assert_eq!(report["verdict"], "KERNEL");
    assert!(report["m_reduced"].as_u64().unwrap() <= 50);
    assert_eq!(report["threshold"], "76765902739270");
    let kernel = parse_str(report["kernel"].as_str().unwrap()).unwrap();
    assert_eq!(kernel.m() as u64, report["m_reduced"].as_u64().unwrap());

    // text mode: comment lines, then a parseable kernel
    let text = ok(&["kernelize", "--kappa", "1"], &inst);
    assert!(text.starts_with("c verdict KERNEL\n"));
    assert_eq!(parse_str(&text).unwrap(), kernel);

    let yes = json(&["kernelize", "--kappa", "0"], &inst);
    assert_eq!(yes["verdict"], "YES");
    assert!(yes.get("kernel").is_none());
}

#[test]
fn decide_kappa_zero_is_yes() {
    for seed in 0..3 {
        let inst = gen_random(9, 30, seed).unwrap().to_text();
        let report = json(&["decide", "--kappa", "0"], &inst);
        assert_eq!(report["verdict"], "YES");
        assert_eq!(report["target"], "10/1");
    }
}

#[test]
fn decide_reports_kernel_when_undecided() {
    let inst = gen_random(12, 40, 1).unwrap().to_text();
    let report = json(&["decide", "--kappa", "3", "--dp-max", "4"], &inst);
    assert_eq!(report["verdict"], "UNDECIDED");
    parse_str(report["kernel_instance"].as_str().unwrap()).unwrap();
}

#[test]
fn solve_complete_instance() {
    let report = json(&["solve", "-"], &gen_complete(6).unwrap().to_text());
    assert_eq!(report["best_count"], 20);
    assert_eq!(report["optimal"], true);
    assert_eq!(report["method"], "exact_dp");
    assert_eq!(report["above_bound"], "0/1");
}

#[test]
fn solve_heuristic_fallback() {
    let inst = gen_random(14, 60, 2).unwrap().to_text();
    let report = json(&["solve", "--dp-max", "10"], &inst);
    assert_eq!(report["method"], "local_search");
    assert_eq!(report["optimal"], false);
}

#[test]
fn planted_generation_round_trip() {
    let text = ok(
        &["gen", "planted", "--n", "8", "--m", "30", "--seed", "7"],
        "",
    );
    assert!(text.starts_with("c planted "));
    let inst = parse_str(&text).unwrap();
    assert_eq!((inst.n(), inst.m()), (8, 30));
    let report = json(&["solve"], &text);
    assert_eq!(report["best_count"], 30);

    let j = json(
        &["gen", "planted", "--n", "8", "--m", "30", "--seed", "7"],
        "",
    );
    assert_eq!(j["constraints"].as_array().unwrap().len(), 30);
    assert_eq!(j["planted"].as_array().unwrap().len(), 8);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("btw-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inst.txt");
    let stdout = ok(
        &["gen", "complete", "--n", "5", "-o", path.to_str().unwrap()],
        "",
    );
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse_str(&written).unwrap(), gen_complete(5).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn stats_agree_and_are_exact() {
    let inst = gen_random(10, 50, 3).unwrap().to_text();
    let report = json(&["stats", "--trials", "500"], &inst);
    let sm = &report["second_moment"];
    assert_eq!(sm["closed_form"], sm["enumerated"]);
    assert!(report["monte_carlo"]["mean"]
        .as_str()
        .unwrap()
        .contains('/'));
    assert_eq!(report["profile"]["b"].as_array().unwrap().len(), 10);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let inst = gen_random(13, 50, 4).unwrap().to_text();
    for args in [
        vec!["solve", "--method", "heuristic", "--seed", "5"],
        vec!["stats", "--trials", "300", "--seed", "2"],
        vec!["decide", "--kappa", "2", "--seed", "1"],
    ] {
        assert_eq!(ok(&args, &inst), ok(&args, &inst));
    }
    let gen = ["gen", "random", "--n", "9", "--m", "20", "--seed", "11"];
    assert_eq!(ok(&gen, ""), ok(&gen, ""));
}

#[test]
fn exit_codes() {
    let bad = "p btw 3 1\nb 1 1 2\n";
    assert!(fails_with(&["solve"], bad, 2).contains("distinct"));
    fails_with(&["solve"], "p btw 3 2\nb 1 2 3\n", 2);
    fails_with(&["solve", "/nonexistent/instance.txt"], "", 2);
    fails_with(&["kernelize", "--kappa", "-1"], "p btw 3 0\n", 2);
    fails_with(&["solve", "--bogus"], "", 2);
    fails_with(&["gen", "random", "--n", "5"], "", 2);
    fails_with(
        &["gen", "planted", "--n", "5", "--m", "3", "--noise", "1.5"],
        "",
        2,
    );

    let big = gen_random(12, 30, 0).unwrap().to_text();
    assert!(fails_with(&["solve", "--method", "brute"], &big, 3).contains("exceeds"));
    fails_with(&["solve", "--method", "dp", "--dp-max", "8"], &big, 3);
}

#[test]
fn dedupe_flag() {
    let dup = "p btw 3 2\nb 2 1 3\nb 2 3 1\n";
    fails_with(&["solve"], dup, 2);
    let report = json(&["solve", "--dedupe"], dup);
    assert_eq!(report["m"], 1);
}
