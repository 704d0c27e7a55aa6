//! Binary-level contract: argument parsing, report formats on stdout,
//! diagnostics on stderr, and the 0/1/2 exit-code convention.

use std::process::{Command, Output};

fn supercong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(args)
        .env_remove("SUPERCONG_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn scan_json_single_prime() {
    let out = supercong(&["scan", "--min", "3", "--max", "3", "--check", "rv", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"p\":3,\"check\":\"rv\",\"params\":{},\"lhs\":\"8\",\"rhs\":\"8\",\"ok\":true}\n"
    );
}

#[test]
fn scan_csv_layout() {
    let out = supercong(&["scan", "--min", "3", "--max", "5", "--check", "sun", "--format", "csv"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines[0], "p,check,params,lhs,rhs,ok");
    assert_eq!(lines[1], "3,sun,,0,0,true");
    assert_eq!(lines[2], "5,sun,x=1&y=2,12,12,true");
    assert_eq!(lines.len(), 3);
}

#[test]
fn scan_text_table_default_format() {
    let out = supercong(&["scan", "--max", "7", "--check", "rv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // header + p = 3, 5, 7
    assert!(lines[0].starts_with("p"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with("ok")));
}

#[test]
fn empty_prime_range_is_empty_report() {
    let out = supercong(&["scan", "--min", "24", "--max", "28", "--check", "rv", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn inverted_range_is_usage_error() {
    let out = supercong(&["scan", "--min", "9", "--max", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("exceeds"));
}

#[test]
fn unknown_check_is_usage_error() {
    let out = supercong(&["scan", "--max", "20", "--check", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"));
}

#[test]
fn unknown_format_is_usage_error() {
    let out = supercong(&["scan", "--max", "20", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown format"));
}

#[test]
fn no_arguments_prints_help() {
    let out = supercong(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_env_variable_matches_explicit_flag() {
    let args = ["scan", "--min", "3", "--max", "199", "--seed", "5", "--format", "json"];
    let serial = supercong(&args.iter().chain(&["--jobs", "1"]).copied().collect::<Vec<_>>());
    assert!(serial.status.success());
    let via_env = Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(args)
        .env("SUPERCONG_JOBS", "8")
        .output()
        .expect("binary runs");
    assert!(via_env.status.success());
    assert_eq!(stdout(&serial), stdout(&via_env));
}

#[test]
fn fib_special_case_is_reported_and_not_fatal() {
    let out = supercong(&["scan", "--min", "5", "--max", "5", "--check", "fib", "--format", "json"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"special_case\":\"p=5\""));
}

#[test]
fn identity_csv_all_pass() {
    let out = supercong(&["identity", "--max", "10", "--check", "trinomial", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn oracle_prints_exact_sums() {
    let out = supercong(&["oracle", "--kind", "rv", "--p", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "356\n");

    let out = supercong(&[
        "oracle", "--kind", "theorem_lhs", "--p", "5", "--alpha", "1/2", "--beta=-1/2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4752\n");

    let out = supercong(&["oracle", "--kind", "gauss", "--p", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-20\n");
}

#[test]
fn oracle_rejects_bad_input() {
    // composite p
    let out = supercong(&["oracle", "--kind", "rv", "--p", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // missing α/β
    let out = supercong(&["oracle", "--kind", "theorem_lhs", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // wrong residue class for the Gauss sum
    let out = supercong(&["oracle", "--kind", "gauss", "--p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed rational
    let out = supercong(&["oracle", "--kind", "remark_lhs", "--p", "7", "--t", "1/0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partition_prints_decomposition() {
    let out = supercong(&["partition", "--p", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p=13 x=-3 y=2\n");

    let out = supercong(&["partition", "--p", "7"]);
    assert_eq!(out.status.code(), Some(2));

    let out = supercong(&["partition", "--p", "15"]);
    assert_eq!(out.status.code(), Some(2));
}
