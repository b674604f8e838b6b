//! End-to-end tests of the command-line interface: spawn the real
//! binary and assert on its streams and exit codes.

use std::io::Write;
use std::process::{Command, Output};

fn wordmill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordmill"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

#[test]
fn run_prints_one_word_per_line() {
    let out = wordmill(&["run", "builtin:T0", "--word-size", "5"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 32);
    assert_eq!(lines[0], "00000");
    let mut sorted = lines.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 32, "words should be distinct");
}

#[test]
fn run_defaults_to_word_size_six() {
    let out = wordmill(&["run", "builtin:T1"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 64);
    assert_eq!(lines[0], "000000");
}

#[test]
fn reverse_run_is_the_forward_run_reversed() {
    let forward = wordmill(&["run", "builtin:T1", "--word-size", "5"]);
    let backward = wordmill(&["run", "builtin:T1", "--word-size", "5", "--reverse"]);
    assert_eq!(exit_code(&backward), 0);
    let mut expect = stdout_lines(&forward);
    expect.reverse();
    assert_eq!(stdout_lines(&backward), expect);
}

#[test]
fn exhausted_step_budget_exits_3() {
    let out = wordmill(&["run", "builtin:D0", "--word-size", "4", "--max-steps", "100"]);
    assert_eq!(exit_code(&out), 3);
    assert!(!stdout_lines(&out).is_empty(), "some words appear before the budget runs out");
}

#[test]
fn verbose_traces_every_configuration_to_stderr() {
    let out = wordmill(&["run", "builtin:T1", "--word-size", "3", "--verbose"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_lines(&out).len(), 8, "verbose must not change the word stream");
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    let first = stderr.lines().next().expect("trace lines");
    assert_eq!(first, "0\tqi\t000\thead=1");
    assert!(stderr.lines().count() >= 8, "one line per step");
}

#[test]
fn check_all_passes_at_small_sizes() {
    let out = wordmill(&["check", "ALL", "--sizes", "3..6"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 24, "six machines, four sizes");
    assert!(lines.iter().all(|l| l.ends_with("pass")));
    assert!(lines.iter().any(|l| l.contains("prefix")), "D0 is checked as prefix");
}

#[test]
fn tsv_report_has_five_columns() {
    let out =
        wordmill(&["check", "builtin:T1", "--sizes", "4..4", "--hamming", "1", "--report", "tsv"]);
    assert_eq!(exit_code(&out), 0);
    for line in stdout_lines(&out) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 5, "{line:?}");
        assert_eq!(cols[0], "T1");
        assert_eq!(cols[1], "4");
        assert_eq!(cols[4], "pass");
    }
}

#[test]
fn failed_property_bounds_exit_1() {
    // T0 changes up to three bits between outputs, so a Hamming bound
    // of 1 must fail.
    let out = wordmill(&["check", "builtin:T0", "--sizes", "4..4", "--hamming", "1"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout_lines(&out).iter().any(|l| l.contains("hamming") && l.ends_with("fail")));
}

#[test]
fn code_subcommand_prints_reference_codes() {
    let out = wordmill(&["code", "rbgc", "--word-size", "3"]);
    assert_eq!(
        stdout_lines(&out),
        vec!["000", "001", "011", "010", "110", "111", "101", "100"]
    );
    let out = wordmill(&["code", "B", "--word-size", "3"]);
    assert_eq!(
        stdout_lines(&out),
        vec!["000", "010", "011", "001", "101", "111", "110", "100"]
    );
    let out = wordmill(&["code", "universal", "--word-size", "2"]);
    assert_eq!(stdout_lines(&out), vec!["00", "01", "11", "10"]);
}

#[test]
fn rank_and_unrank_match_the_printed_examples() {
    let out = wordmill(&["rank", "t1", "01001"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_lines(&out), vec!["6"]);
    let out = wordmill(&["unrank", "t1", "22", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_lines(&out), vec!["10010"]);
}

#[test]
fn invalid_rank_inputs_exit_2() {
    assert_eq!(exit_code(&wordmill(&["rank", "t1", "01x01"])), 2);
    assert_eq!(exit_code(&wordmill(&["rank", "t2", "01001"])), 2);
    assert_eq!(exit_code(&wordmill(&["unrank", "t1", "99", "3"])), 2);
}

#[test]
fn unknown_builtin_exits_2() {
    let out = wordmill(&["run", "builtin:nosuch"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("nosuch"), "{stderr}");
}

#[test]
fn toy_machines_resolve_under_the_builtin_prefix() {
    let out = wordmill(&["run", "builtin:toy-queue", "--word-size", "4", "--max-steps", "64"]);
    assert_eq!(exit_code(&out), 3, "the toy queue never halts");
    assert!(stdout_lines(&out).len() > 4);
}

#[test]
fn table_files_load_like_builtins() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../builtin-machines/machines/T1.mt");
    let from_file = wordmill(&["run", path, "--word-size", "4"]);
    let from_builtin = wordmill(&["run", "builtin:T1", "--word-size", "4"]);
    assert_eq!(exit_code(&from_file), 0);
    assert_eq!(stdout_lines(&from_file), stdout_lines(&from_builtin));
}

#[test]
fn lint_reports_table_defects() {
    assert_eq!(exit_code(&wordmill(&["lint", "builtin:T1"])), 0);

    // A wildcard rule ahead of a specific one shadows it.
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        "kind: tape\nradius: 1\nmin-length: 1\ninitial: go\noutputs: ALL\n\n\
         rule go | [.] -> go | = | R\n\
         rule go | [1] -> go | = | R\n"
    )
    .unwrap();
    let out = wordmill(&["lint", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout_lines(&out).join("\n");
    assert!(text.contains("shadowing"), "{text}");
}

#[test]
fn broken_tables_exit_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "kind: tape\nradius: 1\n").unwrap();
    let out = wordmill(&["lint", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}
