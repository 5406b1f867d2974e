//! End-to-end tests of the `reifup` binary: subcommand wiring, exit codes,
//! stream handling, and the reify-then-propagate smoke property.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

const SIGMA1: &str = "p cnf 3 3\n1 2 0\n-2 3 0\n-2 -3 0\n";
const SIGMA2: &str = "p cnf 3 4\n-1 0\n1 2 0\n-2 3 0\n-2 -3 0\n";

fn reifup(args: &[&str], stdin_text: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reifup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin_text.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs to completion")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn propagate_trace_conflicts_with_exit_10() {
    let output = reifup(&["propagate", "-", "--mode", "rounds", "--trace"], SIGMA2);
    assert_eq!(output.status.code(), Some(10));
    assert_eq!(
        stdout_of(&output),
        "round 1: -1\nround 2: 2\nround 3: -3 3\nconflict: var 3 round 3\n"
    );
}

#[test]
fn reify_writes_the_map_header_and_body() {
    let output = reifup(&["reify", "-"], SIGMA2);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("p cnf 28 46\n"));
    assert_eq!(text.matches("c rv ").count(), 24);
    assert!(text.contains("c rs 28\n"));
    // Deterministic bytes across runs.
    let again = reifup(&["reify", "-"], SIGMA2);
    assert_eq!(output.stdout, again.stdout);
}

#[test]
fn reify_then_propagate_reproduces_the_conflict_verdict() {
    // Propagation on σ₂ conflicts; on its reified counterpart it reaches a
    // fixpoint that contains the conflict-output variable 28.
    let direct = reifup(&["propagate", "-"], SIGMA2);
    assert_eq!(direct.status.code(), Some(10));

    let psi = stdout_of(&reifup(&["reify", "-"], SIGMA2));
    let on_psi = reifup(&["propagate", "-"], &psi);
    assert_eq!(on_psi.status.code(), Some(0), "ψ itself never conflicts");
    let fixpoint_line = stdout_of(&on_psi);
    let fixed: Vec<&str> = fixpoint_line
        .trim_start_matches("fixpoint:")
        .split_whitespace()
        .collect();
    assert!(fixed.contains(&"28"), "s missing from {fixpoint_line:?}");
}

#[test]
fn assumptions_travel_through_injection_clauses() {
    // σ₁ with ¬a assumed conflicts; ψ(σ₁) under the same assumption fixes
    // s = 28 instead.
    let direct = reifup(&["propagate", "-", "--assume", "-1"], SIGMA1);
    assert_eq!(direct.status.code(), Some(10));

    let psi = stdout_of(&reifup(&["reify", "-"], SIGMA1));
    let on_psi = reifup(&["propagate", "-", "--assume", "-1"], &psi);
    assert_eq!(on_psi.status.code(), Some(0));
    assert!(stdout_of(&on_psi).split_whitespace().any(|t| t == "28"));

    // And an assumption propagation on σ₁ does not conflict under a.
    let benign = reifup(&["propagate", "-", "--assume", "1"], SIGMA1);
    assert_eq!(benign.status.code(), Some(0));
}

#[test]
fn flp_all_exits_clean_and_reports_both_routes() {
    let output = reifup(&["flp", "-", "--all", "--via", "both"], SIGMA1);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("-1 native=1 reified=1"));
    assert!(text.contains("2 native=1 reified=1"));
}

#[test]
fn gen_check_and_stats_round_out_the_pipeline() {
    let gen = reifup(
        &[
            "gen",
            "--seed",
            "7",
            "--vars",
            "6",
            "--clauses",
            "12",
            "--width",
            "3",
            "--allow-units",
        ],
        "",
    );
    assert_eq!(gen.status.code(), Some(0));
    let instance = stdout_of(&gen);

    let stats = reifup(&["stats", "-"], &instance);
    assert_eq!(stats.status.code(), Some(0), "stats self-check must pass");
    assert!(stdout_of(&stats).contains("variables: actual="));

    let check = reifup(
        &[
            "check",
            "--trials",
            "25",
            "--seed",
            "5",
            "--max-vars",
            "6",
            "--max-clauses",
            "12",
        ],
        "",
    );
    assert_eq!(check.status.code(), Some(0));
    assert!(stdout_of(&check).ends_with("result: pass\n"));

    let exhaustive = reifup(&["check", "--exhaustive", "-"], SIGMA1);
    assert_eq!(exhaustive.status.code(), Some(0));
    assert!(stdout_of(&exhaustive).contains("trials: 27\n"));

    let too_large = reifup(&["check", "--exhaustive", "-"], "p cnf 9 0\n");
    assert_eq!(
        too_large.status.code(),
        Some(2),
        "9 vars exceed the 3^n limit"
    );
}

#[test]
fn output_files_are_written() {
    let path = std::env::temp_dir().join(format!("reifup-test-{}.cnf", std::process::id()));
    let path_str = path.to_str().unwrap();
    let output = reifup(&["reify", "-", "-o", path_str], SIGMA2);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout_of(&output).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("p cnf 28 46\n"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn usage_and_parse_failures_use_distinct_exit_codes() {
    let usage = reifup(&["propagate", "-", "--mode", "nonsense"], "");
    assert_eq!(usage.status.code(), Some(1));

    let parse = reifup(&["propagate", "-"], "p cnf broken\n");
    assert_eq!(parse.status.code(), Some(2));

    let missing = reifup(&["stats", "/no/such/file.cnf"], "");
    assert_eq!(missing.status.code(), Some(2));
}
