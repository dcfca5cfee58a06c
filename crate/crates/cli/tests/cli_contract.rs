//! End-to-end tests of the factorum binary: exit codes, diagnostics,
//! output formats, and seed handling.

use factorum_cli::format::{parse_instance, serialize_instance};
use factorum_cli::gen;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_factorum"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("factorum-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write fixture");
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn showcase_file_solves_to_six_with_all_edges() {
    let dir = scratch("showcase");
    let path = write(&dir, "showcase.wgfp", &serialize_instance(&gen::showcase_instance()));
    let out = bin().arg("solve").arg(&path).output().expect("run solve");
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    let edges = lines.next().expect("edges line");
    assert_eq!(edges.split_whitespace().count(), 15, "14 edge ids: {edges}");
    assert_eq!(lines.next(), Some("weight 6"));
}

#[test]
fn solve_report_passes_its_own_check() {
    let dir = scratch("recheck");
    let path = write(&dir, "inst.wgfp", &serialize_instance(&gen::showcase_instance()));
    let out = bin()
        .arg("solve")
        .arg(&path)
        .args(["--stats", "--trace"])
        .output()
        .expect("run solve");
    assert_eq!(code_of(&out), 0);
    let report = write(&dir, "factor.txt", &stdout_of(&out));
    let check = bin().arg("check").arg(&path).arg(&report).output().expect("run check");
    assert_eq!(code_of(&check), 0, "stderr: {}", stderr_of(&check));
    assert!(stdout_of(&check).starts_with("ok:"));
}

#[test]
fn check_names_the_vertex_a_bad_factor_misses() {
    let dir = scratch("badfactor");
    let inst = write(
        &dir,
        "pair.wgfp",
        "vertices 2\nv 0 set 1\nv 1 set 1\ne 0 1 4\n",
    );
    let empty = write(&dir, "empty.txt", "edges\nweight 0\n");
    let out = bin().arg("check").arg(&inst).arg(&empty).output().expect("run check");
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("vertex 0"), "stderr: {}", stderr_of(&out));

    let wrong_weight = write(&dir, "wrong.txt", "edges 0\nweight 5\n");
    let out = bin().arg("check").arg(&inst).arg(&wrong_weight).output().expect("run check");
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("stated weight 5"), "stderr: {}", stderr_of(&out));
}

#[test]
fn infeasible_instance_reports_no_and_exits_two() {
    let dir = scratch("infeasible");
    // Both ends demand degree 1, forcing two edges onto a middle vertex
    // that must stay isolated.
    let path = write(
        &dir,
        "no.wgfp",
        "vertices 3\nv 0 set 1\nv 1 set 0\nv 2 set 1\ne 0 1 1\ne 1 2 1\n",
    );
    let out = bin().arg("solve").arg(&path).output().expect("run solve");
    assert_eq!(code_of(&out), 2);
    assert_eq!(stdout_of(&out), "No\n");
}

#[test]
fn malformed_files_fail_with_line_numbers() {
    let dir = scratch("malformed");
    let path = write(
        &dir,
        "bad.wgfp",
        "vertices 2\nv 0 interval 0\nv 1 set 0,1\ne 0 1 1\n",
    );
    let out = bin().arg("solve").arg(&path).output().expect("run solve");
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("line 2"), "stderr: {}", stderr_of(&out));

    let missing = dir.join("not-there.wgfp");
    let out = bin().arg("solve").arg(&missing).output().expect("run solve");
    assert_eq!(code_of(&out), 1);

    let usage = bin().arg("solve").output().expect("run solve with no file");
    assert_eq!(code_of(&usage), 1);
}

#[test]
fn terminal_backup_forced_edge_costs_four() {
    let dir = scratch("backup-pair");
    let path = write(&dir, "pair.net", "vertices 2\nt 0\nt 1\ne 0 1 4\n");

    let conv = bin().arg("terminal-backup").arg(&path).output().expect("run convert");
    assert_eq!(code_of(&conv), 0);
    let text = stdout_of(&conv);
    assert!(text.contains("v 0 set 1"), "conversion: {text}");
    assert!(text.contains("e 0 1 -4"), "conversion: {text}");

    let solved = bin()
        .arg("terminal-backup")
        .arg(&path)
        .arg("--solve")
        .output()
        .expect("run solve");
    assert_eq!(code_of(&solved), 0);
    let text = stdout_of(&solved);
    assert!(text.contains("edges 0"), "report: {text}");
    assert!(text.contains("cost 4"), "report: {text}");
}

#[test]
fn terminal_backup_star_uses_every_spoke() {
    let dir = scratch("backup-star");
    let path = write(
        &dir,
        "star.net",
        "vertices 4\nt 1\nt 2\nt 3\ne 0 1 2\ne 0 2 3\ne 0 3 5\n",
    );
    let out = bin()
        .arg("terminal-backup")
        .arg(&path)
        .arg("--solve")
        .output()
        .expect("run solve");
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("edges 0 1 2"), "report: {text}");
    assert!(text.contains("cost 10"), "report: {text}");
}

#[test]
fn terminal_backup_rejects_stranded_and_overloaded_terminals() {
    let dir = scratch("backup-no");
    let stranded = write(&dir, "stranded.net", "vertices 2\nt 0\nt 1\ne 0 1 1\nt 2\n");
    let out = bin().arg("terminal-backup").arg(&stranded).output().expect("run convert");
    assert_eq!(code_of(&out), 1, "t-line for undeclared vertex is a parse error");

    let isolated = write(&dir, "isolated.net", "vertices 3\nt 0\nt 2\ne 0 1 1\n");
    let out = bin().arg("terminal-backup").arg(&isolated).output().expect("run convert");
    assert_eq!(code_of(&out), 2);
    assert_eq!(stdout_of(&out), "No\n");
    assert!(stderr_of(&out).contains("terminal 2"), "stderr: {}", stderr_of(&out));

    // Middle terminal is forced to degree 2 by its two terminal neighbours.
    let overloaded = write(
        &dir,
        "overloaded.net",
        "vertices 3\nt 0\nt 1\nt 2\ne 0 1 1\ne 1 2 1\n",
    );
    let out = bin()
        .arg("terminal-backup")
        .arg(&overloaded)
        .arg("--solve")
        .output()
        .expect("run solve");
    assert_eq!(code_of(&out), 2);
    assert_eq!(stdout_of(&out), "No\n");

    let negative = write(&dir, "negative.net", "vertices 2\nt 0\nt 1\ne 0 1 -2\n");
    let out = bin().arg("terminal-backup").arg(&negative).output().expect("run convert");
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("cost"), "stderr: {}", stderr_of(&out));
}

#[test]
fn gen_is_deterministic_and_honours_the_env_seed() {
    let first = bin()
        .args(["gen", "--n", "6", "--m", "9", "--seed", "1"])
        .output()
        .expect("run gen");
    let second = bin()
        .args(["gen", "--n", "6", "--m", "9", "--seed", "1"])
        .output()
        .expect("run gen");
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout, "same seed, same bytes");

    let via_env = bin()
        .args(["gen", "--n", "6", "--m", "9"])
        .env("FACTORUM_SEED", "1")
        .output()
        .expect("run gen");
    assert_eq!(first.stdout, via_env.stdout, "FACTORUM_SEED substitutes for --seed");

    let other_seed = bin()
        .args(["gen", "--n", "6", "--m", "9", "--seed", "2"])
        .output()
        .expect("run gen");
    assert_ne!(first.stdout, other_seed.stdout, "different seed, different instance");

    let text = stdout_of(&first);
    let parsed = parse_instance(&text).expect("gen output parses");
    assert_eq!(serialize_instance(&parsed), text, "gen output is canonical");

    let bad = bin()
        .args(["gen", "--n", "6", "--m", "9", "--classes", "cubic"])
        .output()
        .expect("run gen");
    assert_eq!(code_of(&bad), 1);
}

#[test]
fn json_output_carries_the_solution_and_stats() {
    let dir = scratch("json");
    let path = write(&dir, "inst.wgfp", &serialize_instance(&gen::showcase_instance()));
    let out = bin()
        .arg("solve")
        .arg(&path)
        .args(["--json", "--stats"])
        .output()
        .expect("run solve");
    assert_eq!(code_of(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json");
    assert_eq!(value["outcome"], "optimal");
    assert_eq!(value["weight"], "6");
    assert_eq!(value["edges"].as_array().map(Vec::len), Some(14));
    assert!(value["stats"]["opt_calls"].as_u64().is_some());

    let infeasible = write(
        &dir,
        "no.wgfp",
        "vertices 3\nv 0 set 1\nv 1 set 0\nv 2 set 1\ne 0 1 1\ne 1 2 1\n",
    );
    let out = bin()
        .arg("solve")
        .arg(&infeasible)
        .arg("--json")
        .output()
        .expect("run solve");
    assert_eq!(code_of(&out), 2);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json");
    assert_eq!(value["outcome"], "no-factor");
}

#[test]
fn dot_dump_prints_the_instance_without_solving() {
    let dir = scratch("dot");
    let path = write(&dir, "inst.wgfp", &serialize_instance(&gen::showcase_instance()));
    let out = bin().arg("solve").arg(&path).arg("--dot").output().expect("run solve");
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("graph instance {"), "dot: {text}");
    assert!(text.contains("--"), "dot edges: {text}");
    assert!(!text.contains("weight 6"), "no solve report in dot mode");
}

#[test]
fn verify_suites_pass_and_report_case_counts() {
    let out = bin()
        .args(["verify", "--suite", "gadgets"])
        .output()
        .expect("run verify");
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("all passed"), "report: {}", stdout_of(&out));

    let out = bin()
        .args(["verify", "--suite", "solver", "--cases", "40", "--seed", "11"])
        .output()
        .expect("run verify");
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));

    let out = bin()
        .args(["verify", "--suite", "structural", "--cases", "25", "--seed", "3"])
        .output()
        .expect("run verify");
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
}

#[test]
fn debug_matching_solves_and_detects_infeasibility() {
    let dir = scratch("debug-matching");
    let square = write(
        &dir,
        "square.edges",
        "vertices 4\ne 0 1 3\ne 1 2 1\ne 2 3 3\ne 3 0 1\n",
    );
    let out = bin().args(["debug", "matching"]).arg(&square).output().expect("run matching");
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("edges 0 2"), "report: {text}");
    assert!(text.contains("weight 6"), "report: {text}");

    let odd = write(&dir, "odd.edges", "vertices 3\ne 0 1 1\ne 1 2 1\n");
    let out = bin().args(["debug", "matching"]).arg(&odd).output().expect("run matching");
    assert_eq!(code_of(&out), 2);
    assert_eq!(stdout_of(&out), "Infeasible\n");
}

#[test]
fn debug_gadget_reports_the_realized_set() {
    let out = bin()
        .args(["debug", "gadget", "--kind", "interval", "--g", "1", "--f", "2", "--d", "4"])
        .output()
        .expect("run gadget");
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("realizes: interval 1 2"), "report: {text}");

    let out = bin()
        .args(["debug", "gadget", "--kind", "parity", "--g", "1", "--f", "3", "--d", "5"])
        .output()
        .expect("run gadget");
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("realizes: parity 1 3"));
}

#[test]
fn debug_reduce_lists_the_translation_tables() {
    let dir = scratch("debug-reduce");
    let path = write(
        &dir,
        "small.wgfp",
        "vertices 3\nv 0 set 1\nv 1 set 0,2\nv 2 set 1\ne 0 1 1\ne 1 2 1\n",
    );
    let out = bin().args(["debug", "reduce"]).arg(&path).output().expect("run reduce");
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("reduced:"), "report: {text}");
    assert!(text.contains("edge 0 (0-1)"), "report: {text}");
    assert!(text.contains("vertex 2: gadget"), "report: {text}");
}

#[test]
fn brute_oracle_flag_matches_the_default_backend()  {
    let dir = scratch("oracle-flag");
    let gen_out = bin()
        .args(["gen", "--n", "6", "--m", "8", "--seed", "5"])
        .output()
        .expect("run gen");
    let path = write(&dir, "inst.wgfp", &stdout_of(&gen_out));
    let matching = bin().arg("solve").arg(&path).output().expect("run solve");
    let brute = bin()
        .arg("solve")
        .arg(&path)
        .args(["--oracle", "brute"])
        .output()
        .expect("run solve");
    assert_eq!(code_of(&matching), code_of(&brute));
    if code_of(&matching) == 0 {
        let weight_line = |o: &Output| {
            stdout_of(o)
                .lines()
                .find(|l| l.starts_with("weight "))
                .expect("weight line")
                .to_string()
        };
        assert_eq!(weight_line(&matching), weight_line(&brute));
    }
}
