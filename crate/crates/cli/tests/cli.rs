use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn packcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_packcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn normalize_divides_out_the_gcd() {
    let out = packcolor(&["normalize", "--k", "2", "--t", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(1,2) ×2\n");
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d1_25.txt");
    let out = packcolor(&[
        "construct",
        "--k",
        "1",
        "--t",
        "25",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("valid, max color 30\n"));

    let out = packcolor(&[
        "verify",
        "--k",
        "1",
        "--t",
        "25",
        "--pattern",
        path_str(&file),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "valid, max color 30\n");

    // The same pattern is not a packing of a different graph.
    let out = packcolor(&[
        "verify",
        "--k",
        "2",
        "--t",
        "25",
        "--pattern",
        path_str(&file),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("invalid: color "));
}

#[test]
fn construct_below_threshold_is_an_error_line() {
    let out = packcolor(&["construct", "--k", "3", "--t", "25"]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).starts_with("error: not_applicable: "),
        "{}",
        stderr(&out)
    );
}

#[test]
fn bound_with_explicit_alpha() {
    let out = packcolor(&[
        "bound", "--k", "2", "--t", "7", "--q", "4", "--b", "32/41", "--alpha", "13", "--imin", "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("χ_ρ ≥ 14\n"), "{text}");
    assert!(text.contains("0.9915326"));
}

#[test]
fn bound_with_fitted_alpha_and_negative_alpha() {
    let out = packcolor(&[
        "bound", "--k", "3", "--t", "8", "--q", "7", "--b", "38/42", "--fit",
    ]);
    assert_eq!(stdout(&out).lines().next(), Some("χ_ρ ≥ 14"));
    let out = packcolor(&[
        "bound", "--k", "6", "--t", "7", "--q", "6", "--b", "44/50", "--alpha", "-1", "--imin", "6",
    ]);
    assert_eq!(stdout(&out).lines().next(), Some("χ_ρ ≥ 15"));
    let out = packcolor(&[
        "bound", "--k", "2", "--t", "7", "--q", "4", "--b", "1/1", "--fit",
    ]);
    assert_eq!(stdout(&out), "no bound: b >= 1\n");
}

#[test]
fn bound_rule_range_mismatch() {
    let out = packcolor(&[
        "bound", "--k", "3", "--t", "8", "--q", "5", "--b", "1/2", "--alpha", "17", "--imin", "8",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error: rule_range_mismatch: "));
}

#[test]
fn search_statuses_and_exit_codes() {
    let out = packcolor(&["search", "--k", "2", "--t", "3", "--p", "4", "--c", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("SAT: D(2,3)"));
    assert!(stdout(&out).contains("witness: 1 1 2 3"));

    let out = packcolor(&["search", "--k", "2", "--t", "3", "--p", "6", "--c", "3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("χ_ρ(D(2,3)) ≥ 4"));

    let out = packcolor(&[
        "search",
        "--k",
        "2",
        "--t",
        "3",
        "--p",
        "8",
        "--c",
        "4",
        "--precolor",
        "1=4",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("precoloring does not extend"));
}

#[test]
fn search_timeout_checkpoint_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    let args = [
        "search",
        "--k",
        "2",
        "--t",
        "5",
        "--p",
        "14",
        "--c",
        "6",
        "--max-nodes",
        "2000",
    ];
    let mut with_cp: Vec<&str> = args.to_vec();
    with_cp.extend(["--checkpoint", path_str(&cp)]);

    let first = packcolor(&with_cp);
    assert_eq!(code(&first), 3, "{}", stdout(&first));
    assert!(cp.exists());

    // Resume until the answer arrives; node counts keep growing.
    let mut last = first;
    let mut rounds = 1;
    for _ in 0..200 {
        if code(&last) != 3 {
            break;
        }
        last = packcolor(&with_cp);
        rounds += 1;
    }
    assert!(rounds > 2, "the instance should need several runs");
    let resumed = stdout(&last);
    let direct = stdout(&packcolor(&args[..args.len() - 2]));
    assert_eq!(resumed.lines().next(), direct.lines().next());
}

#[test]
fn usage_errors_exit_2() {
    let out = packcolor(&["search", "--k", "2", "--t", "3", "--p", "4"]);
    assert_eq!(code(&out), 2);
    let out = packcolor(&[
        "search", "--k", "2", "--t", "3", "--p", "4", "--c", "3", "--mode", "other",
    ]);
    assert_eq!(code(&out), 2);
    let out = packcolor(&["verify", "--k", "4", "--t", "6", "--pattern", "missing.txt"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn not_coprime_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    std::fs::write(&file, "period 2\n1 2\n").unwrap();
    let out = packcolor(&[
        "verify",
        "--k",
        "4",
        "--t",
        "6",
        "--pattern",
        path_str(&file),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error: not_coprime: "));
}

#[test]
fn json_output_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("runs.jsonl");
    for p in ["4", "6"] {
        packcolor(&[
            "--log",
            path_str(&log),
            "search",
            "--k",
            "2",
            "--t",
            "3",
            "--p",
            p,
            "--c",
            "3",
        ]);
    }
    let out = packcolor(&["--json", "normalize", "--k", "3", "--t", "9"]);
    let record: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["command"], "normalize");
    assert_eq!(record["outcome"]["g"], 3);

    let lines: Vec<Value> = std::fs::read_to_string(&log)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    for (rec, status) in lines.iter().zip(["SAT", "UNSAT"]) {
        assert_eq!(rec["command"], "search");
        for key in ["k", "t", "p", "c", "precoloring"] {
            assert!(rec["parameters"].get(key).is_some(), "{key}");
        }
        assert_eq!(rec["outcome"]["status"], status);
        assert!(rec["outcome"]["nodes"].as_u64().unwrap() > 0);
        assert!(rec["seconds"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn errors_are_logged_too() {
    let out = packcolor(&["--json", "construct", "--k", "3", "--t", "25"]);
    let record: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["outcome"]["error"], "not_applicable");
}

#[test]
fn density_command() {
    let out = packcolor(&["density", "--k", "2", "--t", "7", "--q", "4", "--w", "41"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("b = 32/41"));
    let out = packcolor(&[
        "density",
        "--k",
        "2",
        "--t",
        "7",
        "--q",
        "4",
        "--w",
        "41",
        "--max-nodes",
        "10",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("TIMEOUT"));
}

#[test]
fn dot_export() {
    let out = packcolor(&["export-dot", "--k", "2", "--t", "5", "--window", "7"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph \"D(2,5)\" {"));
    assert!(dot.contains("1 -- 3;") && dot.contains("2 -- 7;"));
    assert!(!dot.contains("6 -- 8;"));
    assert_eq!(dot.matches("--").count(), 5 + 2);
}

#[test]
fn repro_layout_tables_small() {
    let out = packcolor(&["repro", "table4-6", "--max-r", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains(
        "MATCH    table 4 r=1 k1=1: D(1,25) plans layout 1 with r = 1; valid, max color 30"
    ));
    assert!(text.contains("EMPTY    table 4 r=3 k1=3"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn repro_density_table_flags_the_alpha_row() {
    let out = packcolor(&[
        "repro",
        "table3",
        "--only",
        "2,7",
        "--only",
        "3,10",
        "--time-limit",
        "0.5",
    ]);
    let text = stdout(&out);
    assert!(
        text.contains("D(3,10) q=8 w=50") && text.contains("alpha 32 (listed 22"),
        "{text}"
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn repro_search_table_pending_rows() {
    let out = packcolor(&["repro", "table2", "--only", "4,5", "--time-limit", "0.2"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("PENDING  D(4,5) p=37 c=12, vertex 1 = 12: TIMEOUT"));
}
