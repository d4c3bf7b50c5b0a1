//! End-to-end tests of the `skybench` binary: the generate / run / verify /
//! trace surface, file formats, exit codes, and cross-run determinism.

mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::sample_csv_path;

fn skybench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skybench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstdout: {}\nstderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn path_str(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_is_deterministic_and_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for out in [&first, &second] {
        let output = skybench(&[
            "generate",
            "--dist",
            "anticorrelated",
            "--n",
            "300",
            "--d",
            "4",
            "--seed",
            "9",
            "--duplicate-factor",
            "0.25",
            "--out",
            path_str(out),
        ]);
        assert_success(&output);
    }
    let a = fs::read(&first).unwrap();
    let b = fs::read(&second).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "same spec must produce byte-identical datasets");
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 300);

    let verify = skybench(&["verify", "--input", path_str(&first)]);
    assert_success(&verify);
    assert!(String::from_utf8_lossy(&verify.stdout).contains("verify: pass"));
}

#[test]
fn run_reports_the_sample_results() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.csv");
    let members = dir.path().join("members.txt");
    let sample = sample_csv_path();
    let output = skybench(&[
        "run",
        "--input",
        path_str(&sample),
        "--out",
        path_str(&report),
        "--members-out",
        path_str(&members),
    ]);
    assert_success(&output);

    let members_text = fs::read_to_string(&members).unwrap();
    assert_eq!(members_text, "0\n1\n3\n4\n5\n6\n");

    let report_text = fs::read_to_string(&report).unwrap();
    let mut lines = report_text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "algorithm,strategy,n,d,distribution,seed,skyline_size,dominance_comparisons,\
search_time_ms,total_time_ms,stop_line_updates,early_stop"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5, "sdi x2 + bnl + sfs + salsa");
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[2], "10");
        assert_eq!(fields[3], "6");
        assert_eq!(fields[4], "file");
        assert_eq!(fields[6], "6", "skyline size column in {row}");
    }
}

#[test]
fn run_report_is_deterministic_modulo_time_columns() {
    let dir = tempfile::tempdir().unwrap();
    let args_for = |name: &str| {
        vec![
            "run".to_string(),
            "--dist".into(),
            "independent".into(),
            "--n".into(),
            "600".into(),
            "--d".into(),
            "5".into(),
            "--seed".into(),
            "17".into(),
            "--out".into(),
            dir.path().join(name).to_str().unwrap().to_string(),
        ]
    };
    for name in ["r1.csv", "r2.csv"] {
        let args = args_for(name);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_success(&skybench(&refs));
    }
    let strip = |text: String| -> Vec<String> {
        text.lines()
            .map(|line| {
                line.split(',')
                    .enumerate()
                    .filter(|(i, _)| *i != 8 && *i != 9)
                    .map(|(_, f)| f.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    let r1 = strip(fs::read_to_string(dir.path().join("r1.csv")).unwrap());
    let r2 = strip(fs::read_to_string(dir.path().join("r2.csv")).unwrap());
    assert_eq!(r1, r2);
}

#[test]
fn order_flag_flips_directions() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("two.csv");
    fs::write(&data, "1,9\n2,8\n3,7\n").unwrap();

    // Both dimensions min: every tuple is incomparable with the rest along
    // the (ascending, descending) columns.
    let members = dir.path().join("members_min.txt");
    assert_success(&skybench(&[
        "run",
        "--input",
        path_str(&data),
        "--members-out",
        path_str(&members),
    ]));
    assert_eq!(fs::read_to_string(&members).unwrap(), "0\n1\n2\n");

    // min,max turns the last row into the single dominator.
    let members = dir.path().join("members_minmax.txt");
    assert_success(&skybench(&[
        "run",
        "--input",
        path_str(&data),
        "--order",
        "min,max",
        "--members-out",
        path_str(&members),
    ]));
    assert_eq!(fs::read_to_string(&members).unwrap(), "0\n");
}

#[test]
fn rank_maps_resolve_categories() {
    let dir = tempfile::tempdir().unwrap();
    let ranks = dir.path().join("colors.csv");
    fs::write(&ranks, "blue,0\ngreen,1\nyellow,2\nred,3\n").unwrap();
    let data = dir.path().join("pref.csv");
    fs::write(&data, "0.5,red\n0.5,blue\n0.9,blue\n").unwrap();

    let members = dir.path().join("members.txt");
    let order = format!("min,rankmap:{}", ranks.display());
    assert_success(&skybench(&[
        "run",
        "--input",
        path_str(&data),
        "--order",
        &order,
        "--members-out",
        path_str(&members),
    ]));
    // Tuple 1 (0.5, blue) dominates both others.
    assert_eq!(fs::read_to_string(&members).unwrap(), "1\n");

    let bad = skybench(&[
        "run",
        "--input",
        path_str(&data),
        "--order",
        "min,rankmap:/nonexistent/ranks.csv",
    ]);
    assert!(!bad.status.success());
}

#[test]
fn trace_stream_has_the_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.log");
    let sample = sample_csv_path();
    assert_success(&skybench(&[
        "trace",
        "--input",
        path_str(&sample),
        "--strategy",
        "bfs",
        "--out",
        path_str(&trace),
    ]));
    let text = fs::read_to_string(&trace).unwrap();
    let known = [
        "block-traversed",
        "tuple-confirmed",
        "tuple-rejected",
        "stop-line-updated",
        "stopped",
    ];
    let mut seen_stopped = false;
    for line in text.lines() {
        let event = line.split(' ').next().unwrap();
        assert!(known.contains(&event), "unknown event in {line:?}");
        assert!(line.contains(" dim="), "{line:?}");
        assert!(line.contains(" block="), "{line:?}");
        assert!(line.contains(" tuple="), "{line:?}");
        seen_stopped |= event == "stopped";
    }
    // The sample database terminates through the stop line under bfs.
    assert!(seen_stopped);
    assert_eq!(
        text.lines().last().unwrap(),
        "stopped dim=1 block=5 tuple=6"
    );
}

#[test]
fn failures_exit_nonzero_with_context() {
    // Unparseable rows name the offending line.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "1,2,3\n4,5\n").unwrap();
    let output = skybench(&["run", "--input", path_str(&bad)]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains(":2:"), "missing line number in {stderr}");

    // Missing input selection.
    let output = skybench(&["run"]);
    assert!(!output.status.success());

    // Oracle bound refusal propagates.
    let output = skybench(&[
        "verify",
        "--dist",
        "independent",
        "--n",
        "100",
        "--d",
        "2",
        "--seed",
        "1",
        "--oracle-bound",
        "50",
    ]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("safety bound"));
}
