use std::process::{Command, Output};

use tempfile::tempdir;

fn rm_stuck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rm-stuck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const CODEC: [&str; 8] = ["-r", "2", "-m", "3", "-s", "2", "--positions", "0 3 5"];

#[test]
fn masks_prints_count_and_writes_file() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("m23.txt");
    let out = rm_stuck(&["masks", "-s", "2", "-m", "3", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "N=8");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("maskset v1 s=2 m=3 count=8"));
    assert_eq!(text.lines().count(), 9);

    let out = rm_stuck(&["masks", "-s", "3", "-m", "3"]);
    assert_eq!(stdout(&out).trim(), "N=34");
}

#[test]
fn label_modes() {
    let out = rm_stuck(&["label", "-s", "2", "-m", "3", "--mode", "exact-s2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("positions 0 3 5"));

    let out = rm_stuck(&["label", "-s", "3", "-m", "6", "--mode", "greedy"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("valid"));

    let positions = "0 2 76 112 255 339 410 421 555 662 797 870 952";
    let out = rm_stuck(&[
        "label",
        "-s",
        "3",
        "-m",
        "10",
        "--mode",
        "validate-only",
        "--positions",
        positions,
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "valid"));

    let out = rm_stuck(&[
        "label",
        "-s",
        "3",
        "-m",
        "4",
        "--mode",
        "validate-only",
        "--positions",
        "0 1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("invalid"));
}

#[test]
fn label_file_feeds_codec() {
    let dir = tempdir().unwrap();
    let masks = dir.path().join("m.txt");
    let label = dir.path().join("l.txt");
    assert!(
        rm_stuck(&["masks", "-s", "2", "-m", "3", "-o", masks.to_str().unwrap()])
            .status
            .success()
    );
    let out = rm_stuck(&[
        "label",
        "--masks",
        masks.to_str().unwrap(),
        "--mode",
        "exact-s2",
        "-o",
        label.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = rm_stuck(&[
        "encode",
        "-r",
        "2",
        "-m",
        "3",
        "-s",
        "2",
        "--label",
        label.to_str().unwrap(),
        "--data",
        "1101",
        "--stuck",
        "2:1 5:1",
    ]);
    assert_eq!(stdout(&out).trim(), "6c");
}

#[test]
fn worked_example_round_trip() {
    let mut args = vec!["encode"];
    args.extend(CODEC);
    args.extend(["--data", "1101", "--stuck", "2:1 5:1"]);
    let out = rm_stuck(&args);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "6c");

    let mut args = vec!["decode"];
    args.extend(CODEC);
    args.extend(["--word", "0x6c"]);
    let out = rm_stuck(&args);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1101");
}

#[test]
fn exit_codes() {
    let mut args = vec!["encode"];
    args.extend(CODEC);
    args.extend(["--data", "1101", "--stuck", "1:0 2:1 5:1"]);
    let out = rm_stuck(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));

    // one flipped bit on the parity-check code
    let mut args = vec!["decode"];
    args.extend(CODEC);
    args.extend(["--word", "6d"]);
    assert_eq!(rm_stuck(&args).status.code(), Some(5));

    let out = rm_stuck(&[
        "encode",
        "-r",
        "1",
        "-m",
        "3",
        "-s",
        "2",
        "--positions",
        "0 1 2 3",
        "--data",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));

    let out = rm_stuck(&["masks", "-s", "0", "-m", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rm_stuck(&["label", "--masks", "/nonexistent/masks.txt"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn verify_reports_coverage() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let out = rm_stuck(&[
        "verify",
        "-s",
        "2",
        "-m",
        "3",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.contains("coverage") && l.contains("s=2 m=3") && l.contains("112/112")));
    let jsonl = std::fs::read_to_string(&report).unwrap();
    assert!(jsonl.lines().count() > 5);
    assert!(jsonl.lines().all(|l| l.starts_with('{')));
}

#[test]
fn table_self_checks() {
    let out = rm_stuck(&["table", "--no-labels"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("29 rows, 0 mismatched"));
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().take(4).eq(["12", "4", "4096", "9566"])));
}

#[test]
fn render_pbm() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("m36.pbm");
    let out = rm_stuck(&["render", "-s", "3", "-m", "6", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("P1"));
    assert_eq!(lines.next(), Some("64 136"));

    let path = dir.path().join("m13.pbm");
    rm_stuck(&["render", "-s", "1", "-m", "3", "-o", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with("8 2\n00000000\n11111111\n"));
}

#[test]
fn simulate_is_seeded_and_thread_independent() {
    let args = [
        "simulate", "-r", "2", "-m", "6", "-s", "3", "--trials", "500", "--weight", "7", "--seed",
        "9",
    ];
    let a = rm_stuck(&args);
    let mut with_threads = vec!["--threads", "1"];
    with_threads.extend(args);
    let b = rm_stuck(&with_threads);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("\"frame_errors\":0"));
}
