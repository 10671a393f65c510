mod common;

use std::process::{Command, Output};

use common::{bit_string, naive_closed_run};

fn lockers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lockers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classic_hundred_lockers() {
    let o = lockers(&["simulate", "-n", "100", "--moves", "1..100"]);
    assert!(o.status.success());
    let all: Vec<usize> = (1..=100).collect();
    assert_eq!(
        stdout(&o),
        format!("{}\n", bit_string(&naive_closed_run(100, &all)))
    );
    let o = lockers(&["--as-indices", "simulate", "-n", "100", "--moves", "1..100"]);
    assert_eq!(stdout(&o), "1 4 9 16 25 36 49 64 81 100\n");
}

#[test]
fn forward_matches_simulate_output() {
    for students in ["2 3", "1", "4 6 9 10", "1 2 3 4 5 6 7 8 9 10 11 12", ""] {
        let f = lockers(&["forward", "-n", "12", "--students", students]);
        let s = lockers(&["simulate", "-n", "12", "--moves", students]);
        assert!(f.status.success() && s.status.success());
        assert_eq!(stdout(&f), stdout(&s), "students={students:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        lockers(&["invert", "-n", "10", "--state", "1000000000"])
            .status
            .code(),
        Some(0)
    );
    let bad = lockers(&["invert", "-n", "4", "--state", "012"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stderr)
        .unwrap()
        .contains("position 3"));
    assert_eq!(lockers(&["nope"]).status.code(), Some(1));
    assert_eq!(
        lockers(&["simulate", "-n", "5", "--moves", "1 -2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        lockers(&["verify", "--n", "30", "--trials", "10"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn moves_file() {
    let dir = std::env::temp_dir().join(format!("lockers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("moves.txt");
    std::fs::write(&path, "2\n3\n2, 3\n5\n").unwrap();
    let o = lockers(&["reduce", "-n", "10", "--moves-file", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "5\n");
    let o = lockers(&[
        "simulate",
        "-n",
        "10",
        "--moves-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o), "0000100001\n");
    std::fs::remove_dir_all(&dir).unwrap();
    let missing = lockers(&["reduce", "-n", "10", "--moves-file", "/nonexistent/x"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn verify_report_lines() {
    let o = lockers(&[
        "verify",
        "--n",
        "12",
        "--trials",
        "5",
        "--seed",
        "3",
        "--theorem8",
        "2",
    ]);
    let text = stdout(&o);
    let summary: Vec<&str> = text.lines().filter(|l| l.starts_with("claim=")).collect();
    assert_eq!(summary.len(), 9, "{text}");
    assert!(summary.iter().all(|l| !l.contains("counterexample")));
    assert!(text.contains("claim=basis_unit attempted=78 passed=78"));
}
