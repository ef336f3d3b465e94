use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn lapint(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lapint"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Subsets of 12356 or 12456 containing 12, 135 or 136.
fn theta() -> String {
    let tops = [0b110111u32, 0b111011];
    let bottoms = [0b11u32, 0b10101, 0b100101];
    let mut faces: Vec<Vec<usize>> = (0u32..64)
        .filter(|g| tops.iter().any(|t| g & t == *g) && bottoms.iter().any(|b| g & b == *b))
        .map(|g| (1..=6).filter(|v| g >> (v - 1) & 1 == 1).collect())
        .collect();
    faces.sort_by_key(|f| (f.len(), f.clone()));
    json!({"n": 6, "faces": faces}).to_string()
}

#[test]
fn reducing_theta_at_three_gives_the_example() {
    let out = lapint(&["ops", &theta(), "--pipe", "reduce 3"], None);
    assert!(out.status.success());
    let expected = r#"{"faces":[[1,2,4],[1,3,5],[1,3,6],[1,2,4,5],[1,2,4,6],[1,3,5,6],[1,2,4,5,6]],"n":6}"#;
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), expected);
}

#[test]
fn generated_shifted_intervals_pass_check() {
    for seed in ["0", "7", "42"] {
        let generated = lapint(&["shifted", "gen", "--n", "6", "--seed", seed], None);
        assert!(generated.status.success());
        let text = String::from_utf8(generated.stdout).unwrap();
        let verdict = lapint(&["check", "-", "--assert", "--specializations"], Some(&text));
        assert_eq!(verdict.status.code(), Some(0), "seed {seed}");
        assert_eq!(stdout_json(&verdict)["holds"], json!(true));
    }
}

#[test]
fn exit_codes() {
    let violator = r#"{"n":5,"faces":[[1],[3],[4],[5],[1,3],[1,4],[1,5],[2,5],[3,4],[3,5],[4,5],[1,3,4],[1,3,5],[1,4,5],[3,4,5],[1,3,4,5]]}"#;
    assert_eq!(lapint(&["check", violator, "--vertex", "4", "--assert"], None).status.code(), Some(1));
    assert_eq!(lapint(&["check", violator, "--vertex", "4"], None).status.code(), Some(0));
    for bad in [r#"{"n":2,"faces":[[1,1]]}"#, r#"{"n":2,"faces":[[],[1,2]]}"#, "{not json", r#"{"n":2}"#] {
        let out = lapint(&["spectrum", bad], None);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    assert_eq!(lapint(&["ops", violator, "--pipe", "frobnicate"], None).status.code(), Some(2));
}

#[test]
fn fuzz_output_is_independent_of_jobs() {
    let args = ["fuzz", "--trials", "12", "--n-max", "5", "--seed", "9"];
    let serial = lapint(&[&args[..], &["--jobs", "1"]].concat(), None);
    let parallel = lapint(&[&args[..], &["--jobs", "4"]].concat(), None);
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(stdout_json(&serial)["tallies"]["trials"], json!(12));
}

#[test]
fn matroid_presets() {
    let out = lapint(&["matroid", "check", "fano", "--assert"], None);
    assert_eq!(out.status.code(), Some(0));
    let pair = stdout_json(&lapint(&["matroid", "minor-pair", "uniform:2:4", "--element", "4"], None));
    assert_eq!(pair["labels"], json!([1, 2, 3]));
    assert_eq!(pair["interval"]["faces"], json!([[1, 2], [1, 3], [2, 3]]));
}

#[test]
fn size_guard() {
    let out = Command::new(env!("CARGO_BIN_EXE_lapint"))
        .args(["shifted", "gen", "--n", "6"])
        .env("LAPINT_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
