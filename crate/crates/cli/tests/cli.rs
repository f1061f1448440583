//! End-to-end tests of the `bcblow` binary: manifest runs, report
//! determinism, the fixed subcommands, and error reporting.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bcblow() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bcblow"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn run_surface_manifest_passes() {
    let output = bcblow()
        .arg("run")
        .arg(fixture("surface.json"))
        .output()
        .expect("binary runs");
    let text = stdout_of(&output);
    assert!(output.status.success(), "stdout:\n{text}");

    // JSON lines precede the summary and parse as report records
    let mut tasks_seen = 0;
    for line in text.lines() {
        if line.starts_with('{') {
            let record: serde_json::Value = serde_json::from_str(line).expect("json line");
            assert_eq!(record["passed"], true, "task failed: {line}");
            tasks_seen += 1;
        }
    }
    assert_eq!(tasks_seen, 7);
    assert!(text.contains("7 task(s), 0 failed"));

    // the surface difference shows up in the rendered total class
    assert!(text.contains("total-chern"), "stdout:\n{text}");
}

#[test]
fn run_is_deterministic_and_parallel_agrees() {
    let run = |parallel: bool| -> String {
        let mut cmd = bcblow();
        cmd.arg("run").arg(fixture("surface.json"));
        if parallel {
            cmd.arg("--parallel");
        }
        stdout_of(&cmd.output().expect("binary runs"))
    };
    let a = run(false);
    let b = run(false);
    assert_eq!(a, b, "two sequential runs must be byte-identical");
    let c = run(true);
    assert_eq!(a, c, "parallel run must match sequential output");
}

#[test]
fn task_filter_selects_one_task() {
    let output = bcblow()
        .arg("run")
        .arg(fixture("surface.json"))
        .args(["--task", "series"])
        .output()
        .expect("binary runs");
    let text = stdout_of(&output);
    assert!(output.status.success());
    assert!(text.contains("1 task(s), 0 failed"), "stdout:\n{text}");

    let missing = bcblow()
        .arg("run")
        .arg(fixture("surface.json"))
        .args(["--task", "nope"])
        .output()
        .expect("binary runs");
    assert!(!missing.status.success());
}

#[test]
fn out_file_receives_json_lines() {
    let dir = std::env::temp_dir().join("bcblow-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let output = bcblow()
        .arg("run")
        .arg(fixture("surface.json"))
        .args(["--task", "push"])
        .args(["--out", path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let record: serde_json::Value =
        serde_json::from_str(written.lines().next().unwrap()).unwrap();
    assert_eq!(record["task"], "push");
    assert_eq!(record["kind"], "rr-pushforward");
    // codimension-2 point: the degree-1 component vanishes
    assert_eq!(record["checks"][0]["key"], "vanishing-degree-1");
    assert_eq!(record["checks"][0]["status"], "pass");
    std::fs::remove_file(&path).ok();
}

#[test]
fn rr_series_prints_integer_table() {
    let output = bcblow()
        .args(["rr-series", "--u", "2", "--v", "1", "--degree", "3"])
        .output()
        .expect("binary runs");
    let text = stdout_of(&output);
    assert!(output.status.success());
    assert!(text.contains("constant term: -1"), "stdout:\n{text}");
    assert!(text.contains("z1, z2, w1"));
}

#[test]
fn nilbc_preset_prints_dimension_table() {
    let output = bcblow()
        .args(["nilbc", "--preset", "iwasawa"])
        .output()
        .expect("binary runs");
    let text = stdout_of(&output);
    assert!(output.status.success());
    assert!(text.contains("p=1:  2  4  6  2"), "stdout:\n{text}");
    assert!(text.contains("conjugation symmetry h^(p,q) = h^(q,p): holds"));

    let torus = bcblow()
        .args(["nilbc", "--preset", "torus-2"])
        .output()
        .expect("binary runs");
    let text = stdout_of(&torus);
    assert!(torus.status.success());
    assert!(text.contains("p=1:  2  4  2"), "stdout:\n{text}");
}

#[test]
fn nilbc_reads_manifest_nilmanifolds() {
    let output = bcblow()
        .args(["nilbc", "--manifest"])
        .arg(fixture("surface.json"))
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("nilmanifold 'iwasawa'"));
}

#[test]
fn verify_presets_exit_zero() {
    for preset in [
        "surface-point",
        "threefold-point",
        "threefold-curve",
        "iwasawa",
        "universal-r2",
        "universal-r3",
    ] {
        let output = bcblow()
            .args(["verify", "--preset", preset])
            .output()
            .expect("binary runs");
        let text = stdout_of(&output);
        assert!(output.status.success(), "{preset} failed:\n{text}");
        assert!(text.contains("checks passed"));
        assert!(!text.contains("[FAIL]"), "{preset}:\n{text}");
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = std::env::temp_dir().join("bcblow-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"rings\": {\n").unwrap();
    let output = bcblow()
        .arg("run")
        .arg(&path)
        .output()
        .expect("binary runs");
    assert!(!output.status.success());
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr: {err}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn validation_errors_name_the_object() {
    let dir = std::env::temp_dir().join("bcblow-test-bad2");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{ "rings": { "Y": { "generators": [["h", 1]], "relations": ["h + q"], "dim": 2 } } }"#,
    )
    .unwrap();
    let output = bcblow()
        .arg("run")
        .arg(&path)
        .output()
        .expect("binary runs");
    assert!(!output.status.success());
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("ring 'Y'"), "stderr: {err}");
    assert!(err.contains("unknown generator 'q'"), "stderr: {err}");
    std::fs::remove_file(&path).ok();
}
