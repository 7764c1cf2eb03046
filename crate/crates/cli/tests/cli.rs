//! End-to-end tests of the `regretlab` binary: exit codes, file formats, and
//! output determinism.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_regretlab"))
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("regretlab-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn run_writes_trace_with_header_and_is_deterministic() {
    let dir = temp_dir("run");
    let cfg = dir.join("cfg.json");
    write(
        &cfg,
        r#"{
            "schedule": {"kind": "two_phase", "T": 2000},
            "x_player": {"kind": "two_layer"},
            "y_player": {"kind": "two_layer"},
            "stride": 100
        }"#,
    );

    for sub in ["a", "b"] {
        let status = bin()
            .args(["run", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(dir.join(sub))
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(dir.join("a/trace.csv")).unwrap();
    let b = std::fs::read(dir.join("b/trace.csv")).unwrap();
    assert_eq!(a, b, "identical configs must produce identical bytes");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), regretlab_cli::trace::CSV_HEADER);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("2000,"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn horizon_flag_overrides_config() {
    let dir = temp_dir("horizon");
    let cfg = dir.join("cfg.json");
    write(
        &cfg,
        r#"{
            "schedule": {"kind": "two_phase", "T": 5000},
            "x_player": {"kind": "nash_oracle"},
            "y_player": {"kind": "nash_oracle"}
        }"#,
    );
    let out = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .args(["--T", "600"])
        .arg("--out")
        .arg(dir.join("o"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("o/trace.csv")).unwrap();
    assert!(text.lines().last().unwrap().starts_with("600,"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn missing_config_exits_2() {
    let status = bin()
        .args(["run", "--config", "/nonexistent/cfg.json"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn malformed_config_exits_2() {
    let dir = temp_dir("bad");
    let cfg = dir.join("cfg.json");
    write(&cfg, "{not json");
    let status = bin().args(["run", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn dimension_mismatch_exits_3() {
    let dir = temp_dir("dims");
    let cfg = dir.join("cfg.json");
    write(
        &cfg,
        r#"{
            "schedule": {"kind": "two_phase", "T": 100},
            "x_player": {"kind": "fixed_strategy", "weights": [0.2, 0.3, 0.5]},
            "y_player": {"kind": "nash_oracle"}
        }"#,
    );
    let status = bin().args(["run", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(3));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn file_schedule_round_trip() {
    let dir = temp_dir("file-schedule");
    let schedule = dir.join("schedule.json");
    write(
        &schedule,
        r#"{
            "T": 300,
            "steps": [
                {"matrix": {"rows": 2, "cols": 2, "entries": [[1.0, -1.0], [-1.0, 1.0]]}, "repeat": 150},
                {"matrix": {"rows": 2, "cols": 2, "entries": [[0.5, -0.5], [0.5, -0.5]]}, "repeat": 150}
            ]
        }"#,
    );
    let cfg = dir.join("cfg.json");
    write(
        &cfg,
        &format!(
            r#"{{
                "schedule": {{"kind": "file", "path": {:?}}},
                "x_player": {{"kind": "nash_oracle"}},
                "y_player": {{"kind": "nash_oracle"}},
                "stride": 50
            }}"#,
            schedule
        ),
    );
    let out = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("o"))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.join("o/trace.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 6);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn degenerate_sweep_runs_two_configs() {
    let dir = temp_dir("sweep");
    let cfg = dir.join("cfg.json");
    write(
        &cfg,
        r#"{
            "schedule": {"kind": "epoch_drift", "T": 4000},
            "x_player": {"kind": "two_layer"},
            "y_player": {"kind": "two_layer"},
            "etas": [0.05],
            "stride": 500
        }"#,
    );
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("o"))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("o/summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["results"].as_array().unwrap().len(), 2);
    assert!(dir.join("o/comparison.svg").exists());
    assert!(dir.join("o/trace_two_layer.csv").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_oracle_suite_passes() {
    let out = bin()
        .args(["verify", "--suite", "oracle", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn plot_emission() {
    let dir = temp_dir("plot");
    let cfg = dir.join("cfg.json");
    write(
        &cfg,
        r#"{
            "schedule": {"kind": "two_phase", "T": 500},
            "x_player": {"kind": "nash_oracle"},
            "y_player": {"kind": "nash_oracle"},
            "stride": 100
        }"#,
    );
    let status = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("o"))
        .arg("--plot")
        .status()
        .unwrap();
    assert!(status.success());
    let svg = std::fs::read_to_string(dir.join("o/plot.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
    let _ = std::fs::remove_dir_all(&dir);
}
