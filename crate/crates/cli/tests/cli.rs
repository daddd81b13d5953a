//! End-to-end runs of the `sgspec` binary against golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sgspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgspec"))
        .args(args)
        .env("SGSPEC_NO_COLOR", "1")
        .output()
        .expect("sgspec runs")
}

fn test_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(test_file(&format!("golden/{name}"))).expect("golden file")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn check_turbine_reports_sink() {
    let out = sgspec(&["check", "--builtin", "turbine"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Sink: turbineFastRunning"));
}

#[test]
fn check_appliance_is_clean() {
    let out = sgspec(&["check", "--builtin", "appliance"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no findings"));
}

#[test]
fn check_missing_file() {
    let out = sgspec(&["check", "missing.sgs"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.sgs"));
}

#[test]
fn check_json_matches_golden_and_is_stable() {
    let first = sgspec(&["check", "--builtin", "all", "--json"]);
    let second = sgspec(&["check", "--builtin", "all", "--json"]);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first), golden("check_all.json"));
}

#[test]
fn check_invalid_document_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.sgs", "component C { states: a; init: b; }\n");
    let out = sgspec(&["check", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("UnknownInit `b`"));
}

#[test]
fn parse_errors_exit_2_with_locations() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "broken.sgs", "component C {\n    states: a;\n}\n");
    for cmd in ["parse", "check", "table", "graph"] {
        let out = sgspec(&[cmd, &path]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        let err = String::from_utf8_lossy(&out.stderr).into_owned();
        assert!(err.contains("broken.sgs:3:1: MissingSection"), "{err}");
    }
}

#[test]
fn parse_prints_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "min.sgs", "component C{states:a;init:a;}");
    let out = sgspec(&["parse", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "component C {\n    states: a;\n    init: a;\n}\n");

    let json = sgspec(&["parse", &path, "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["components"][0]["name"], "C");
}

#[test]
fn markdown_tables_match_golden() {
    for key in ["appliance", "turbine", "solar", "storage"] {
        let out = sgspec(&["table", "--builtin", key, "--format", "markdown"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), golden(&format!("table_{key}.md")), "{key}");
    }
}

#[test]
fn table_for_one_component_of_many() {
    let out = sgspec(&["table", "--builtin", "all", "--component", "WindTurbine", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["rows"][1]["op"], "FastWind");
    assert_eq!(value["rows"][1]["success_pre"], serde_json::json!(["turbineSlowRunning"]));
}

#[test]
fn table_unknown_component() {
    let out = sgspec(&["table", "--builtin", "solar", "--component", "Meter"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_without_operations_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "one.sgs", "component C { states: a; init: a; }\n");
    let out = sgspec(&["table", &path, "--format", "markdown"]);
    assert_eq!(
        stdout(&out),
        "| Schema | Pre-condition for success | Condition for error |\n|---|---|---|\n"
    );
}

#[test]
fn graphs_match_golden() {
    for key in ["appliance", "turbine", "solar", "storage"] {
        let out = sgspec(&["graph", "--builtin", key]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), golden(&format!("graph_{key}.dot")), "{key}");
    }
}

#[test]
fn graph_single_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "one.sgs", "component C { states: a; init: a; }\n");
    let out = sgspec(&["graph", &path]);
    assert_eq!(
        stdout(&out),
        "digraph C {\n    rankdir=LR;\n    node [shape=circle];\n    a [shape=doublecircle];\n}\n"
    );
}

#[test]
fn graph_needs_component_for_multi_component_documents() {
    let out = sgspec(&["graph", "--builtin", "all"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sgspec(&["graph", "--builtin", "all", "--component", "SolarPanel"]);
    assert_eq!(stdout(&out), golden("graph_solar.dot"));
}

#[test]
fn animate_storage_happy_path() {
    let script = test_file("scripts/storage_lifetime.script");
    let out = sgspec(&["animate", "--builtin", "storage", "--script", script.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("final: b1=notInUse\n"), "{}", stdout(&out));
}

#[test]
fn animate_strict_violation() {
    let script = test_file("scripts/appliance_violation.script");
    let out = sgspec(&[
        "animate",
        "--builtin",
        "appliance",
        "--script",
        script.to_str().unwrap(),
        "--strict",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let step: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(step["outcome"]["kind"], "precondition_violation");
    assert_eq!(step["outcome"]["expected"], serde_json::json!(["connected"]));
}

#[test]
fn animate_permissive_violation_still_exits_1() {
    let script = test_file("scripts/appliance_violation.script");
    let out = sgspec(&["animate", "--builtin", "appliance", "--script", script.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn animate_resolution_errors_exit_2_before_running() {
    for (script, key) in [("undeclared_instance", "appliance"), ("unknown_event", "turbine")] {
        let path = test_file(&format!("scripts/{script}.script"));
        let out = sgspec(&["animate", "--builtin", key, "--script", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{script}");
        assert!(out.stdout.is_empty(), "{script}");
    }
}

#[test]
fn animate_lifetimes_over_combined_document() {
    for (script, last) in [
        ("appliance_lifetime", "final: a1=disconnected"),
        ("solar_lifetime", "final: s1=noEnergyGeneration"),
        ("storage_lifetime", "final: b1=notInUse"),
    ] {
        let path = test_file(&format!("scripts/{script}.script"));
        let out = sgspec(&["animate", "--builtin", "all", "--script", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{script}");
        assert_eq!(stdout(&out).lines().last(), Some(last));
    }
}

#[test]
fn builtin_listing_and_source() {
    let out = sgspec(&["builtin", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 5);
    let out = sgspec(&["builtin", "turbine"]);
    assert!(stdout(&out).contains("component WindTurbine {"));
    let out = sgspec(&["builtin", "meter"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sgspec(&["check", "--builtin", "meter"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sgspec(&["check"]).status.code(), Some(2));
    assert_eq!(sgspec(&["check", "x.sgs", "--builtin", "solar"]).status.code(), Some(2));
    assert_eq!(sgspec(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn every_builtin_command_exit_code() {
    // (check exit, every other command exits 0)
    for (key, check_code) in [("appliance", 0), ("turbine", 1), ("solar", 0), ("storage", 0), ("all", 1)] {
        assert_eq!(sgspec(&["check", "--builtin", key]).status.code(), Some(check_code), "{key}");
        assert_eq!(sgspec(&["parse", "--builtin", key]).status.code(), Some(0), "{key}");
        assert_eq!(sgspec(&["table", "--builtin", key]).status.code(), Some(0), "{key}");
    }
}
