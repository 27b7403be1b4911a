//! End-to-end tests for the `hyperspectra` binary: exit codes, output
//! formats, file round-trips, and byte-for-byte determinism.

use std::path::Path;
use std::process::{Command, Output};

use hyperspectra_core::{are_isomorphic, UniformHypergraph};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperspectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    bin().args(args).env(key, value).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

/// Builds a family into `dir` and returns the graph path.
fn build(dir: &Path, family: &str, m: Option<usize>, k: usize, name: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut args = vec!["build".to_string(), family.to_string()];
    if let Some(m) = m {
        args.push("--m".into());
        args.push(m.to_string());
    }
    args.push("--k".into());
    args.push(k.to_string());
    args.push("--out".into());
    args.push(path.display().to_string());
    let out = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&out), 0, "build {family} failed: {}", stderr(&out));
    path
}

#[test]
fn rho_of_a_built_star_matches_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let star = build(dir.path(), "S", Some(4), 3, "star.json");
    let out = bin().args(["rho", "--format", "json"]).arg(&star).output().unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let rho = v["rho"].as_f64().unwrap();
    assert!((rho - 4f64.powf(1.0 / 3.0)).abs() <= 1e-9, "rho = {rho}");
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["bracket_violations"].as_u64(), Some(0));

    let single = build(dir.path(), "S", Some(1), 3, "edge.json");
    let out = bin().args(["rho", "--format", "json"]).arg(&single).output().unwrap();
    assert_eq!(code(&out), 0);
    let rho = json(&out)["rho"].as_f64().unwrap();
    assert!((rho - 1.0).abs() <= 1e-9, "single edge rho = {rho}");
}

#[test]
fn rho_rejects_malformed_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"k\": 3, \"edges\": [[0, 0, 1]]}").unwrap();
    let out = bin().arg("rho").arg(&bad).output().unwrap();
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error:"), "{}", stderr(&out));

    let out = bin().arg("rho").arg(dir.path().join("absent.json")).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn rho_output_formats_agree_on_the_same_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "L", Some(2), 3, "l.json");

    let human = bin().arg("rho").arg(&path).output().unwrap();
    assert_eq!(code(&human), 0);
    assert!(stdout(&human).contains("rho        = 1.87258"), "{}", stdout(&human));

    let csv = bin().args(["rho", "--format", "csv"]).arg(&path).output().unwrap();
    assert!(stdout(&csv).starts_with("rho,residual,iterations\n"));

    let v = bin().args(["rho", "--format", "json"]).arg(&path).output().unwrap();
    let rho = json(&v)["rho"].as_f64().unwrap();
    assert!((rho - 1.872580893982).abs() <= 1e-9, "rho = {rho}");
}

#[test]
fn build_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = build(dir.path(), "L", Some(2), 3, "a.json");
    let second = build(dir.path(), "L", Some(2), 3, "b.json");

    let g = std::fs::read(&first).unwrap();
    assert_eq!(g, std::fs::read(&second).unwrap());
    let labels = std::fs::read(dir.path().join("a.labels.json")).unwrap();
    assert_eq!(labels, std::fs::read(dir.path().join("b.labels.json")).unwrap());

    let parsed = UniformHypergraph::from_json(std::str::from_utf8(&g).unwrap()).unwrap();
    assert_eq!((parsed.n(), parsed.num_edges()), (12, 6));
}

#[test]
fn build_rejects_sizes_below_a_family_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.json");
    for (family, m) in [("A", "2"), ("C", "2"), ("S", "0")] {
        let out = bin()
            .args(["build", family, "--m", m, "--k", "3", "--out"])
            .arg(&out_path)
            .output()
            .unwrap();
        assert_eq!(code(&out), 2, "build {family} --m {m}: {}", stderr(&out));
    }
    let out = bin().args(["build", "Q", "--m", "3", "--k", "3", "--out"]).arg(&out_path).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn the_smallest_decorated_two_edge_families_coincide() {
    let dir = tempfile::tempdir().unwrap();
    let i = build(dir.path(), "I", Some(1), 3, "i.json");
    let j = build(dir.path(), "J", Some(1), 3, "j.json");
    let gi = UniformHypergraph::from_json(&std::fs::read_to_string(i).unwrap()).unwrap();
    let gj = UniformHypergraph::from_json(&std::fs::read_to_string(j).unwrap()).unwrap();
    assert!(are_isomorphic(&gi, &gj).unwrap());
}

#[test]
fn certify_cross_checks_the_certificate_against_power_iteration() {
    let out = run(&["certify", "L", "--m", "2", "--k", "3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert!(v["gap"].as_f64().unwrap() <= 1e-6);
    let rho = v["certificate"]["rho"].as_f64().unwrap();
    assert!((rho - 1.872580893982).abs() <= 1e-9, "rho = {rho}");
    let alpha = v["certificate"]["alpha"].as_f64().unwrap();
    assert!((alpha - 0.152292401860414).abs() <= 1e-9, "alpha = {alpha}");
}

#[test]
fn certify_points_uncertified_families_at_the_witness_subcommand() {
    let out = run(&["certify", "B", "--m", "3", "--k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("witness B-under-A"), "{}", stderr(&out));

    let out = run(&["certify", "J", "--m", "2", "--k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("witness J-under-I"), "{}", stderr(&out));
}

#[test]
fn witness_reports_guaranteed_positive_slack() {
    let out = run(&["witness", "B-under-A", "--m", "3", "--k", "3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let slack = v["slack"].as_f64().unwrap();
    assert!((slack - 5.755116e-2).abs() <= 1e-6, "slack = {slack}");
    assert_eq!(v["guaranteed"].as_bool(), Some(true));
    assert_eq!(v["verdict"].as_str(), Some("strictly-subnormal"));
}

#[test]
fn enumerate_finds_the_single_smallest_member() {
    let out = run(&["enumerate", "--n", "6", "--k", "3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["members"].as_array().unwrap().len(), 1);
    assert_eq!(v["stats"]["distinct"].as_u64(), Some(1));
    assert_eq!(v["maximizer"].as_u64(), Some(0));
    assert_eq!(v["members"][0]["kind"].as_str(), Some("Gamma"));

    let out = run(&["enumerate", "--n", "6", "--k", "3", "--linear-only", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["members"].as_array().unwrap().is_empty());
    assert!(v["maximizer"].is_null());
}

#[test]
fn enumerate_rejects_off_grid_and_over_cap_sizes() {
    let out = run(&["enumerate", "--n", "7", "--k", "3"]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));

    let out = run(&["enumerate", "--n", "24", "--k", "3"]);
    assert_eq!(code(&out), 6);
    assert!(stderr(&out).contains("vertex cap"), "{}", stderr(&out));

    let out = run_with_env(&["enumerate", "--n", "12", "--k", "3"], "HYPERSPECTRA_CAP", "6");
    assert_eq!(code(&out), 6, "cap override ignored: {}", stderr(&out));

    let out = run_with_env(&["enumerate", "--n", "12", "--k", "3"], "HYPERSPECTRA_CAP", "banana");
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_confirms_claims_inside_their_ranges() {
    let out = run(&["verify", "--id", "5.1", "--k", "3", "--m-range", "2..2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("confirmed"), "{}", stdout(&out));

    let out = run(&["verify", "--id", "L3.7", "--k", "3", "--m-range", "3..4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    // A bare size is accepted where a range is expected.
    let out = run(&["verify", "--id", "L4.4", "--k", "3", "--m-range", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn verify_flags_sizes_outside_a_claims_range() {
    let out = run(&["verify", "--id", "5.1", "--k", "3", "--m-range", "1..1"]);
    assert_eq!(code(&out), 5, "{}", stderr(&out));
    assert!(stdout(&out).contains("out-of-range"), "{}", stdout(&out));

    let out = run(&["verify", "--id", "L3.9", "--k", "3", "--m-range", "3..8"]);
    assert_eq!(code(&out), 5, "{}", stderr(&out));
}

#[test]
fn verify_capacity_failures_point_at_the_family_claims() {
    let out = run(&["verify", "--id", "5.1", "--k", "3", "--m-range", "4..4"]);
    assert_eq!(code(&out), 6, "{}", stderr(&out));
    let err = stderr(&out);
    assert!(err.contains("raise the cap"), "{err}");
    assert!(err.contains("L4.4"), "{err}");

    let out = run_with_env(
        &["verify", "--id", "5.1", "--k", "3", "--m-range", "2..2"],
        "HYPERSPECTRA_CAP",
        "6",
    );
    assert_eq!(code(&out), 6, "cap override ignored: {}", stderr(&out));
}

#[test]
fn verify_writes_a_report_file_and_prints_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "--id", "5.1", "--k", "3", "--m-range", "2..2", "--format", "json", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("claim 5.1: confirmed"), "{}", stdout(&out));

    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["id"].as_str(), Some("5.1"));
    assert_eq!(v["verdict"].as_str(), Some("confirmed"));
    assert_eq!(v["entries"][0]["members"].as_u64(), Some(7));
    assert!(v["min_gap"].as_f64().unwrap() > 1e-8);
}

#[test]
fn compare_ad_settles_every_size_it_is_asked_about() {
    let out = run(&["compare-ad", "--k", "3", "--m-range", "3..8", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let favors: Vec<&str> = entries.iter().map(|e| e["favors"].as_str().unwrap()).collect();
    assert_eq!(favors, ["A", "D", "D", "D", "D", "D"]);
    assert!(entries[0]["gap"].as_f64().unwrap() < 0.0);
    assert!(entries[1]["gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = ["enumerate", "--n", "12", "--k", "3", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);

    let args = ["verify", "--id", "L4.4", "--k", "3", "--m-range", "2..3", "--format", "csv"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn usage_errors_exit_with_the_input_code() {
    let out = run(&["enumerate", "--n", "6"]);
    assert_eq!(code(&out), 2, "missing --k should be a usage error");

    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);

    let out = run(&["verify", "--id", "5.1", "--k", "3", "--m-range", "banana"]);
    assert_eq!(code(&out), 2);

    let out = run(&["verify", "--id", "5.1", "--k", "3", "--m-range", "3..2"]);
    assert_eq!(code(&out), 2);
}
