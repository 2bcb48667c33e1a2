//! End-to-end tests of the binary: output schemas, exit codes, diagnostics,
//! and the lossless JSON round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

use triatom::geometry::{Geometry, Layout};
use triatom::qstate::NamedState;
use triatom::scan::{angular_scan, Observables};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triatom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("triatom-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn scan_csv_matches_schema_and_peak_value() {
    let output = run(&[
        "scan",
        "--layout",
        "line",
        "--state",
        "w21",
        "--kd",
        "0.6283",
        "--theta-min",
        "-1.5708",
        "--theta-max",
        "1.5708",
        "--samples",
        "3",
        "--format",
        "csv",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,intensity,g2");
    assert_eq!(lines.len(), 4);
    let middle: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(middle.len(), 3);
    let theta: f64 = middle[0].parse().unwrap();
    let intensity: f64 = middle[1].parse().unwrap();
    let g2: f64 = middle[2].parse().unwrap();
    assert_eq!(theta, 0.0);
    assert!((intensity - 3.914).abs() < 1e-3, "intensity {intensity}");
    assert!((g2 - 0.7608).abs() < 1e-3, "g2 {g2}");
}

#[test]
fn scan_without_g2_leaves_the_column_empty() {
    let output = run(&[
        "scan", "--layout", "line", "--state", "wtilde21", "--kd", "1.0", "--samples", "5",
        "--observables", "intensity",
    ]);
    assert!(output.status.success());
    for line in stdout(&output).lines().skip(1) {
        assert!(line.ends_with(','), "line {line:?} should have an empty g2 cell");
    }
}

#[test]
fn scan_json_round_trips_every_numeric_field() {
    let output = run(&[
        "scan",
        "--layout",
        "loop",
        "--state",
        "ghzbar21",
        "--kd",
        "0.6283185307179586",
        "--theta-min",
        "-3.141592653589793",
        "--theta-max",
        "3.141592653589793",
        "--samples",
        "17",
        "--format",
        "json",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();

    // Recompute through the library and compare bit for bit.
    let geometry = Geometry::new(Layout::Loop, 0.6283185307179586).unwrap();
    let table = angular_scan(
        &NamedState::LoopGhzBar21.state(),
        "ghzbar21",
        geometry,
        -std::f64::consts::PI,
        std::f64::consts::PI,
        17,
        Observables::IntensityAndG2,
    )
    .unwrap();

    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), table.rows.len());
    for (json_row, row) in rows.iter().zip(&table.rows) {
        let theta = json_row["theta"].as_f64().unwrap();
        let intensity = json_row["intensity"].as_f64().unwrap();
        assert_eq!(theta.to_bits(), row.theta.to_bits());
        assert_eq!(intensity.to_bits(), row.intensity.to_bits());
        match row.g2 {
            Some(g2) => {
                assert_eq!(json_row["g2"].as_f64().unwrap().to_bits(), g2.to_bits())
            }
            None => assert!(json_row["g2"].is_null()),
        }
    }
    assert_eq!(parsed["metadata"]["state"].as_str().unwrap(), "ghzbar21");
    assert_eq!(parsed["metadata"]["layout"].as_str().unwrap(), "loop");
    assert_eq!(
        parsed["metadata"]["kd"].as_f64().unwrap().to_bits(),
        0.6283185307179586f64.to_bits()
    );
}

#[test]
fn surface_csv_has_leading_kd_column() {
    let output = run(&[
        "surface", "--layout", "line", "--state", "wbar21", "--kd-min", "0.5", "--kd-max", "2.0",
        "--kd-samples", "3", "--samples", "8",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kd,theta,intensity,g2");
    assert_eq!(lines.len(), 1 + 3 * 8);
    // Surfaces report intensity only.
    assert!(lines[1].ends_with(','));
}

#[test]
fn eigen_reports_coupling_and_degenerate_subspace() {
    let output = run(&["eigen", "--layout", "loop", "--kd", "0.6283", "--omega", "1", "--format", "json"]);
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let coupling = parsed["coupling"].as_f64().unwrap();
    assert!((coupling - 2.6).abs() < 0.05, "coupling {coupling}");
    assert_eq!(parsed["eigenvalues"].as_array().unwrap().len(), 8);
    let subspaces = parsed["subspaces"].as_array().unwrap();
    // The two-excitation GHZ pair sits at the two-fold degenerate ω/2 − g.
    let degenerate = subspaces
        .iter()
        .find(|s| {
            s["matches"]
                .as_array()
                .unwrap()
                .iter()
                .any(|m| m["state"] == "ghzbar21")
        })
        .expect("GHZ subspace present");
    assert_eq!(degenerate["multiplicity"].as_u64(), Some(2));
    let lambda = degenerate["eigenvalue"].as_f64().unwrap();
    assert!((lambda - (0.5 - coupling)).abs() < 1e-9, "lambda {lambda}");
    let matched: Vec<&str> = degenerate["matches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["state"].as_str().unwrap())
        .collect();
    assert!(matched.contains(&"ghztilde21"));
}

#[test]
fn eigen_rejects_omega13_on_the_loop() {
    let output = run(&["eigen", "--layout", "loop", "--kd", "1.0", "--omega13", "0.2"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("line layout only"));
}

#[test]
fn validation_errors_exit_2() {
    // Reversed theta window.
    let output = run(&[
        "scan", "--layout", "line", "--state", "w21", "--kd", "1.0", "--theta-min", "1.0",
        "--theta-max", "-1.0",
    ]);
    assert_eq!(output.status.code(), Some(2));

    // Nonpositive kd.
    let output = run(&["scan", "--layout", "line", "--state", "w21", "--kd", "-1.0"]);
    assert_eq!(output.status.code(), Some(2));

    // Unknown named state.
    let output = run(&["scan", "--layout", "line", "--state", "w12", "--kd", "1.0"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("w21"), "should list valid tokens");

    // Missing custom-state file.
    let output = run(&["scan", "--layout", "line", "--state", "/nonexistent/state.json", "--kd", "1.0"]);
    assert_eq!(output.status.code(), Some(2));

    // Zero-vector custom state.
    let zero = temp_file("zero.json", "[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]");
    let output = run(&["scan", "--layout", "line", "--state", zero.to_str().unwrap(), "--kd", "1.0"]);
    assert_eq!(output.status.code(), Some(2));

    // Malformed document: the message carries a location.
    let broken = temp_file("broken.json", "[[1,0],[0,0]");
    let output = run(&["scan", "--layout", "line", "--state", broken.to_str().unwrap(), "--kd", "1.0"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("line"), "stderr: {}", stderr(&output));
}

#[test]
fn unnormalized_custom_state_runs_with_a_note() {
    let path = temp_file(
        "unnormalized.json",
        "[[0,0],[0,0],[0,0],[2,0],[0,0],[2,0],[0,0],[0,0]]",
    );
    let output = run(&[
        "scan", "--layout", "line", "--state", path.to_str().unwrap(), "--kd", "0.6283",
        "--samples", "3", "--format", "json",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    assert!(stderr(&output).contains("renormalized"));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let label = parsed["metadata"]["state"].as_str().unwrap();
    assert!(label.starts_with("custom:"), "label {label}");
    // Data stream stays clean: stdout parses as JSON with finite numbers only.
    let first = &parsed["rows"][0];
    assert!(first["intensity"].as_f64().unwrap().is_finite());
}

#[test]
fn crossings_of_single_excitation_state_are_empty() {
    let path = temp_file(
        "single_excitation.json",
        "[[0,0],[1,0],[1,0],[0,0],[1,0],[0,0],[0,0],[0,0]]",
    );
    let output = run(&[
        "crossings", "--layout", "line", "--state", path.to_str().unwrap(), "--kd", "0.6283",
        "--samples", "201",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert_eq!(text.lines().collect::<Vec<_>>(), vec!["theta,kind"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "scan", "--layout", "loop", "--state", "w21", "--kd", "2.618", "--samples", "41",
        "--format", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("triatom-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let output = run(&[
        "scan", "--layout", "line", "--state", "w21", "--kd", "1.0", "--samples", "3",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("theta,intensity,g2\n"));
}
