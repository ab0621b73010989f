//! End-to-end tests of the qconst binary: output schemas, exit codes,
//! presets, the config file, and byte-level determinism.

use std::process::{Command, Output};

fn qconst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qconst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn dist_csv_schema_and_values() {
    let output = qconst(&["dist", "0,0", "--m", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,beta,probability,class");
    assert_eq!(lines.len(), 5); // header + 4 outcomes
    assert_eq!(lines[1], "0,0,0.500000000000,FAIL");
    assert!(lines[3].starts_with("1,0,0.500000000000,CONSTANT_INDICATION"));
}

#[test]
fn dist_rejects_out_of_range_values() {
    let output = qconst(&["dist", "0,2", "--m", "2"]);
    assert_eq!(output.status.code(), Some(2));

    let output = qconst(&["dist", "0,x", "--m", "2"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn dist_json_mirrors_distribution() {
    let output = qconst(&["dist", "0,1,2", "--m", "3", "--format", "json"]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["n_domain"], 3);
    assert_eq!(doc["m_range"], 3);
    assert_eq!(doc["outcomes"].as_array().unwrap().len(), 9);
    // permutation: FAIL 1/3, no constant indication
    let fail = doc["class_totals"]["FAIL"].as_f64().unwrap();
    assert!((fail - 1.0 / 3.0).abs() < 1e-10);
    let indication = doc["class_totals"]["CONSTANT_INDICATION"].as_f64().unwrap();
    assert!(indication.abs() < 1e-10);
}

#[test]
fn posterior_certainty_in_the_deutsch_case() {
    let output = qconst(&["posterior", "--n", "2", "--m", "2", "--kmax", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,quantum,classical");
    assert_eq!(lines[1], "1,1.00000000000,0.500000000000");
}

#[test]
fn posterior_classical_column_stops_at_n() {
    let output = qconst(&["posterior", "--n", "3", "--m", "2", "--kmax", "4"]);
    assert_eq!(output.status.code(), Some(2));

    // the quantum column may extend past N
    let output = qconst(&[
        "posterior", "--n", "3", "--m", "2", "--kmax", "5", "--algorithm", "quantum",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(text.lines().next().unwrap(), "k,quantum");
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn posterior_json_carries_exact_rationals() {
    let output = qconst(&[
        "posterior", "--n", "3", "--m", "2", "--kmax", "1", "--format", "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let row = &doc["rows"][0];
    assert_eq!(row["k"], 1);
    assert_eq!(row["quantum"]["numerator"], "3");
    assert_eq!(row["quantum"]["denominator"], "4");
    assert_eq!(row["classical"]["numerator"], "1");
    assert_eq!(row["classical"]["denominator"], "4");
}

#[test]
fn worstcase_curve_and_crossing() {
    let output = qconst(&["worstcase", "--samples", "101"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eta,quantum_eps,classical_eps");
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[1], "0.000000000000,1.00000000000,1.00000000000");

    let output = qconst(&["worstcase", "--samples", "5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let crossing = doc["crossing_eta"].as_f64().unwrap();
    assert!(crossing > 0.79 && crossing < 0.80);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);

    let output = qconst(&["worstcase", "--samples", "1"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn montecarlo_is_byte_identical_and_agrees() {
    let args = [
        "montecarlo", "--n", "3", "--m", "2", "--k", "1", "--trials", "20000", "--seed", "7",
    ];
    let first = qconst(&args);
    assert!(first.status.success());
    let second = qconst(&args);
    assert_eq!(first.stdout, second.stdout);

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["exact_posterior"]["numerator"], "3");
    assert_eq!(doc["config"]["seed"], 7);

    let output = qconst(&[
        "montecarlo", "--n", "3", "--m", "2", "--k", "1", "--trials", "100", "--seed", "7",
        "--format", "csv",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn montecarlo_flags_degenerate_conditioning() {
    // M = 1 has no indication outcomes, so no trial can ever condition
    let output = qconst(&[
        "montecarlo", "--n", "2", "--m", "1", "--k", "1", "--trials", "50", "--seed", "3",
    ]);
    assert_eq!(output.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["conditioning_events"], 0);
    assert_eq!(doc["estimate"], serde_json::Value::Null);
}

#[test]
fn profiles_table() {
    let output = qconst(&["profiles", "--n", "3", "--m", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["j0,j1,j2,j3,count", "1,0,0,1,2", "0,1,1,0,6"]);
}

#[test]
fn selfcheck_fast_passes() {
    let output = qconst(&["selfcheck", "fast"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|line| line.starts_with("ok ")));
}

#[test]
fn figure_presets_expand_to_flag_sets() {
    let preset = qconst(&["fig2"]);
    let explicit = qconst(&["posterior", "--n", "8", "--m", "2", "--kmax", "7"]);
    assert!(preset.status.success());
    assert_eq!(preset.stdout, explicit.stdout);

    let fig1 = qconst(&["fig1"]);
    let explicit = qconst(&["worstcase", "--samples", "101"]);
    assert_eq!(fig1.stdout, explicit.stdout);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("qconst-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "n=2\nm=2\nkmax=1\n").unwrap();
    let config = path.to_str().unwrap();

    let from_file = qconst(&["posterior", "--config", config]);
    assert!(from_file.status.success());
    let explicit = qconst(&["posterior", "--n", "2", "--m", "2", "--kmax", "1"]);
    assert_eq!(from_file.stdout, explicit.stdout);

    // a flag beats the file value
    let overridden = qconst(&["posterior", "--config", config, "--n", "3"]);
    let explicit = qconst(&["posterior", "--n", "3", "--m", "2", "--kmax", "1"]);
    assert_eq!(overridden.stdout, explicit.stdout);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_lands_in_files() {
    let dir = std::env::temp_dir().join(format!("qconst-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.csv");
    let output = qconst(&["worstcase", "--samples", "3", "--out", path.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("eta,quantum_eps,classical_eps"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn help_and_bad_usage_exit_codes() {
    let output = qconst(&["--help"]);
    assert_eq!(output.status.code(), Some(0));

    let output = qconst(&["no-such-command"]);
    assert_eq!(output.status.code(), Some(2));

    let output = qconst(&["posterior", "--m", "2", "--kmax", "1"]); // missing --n
    assert_eq!(output.status.code(), Some(2));

    let output = qconst(&["dist", "0,1", "--m", "2", "--precision", "40"]);
    assert_eq!(output.status.code(), Some(2));
}
