//! End-to-end tests against the compiled binary.

use std::process::{Command, Output};

fn sdof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdof"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = sdof(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn region_mac_k2_lists_vertices_and_max_sum() {
    let text = stdout_of(&["region", "--family", "mac", "--k", "2"]);
    assert!(text.starts_with("# sdof v"));
    assert!(text.contains("2d1+d2<=1"));
    assert!(text.contains("(1/3, 1/3)"));
    assert!(text.contains("(1/2, 0)"));
    assert!(text.contains("vertices (4):"));
    assert!(text.contains("max_sum=2/3"));
}

#[test]
fn region_check_reports_violated_row() {
    let text = stdout_of(&[
        "region", "--family", "ic", "--k", "4", "--check", "3/5,3/5,0,0",
    ]);
    assert!(text.contains("infeasible: violates d1+d2<=1"));

    let text = stdout_of(&["region", "--family", "mac", "--k", "2", "--check", "1/3,1/3"]);
    assert!(text.contains("feasible (tight: 2d1+d2<=1; d1+2d2<=1)"));
}

#[test]
fn region_redundancy_summarizes_pairwise_rows() {
    let text = stdout_of(&["region", "--family", "ic", "--k", "3", "--redundancy"]);
    assert!(text.contains("pairwise rows: all redundant"));

    let text = stdout_of(&["region", "--family", "ic", "--k", "4", "--redundancy"]);
    assert!(text.contains("pairwise rows: 6 of 6 non-redundant"));
}

#[test]
fn vertices_json_matches_fixtures() {
    let text = stdout_of(&["vertices", "--family", "ic", "--k", "4"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["count"], 22);
    assert_eq!(json["max_sum"], "12/7");
    assert_eq!(json["sum_optima"][0][0], "3/7");
    assert_eq!(json["provenance"]["command"], "vertices");
    let vertices = json["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 22);
}

#[test]
fn leakage_table_has_expected_values() {
    let text = stdout_of(&["leakage", "--q", "1", "--groups", "2"]);
    assert!(text.contains("0.612"));
    assert!(text.contains("total leakage_bits=0.612197"));

    let text = stdout_of(&["leakage", "--q", "64", "--groups", "2"]);
    assert!(text.contains("total leakage_bits=0.721"));

    let text = stdout_of(&["leakage", "--q", "1", "--groups", "1"]);
    assert!(text.contains("total leakage_bits=0.000000"));
}

#[test]
fn oracle_reports_min_distance_and_bound() {
    let text = stdout_of(&[
        "oracle", "--dims", "1,1.4142135623730951", "--q", "1", "--a", "1", "--delta", "0.1",
        "--k-delta", "0.4",
    ]);
    assert!(text.contains("d_min=0.414214"));
    assert!(text.contains("holds=true"));
}

#[test]
fn sweep_csv_schema_and_slope_footer() {
    let text = stdout_of(&[
        "sweep", "--scheme", "helper", "--m", "2", "--delta", "0.05", "--p", "1e4..1e12:x100",
        "--seed", "7",
    ]);
    assert!(text.contains(
        "P,Q,a,error_rate,error_bound,rate_lb_bits,leakage_bits,secrecy_rate_bits,normalized_rate"
    ));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
    let slope_line = text
        .lines()
        .find(|l| l.starts_with("# fitted_slope,"))
        .expect("slope footer");
    let slope: f64 = slope_line.trim_start_matches("# fitted_slope,").parse().unwrap();
    assert!((slope - 0.623).abs() < 0.01, "slope {slope}");
}

#[test]
fn blind_sweep_adds_span_comment() {
    let text = stdout_of(&[
        "sweep", "--scheme", "blind", "--m", "2", "--delta", "0.05", "--p", "1e4..1e8:x100",
    ]);
    assert!(text.contains("# blind_span eve_jamming_dims=3"));
    assert!(text.contains("legit_jamming_dims=1"));
}

#[test]
fn simulate_emits_json_report() {
    let text = stdout_of(&[
        "simulate", "--scheme", "helper", "--m", "2", "--p", "100", "--trials", "2000",
        "--noise", "1e-9", "--seed", "5",
    ]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["report"]["error_rate"], 0.0);
    assert_eq!(json["report"]["Q"], 2);
    assert!(json["d_min"].as_f64().unwrap() > 0.0);
    assert!(json["report"]["secrecy_rate_bits"].as_f64().unwrap() > 0.0);
}

#[test]
fn identical_invocations_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    for path in [&path_a, &path_b] {
        let out = sdof(&[
            "sweep", "--scheme", "mac", "--k", "3", "--delta", "0.05", "--p", "1e4..1e10:x100",
            "--seed", "42", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn config_file_fills_missing_flags_and_cli_wins() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("leakage.toml");
    std::fs::write(&cfg, "q = 1\ngroups = \"2\"\nseed = 9\n").unwrap();

    let text = stdout_of(&["leakage", "--config", cfg.to_str().unwrap()]);
    assert!(text.contains("q=1"));
    assert!(text.contains("seed=9"));
    assert!(text.contains("0.612197"));

    // Explicit flag overrides the config value.
    let text = stdout_of(&["leakage", "--config", cfg.to_str().unwrap(), "--q", "2"]);
    assert!(text.contains("q=2"));
    assert!(!text.contains("0.612197"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage errors: 1.
    assert_eq!(sdof(&["region", "--k", "2"]).status.code(), Some(1));
    assert_eq!(sdof(&["region", "--family", "nope", "--k", "2"]).status.code(), Some(1));
    assert_eq!(sdof(&["region", "--family", "mac", "--k", "1"]).status.code(), Some(1));
    assert_eq!(sdof(&["leakage", "--q", "0", "--groups", "2"]).status.code(), Some(1));

    // Guard/limit errors: 2.
    assert_eq!(sdof(&["vertices", "--family", "ic", "--k", "8"]).status.code(), Some(2));
    let big_dims = "1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9";
    assert_eq!(
        sdof(&["oracle", "--dims", big_dims, "--q", "50", "--a", "1"]).status.code(),
        Some(2)
    );

    // Success: 0.
    assert_eq!(sdof(&["region", "--family", "mac", "--k", "2"]).status.code(), Some(0));
}
