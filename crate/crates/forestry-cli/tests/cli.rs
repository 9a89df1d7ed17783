//! End-to-end checks of the command-line contract: payload shapes, the
//! config echo, exit codes, and reproducibility.

use std::process::{Command, Output};

fn forestry(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forestry"))
        .args(args)
        .env("FORESTRY_OUTPUT_DIR", std::env::temp_dir())
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON object")
}

#[test]
fn constants_row_for_delta_3() {
    let out = forestry(&["constants", "--delta-max", "3"]);
    let payload = stdout_json(&out);
    assert_eq!(payload["config"]["command"], "constants");
    let row = &payload["result"]["constants"][0];
    assert_eq!(row["delta"], 3);
    let sqrt2 = std::f64::consts::SQRT_2;
    assert!((row["alpha"].as_f64().unwrap() - sqrt2).abs() < 1e-9);
    assert!((row["a"].as_f64().unwrap() - (1.0 + sqrt2)).abs() < 1e-9);
}

#[test]
fn count_tree_five_three_is_120() {
    let payload = stdout_json(&forestry(&["count", "tree", "--n", "5", "--delta", "3"]));
    assert_eq!(payload["result"]["count"], "120");
}

#[test]
fn window_dense_example() {
    let payload = stdout_json(&forestry(&[
        "window", "dense", "--n", "200", "--p", "0.5", "--delta", "3",
    ]));
    assert_eq!(payload["result"]["window_dense"][0], 17);
    assert_eq!(payload["result"]["window_dense"][1], 18);
}

#[test]
fn moment_accepts_exact_rationals() {
    let payload = stdout_json(&forestry(&[
        "moment", "--kind", "y", "--n", "3", "--k", "3", "--p", "1/2", "--delta", "3",
    ]));
    assert_eq!(payload["result"]["expectation"]["rational"], "3/8");
}

#[test]
fn bare_decimal_p_is_substituted_with_warning() {
    let out = forestry(&[
        "moment", "--kind", "y", "--n", "3", "--k", "3", "--p", "0.5", "--delta", "3",
    ]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("substituted"), "stderr: {stderr}");
    let payload = stdout_json(&out);
    assert_eq!(payload["result"]["expectation"]["rational"], "3/8");
}

#[test]
fn payloads_are_reproducible_outside_meta() {
    let a = stdout_json(&forestry(&["count", "rooted-forest", "--n", "7", "--m", "2", "--delta", "3"]));
    let b = stdout_json(&forestry(&["count", "rooted-forest", "--n", "7", "--m", "2", "--delta", "3"]));
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("meta");
        v
    };
    assert_eq!(
        serde_json::to_string(&strip(a)).unwrap(),
        serde_json::to_string(&strip(b)).unwrap()
    );
}

#[test]
fn exit_codes_for_usage_and_caps() {
    let usage = forestry(&["count", "tree", "--n", "1", "--delta", "3"]);
    assert_eq!(usage.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&usage.stderr).expect("machine-readable error");
    assert_eq!(err["error"]["kind"], "usage");

    let cap = forestry(&["count", "tree", "--n", "600", "--delta", "3"]);
    assert_eq!(cap.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&cap.stderr).expect("error object");
    assert_eq!(err["error"]["kind"], "cap_exceeded");

    // csv is rejected for non-tabular payloads
    let csv = forestry(&["count", "tree", "--n", "5", "--delta", "3", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(2));
}

#[test]
fn experiment_writes_jsonl_and_is_deterministic_across_jobs() {
    let dir = std::env::temp_dir();
    let path = dir.join("moment-n12-k3-d3-seed9.jsonl");
    let _ = std::fs::remove_file(&path);
    let run = |jobs: &str| {
        let out = forestry(&[
            "experiment", "moment", "--n", "12", "--k", "3", "--p", "1/2", "--delta", "3",
            "--trials", "100", "--seed", "9", "--jobs", jobs,
        ]);
        let payload = stdout_json(&out);
        let records = std::fs::read_to_string(&path).expect("records written");
        (payload, records)
    };
    let (payload1, records1) = run("1");
    let (payload2, records2) = run("2");
    // wall_time is per-run metadata; everything else must be bit-identical
    // regardless of worker count.
    let strip_times = |records: &str| -> Vec<serde_json::Value> {
        records
            .lines()
            .map(|line| {
                let mut v: serde_json::Value = serde_json::from_str(line).expect("JSONL line");
                v.as_object_mut().unwrap().remove("wall_time_ms");
                v
            })
            .collect()
    };
    assert_eq!(
        strip_times(&records1),
        strip_times(&records2),
        "trial records depend on worker count"
    );
    assert_eq!(payload1["result"]["y"], payload2["result"]["y"]);
    assert_eq!(
        records1.lines().count(),
        100,
        "one JSONL record per trial"
    );
    let first: serde_json::Value =
        serde_json::from_str(records1.lines().next().unwrap()).expect("JSONL line");
    assert_eq!(first["trial_index"], 0);
    assert!(first["y_count"].is_string());
}

#[test]
fn compare_exact_refuses_past_cap() {
    let out = forestry(&[
        "asymptotic", "tree", "--n", "1000", "--delta", "3", "--compare-exact",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_quick_codecs_passes() {
    let out = forestry(&["verify", "codecs", "--quick"]);
    let payload = stdout_json(&out);
    assert_eq!(payload["result"]["passed"], true);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("[PASS] C1"), "stderr: {stderr}");
}
