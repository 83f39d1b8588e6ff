//! End-to-end tests of the `wcentropy` binary: exit codes, file formats,
//! and determinism of every subcommand.

use std::path::Path;
use std::process::{Command, Output};

use wcentropy::empirical::prefix_curves;
use wcentropy::io::parse_curves_csv;
use wcentropy::weight::WeightFunction;

fn wcentropy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcentropy"))
        .args(args)
        .output()
        .expect("spawn wcentropy")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_temp(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn estimate_two_value_file_matches_hand_integral() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(dir.path(), "two.csv", "1.0, 2.0\n");
    let out = wcentropy(&["estimate", "--input", &input, "--wf", "constant:1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let want = 0.5 * f64::ln(2.0);
    for key in ["wcre", "wce"] {
        let v = doc[key]["value"].as_f64().unwrap();
        assert!((v - want).abs() < 1e-12, "{key} = {v}");
        assert_eq!(doc[key]["method"], "order_stats");
    }
    assert_eq!(doc["n"], 2);
}

#[test]
fn estimate_defaults_to_bundled_dataset() {
    let out = wcentropy(&["estimate", "--wf", "constant:1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["n"], 50);
    let wcre = doc["wcre"]["value"].as_f64().unwrap();
    let wce = doc["wce"]["value"].as_f64().unwrap();
    assert!(wcre > 0.0 && wcre.is_finite());
    assert!(wce > 0.0 && wce.is_finite());
    assert_eq!(doc["integrability"]["valid"], true);
}

#[test]
fn estimate_warns_on_integrability_failure_but_still_computes() {
    let out = wcentropy(&["estimate", "--wf", "exptilt:1"]);
    assert_eq!(out.status.code(), Some(0));
    let err = stderr_str(&out);
    assert!(err.contains("integrability"), "no warning: {err}");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["integrability"]["valid"], false);
    assert!(doc["wcre"]["value"].as_f64().unwrap().is_finite());
}

#[test]
fn estimate_rejects_bad_inputs_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let negative = write_temp(dir.path(), "neg.csv", "1.0 -1.0\n");
    let out = wcentropy(&["estimate", "--input", &negative]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains(">= 0"));

    let garbled = write_temp(dir.path(), "bad.csv", "1.0\n2.0 x3\n");
    let out = wcentropy(&["estimate", "--input", &garbled]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_str(&out);
    assert!(err.contains("line 2"), "{err}");

    let out = wcentropy(&["estimate", "--input", "/nonexistent/file.csv"]);
    assert_eq!(out.status.code(), Some(1));

    let single = write_temp(dir.path(), "one.csv", "1.0\n");
    let out = wcentropy(&["estimate", "--input", &single]);
    assert_eq!(out.status.code(), Some(1));

    let out = wcentropy(&["estimate", "--wf", "nonsense:1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curves_csv_round_trips_and_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("curves.csv");
    let out = wcentropy(&[
        "curves",
        "--wf",
        "gaussian:0.5",
        "--n-min",
        "5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));

    let text = std::fs::read_to_string(&out_path).unwrap();
    let parsed = parse_curves_csv(&text).unwrap();
    let wf = WeightFunction::gaussian(0.5).unwrap();
    let expected = prefix_curves(&wcentropy::dataset::example1_values(), &wf, 5).unwrap();
    assert_eq!(parsed, expected, "17-digit serialization must round-trip");

    // sidecar manifest names the series
    let manifest_text =
        std::fs::read_to_string(dir.path().join("curves.csv.manifest.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&manifest_text).unwrap();
    assert_eq!(manifest["series"][0]["wf"], "gaussian:0.5");
    assert_eq!(manifest["series"][0]["label"], "σ=0.5");
    assert_eq!(manifest["n_min"], 5);
}

#[test]
fn curves_sorted_order_reproduces_reference_values() {
    let out = wcentropy(&["curves", "--wf", "gaussian:0.5", "--prefix-order", "sorted"]);
    assert_eq!(out.status.code(), Some(0));
    let points = parse_curves_csv(&stdout_str(&out)).unwrap();
    let at35 = points.iter().find(|p| p.n == 35).unwrap();
    let at40 = points.iter().find(|p| p.n == 40).unwrap();
    assert!((at35.wce - 0.1872).abs() < 5e-4, "{}", at35.wce);
    assert!((at40.wce - 0.1847).abs() < 5e-4, "{}", at40.wce);
}

#[test]
fn curves_multi_weight_columns_are_ordered_in_t() {
    let out = wcentropy(&[
        "curves",
        "--wf",
        "exptilt:-1",
        "--wf",
        "exptilt:-0.2",
        "--wf",
        "exptilt:-0.0001",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "n,wcre[exptilt:-1],wce[exptilt:-1],wcre[exptilt:-0.2],wce[exptilt:-0.2],\
         wcre[exptilt:-0.0001],wce[exptilt:-0.0001]"
    );
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!(v.len(), 7);
        // larger t dominates pointwise, so both measures are ordered per row
        assert!(v[1] <= v[3] && v[3] <= v[5], "wcre ordering at n={}", v[0]);
        assert!(v[2] <= v[4] && v[4] <= v[6], "wce ordering at n={}", v[0]);
    }
}

#[test]
fn curves_json_format_carries_manifest_and_points() {
    let out = wcentropy(&[
        "curves",
        "--wf",
        "gaussian:1",
        "--format",
        "json",
        "--n-min",
        "48",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["manifest"]["prefix_order"], "row-major");
    let points = doc["series"][0]["points"].as_array().unwrap();
    assert_eq!(points.len(), 3); // n = 48, 49, 50
    assert_eq!(points[0]["n"], 48);
}

#[test]
fn curves_column_major_requires_rectangular_grid() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write_temp(dir.path(), "ragged.csv", "1 2 3\n4 5\n");
    let out = wcentropy(&[
        "curves",
        "--input",
        &ragged,
        "--prefix-order",
        "column-major",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // row-major has no shape requirement
    let out = wcentropy(&["curves", "--input", &ragged]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn curves_rejects_bad_n_min() {
    let out = wcentropy(&["curves", "--n-min", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wcentropy(&["curves", "--n-min", "51"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn convergence_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = wcentropy(&[
            "convergence",
            "--wf",
            "gaussian:1",
            "--lambda",
            "0.5",
            "--sizes",
            "16,64",
            "--reps",
            "3",
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());

    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.contains("# measure=wcre"));
    assert!(text.contains("# measure=wce"));
    assert!(text.contains("seed=5"));
    assert_eq!(
        text.matches("n,mean_abs_err,max_abs_err,stddev,truth")
            .count(),
        2
    );
}

#[test]
fn convergence_json_report_is_structured() {
    let out = wcentropy(&[
        "convergence",
        "--wf",
        "constant:1",
        "--sizes",
        "8,16",
        "--reps",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert!(doc["rows"][0]["wcre"]["truth"].as_f64().unwrap() > 0.0);
}

#[test]
fn convergence_gate_exit_codes() {
    let out = wcentropy(&[
        "convergence",
        "--wf",
        "exptilt:0.5",
        "--sizes",
        "2,4",
        "--reps",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("integrability"));
    // identity weight at the default p = 2 is also refused...
    let out = wcentropy(&[
        "convergence",
        "--wf",
        "identity",
        "--sizes",
        "2,4",
        "--reps",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // ...and accepted with an admissible exponent
    let out = wcentropy(&[
        "convergence",
        "--wf",
        "identity",
        "--p",
        "3",
        "--sizes",
        "2,4",
        "--reps",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
}

#[test]
fn identities_hand_case_passes() {
    let out = wcentropy(&["identities", "--lambda", "1", "--wf", "constant:1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    for check in checks {
        assert_eq!(check["status"], "pass");
        // both sides of both identities equal 1 for Exp(1) with flat weight
        assert!((check["lhs"].as_f64().unwrap() - 1.0).abs() < 1e-8);
        assert!(check["abs_discrepancy"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn identities_divergent_cells_are_reported_not_failed() {
    let out = wcentropy(&[
        "identities",
        "--lambda",
        "1",
        "--wf",
        "exptilt:2",
        "--wf",
        "constant:1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let statuses: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"divergent"));
    assert!(statuses.contains(&"pass"));
}

#[test]
fn identities_csv_format() {
    let out = wcentropy(&[
        "identities",
        "--lambda",
        "2",
        "--wf",
        "gaussian:1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.starts_with("check,lambda,wf,status,lhs,rhs,abs_discrepancy,tolerance,pass"));
    assert_eq!(text.lines().count(), 3); // header + kl + equilibrium
}

#[test]
fn help_and_usage_exit_codes() {
    let out = wcentropy(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = wcentropy(&["estimate", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = wcentropy(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wcentropy(&[]);
    assert_eq!(out.status.code(), Some(1));
}
