//! End-to-end tests of the binary: exit-status contract, file outputs, the
//! JSON config mirror, and byte-for-byte determinism of reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

static DIR_COUNTER: AtomicUsize = AtomicUsize::new(0);

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "t2fuzz-cli-test-{}-{}-{}",
        std::process::id(),
        tag,
        DIR_COUNTER.fetch_add(1, Ordering::SeqCst)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_t2fuzz"))
        .args(args)
        .env_remove("T2FUZZ_OUT")
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn check_op_exit_status_contract() {
    let dir = scratch_dir("checkop");
    let out = dir.to_str().unwrap();

    let ok = run(&[
        "check-op", "--op", "product", "--grid-n", "64", "--out", out,
    ]);
    assert_eq!(
        exit_code(&ok),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&ok.stderr)
    );

    let ham = run(&[
        "check-op", "--op", "hamacher", "--param", "2.0", "--grid-n", "64", "--out", out,
    ]);
    assert_eq!(exit_code(&ham), 0);

    let broken = run(&["check-op", "--op", "mean", "--grid-n", "64", "--out", out]);
    assert_eq!(exit_code(&broken), 1);
    let text = std::fs::read_to_string(dir.join("check-op-mean.txt")).unwrap();
    assert!(text.contains("T2   FAIL"));
    assert!(text.contains("T4   FAIL"));

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("check-op-mean.json")).unwrap())
            .unwrap();
    assert_eq!(json["pass"], serde_json::Value::Bool(false));

    let unknown = run(&["check-op", "--op", "nope", "--out", out]);
    assert_eq!(exit_code(&unknown), 2);
}

#[test]
fn convolve_chi_composition_and_neutral() {
    let dir = scratch_dir("convolve");
    let out = dir.to_str().unwrap();

    // chi:0.5 ⋏ chi:0.5 under product/product = chi:0.25
    let result = run(&[
        "convolve",
        "--star",
        "product",
        "--combiner",
        "product",
        "--f",
        "chi:0.5",
        "--g",
        "chi:0.5",
        "--resolution",
        "8",
        "--out",
        out,
    ]);
    assert_eq!(exit_code(&result), 0);
    let csv = std::fs::read_to_string(dir.join("result.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,value");
    assert_eq!(lines[3], "0.25,1"); // bucket at 0.25 holds the spike
    assert_eq!(lines[2], "0.125,0");

    // f ⋏ chi:1 under min/min returns f itself
    let neutral = run(&[
        "convolve",
        "--star",
        "minimum",
        "--combiner",
        "minimum",
        "--f",
        "tent:0.5,0.25,0.25",
        "--g",
        "chi:1",
        "--resolution",
        "4",
        "--out",
        out,
    ]);
    assert_eq!(exit_code(&neutral), 0);
    let csv = std::fs::read_to_string(dir.join("result.csv")).unwrap();
    assert_eq!(
        csv,
        "t,value\n0,0.25\n0.25,0.625\n0.5,1\n0.75,0.625\n1,0.25\n"
    );
}

#[test]
fn convolve_rejects_non_surjective_combiner() {
    let dir = scratch_dir("nonsurjective");
    let result = run(&[
        "convolve",
        "--star",
        "minimum",
        "--combiner",
        "scaled-product",
        "--f",
        "chi:0.5",
        "--g",
        "chi:0.5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&result), 2);
    assert!(String::from_utf8_lossy(&result.stderr).contains("surjective"));
}

#[test]
fn verify_theorems_slice_reports_linkage() {
    let dir = scratch_dir("verify");
    let out = dir.to_str().unwrap();
    let result = run(&[
        "verify-theorems",
        "--mode",
        "combiner",
        "--star",
        "minimum",
        "--combiner",
        "mean",
        "--grid-n",
        "64",
        "--out",
        out,
    ]);
    assert_eq!(
        exit_code(&result),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("verify-theorems.json")).unwrap())
            .unwrap();
    let cell = &json["cells"][0];
    assert_eq!(cell["consistent"], serde_json::Value::Bool(true));
    let links = cell["links"].as_array().unwrap();
    assert!(links
        .iter()
        .any(|l| l["scalar"] == "T4" && l["lifted"] == "O3" && l["reproduced"] == true));
}

#[test]
fn verify_theorems_is_byte_deterministic() {
    let dir_a = scratch_dir("det-a");
    let dir_b = scratch_dir("det-b");
    for dir in [&dir_a, &dir_b] {
        let result = run(&[
            "verify-theorems",
            "--mode",
            "star",
            "--star",
            "left-projection",
            "--combiner",
            "minimum",
            "--grid-n",
            "64",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&result), 0);
    }
    let a = std::fs::read(dir_a.join("verify-theorems.json")).unwrap();
    let b = std::fs::read(dir_b.join("verify-theorems.json")).unwrap();
    assert_eq!(a, b, "identical configs must produce identical reports");
}

#[test]
fn config_file_mirrors_flags() {
    let dir = scratch_dir("config");
    let config_path = dir.join("run.json");
    std::fs::write(
        &config_path,
        serde_json::json!({
            "command": "check-op",
            "op": "lukasiewicz",
            "grid_n": 64,
            "out": dir.to_str().unwrap(),
        })
        .to_string(),
    )
    .unwrap();
    let result = run(&["--config", config_path.to_str().unwrap()]);
    assert_eq!(
        exit_code(&result),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    assert!(dir.join("check-op-lukasiewicz.json").exists());
}

#[test]
fn sweep_convex_family_flips_at_lambda_one() {
    let dir = scratch_dir("sweep");
    let result = run(&[
        "sweep",
        "--family",
        "convex-min-mean",
        "--values",
        "0,0.5,1",
        "--combiner",
        "minimum",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(
        exit_code(&result),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("sweep.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert!(rows[0].starts_with("param,"));
    // lambda < 1 breaks the neutral element, lambda = 1 is plain min
    assert!(rows[1].starts_with("0,") && rows[1].contains("false"));
    assert!(rows[2].starts_with("0.5,") && rows[2].contains("false"));
    let last: Vec<&str> = rows[3].split(',').collect();
    assert_eq!(last[0], "1");
    assert_eq!(&last[1..5], &["true", "true", "true", "true"]);
}

#[test]
fn grid_sweep_residuals_shrink() {
    // Resolutions stay multiples of 64 so the generator's breakpoint
    // lattice is resolved at every step.
    let dir = scratch_dir("gridsweep");
    let result = run(&[
        "sweep",
        "--grid-values",
        "64,128,256",
        "--star",
        "product",
        "--combiner",
        "product",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(
        exit_code(&result),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("sweep.csv")).unwrap();
    let residuals: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(residuals.len(), 3);
    assert!(
        residuals[1] <= residuals[0] && residuals[2] <= residuals[1],
        "residuals should not grow under refinement: {residuals:?}"
    );
}

#[test]
fn export_function_outputs() {
    let dir = scratch_dir("export");
    let result = run(&[
        "export-function",
        "--f",
        "v:0.5",
        "--resolution",
        "4",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&result), 0);
    let csv = std::fs::read_to_string(dir.join("function.csv")).unwrap();
    assert_eq!(
        csv,
        "t,value\n0,1\n0.25,0.875\n0.5,0.75\n0.75,0.625\n1,0.5\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("function.json")).unwrap()).unwrap();
    assert_eq!(json["breakpoints"].as_array().unwrap().len(), 2);
}

#[test]
fn catalog_prints_manifest() {
    let result = run(&["catalog"]);
    assert_eq!(exit_code(&result), 0);
    let manifest: serde_json::Value = serde_json::from_slice(&result.stdout).unwrap();
    let names: Vec<&str> = manifest
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for required in [
        "minimum",
        "product",
        "lukasiewicz",
        "drastic",
        "nilpotent-minimum",
        "hamacher",
        "maximum",
        "probabilistic-sum",
        "bounded-sum",
        "drastic-conorm",
        "mean",
        "scaled-product",
        "left-projection",
        "asym-power",
    ] {
        assert!(names.contains(&required), "catalog missing {required}");
    }
}

/// User-supplied operation loaded from a CSV grid table.
#[test]
fn check_op_accepts_csv_table() {
    let dir = scratch_dir("table");
    let mut csv = String::from("x,y,value\n");
    let n = 16;
    for i in 0..=n {
        for j in 0..=n {
            let (x, y) = (i as f64 / n as f64, j as f64 / n as f64);
            csv.push_str(&format!("{x},{y},{}\n", x.min(y)));
        }
    }
    let table_path = dir.join("min.csv");
    std::fs::write(&table_path, csv).unwrap();
    let result = run(&[
        "check-op",
        "--op",
        "table-min",
        "--op-table",
        table_path.to_str().unwrap(),
        "--grid-n",
        "64",
        "--out",
        dir.to_str().unwrap(),
    ]);
    // bilinear interpolation of the min table reproduces min on the grid
    assert_eq!(
        exit_code(&result),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
}

#[test]
fn output_dir_env_variable() {
    let dir = scratch_dir("envvar");
    let result = Command::new(env!("CARGO_BIN_EXE_t2fuzz"))
        .args(["export-function", "--f", "chi:0.5", "--resolution", "4"])
        .env("T2FUZZ_OUT", dir.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(0));
    assert!(Path::new(&dir).join("function.csv").exists());
}
