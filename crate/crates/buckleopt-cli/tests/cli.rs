//! End-to-end checks of the command-line surface on small inputs.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_buckleopt"))
}

fn write(path: &Path, text: &str) {
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(path, text).unwrap();
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("buckleopt-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn eig_prints_ascending_values_and_writes_record() {
    let dir = temp_dir("eig");
    let domain = dir.join("square.json");
    write(&domain, r#"{"type":"rect","corner":[0.0,0.0],"w":1.0,"h":1.0}"#);
    let out = dir.join("record.json");
    let output = bin()
        .args([
            "eig",
            domain.to_str().unwrap(),
            "--h",
            "0.0625",
            "--count",
            "3",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    let values: Vec<f64> = stdout
        .lines()
        .filter_map(|l| l.split(" = ").nth(1))
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let lambda = record["lambda"].as_array().unwrap();
    assert_eq!(lambda.len(), 3);
    let objective = record["objective_value"].as_f64().unwrap();
    let perimeter = record["perimeter"].as_f64().unwrap();
    let recomputed = perimeter * perimeter * lambda[2].as_f64().unwrap();
    assert!((objective - recomputed).abs() <= 1e-12 * objective);
}

#[test]
fn eig_missing_file_exits_2() {
    let output = bin()
        .args(["eig", "/nonexistent/domain.json", "--h", "0.1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());
}

#[test]
fn eig_invalid_domain_exits_2() {
    let dir = temp_dir("bad-domain");
    let domain = dir.join("bad.json");
    write(&domain, r#"{"type":"disk","center":[0.0,0.0],"radius":-1.0}"#);
    let output = bin()
        .args(["eig", domain.to_str().unwrap(), "--h", "0.1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn eig_unreachable_tolerance_exits_3() {
    let dir = temp_dir("tol");
    let domain = dir.join("disk.json");
    write(&domain, r#"{"type":"disk","center":[0.0,0.0],"radius":1.0}"#);
    let output = bin()
        .args([
            "eig",
            domain.to_str().unwrap(),
            "--h",
            "0.02",
            "--tol",
            "1e-30",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn eig_dump_flags_write_debug_files() {
    let dir = temp_dir("dumps");
    let domain = dir.join("square.json");
    write(&domain, r#"{"type":"rect","corner":[0.0,0.0],"w":1.0,"h":1.0}"#);
    let mask = dir.join("mask.pgm");
    let ops = dir.join("ops");
    let output = bin()
        .args([
            "eig",
            domain.to_str().unwrap(),
            "--h",
            "0.25",
            "--dump-mask",
            mask.to_str().unwrap(),
            "--dump-operators",
            ops.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let pgm = std::fs::read_to_string(&mask).unwrap();
    assert!(pgm.starts_with("P2\n"));
    let a_text = std::fs::read_to_string(ops.join("A.txt")).unwrap();
    let first = a_text.lines().next().unwrap();
    // header: n nnz
    assert_eq!(first.split(' ').count(), 2);
    let b_text = std::fs::read_to_string(ops.join("B.txt")).unwrap();
    // 9 unknowns on the quarter-spaced unit square
    assert!(b_text.starts_with("9 "));
}

fn small_star_config(seed: u64) -> String {
    format!(
        r#"{{
        "family": {{"type": "star", "k": 1, "start_coeffs": [[0.1, 0.0]]}},
        "target_perimeter": 6.283185307179586,
        "eigen_index": 1,
        "grid_h": 0.15,
        "max_evals": 8,
        "seed": {seed},
        "stop_tol": 1e-6
    }}"#
    )
}

#[test]
fn optimize_writes_outputs_and_reruns_byte_identical() {
    let dir = temp_dir("opt");
    let config = dir.join("config.json");
    write(&config, &small_star_config(3));
    let run = |out: &Path| {
        let output = bin()
            .args([
                "optimize",
                config.to_str().unwrap(),
                "--out-dir",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(output.status.success(), "{output:?}");
    };
    let out1 = dir.join("run1");
    let out2 = dir.join("run2");
    run(&out1);
    run(&out2);
    let trace1 = std::fs::read(out1.join("trace.csv")).unwrap();
    let trace2 = std::fs::read(out2.join("trace.csv")).unwrap();
    assert_eq!(trace1, trace2, "same config + seed must give identical CSV");
    let text = String::from_utf8(trace1).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "eval_count,objective,perimeter,lambda1,hausdorff_to_disk");
    assert!(text.lines().count() >= 2);

    let final_domain: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out1.join("final_domain.json")).unwrap())
            .unwrap();
    assert_eq!(final_domain["type"], "star");

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out1.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "optimize");
    assert!(manifest["finished_unix_ms"].is_number());
    for listed in manifest["outputs"].as_array().unwrap() {
        assert!(Path::new(listed.as_str().unwrap()).exists());
    }
}

#[test]
fn optimize_env_seed_overrides_config() {
    let dir = temp_dir("opt-env");
    let config = dir.join("config.json");
    write(&config, &small_star_config(3));
    let out = dir.join("run");
    let output = bin()
        .env("BUCKLEOPT_SEED", "99")
        .args([
            "optimize",
            config.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["seed"], 99);
}

#[test]
fn optimize_rejects_bad_config() {
    let dir = temp_dir("opt-bad");
    let config = dir.join("config.json");
    write(
        &config,
        r#"{"family": {"type": "star", "k": 64}, "target_perimeter": 1.0,
            "eigen_index": 1, "max_evals": 5}"#,
    );
    let output = bin()
        .args([
            "optimize",
            config.to_str().unwrap(),
            "--out-dir",
            dir.join("out").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn sweep_single_member_emits_one_row() {
    let dir = temp_dir("sweep-one");
    let config = dir.join("sweep.json");
    let out = dir.join("sweep.csv");
    write(
        &config,
        &format!(
            r#"{{"n_list": [12], "perimeter": 6.283185307179586,
                 "grid_divisor": 24, "extrapolate": false,
                 "out": "{}"}}"#,
            out.display()
        ),
    );
    let output = bin()
        .args(["sweep", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "header + one member row");
    assert!(lines[0].starts_with("member,n,d_hausdorff,lambda1,disk_lambda1"));
    assert!(lines[1].starts_with("ngon-12,12,"));
}

#[test]
fn sweep_ngon_family_converges_to_the_disk() {
    let dir = temp_dir("sweep-family");
    let config = dir.join("sweep.json");
    let out = dir.join("family.csv");
    write(
        &config,
        &format!(
            r#"{{"n_list": [8, 16, 32, 64], "perimeter": 6.283185307179586,
                 "grid_divisor": 48, "extrapolate": true,
                 "out": "{}"}}"#,
            out.display()
        ),
    );
    let output = bin()
        .args(["sweep", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    let parse = |s: &str| s.parse::<f64>().unwrap();

    let disk_lambda = parse(rows[0][4]);
    let disk_oracle = buckleopt_testkit::bessel::disk_buckling_lambda1();
    assert!((disk_lambda - disk_oracle).abs() / disk_oracle < 0.02);

    let mut last_dh = f64::INFINITY;
    let mut last_lambda = f64::INFINITY;
    for row in &rows {
        let n = parse(row[1]);
        let dh = parse(row[2]);
        let lambda = parse(row[3]);
        // closed-form oracle for an n-gon inscribed in the unit disk
        let want_dh = 1.0 - (std::f64::consts::PI / n).cos();
        assert!((dh - want_dh).abs() < 1e-3, "n={n}: d_H {dh} vs {want_dh}");
        assert!(dh < last_dh, "d_H column must decrease strictly");
        // eigenvalues decrease toward the disk value and stay above it
        assert!(lambda < last_lambda, "lambda column must decrease");
        assert!(lambda >= disk_lambda * (1.0 - 0.02));
        last_dh = dh;
        last_lambda = lambda;
    }
    // ... and the finest member is within 2% of the limit
    assert!((last_lambda - disk_oracle).abs() / disk_oracle < 0.02);
}
