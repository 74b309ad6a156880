//! End-to-end checks of the `steiner-lab` binary: output values, exit
//! codes, artifact formats, and byte determinism under fixed seeds.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steiner-lab"))
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("steiner-lab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn first_number(out: &Output) -> f64 {
    stdout(out).lines().next().unwrap().trim().parse().unwrap()
}

const TRIANGLE: &str = "plane\n0,0\n1,0\n0.5,0.86602540378443865\n";

#[test]
fn dist_prints_the_euclidean_norm() {
    let path = write_fixture("pair.txt", "plane\n0,0\n3,4\n");
    let out = bin().args(["dist", "--points"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert_eq!(first_number(&out), 5.0);
}

#[test]
fn mst_smt_ratio_on_the_unit_triangle() {
    let path = write_fixture("triangle.txt", TRIANGLE);
    let out = bin().args(["mst", "--points"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!((first_number(&out) - 2.0).abs() < 1e-12);

    let out = bin().args(["smt", "--points"]).arg(&path).args(["--seed", "1"]).output().unwrap();
    assert!(out.status.success());
    assert!((first_number(&out) - 3.0f64.sqrt()).abs() < 1e-6);

    let out = bin().args(["ratio", "--points"]).arg(&path).args(["--seed", "1"]).output().unwrap();
    assert!(out.status.success());
    assert!((first_number(&out) - 0.8660254).abs() < 1e-6);
}

#[test]
fn json_output_contains_the_tree() {
    let path = write_fixture("triangle_json.txt", TRIANGLE);
    let out = bin()
        .args(["smt", "--points"])
        .arg(&path)
        .args(["--seed", "1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"vertices\""), "{text}");
    assert!(text.contains("\"kind\":\"steiner\""), "{text}");
    assert!(text.contains("\"edges\""), "{text}");
}

#[test]
fn curve_writes_a_strictly_decreasing_csv() {
    let out_path = std::env::temp_dir().join("steiner-lab-cli-tests/m.csv");
    let out = bin()
        .args(["curve", "--r-min", "0.1", "--r-max", "10", "--steps", "100", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,m"));
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 100);
    for w in values.windows(2) {
        assert!(w[1] < w[0], "column not strictly decreasing");
    }
}

#[test]
fn curve_without_out_prints_to_stdout() {
    let out = bin()
        .args(["curve", "--r-min", "1", "--r-max", "2", "--steps", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("r,m\n"), "{text}");
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn ratio_json_reports_all_three_numbers() {
    let path = write_fixture("triangle_ratio_json.txt", TRIANGLE);
    let out = bin()
        .args(["ratio", "--points"])
        .arg(&path)
        .args(["--seed", "1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"mst\""), "{text}");
    assert!(text.contains("\"smt_upper\""), "{text}");
    assert!(text.contains("\"ratio\""), "{text}");
    assert!(text.contains("\"tree\""), "{text}");
}

#[test]
fn search_prints_bound_and_witness() {
    let out = bin()
        .args(["search", "--geometry", "plane", "--n", "3", "--iters", "12", "--seed", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("witness"), "{text}");
    assert!(text.contains("plane"), "{text}");
    let best: f64 = text.lines().next().unwrap().parse().unwrap();
    assert!((0.5 - 1e-9..=1.0 + 1e-9).contains(&best));
}

#[test]
fn lift_check_passes_on_a_small_torus_triangle() {
    let path = write_fixture(
        "torus_triangle.txt",
        "torus:1,0;0,1\n0.2,0.2\n0.3,0.2\n0.25,0.2866\n",
    );
    let out = bin()
        .args(["lift-check", "--points"])
        .arg(&path)
        .args(["--seed", "3"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("check lift_isometry PASS"), "{text}");
    assert!(text.contains("check cover_bound PASS"), "{text}");
    assert!(text.contains("check spanning_monotone PASS"), "{text}");
}

#[test]
fn verify_quick_exits_zero_with_pass_lines() {
    let out = bin().args(["verify", "--seed", "7", "--quick"]).output().unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10, "{text}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let path = write_fixture("determinism.txt", "plane\n0,0\n2,0\n1,1.5\n0.3,0.9\n");
    let run = || {
        bin()
            .args(["smt", "--points"])
            .arg(&path)
            .args(["--seed", "42", "--json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let search = || {
        bin()
            .args(["search", "--geometry", "disk", "--n", "3", "--iters", "9", "--seed", "11"])
            .output()
            .unwrap()
    };
    assert_eq!(search().stdout, search().stdout);

    let verify = || bin().args(["verify", "--seed", "3", "--quick"]).output().unwrap();
    assert_eq!(verify().stdout, verify().stdout);
}

#[test]
fn usage_errors_exit_two() {
    // Unknown geometry tag in the file.
    let path = write_fixture("bad_geometry.txt", "donut\n0,0\n");
    let out = bin().args(["mst", "--points"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Invalid point for the geometry.
    let path = write_fixture("bad_point.txt", "disk\n1.5,0\n");
    let out = bin().args(["mst", "--points"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");

    // Missing file.
    let out = bin().args(["mst", "--points", "/nonexistent/x.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // dist with the wrong point count.
    let path = write_fixture("three.txt", TRIANGLE);
    let out = bin().args(["dist", "--points"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // clap-level usage error.
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn canonicalization_notice_goes_to_stderr() {
    let path = write_fixture("reduce.txt", "torus:1,0;0,1\n1.2,0.3\n0.1,0.1\n");
    let out = bin().args(["mst", "--points"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("canonical representative"), "{err}");
}
