use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vilenkin-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn kernel_dump_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kernel.csv");
    let o = lab(&["kernel", "--kind", "fejer", "--n", "12", "--radix", "2,3,4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("radix=2,3,4;N=3;kernel=fejer;n=12"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 24);
    // K_12(0) = (1/12) sum_{k=1}^{12} k
    assert_eq!(rows[0], "0,6.5,0.0");
}

#[test]
fn paley_lemma_from_cli() {
    let o = lab(&["kernel", "--kind", "dirichlet", "--n", "6", "--radix", "2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let expected = if cols[0] as usize % 6 == 0 { 6.0 } else { 0.0 };
        assert!((cols[1] - expected).abs() < 1e-12 && cols[2].abs() < 1e-12, "{line}");
    }
}

#[test]
fn transform_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.csv");
    let back = dir.path().join("back.csv");
    let o = lab(&["transform", "--seed", "5", "--oracle", "--out", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let header = read(&spec).lines().next().unwrap().to_string();
    assert!(header.starts_with("radix=2,3,4;N=3;kind=spectrum;"));
    assert!(header.contains("seed=5"));
    let o = lab(&["transform", "--inverse", "--input", spec.to_str().unwrap(), "--out", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(&back).lines().count(), 25);
    assert!(read(&back).starts_with("radix=2,3,4;N=3\n"));
}

#[test]
fn mean_on_character_matches_three_over_n() {
    let o = lab(&["mean", "--family", "fejer", "--fixture", "psi:3", "--p", "inf", "--n", "4..=24"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("radix=2,3,4;N=3;"));
    assert_eq!(lines.next(), Some("n,error_p"));
    for line in lines {
        let (n, e) = line.split_once(',').unwrap();
        let n: f64 = n.parse().unwrap();
        let e: f64 = e.parse().unwrap();
        assert!((e - 3.0 / n).abs() < 1e-9, "{line}");
    }
}

#[test]
fn mean_reads_input_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let mut text = String::from("radix=2,3;N=2\n");
    for i in 0..6 {
        text.push_str(&format!("{i},1.5,0\n"));
    }
    std::fs::write(&f, text).unwrap();
    let o = lab(&["mean", "--radix", "2,3", "--family", "cesaro:0.5", "--input", f.to_str().unwrap(), "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(2) {
        let e: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(e < 1e-12);
    }
    // wrong group for the file
    let o = lab(&["mean", "--radix", "2,2", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_carries_config() {
    let o = lab(&["mean", "--fixture", "psi:3", "--n", "4,5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["config"]["header"].as_str().unwrap().split(';').next(), Some("radix=2,3,4"));
    assert_eq!(doc["config"]["N"], 3);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["n"], 4);
    assert!(records[0]["error_p"].is_number());
}

#[test]
fn identity_suite_passes() {
    let o = lab(&["identity", "--radix", "2,3,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("radix=2,3,2;N=3"));
    assert_eq!(lines.next(), Some("id,params,residual,pass"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("FN_REFLECT,")));
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn identity_single_tuple() {
    let o = lab(&["identity", "--id", "dn-shift", "--params", "n=1;j=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(2).unwrap().starts_with("DN_SHIFT,n=1;j=2,"));
    let o = lab(&["identity", "--id", "dn-shift", "--params", "n=9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_assertion_exits_one() {
    let o = lab(&["experiment", "convergence", "--fixture", "psi:3", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("assertion failed"));
    let o = lab(&["experiment", "convergence", "--fixture", "psi:3", "--tol", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lab(&["kernel"]).status.code(), Some(2));
    assert_eq!(lab(&["kernel", "--n", "3", "--radix", "1,2"]).status.code(), Some(2));
    assert_eq!(lab(&["kernel", "--n", "99"]).status.code(), Some(2));
    assert_eq!(lab(&["mean", "--weights", "valpha:2", "--family", "norlund"]).status.code(), Some(2));
    assert_eq!(lab(&["mean", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(lab(&["mean", "--family", "norlund", "--weights", "beta:1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(lab(&["experiment", "nonsense"]).status.code(), Some(2));
}

#[test]
fn experiments_run() {
    let o = lab(&["experiment", "lipschitz", "--radix", "2", "--resolution", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().next().unwrap().contains("case=power"));
    let o = lab(&["experiment", "lebesgue-trace", "--x", "7", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().contains("seed=3"));
    let o = lab(&["experiment", "moricz-siddiqi", "--weights", "beta:1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = lab(&["experiment", "vilenkin-lebesgue", "--fixture", "indicator:1:1", "--radix", "2,2,2"]);
    assert_eq!(stdout(&o).lines().nth(3), Some("1,2,0.5,0.25"));
    let o = lab(&[
        "experiment", "approx-identity", "--radix", "2,3,2,4", "--family", "norlund", "--weights", "beta:1",
        "--n", "4..=48", "--tail-level", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = lab(&["experiment", "riemann-lebesgue", "--fixture", "lacunary:0.5", "--radix", "2", "--resolution", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn runs_are_deterministic() {
    let a = lab(&["transform", "--seed", "11"]);
    let b = lab(&["transform", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}
