use std::path::Path;
use std::process::{Command, Output};

fn zonal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn records(csv_text: &str) -> Vec<Vec<String>> {
    csv_text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn spectrum_csv() {
    let out = zonal(&["spectrum", "--zone", "0", "--kappa", "1", "--lambda", "1", "--p-max", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "p,energy,energy_exact,multiplicity\n0,1.0,1,1\n1,3.0,3,1\n2,5.0,5,1\n");
}

#[test]
fn spectrum_multiplicities_and_rational_energies() {
    let out = zonal(&["spectrum", "--zone", "1", "--kappa", "2", "--lambda", "1/3", "--p-max", "2"]);
    let rows = records(&stdout(&out));
    let exact: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    let mult: Vec<&str> = rows.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(exact, ["2/3", "4/3", "2"]);
    assert_eq!(mult, ["2", "4", "6"]);
}

#[test]
fn verify_eigen_summary() {
    let out = zonal(&["verify-eigen", "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("checked 45 eigen-relations, 0 failures"));
    assert_eq!(records(&stdout(&out)).len(), 45);
    let out = zonal(&["verify-eigen", "--max-degree", "4", "--lambda", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &doc["rows"][0];
    assert_eq!(row["eigenvalue"], "-42");
    assert!(row["state"]["poly"].is_array() || row["state"]["poly"].is_object());
}

#[test]
fn lamb_total_row() {
    let out = zonal(&["lamb", "--l", "0", "--mode", "total"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("l,mode,density,re σ,im σ,Δ_eV,Δ_MHz,abs_err\n"));
    let row = &records(&text)[0];
    let num = |i: usize| row[i].parse::<f64>().unwrap();
    assert_eq!((row[0].as_str(), row[1].as_str(), row[2].as_str()), ("0", "total", "stirling"));
    assert!(num(3).abs() < 1e-8);
    assert!((num(4) + std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-6);
    assert!((num(5) - 3.365_865_695_945e-6).abs() < 1e-13);
    assert!((num(6) - 813.862_704_491_7).abs() < 1e-3);
}

#[test]
fn coulomb_fock_diagonal() {
    let out = zonal(&["coulomb", "--m-max", "2"]);
    let rows = records(&stdout(&out));
    assert_eq!(rows.len(), 3);
    let g = [1.0, 0.5, 0.375];
    for (row, g) in rows.iter().zip(g) {
        let value: f64 = row[3].parse().unwrap();
        assert!((value - std::f64::consts::PI.sqrt() * g).abs() < 1e-10, "{row:?}");
        assert_eq!(row[4], "0.0");
    }
}

#[test]
fn projection_at_origin() {
    let out = zonal(&["kernels", "--grid-min", "0", "--grid-max", "0", "--grid-n", "1"]);
    let text = stdout(&out);
    assert!(text.starts_with("re z,im z,re w,im w,t,re value,im value\n"));
    let row = &records(&text)[0];
    assert_eq!(row[4], "");
    let value: f64 = row[5].parse().unwrap();
    assert!((value - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for path in &paths {
        let out = zonal(&[
            "kernels",
            "--kind",
            "schrodinger-zonal",
            "--zone",
            "2",
            "--t",
            "0.7",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.conf");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "# run\nlambda = 1/2\np_max = 1\nformat = json\n");
    let out = zonal(&["spectrum", "--config", &config]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["lambda"], "1/2");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["rows"][1]["energy_exact"], "3/2");
    let out = zonal(&["spectrum", "--config", &config, "--lambda", "3", "--format", "csv"]);
    assert_eq!(stdout(&out), "p,energy,energy_exact,multiplicity\n0,3.0,3,1\n1,9.0,9,1\n");
}

#[test]
fn bad_configuration_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let target_str = target.to_str().unwrap();
    let config = write_config(dir.path(), "lambda = 1\ncolour = blue\n");
    for args in [
        vec!["spectrum", "--config", config.as_str(), "--output", target_str],
        vec!["spectrum", "--lambda=-2", "--output", target_str],
        vec!["coulomb", "--kappa", "2", "--output", target_str],
        vec!["lamb", "--zone", "1", "--output", target_str],
        vec!["partition", "--t", "0", "--output", target_str],
        vec!["report-all", "--criterion", "12", "--output", target_str],
        vec!["spectrum", "--p-max", "x"],
        vec!["no-such-command"],
    ] {
        let out = zonal(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains("Usage"), "{args:?}");
        assert!(!target.exists(), "{args:?}");
    }
}

#[test]
fn computation_failure_exits_1_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let out = zonal(&[
        "partition",
        "--variant",
        "schrodinger",
        "--t",
        "1,3.141592653589793",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("singular time"));
    assert!(!target.exists());
}

#[test]
fn report_all_single_criteria() {
    let out = zonal(&["report-all", "--criterion", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("criterion,title,passed,details\n3,"));
    assert!(stderr(&out).contains("criterion 3 PASS"));
    let out = zonal(&["report-all", "--criterion", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("criterion,title,passed,details\n10,"));
    assert!(stderr(&out).contains("criteria 10 failed"));
    assert!(stderr(&out).contains("0.03536"));
}
