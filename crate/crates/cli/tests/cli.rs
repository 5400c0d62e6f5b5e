use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hotrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hotrad")).args(args).output().unwrap()
}

fn shipped(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    p.to_str().unwrap().to_string()
}

fn stderr_json(out: &Output) -> Value {
    assert!(!out.status.success());
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

struct Row {
    mechanism: String,
    point: usize,
    phi: f64,
    emission: f64,
}

fn parse_csv(bytes: &[u8]) -> Vec<Row> {
    let text = std::str::from_utf8(bytes).unwrap();
    let mut lines = text.split("\r\n").filter(|l| !l.is_empty());
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (m, p, f, e) = (col("mechanism"), col("point"), col("phi_rad"), col("emission"));
    lines
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            Row {
                mechanism: c[m].to_string(),
                point: c[p].parse().unwrap(),
                phi: c[f].parse().unwrap(),
                emission: c[e].parse().unwrap(),
            }
        })
        .collect()
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let cfg = shipped("field111-mechanisms.json");
    let a = hotrad(&["--config", &cfg]);
    let b = hotrad(&["--config", &cfg]);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn extrema_swap_between_acoustic_and_coulomb() {
    let out = hotrad(&["--config", &shipped("field111-mechanisms.json")]);
    let rows = parse_csv(&out.stdout);
    for mech in ["acoustic", "coulomb"] {
        for point in 0..6 {
            let curve: Vec<&Row> = rows.iter().filter(|r| r.mechanism == mech && r.point == point).collect();
            let max = curve.iter().max_by(|a, b| a.emission.total_cmp(&b.emission)).unwrap();
            let min = curve.iter().min_by(|a, b| a.emission.total_cmp(&b.emission)).unwrap();
            let axis = |phi: f64| {
                let m = phi.rem_euclid(std::f64::consts::PI);
                m.min(std::f64::consts::PI - m) < 1e-9
            };
            if mech == "acoustic" {
                assert!(axis(max.phi) && !axis(min.phi), "{mech} point {point}");
            } else {
                assert!(axis(min.phi) && !axis(max.phi), "{mech} point {point}");
            }
        }
    }
}

#[test]
fn scenario_filter_and_json_format() {
    let out = hotrad(&["--config", &shipped("field111-mechanisms.json"), "--scenario", "coulomb", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6 * 36);
    assert!(rows.iter().all(|r| r["scenario"] == "coulomb"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = shipped("lattice-scan.json");
    let path = dir.path().join("scan.csv");
    let a = hotrad(&["--config", &cfg, "--out", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert!(a.stdout.is_empty());
    let b = hotrad(&["--config", &cfg]);
    assert_eq!(std::fs::read(&path).unwrap(), b.stdout);
}

#[test]
fn oracle_reports_are_written_next_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "one.json",
        r#"{
          "schema_version": 1,
          "material": { "preset": "n-Ge", "lattice_temperature_K": 5, "impurity_concentration_cm3": 1.5e14 },
          "photon_energy_meV": 1.0,
          "angles": { "steps": 4 },
          "scenarios": [{ "kind": "field-100", "name": "f", "points": [{ "field_V_per_cm": 10, "n_cm3": 1.5e14, "T_e_K": 65 }] }]
        }"#,
    );
    let out = dir.path().join("f.csv");
    let r = hotrad(&["--config", &cfg, "--out", out.to_str().unwrap(), "--oracle"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let reports: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("f.csv.oracle.json")).unwrap()).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0]["relative_discrepancy"].as_f64().unwrap() < 5e-3);

    let j = hotrad(&["--config", &cfg, "--oracle", "--format", "json"]);
    let v: Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["oracle"].as_array().unwrap().len(), 1);

    let e = stderr_json(&hotrad(&["--config", &cfg, "--oracle"]));
    assert_eq!(e["error"]["kind"], "cli");
}

#[test]
fn errors_are_json_on_stderr() {
    let dir = tempfile::tempdir().unwrap();

    let e = stderr_json(&hotrad(&["--config", "/nonexistent/x.json"]));
    assert_eq!(e["error"]["kind"], "io");

    let bad = write(dir.path(), "bad.json", r#"{ "schema_version": 1, "material": { "preset": "n-Ge" }, "photon_energy_meV": -1, "scenarios": [] }"#);
    let e = stderr_json(&hotrad(&["--config", &bad]));
    assert_eq!(e["error"]["kind"], "config");
    assert!(e["error"]["message"].as_str().unwrap().contains("photon_energy_meV"));

    let e = stderr_json(&hotrad(&["--config", &shipped("field111-mechanisms.json"), "--scenario", "missing"]));
    assert_eq!(e["error"]["kind"], "config");

    let e = stderr_json(&hotrad(&["--frobnicate"]));
    assert_eq!(e["error"]["kind"], "usage");

    let e = stderr_json(&hotrad(&["--config", &shipped("field100-anisotropy.json"), "--out", "/nonexistent/dir/o.csv"]));
    assert_eq!(e["error"]["kind"], "io");
}

#[test]
fn help_succeeds() {
    let out = hotrad(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("--config"));
}
