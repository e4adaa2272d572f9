use std::path::Path;
use std::process::{Command, Output};

use dtto_cli::commands::build_matrices;
use dtto_cli::config::ProblemConfig;
use dtto_core::analysis::coordinates;
use dtto_core::fourier::FourierVector;
use dtto_core::linalg::CMatrix;
use dtto_core::Complex64;
use serde_json::Value;
use tempfile::TempDir;

fn dtto(args: &[&str], dir: &Path, window: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dtto"));
    cmd.args(args).current_dir(dir).env_remove("DTTO_WINDOW");
    if let Some(w) = window {
        cmd.env("DTTO_WINDOW", w);
    }
    cmd.output().expect("binary runs")
}

/// Writes `config.json` into a fresh directory and runs `cmd` on it.
fn run_with(cmd: &str, config: &str) -> (TempDir, Output) {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("config.json"), config).unwrap();
    let out = dtto(&[cmd, "--config", "config.json", "--out", "out"], dir.path(), None);
    (dir, out)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(dir: &TempDir, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.path().join("out").join(name)).unwrap()).unwrap()
}

const Z_ON_Z: &str = r#"{"symbol": {"trig_poly": {"coeffs": [{"k": 1, "c": [1, 0]}]}},
    "theta": {"zeros": [[0, 0]]}, "window": 8, "dual": 8, "operator": "dual"}"#;

#[test]
fn build_dual_maps_conj_z2_to_conj_z() {
    let (dir, out) = run_with("build", Z_ON_Z);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(stdout(&out).trim(), "dual: 16x16 (15 interior columns)");
    let csv = std::fs::read_to_string(dir.path().join("out/dual.csv")).unwrap();
    assert!(csv.starts_with("row,col,re,im\n"));
    let entry = csv.lines().find(|l| l.starts_with("[0]z^-1,[0]z^-2,")).unwrap();
    let re: f64 = entry.split(',').nth(2).unwrap().parse().unwrap();
    assert!((re - 1.0).abs() < 1e-14);
    assert!(dir.path().join("out/dual.json").exists());
    assert!(dir.path().join("out/timings.json").exists());
    let report = json(&dir, "report.json");
    assert_eq!(report["command"], "build");
    assert_eq!(report["config"]["window_source"], "config");
    assert_eq!(report["tolerances"]["kernel_threshold"], 1e-8);
}

#[test]
fn paired_matrix_annihilates_conj_z_and_one_plus_conj_z() {
    let cfg = ProblemConfig::parse(&Z_ON_Z.replace("\"dual\"}", "\"paired\"}"))
        .unwrap()
        .resolve(None)
        .unwrap();
    let mats = build_matrices(&cfg).unwrap();
    assert_eq!(mats.len(), 1);
    let m = &mats[0].1;
    let one = Complex64::new(1.0, 0.0);
    let x = vec![
        FourierVector::monomial(8, -1, one).unwrap(),
        FourierVector::from_terms(8, &[(-1, one), (0, one)]).unwrap(),
    ];
    let v = coordinates(&m.domain, &[x]);
    let image: CMatrix = &m.entries * &v;
    assert!(v.norm() > 1.0);
    assert!(image.norm() < 1e-12, "{}", image.norm());
}

#[test]
fn extension_e_with_trivial_alpha_has_unit_entries() {
    let cfg = r#"{"theta": {"zeros": []}, "window": 16, "operator": "E"}"#;
    let cfg = ProblemConfig::parse(cfg).unwrap().resolve(None).unwrap();
    let mats = build_matrices(&cfg).unwrap();
    let e = &mats[0].1;
    assert!(e.entries.iter().all(|c| c.norm() < 1e-12 || (c.norm() - 1.0).abs() < 1e-12));
    assert!(e.compose(e).unwrap().interior_identity_defect() < 1e-12);
}

#[test]
fn kernel_examples() {
    let cases = [
        (r#"{"symbol": {"trig_poly": {"coeffs": [{"k": -2, "c": [1, 0]}]}}, "theta": {"zeros": [[0, 0], [0, 0]]}}"#, 2),
        (r#"{"symbol": {"trig_poly": {"coeffs": [{"k": 0, "c": [1, 0]}]}}, "theta": {"zeros": [[0, 0], [0, 0]]}}"#, 0),
        (r#"{"symbol": {"rational": {"num": [[0, 0], [1, 0]]}}, "theta": {"zeros": [[0, 0], [0, 0]]}}"#, 1),
    ];
    for (cfg, dim) in cases {
        let (dir, out) = run_with("kernel", cfg);
        assert_eq!(out.status.code(), Some(0), "{out:?}");
        assert_eq!(stdout(&out).trim(), format!("kernel dimension: {dim}"));
        let k = json(&dir, "kernel.json");
        assert_eq!(k["dimension"], dim);
    }
    let (dir, _) = run_with("kernel", cases[2].0);
    let k = json(&dir, "kernel.json");
    assert_eq!(k["basis"][0][0]["label"], "[0]z^-1");
    let report = json(&dir, "report.json");
    assert_eq!(report["results"]["rational_solver"]["dimension"], 1);
}

#[test]
fn spectrum_examples() {
    let cfg = |zeros: &str| {
        format!(
            r#"{{"symbol": {{"rational": {{"num": [[0, 0], [1, 0]]}}}}, "theta": {{"zeros": {zeros}}},
                "grid": {{"re": [-1.5, 1.5], "im": [-1.5, 1.5], "step": 0.1}}}}"#
        )
    };
    let (dir, out) = run_with("spectrum", &cfg("[[0, 0], [0, 0], [0, 0]]"));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let line = stdout(&out);
    assert!(line.starts_with("essential: 1024 samples; point hits: "), "{line}");
    let rep = json(&dir, "spectrum.json");
    for p in rep["points"].as_array().unwrap() {
        let (x, y) = (p["lambda"][0].as_f64().unwrap(), p["lambda"][1].as_f64().unwrap());
        let dim = p["kernel_dimension"].as_u64();
        match p["verdict"].as_str().unwrap() {
            "fredholm_noninvertible" => assert!(x.hypot(y) < 1.0 && dim == Some(1)),
            "invertible" => assert!(x.hypot(y) > 1.0),
            _ => assert!((x.hypot(y) - 1.0).abs() < 0.2 + 1e-12),
        }
    }
    let csv = std::fs::read_to_string(dir.path().join("out/spectrum.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("lambda_re,lambda_im,kernel_dim,verdict"));

    let (_, out) = run_with("spectrum", &cfg("[[0.5, 0]]"));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).trim().ends_with("point hits: 0"));
}

#[test]
fn config_errors_exit_2() {
    let (_, out) = run_with("kernel", r#"{"windw": 8}"#);
    assert_eq!(out.status.code(), Some(2));
    let (_, out) = run_with("spectrum", r#"{"symbol": {"rational": {"num": [[1, 0]]}}, "theta": {"zeros": []}}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
    let dir = tempfile::tempdir().unwrap();
    let out = dtto(&["kernel", "--config", "nope.json"], dir.path(), None);
    assert_eq!(out.status.code(), Some(2));
    let out = dtto(&["kernel", "--config", "nope.json"], dir.path(), Some("many"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn window_overflow_exits_3_and_names_the_precondition() {
    let cfg = r#"{"symbol": {"trig_poly": {"coeffs": [{"k": 1, "c": [1, 0]}]}}, "theta": {"zeros": [[0.5, 0]]}, "window": 16}"#;
    let (_, out) = run_with("kernel", cfg);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window"));
}

#[test]
fn ambiguous_gap_exits_4() {
    let cfg = r#"{"symbol": {"trig_poly": {"coeffs": [{"k": 0, "c": [-0.9, 0]}, {"k": 1, "c": [1, 0]}]}},
        "theta": {"zeros": [[0, 0], [0, 0]]}, "window": 16, "tolerances": {"kernel_threshold": 0.3}}"#;
    let (dir, out) = run_with("kernel", cfg);
    assert_eq!(out.status.code(), Some(4));
    // the report is still written
    assert_eq!(json(&dir, "kernel.json")["ambiguous"], true);
}

#[test]
fn verify_single_tag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dtto(&["verify", "--only", "T6.3", "--out", "out"], dir.path(), None);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v = json(&dir, "verify.json");
    let tags = v["tags"].as_array().unwrap();
    assert_eq!(tags.len(), 1);
    assert_eq!(tags[0]["tag"], "T6.3");
    assert_eq!(tags[0]["status"], "pass");
    assert!(tags[0]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn small_window_gives_window_preconditions_not_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dtto(&["verify", "--out", "out"], dir.path(), Some("32"));
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let v = json(&dir, "verify.json");
    let tags = v["tags"].as_array().unwrap();
    assert_eq!(tags.len(), 22);
    assert_eq!(v["failed"], 0);
    assert!(tags.iter().any(|t| t["status"] == "window_precondition"));
    assert!(tags.iter().all(|t| t["status"] == "pass" || t["status"] == "window_precondition"));
}

#[test]
fn unknown_tag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dtto(&["verify", "--only", "T7.7"], dir.path(), None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_is_deterministic() {
    let (a, _) = run_with("build", Z_ON_Z);
    let (b, _) = run_with("build", Z_ON_Z);
    for f in ["dual.json", "dual.csv", "report.json"] {
        let x = std::fs::read(a.path().join("out").join(f)).unwrap();
        let y = std::fs::read(b.path().join("out").join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
}
