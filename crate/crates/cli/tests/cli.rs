use std::fs;
use std::process::{Command, Output};

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_shows_at_least_eighteen_builtins() {
    let out = toric(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().count() >= 18);
    for name in ["vacuum", "interference_q1", "alt_path", "braiding_minimal"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn run_builtin_prints_phase_and_checks() {
    let out = toric(&["run", "--builtin", "alt_path"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("phase 1.000 pi"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn run_json_report_is_parseable() {
    let out = toric(&["run", "--builtin", "vacuum", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "toric-report/1");
    assert!(v["analysis"]["phase_pi"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(v["passed"], true);
}

#[test]
fn run_scenario_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    fs::write(
        &path,
        r#"{"schema":"toric-scenario/1","name":"file_case","lattice":{"type":"grid","width":3,"height":3},
            "operations":[{"op":"string","anyon":"e","from":3,"to":6}],
            "measurements":{"occupancy":true},
            "expect":{"occupied":[3,6]}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    for backend in ["stabilizer", "statevector", "both"] {
        let out = toric(&["run", p, "--backend", backend]);
        assert!(
            out.status.success(),
            "{backend}: {}{}",
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains(&format!("[{backend} backend")));
    }
}

#[test]
fn failing_checks_exit_with_one_and_errors_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"schema":"toric-scenario/1","name":"wrong","lattice":{"type":"minimal"},
            "operations":[{"op":"pauli","pauli":"Z","qubit":1}],
            "measurements":{"occupancy":true},"expect":{"occupied":[]}}"#,
    )
    .unwrap();
    let out = toric(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));

    let out = toric(&["run", "--builtin", "no_such"]);
    assert_eq!(out.status.code(), Some(2));
    let out = toric(&[
        "run",
        "--builtin",
        "braiding_minimal",
        "--backend",
        "stabilizer",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("statevector"));
    let out = toric(&["export", "--builtin", "vacuum", "--format", "xml"]);
    assert!(!out.status.success());
}

#[test]
fn export_is_byte_stable_for_a_seed() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = toric(&[
            "export",
            "--builtin",
            "vacuum_calibrated",
            "--seed",
            "11",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let fa = fs::read(a.path().join("vacuum_calibrated.json")).unwrap();
    let fb = fs::read(b.path().join("vacuum_calibrated.json")).unwrap();
    assert_eq!(fa, fb);
    assert!(String::from_utf8(fa).unwrap().contains("\"seed\": 11"));
}

#[test]
fn csv_export_writes_curve_and_population_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = toric(&[
        "export",
        "--builtin",
        "single_e_q3",
        "--format",
        "csv",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let curve = fs::read_to_string(dir.path().join("single_e_q3_curve.csv")).unwrap();
    assert!(curve.starts_with("gamma,value,stderr\n0,-1,0\n"), "{curve}");
    let pops = fs::read_to_string(dir.path().join("single_e_q3_populations.csv")).unwrap();
    assert!(pops.starts_with("outcome,probability\nHHHH,0.5"), "{pops}");
    assert!(
        fs::read_to_string(dir.path().join("single_e_q3_summary.csv"))
            .unwrap()
            .contains("phase_pi,1")
    );
}

#[test]
fn run_all_builtins_passes() {
    let out = toric(&["run", "--all"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}
