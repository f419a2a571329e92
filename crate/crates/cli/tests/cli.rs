use std::process::Command;

use duomode_cli::{run, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("duomode").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Header names and data rows, metadata line stripped.
fn parse(table: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = table.lines();
    assert!(lines.next().unwrap().starts_with("# duomode "));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<String> {
    let k = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[k].clone()).collect()
}

fn numbers(cells: &[String]) -> Vec<f64> {
    cells.iter().map(|c| c.parse().unwrap()).collect()
}

#[test]
fn boson_separation_scan() {
    let (code, out, _) = invoke(&["scan", "--start", "0", "--stop", "4", "--steps", "21", "--detector", "0.7"]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = parse(&out);
    assert_eq!(rows.len(), 21);
    let d = numbers(&column(&header, &rows, "D"));
    let c = numbers(&column(&header, &rows, "C"));
    assert!(d.windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(c[0], 2.0);
    for (d, c) in d.iter().zip(&c) {
        assert!(d + c <= 2.0 + 1e-9);
    }
    assert!(!out.to_lowercase().contains("nan"));
}

#[test]
fn fermion_scan_marks_indeterminate_row() {
    let (code, out, _) = invoke(&["scan", "--statistics", "fermion", "--steps", "5"]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = parse(&out);
    let status = column(&header, &rows, "status");
    assert_eq!(status[0], "indeterminate");
    assert_eq!(column(&header, &rows, "C")[0], "indeterminate");
    assert_eq!(column(&header, &rows, "P")[0], "indeterminate");
    assert!(status[1..].iter().all(|s| s == "ok"));
}

#[test]
fn position_scan_reports_singular_cells() {
    let (code, out, _) = invoke(&["scan", "--sweep", "position", "--start", "0", "--stop", "60", "--steps", "3", "--outputs", "P,C"]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = parse(&out);
    assert_eq!(header, ["t", "status", "P", "C"]);
    assert_eq!(rows[2][1], "singular");
    assert_eq!(rows[2][3], "singular");
}

#[test]
fn scan_is_bytewise_deterministic_and_out_matches_stdout() {
    let args = ["scan", "--f-center", "-0.5,0", "--g-center", "0.5,0.2", "--steps", "7", "--direction", "0,1"];
    let (_, a, _) = invoke(&args);
    let (_, b, _) = invoke(&args);
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let (code, stdout, _) = invoke(&with_out);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
}

#[test]
fn state_files_in_json_and_toml() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    std::fs::write(
        &json,
        r#"{"statistics":"fermion","hbar":1.0,"dimension":1,
            "f":{"type":"gaussian","center":[0.0],"q":1.0},
            "g":{"type":"mixture","components":[{"center":[1.5],"q":1.0,"weight":1.0}]}}"#,
    )
    .unwrap();
    let toml = dir.path().join("s.toml");
    std::fs::write(
        &toml,
        "statistics = \"fermion\"\nhbar = 1.0\ndimension = 1\n\n[f]\ntype = \"gaussian\"\ncenter = [0.0]\nq = 1.0\n\n[g]\ntype = \"gaussian\"\ncenter = [1.5]\nq = 1.0\n",
    )
    .unwrap();
    let (c1, a, _) = invoke(&["scan", "--state", json.to_str().unwrap(), "--steps", "3", "--stop", "1", "--outputs", "D,C"]);
    let (c2, b, _) = invoke(&["scan", "--state", toml.to_str().unwrap(), "--steps", "3", "--stop", "1", "--outputs", "D,C"]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    let (ha, ra) = parse(&a);
    let (hb, rb) = parse(&b);
    let ca = numbers(&column(&ha, &ra, "C"));
    let cb = numbers(&column(&hb, &rb, "C"));
    for (x, y) in ca.iter().zip(&cb) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn malformed_state_file_is_a_usage_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bad.json");
    std::fs::write(&json, "{\n  \"statistics\": \"boson\",\n  \"f\": 3\n}").unwrap();
    let (code, _, err) = invoke(&["scan", "--state", json.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
    let other = dir.path().join("state.yaml");
    std::fs::write(&other, "x").unwrap();
    assert_eq!(invoke(&["scan", "--state", other.to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&["scan", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["scan", "--steps", "1"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["scan", "--direction", "2"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["scan", "--outputs", "P,visibility"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["scan", "--q", "-1"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["limits", "--directions", "1,1,0"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["simulate", "--half-width", "1"]).0, EXIT_USAGE);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("scan") && out.contains("simulate"));
}

#[test]
fn verify_passes_and_catches_injected_fault() {
    let (code, out, _) = invoke(&["verify", "--families", "60", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = parse(&out);
    assert_eq!(rows.len(), 9);
    assert!(column(&header, &rows, "status").iter().all(|s| s == "pass"));

    let (code, out, err) = invoke(&["verify", "--families", "60", "--seed", "3", "--inject-fault"]);
    assert_eq!(code, EXIT_VIOLATION);
    assert!(err.contains("fermion_norm_nonpositive"));
    assert!(out.contains("fermion_norm_nonpositive,60,60"));
}

#[test]
fn limits_are_direction_dependent_and_converge_quadratically() {
    let (code, out, _) = invoke(&["limits", "--r", "2,0,0", "--directions", "1,0,0;0,1,0"]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = parse(&out);
    let limits = numbers(&column(&header, &rows, "limit"));
    assert_eq!(limits[0], 2.5);
    assert_eq!(limits[3], 0.5);
    let res = numbers(&column(&header, &rows, "residual"));
    for k in [0, 3] {
        assert!((res[k] / res[k + 1] - 100.0).abs() < 1.0);
        assert!((res[k + 1] / res[k + 2] - 100.0).abs() < 1.0);
    }
    let (_, out, _) = invoke(&["limits", "--r", "0,0"]);
    let (header, rows) = parse(&out);
    assert!(numbers(&column(&header, &rows, "limit")).iter().all(|&l| l == 0.5));
}

#[test]
fn simulate_is_reproducible_and_recovers_disjoint_contrast() {
    let args = ["simulate", "--g-center", "1", "--n", "50000", "--seed", "9"];
    let (code, a, _) = invoke(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, invoke(&args).1);

    let (code, out, _) = invoke(&["simulate", "--g-center", "12", "--n", "200000", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = parse(&out);
    let c = numbers(&column(&header, &rows, "c_analytic"))[0];
    let z = numbers(&column(&header, &rows, "z"))[0];
    assert!((c - 1.0).abs() < 1e-12);
    assert!(z.abs() < 4.0);
}

#[test]
fn simulate_indeterminate_state_is_numerical_error() {
    assert_eq!(invoke(&["simulate", "--statistics", "fermion"]).0, EXIT_NUMERICAL);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_duomode");
    let ok = Command::new(bin).args(["limits", "--t", "0.1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("# duomode limits"));
    let bad = Command::new(bin).args(["nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let fault = Command::new(bin).args(["verify", "--families", "10", "--inject-fault"]).output().unwrap();
    assert_eq!(fault.status.code(), Some(EXIT_VIOLATION));
}
