use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dtep::C64;
use dtep_cli::format::{self, Document};
use tempfile::TempDir;

fn dtep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn parse(o: &Output) -> Document {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    format::read(&stdout(o)).unwrap().doc
}

fn close(got: &[C64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(z, &w)| (z - C64::new(w, 0.0)).norm() <= tol)
}

const T1: &str = r#"{"kind": "transmission", "l": 1, "alpha": [[2, 0]], "beta": [[0, 0]],
    "alpha_dot": [[1, 0]], "beta_dot": [[0, 0]]}"#;

#[test]
fn forward_transmission_single_site() {
    let dir = TempDir::new().unwrap();
    let input = put(&dir, "t.json", T1);
    match parse(&dtep(&["forward", "--input", s(&input)])) {
        Document::Spectrum { l: 1, eigenvalues } => assert!(close(&eigenvalues, &[0.0], 1e-14)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn forward_weyl_of_free_chain() {
    let dir = TempDir::new().unwrap();
    let input = put(&dir, "s.json", r#"{"kind": "standard", "l": 2, "a": [[1, 0]], "b": [[0, 0], [0, 0]]}"#);
    for precision in ["wide", "double"] {
        match parse(&dtep(&["--precision", precision, "forward", "--input", s(&input), "--what", "weyl"])) {
            Document::Weyl { m } => assert!(close(&m, &[1.0, 0.0, 1.0, 0.0], 1e-14)),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn zero_alpha_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = put(
        &dir,
        "t.json",
        r#"{"kind": "transmission", "l": 2, "alpha": [[0, 0], [2, 0]], "beta": [[0, 0], [0, 0]],
            "alpha_dot": [[1, 0], [1, 0]], "beta_dot": [[0, 0], [0, 0]]}"#,
    );
    let o = dtep(&["forward", "--input", s(&input)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha_1"), "{}", stderr(&o));
}

#[test]
fn inverse_transmission_single_site() {
    let dir = TempDir::new().unwrap();
    let data = put(
        &dir,
        "d.json",
        r#"{"kind": "transmission-data", "l": 1, "alpha_dot": [[1, 0]], "beta_dot": [[0, 0]], "alpha_l": [[2, 0]]}"#,
    );
    let spectrum = put(&dir, "sp.json", r#"{"kind": "spectrum", "l": 1, "eigenvalues": [[0, 0]]}"#);
    match parse(&dtep(&["inverse", "--mode", "transmission", "--input", s(&data), "--spectrum", s(&spectrum)])) {
        Document::Transmission { alpha, beta, .. } => {
            assert!(close(&alpha, &[2.0], 1e-14));
            assert!(close(&beta, &[0.0], 1e-14));
        }
        other => panic!("{other:?}"),
    }

    let degenerate = put(
        &dir,
        "dd.json",
        r#"{"kind": "transmission-data", "l": 1, "alpha_dot": [[1, 0]], "beta_dot": [[0, 0]], "alpha_l": [[1, 0]]}"#,
    );
    let o = dtep(&["inverse", "--mode", "transmission", "--input", s(&degenerate), "--spectrum", s(&spectrum)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha_l equals alpha_dot_l"));
}

#[test]
fn half_data_reconstruction_of_three_site_chain() {
    let dir = TempDir::new().unwrap();
    let head = put(&dir, "h.json", r#"{"kind": "symmetric-head", "l": 3, "A": [[1, 0]], "B": [[0, 0]]}"#);
    let r2 = 2f64.sqrt();
    let spectrum = put(
        &dir,
        "sp.json",
        &format!(r#"{{"kind": "spectrum", "l": 3, "eigenvalues": [[{}, 0], [0, 0], [{}, 0]]}}"#, -r2, r2),
    );
    let o = dtep(&["inverse", "--mode", "hochstadt", "--input", s(&head), "--spectrum", s(&spectrum)]);
    match parse(&o) {
        Document::Symmetric { a, b } => {
            assert!(close(&a, &[1.0, 1.0], 1e-12), "{a:?}");
            assert!(close(&b, &[0.0, 0.0, 0.0], 1e-12), "{b:?}");
        }
        other => panic!("{other:?}"),
    }
    assert!(stdout(&o).contains("\"hankel_determinants\""));
}

#[test]
fn singular_hankel_is_a_solvability_failure() {
    let dir = TempDir::new().unwrap();
    let w = put(&dir, "w.json", r#"{"kind": "weyl", "l": 2, "M": [[1, 0], [0, 0], [0, 0], [0, 0]]}"#);
    let o = dtep(&["inverse", "--mode", "weyl", "--input", s(&w)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("Hankel"), "{}", stderr(&o));
}

#[test]
fn weyl_inverse_reports_determinants() {
    let dir = TempDir::new().unwrap();
    let w = put(&dir, "w.json", r#"{"kind": "weyl", "l": 2, "M": [[1, 0], [0, 0], [1, 0], [0, 0]]}"#);
    let file = format::read(&stdout(&dtep(&["inverse", "--mode", "weyl", "--input", s(&w)]))).unwrap();
    match file.doc {
        Document::Standard { a, b } => assert!(close(&a, &[1.0], 1e-14) && close(&b, &[0.0, 0.0], 1e-14)),
        other => panic!("{other:?}"),
    }
    let d = file.diagnostics.expect("diagnostics present");
    assert!(close(&d.hankel_determinants, &[1.0], 1e-14));
}

#[test]
fn transmission_round_trip_passes() {
    let o = dtep(&["roundtrip", "--mode", "transmission", "--seed", "1", "--l", "5", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ok"));
}

#[test]
fn single_site_weyl_round_trip_is_exact() {
    let o = dtep(&["roundtrip", "--mode", "weyl", "--seed", "1", "--l", "1", "--trials", "20"]);
    let line = stdout(&o).lines().find(|l| l.starts_with("max error")).unwrap().to_string();
    let err: f64 = line.trim_start_matches("max error ").parse().unwrap();
    assert!(err <= 1e-14, "{line}");
}

#[test]
fn oversized_round_trip_is_rejected() {
    let o = dtep(&["roundtrip", "--mode", "weyl", "--seed", "1", "--l", "13", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tolerance_failures_echo_the_seed() {
    // double-double round trips land near 1e-23, far above this tolerance
    let o = dtep(&["roundtrip", "--mode", "transmission", "--seed", "7", "--l", "4", "--trials", "3", "--tol", "1e-40"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("seed 7, trial 0"), "{}", stdout(&o));
}

#[test]
fn unperturbed_stability_has_zero_error() {
    let dir = TempDir::new().unwrap();
    let input = put(&dir, "t.json", T1);
    let o = dtep(&["stability", "--input", s(&input), "--deltas", "0", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let row = stdout(&o).lines().last().unwrap().to_string();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[2], "0", "{row}");
    assert_eq!(cols[3].parse::<f64>().unwrap(), 0.0, "{row}");
}

#[test]
fn large_perturbations_are_counted() {
    let dir = TempDir::new().unwrap();
    let w = put(&dir, "w.json", r#"{"kind": "weyl", "l": 2, "M": [[1, 0], [0, 0], [1, 0], [0, 0]]}"#);
    let o = dtep(&["stability", "--input", s(&w), "--deltas", "1e2", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("outside_eps_ball"));
    let cols: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    let solved: usize = cols[1].parse().unwrap();
    let outside: usize = cols[2].parse().unwrap();
    assert_eq!(solved + outside, 10);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let gen = dir.path().join(format!("{name}-g.json"));
        let fwd = dir.path().join(format!("{name}-f.json"));
        let inv = dir.path().join(format!("{name}-i.json"));
        assert!(dtep(&["generate", "--kind", "standard", "--l", "6", "--seed", "9", "--out", s(&gen)]).status.success());
        assert!(dtep(&["forward", "--input", s(&gen), "--what", "two-spectra", "--out", s(&fwd)]).status.success());
        assert!(dtep(&["inverse", "--mode", "two-spectra", "--input", s(&fwd), "--out", s(&inv)]).status.success());
        [gen, fwd, inv].map(|p| std::fs::read(p).unwrap())
    };
    assert_eq!(run("first"), run("second"));
}

#[test]
fn poly_bc_forward_then_inverse() {
    let dir = TempDir::new().unwrap();
    let gen = dir.path().join("s.json");
    let bc = dir.path().join("b.json");
    let spec = dir.path().join("e.json");
    assert!(dtep(&["generate", "--kind", "standard", "--l", "4", "--seed", "2", "--out", s(&gen)]).status.success());
    assert!(dtep(&["generate", "--kind", "boundary", "--l", "4", "--seed", "2", "--out", s(&bc)]).status.success());
    let o = dtep(&["forward", "--input", s(&gen), "--boundary", s(&bc), "--out", s(&spec)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let back = parse(&dtep(&["inverse", "--mode", "polybc", "--input", s(&bc), "--spectrum", s(&spec)]));
    let (Document::Standard { a: a0, b: b0 }, Document::Standard { a, b }) =
        (format::read(&std::fs::read_to_string(&gen).unwrap()).unwrap().doc, back)
    else {
        panic!("expected standard documents")
    };
    for (x, y) in a0.iter().chain(&b0).zip(a.iter().chain(&b)) {
        assert!((x - y).norm() < 1e-10);
    }
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.json", r#"{"kind": "spectrum", "l": 2, "eigenvalues": [[1, 0]]}"#);
    let o = dtep(&["stability", "--input", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(dtep(&["forward", "--input", s(&missing)]).status.code(), Some(2));
}
