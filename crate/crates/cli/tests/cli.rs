use std::path::Path;
use std::process::{Command, Output};

fn nu_spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nu-spectra")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const REFERENCE: [&str; 8] = ["--v0", "8", "--a", "1", "--hbar2-over-2m", "0.5", "--r0", "0"];

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_reference_energies() {
    let mut args = vec!["spectrum", "--n-max", "3"];
    args.extend(REFERENCE);
    let out = nu_spectra(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "variant,n,re_E,im_E,re_eps,im_eps,re_t,im_t,valid"));
    let r = rows(&text);
    let energies: Vec<&str> = r.iter().map(|row| row[2].as_str()).collect();
    assert_eq!(energies, ["-36.125", "-12.5", "-8.68055556", "-8"]);
    assert_eq!(r[3][8], "false");
}

#[test]
fn complex_variants() {
    let mut args = vec!["spectrum", "--variant", "pt", "--alpha-i", "0.5", "--n-max", "2"];
    args.extend(REFERENCE);
    let r = rows(&stdout(&nu_spectra(&args)));
    assert_eq!(r[0][2], "28.125");
    assert_eq!(r[1][2], "4.5");
    assert!(r.iter().all(|row| row[3] == "0"));

    let mut args = vec!["spectrum", "--variant", "nonpt", "--v0i", "8", "--alpha-i", "0.5", "--n-max", "1"];
    args.extend(REFERENCE);
    let r = rows(&stdout(&nu_spectra(&args)));
    assert_eq!((r[0][2].as_str(), r[0][3].as_str()), ("-31.875", "-4"));
    assert_eq!((r[1][2].as_str(), r[1][3].as_str()), ("-7.5", "-4"));
}

#[test]
fn exit_codes() {
    assert_eq!(nu_spectra(&["spectrum", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(nu_spectra(&["spectrum", "--n-max", "x"]).status.code(), Some(1));
    assert_eq!(nu_spectra(&[]).status.code(), Some(1));
    assert_eq!(nu_spectra(&["--help"]).status.code(), Some(0));
    assert_eq!(nu_spectra(&["spectrum", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(nu_spectra(&["spectrum", "--variant", "pt", "--alpha-i", "0"]).status.code(), Some(2));
    // default well (β ≈ 2.1) binds only n = 0
    assert_eq!(nu_spectra(&["wavefunction"]).status.code(), Some(2));
    assert_eq!(nu_spectra(&["wavefunction", "--variant", "pt"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_detects_perturbation() {
    let out = nu_spectra(&["verify"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(!text.contains("FAIL"));
    let errata: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "ERRATA")
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
        .collect();
    assert_eq!(errata.len(), 3);

    let out = nu_spectra(&["verify", "--perturb-epsilon", "0.01"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("reference.cfg");
    std::fs::write(&cfg, "# reference well\nv0 = 8\na = 1\nhbar2-over-2m = 0.5\nn-max = 0\nv0=7\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let r = rows(&stdout(&nu_spectra(&["spectrum", "--config", cfg, "--v0", "8"])));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][2], "-36.125");

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "depth=8\n").unwrap();
    assert_eq!(nu_spectra(&["spectrum", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let mut args = vec!["wavefunction", "--out", path.to_str().unwrap()];
        args.extend(REFERENCE);
        assert_eq!(nu_spectra(&args).status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().any(|l| l == "n,s,R_n"));
    assert_eq!(rows(&text).len(), 3 * 401);
}

#[test]
fn potential_lists_and_poles() {
    let text = stdout(&nu_spectra(&["potential", "--steps", "11"]));
    let r = rows(&text);
    assert_eq!(r.len(), 4 * 11);
    assert!(text.lines().any(|l| l == "q,r,re_V,im_V"));

    // PT with q = 1 has a pole where 2α_I(r − R0) = π
    let out = nu_spectra(&[
        "potential", "--variant", "pt", "--alpha-i", "0.5", "--q", "1", "--r0", "0", "--r-min", "0", "--r-max",
        "6.283185307179586", "--steps", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.ends_with(",,")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole"));
}

fn assert_svg(path: &Path, polylines: usize) {
    let svg = std::fs::read_to_string(path).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), polylines + 1, "{}", path.display());
}

#[test]
fn figures_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = nu_spectra(&["figures", "--format", "svg", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["fig1.csv", "fig2.csv", "fig3.csv"] {
        assert!(dir.path().join(name).exists());
    }
    assert_svg(&dir.path().join("fig1.svg"), 4);
    assert_svg(&dir.path().join("fig2.svg"), 3);
    assert_svg(&dir.path().join("fig3.svg"), 3);
    let fig2 = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert!(fig2.lines().any(|l| l == "a,n,E,valid"));
    assert!(fig2.contains("a_values=0.55;0.65;0.75"));
}
