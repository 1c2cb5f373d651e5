use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use nu_spectra::verify::{self, SuiteOptions};
use nu_spectra::woods_saxon;
use nu_spectra::{Complex64, PhysicalParams, Variant};

use crate::output::{fmt_g, line_plot, write_atomic, Series};
use crate::{CliError, CommandKind, Format, RunConfig};

/// Samples of s in the wavefunction tables.
pub const S_POINTS: usize = 401;
pub const S_MIN: f64 = 0.0025;
pub const S_MAX: f64 = 0.9975;

/// Diffuseness values of the energy-versus-n figure, in fm.
pub const FIG2_A_VALUES: [f64; 3] = [0.55, 0.65, 0.75];

pub const SPECTRUM_HEADER: &str = "variant,n,re_E,im_E,re_eps,im_eps,re_t,im_t,valid";
pub const POTENTIAL_HEADER: &str = "q,r,re_V,im_V";
pub const WAVEFUNCTION_HEADER: &str = "n,s,R_n";
pub const FIG2_HEADER: &str = "a,n,E,valid";

pub fn execute(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match config.command {
        CommandKind::Spectrum => {
            let text = match config.format {
                Format::Csv => spectrum_csv(config),
                Format::Svg => spectrum_svg(config),
            };
            emit(config.output_path.as_deref(), &text, stdout)
        }
        CommandKind::Potential => {
            let (csv, series, poles) = potential_table(config, &config.variant, &config.q_values);
            for r in poles {
                let _ = writeln!(stderr, "warning: potential has a pole at r = {}", fmt_g(r));
            }
            let text = match config.format {
                Format::Csv => csv,
                Format::Svg => line_plot("Woods-Saxon potential", "r (fm)", "Re V (MeV)", &series),
            };
            emit(config.output_path.as_deref(), &text, stdout)
        }
        CommandKind::Wavefunction => {
            if config.variant != Variant::Real {
                return Err(CliError::Domain("wavefunctions are only available for the real variant".into()));
            }
            let (csv, series) = wavefunction_table(&config.params, 0..=config.n_max)?;
            let text = match config.format {
                Format::Csv => csv,
                Format::Svg => line_plot("s-state wavefunctions", "s", "R_n(s)", &series),
            };
            emit(config.output_path.as_deref(), &text, stdout)
        }
        CommandKind::Verify => {
            let (report, passed) = verify_report(config.epsilon_perturbation);
            if let Some(path) = &config.output_path {
                write_atomic(path, &report)?;
            }
            let _ = stdout.write_all(report.as_bytes());
            if passed {
                Ok(())
            } else {
                Err(CliError::Verification("verification failed".into()))
            }
        }
        CommandKind::Figures => {
            let dir = config.output_path.clone().unwrap_or_else(|| PathBuf::from("figures"));
            let written = write_figures(config, &dir)?;
            for path in written {
                let _ = writeln!(stdout, "{}", path.display());
            }
            Ok(())
        }
    }
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}"))),
    }
}

/// `#` lines recording every parameter that went into a table.
pub fn metadata(title: &str, params: &PhysicalParams, variant: &Variant) -> String {
    let mut out = format!("# nu-spectra {title}\n");
    let _ = write!(
        out,
        "# variant={} v0={} r0={} a={} q={} hbar2_over_2m={}",
        variant.name(),
        fmt_g(params.v0),
        fmt_g(params.r0),
        fmt_g(params.a),
        fmt_g(params.q),
        fmt_g(params.hbar2_over_2m)
    );
    match *variant {
        Variant::Real => {}
        Variant::PtSymmetric { alpha_i } => {
            let _ = write!(out, " alpha_i={}", fmt_g(alpha_i));
        }
        Variant::NonPtNonHermitian { v0i, alpha_i } => {
            let _ = write!(out, " v0i={} alpha_i={}", fmt_g(v0i), fmt_g(alpha_i));
        }
    }
    out.push('\n');
    out
}

pub fn spectrum_csv(config: &RunConfig) -> String {
    let mut out = metadata("spectrum", &config.params, &config.variant);
    let beta = woods_saxon::beta(&config.params, &config.variant);
    let _ = writeln!(out, "# beta={}{:+}i n_max={}", fmt_g(beta.re), beta.im, config.n_max);
    let _ = writeln!(out, "{SPECTRUM_HEADER}");
    for e in woods_saxon::spectrum(&config.params, &config.variant, config.n_max) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            config.variant.name(),
            e.n,
            fmt_g(e.e_n.re),
            fmt_g(e.e_n.im),
            fmt_g(e.epsilon_n.re),
            fmt_g(e.epsilon_n.im),
            fmt_g(e.t_n.re),
            fmt_g(e.t_n.im),
            e.valid
        );
    }
    out
}

fn spectrum_svg(config: &RunConfig) -> String {
    let valid: Vec<_> = woods_saxon::spectrum(&config.params, &config.variant, config.n_max)
        .into_iter()
        .filter(|e| e.valid)
        .collect();
    let mut series = vec![Series { label: "Re E".into(), points: valid.iter().map(|e| (e.n as f64, e.e_n.re)).collect() }];
    if config.variant != Variant::Real {
        series.push(Series { label: "Im E".into(), points: valid.iter().map(|e| (e.n as f64, e.e_n.im)).collect() });
    }
    line_plot("Bound-state energies", "n", "E (MeV)", &series)
}

/// CSV text, one re-V series per q, and the radii where a pole was hit.
pub fn potential_table(config: &RunConfig, variant: &Variant, q_values: &[f64]) -> (String, Vec<Series>, Vec<f64>) {
    let mut out = metadata("potential", &config.params, variant);
    let q_list: Vec<String> = q_values.iter().map(|&q| fmt_g(q)).collect();
    let _ = writeln!(
        out,
        "# q_values={} r_min={} r_max={} steps={}",
        q_list.join(";"),
        fmt_g(config.grid.r_min),
        fmt_g(config.grid.r_max),
        config.grid.steps
    );
    let _ = writeln!(out, "{POTENTIAL_HEADER}");
    let mut series = Vec::new();
    let mut poles = Vec::new();
    for &q in q_values {
        let params = PhysicalParams { q, ..config.params };
        let mut points = Vec::with_capacity(config.grid.steps);
        for r in config.grid.points() {
            match woods_saxon::potential_value(&params, variant, r) {
                Ok(v) => {
                    let _ = writeln!(out, "{},{},{},{}", fmt_g(q), fmt_g(r), fmt_g(v.re), fmt_g(v.im));
                    points.push((r, v.re));
                }
                Err(_) => {
                    let _ = writeln!(out, "{},{},,", fmt_g(q), fmt_g(r));
                    poles.push(r);
                }
            }
        }
        series.push(Series { label: format!("q={}", fmt_g(q)), points });
    }
    (out, series, poles)
}

pub fn s_grid() -> impl Iterator<Item = f64> {
    let h = (S_MAX - S_MIN) / (S_POINTS - 1) as f64;
    (0..S_POINTS).map(move |i| S_MIN + i as f64 * h)
}

pub fn wavefunction_table(
    params: &PhysicalParams,
    levels: impl IntoIterator<Item = u32>,
) -> Result<(String, Vec<Series>), CliError> {
    let mut out = metadata("wavefunction", params, &Variant::Real);
    let beta = woods_saxon::beta(params, &Variant::Real).re;
    let _ = writeln!(out, "# beta={} normalization: integral of R_n^2 over s in (0,1) = 1", fmt_g(beta));
    let mut rows = String::new();
    let mut series = Vec::new();
    for n in levels {
        let wf = woods_saxon::bound_state(params, n)?;
        let _ = writeln!(out, "# n={n} t={} C_n={}", fmt_g(wf.t), fmt_g(wf.c_n));
        let mut points = Vec::with_capacity(S_POINTS);
        for s in s_grid() {
            let r = woods_saxon::wavefunction_eval(&wf, s)?;
            let _ = writeln!(rows, "{n},{},{}", fmt_g(s), fmt_g(r));
            points.push((s, r));
        }
        series.push(Series { label: format!("n={n}"), points });
    }
    let _ = writeln!(out, "{WAVEFUNCTION_HEADER}");
    out.push_str(&rows);
    Ok((out, series))
}

pub fn fig2_table(config: &RunConfig) -> (String, Vec<Series>) {
    let mut out = metadata("fig2", &config.params, &Variant::Real);
    let a_list: Vec<String> = FIG2_A_VALUES.iter().map(|&a| fmt_g(a)).collect();
    let _ = writeln!(out, "# a_values={} (sweep brackets a=0.65 fm; a column overrides a above)", a_list.join(";"));
    let _ = writeln!(out, "{FIG2_HEADER}");
    let mut series = Vec::new();
    for a in FIG2_A_VALUES {
        let params = PhysicalParams { a, ..config.params };
        let spectrum = woods_saxon::spectrum(&params, &Variant::Real, config.n_max);
        for e in &spectrum {
            let _ = writeln!(out, "{},{},{},{}", fmt_g(a), e.n, fmt_g(e.e_n.re), e.valid);
        }
        series.push(Series {
            label: format!("a={}", fmt_g(a)),
            points: spectrum.iter().filter(|e| e.valid).map(|e| (e.n as f64, e.e_n.re)).collect(),
        });
    }
    (out, series)
}

/// Writes the three figure tables (and plots for `--format svg`) into `dir`.
pub fn write_figures(config: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let mut put = |name: &str, text: &str| -> Result<(), CliError> {
        let path = dir.join(name);
        write_atomic(&path, text)?;
        written.push(path);
        Ok(())
    };

    let (fig1, fig1_series, _) = potential_table(config, &Variant::Real, &config.q_values);
    let fig1 = fig1.replacen(
        "# nu-spectra potential\n",
        "# nu-spectra fig1\n# diffuseness: text value 0.65 fm, caption value 0.68 fm; default 0.65\n",
        1,
    );
    let (fig2, fig2_series) = fig2_table(config);
    let reference = verify::reference_params();
    let (fig3, fig3_series) = wavefunction_table(&reference, 0..=2)?;
    let fig3 = fig3.replacen(
        "# nu-spectra wavefunction\n",
        "# nu-spectra fig3\n# reference configuration hbar=m=1 (hbar2_over_2m=0.5), a=1, V0=8: beta=16, three bound levels\n",
        1,
    );

    put("fig1.csv", &fig1)?;
    put("fig2.csv", &fig2)?;
    put("fig3.csv", &fig3)?;
    if config.format == Format::Svg {
        put("fig1.svg", &line_plot("Woods-Saxon potential", "r (fm)", "V (MeV)", &fig1_series))?;
        put("fig2.svg", &line_plot("Energy versus n", "n", "E (MeV)", &fig2_series))?;
        put("fig3.svg", &line_plot("First three s-states", "s", "R_n(s)", &fig3_series))?;
    }
    Ok(written)
}

fn fmt_complex(z: Complex64) -> String {
    let im = fmt_g(z.im.abs());
    if z.im < 0.0 {
        format!("{}-{im}i", fmt_g(z.re))
    } else {
        format!("{}+{im}i", fmt_g(z.re))
    }
}

/// The pass/fail table, notes and errata; `true` when every check passed.
pub fn verify_report(epsilon_perturbation: f64) -> (String, bool) {
    let outcomes = verify::run_suite(SuiteOptions { epsilon_perturbation });
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::from("# nu-spectra verify\n");
    if epsilon_perturbation != 0.0 {
        let _ = writeln!(out, "# epsilon perturbed by a relative {}", fmt_g(epsilon_perturbation));
    }
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status}  {:width$}  {}", o.name, o.detail);
    }
    match verify::pt_lambda_comparison(&verify::reference_params(), 0.5) {
        Ok((engine, printed)) => {
            let _ = writeln!(
                out,
                "NOTE  pt lambda at n=0: engine {}, closed form -q(1+beta+2i*sqrt(eps-beta)) gives {}; \
                 energies are unaffected",
                fmt_complex(engine),
                fmt_complex(printed)
            );
        }
        Err(e) => {
            let _ = writeln!(out, "NOTE  pt lambda comparison unavailable: {e}");
        }
    }
    out.push('\n');
    out.push_str(&verify::errata_report());
    (out, outcomes.iter().all(|o| o.passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CommandKind, RGrid};

    fn config(command: CommandKind, params: PhysicalParams, variant: Variant, n_max: u32) -> RunConfig {
        RunConfig {
            command,
            params,
            variant,
            q_values: vec![params.q],
            n_max,
            output_path: None,
            format: Format::Csv,
            grid: RGrid::default(),
            epsilon_perturbation: 0.0,
        }
    }

    fn data_rows(csv: &str) -> Vec<Vec<String>> {
        csv.lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn spectrum_reference_rows() {
        let c = config(CommandKind::Spectrum, verify::reference_params(), Variant::Real, 3);
        let csv = spectrum_csv(&c);
        assert!(csv.lines().any(|l| l == SPECTRUM_HEADER));
        let rows = data_rows(&csv);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0][2], "-36.125");
        assert_eq!(rows[1][2], "-12.5");
        assert_eq!(rows[2][2], "-8.68055556");
        assert_eq!(rows[3][8], "false");
        assert!(rows[..3].iter().all(|r| r[8] == "true"));
    }

    #[test]
    fn shallow_well_single_invalid_row() {
        let params = PhysicalParams { v0: 0.5, ..verify::reference_params() };
        let rows = data_rows(&spectrum_csv(&config(CommandKind::Spectrum, params, Variant::Real, 0)));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0][8], "false");
    }

    #[test]
    fn pt_energies_are_real() {
        let c = config(
            CommandKind::Spectrum,
            verify::reference_params(),
            Variant::PtSymmetric { alpha_i: 0.5 },
            2,
        );
        for r in data_rows(&spectrum_csv(&c)) {
            assert!(r[3].parse::<f64>().unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn potential_preset_values() {
        let mut c = config(CommandKind::Potential, PhysicalParams::default(), Variant::Real, 0);
        c.grid = RGrid { r_min: 5.8, r_max: 5.8 + 6.5, steps: 2 };
        let (csv, series, poles) = potential_table(&c, &Variant::Real, &[1.0]);
        assert!(poles.is_empty());
        let rows = data_rows(&csv);
        assert_eq!(rows[0][2], "-2.5");
        let tail: f64 = rows[1][2].parse().unwrap();
        assert!(tail.abs() < 5.0 / (1.0 + 10f64.exp()) * 1.000001);
        assert_eq!(series.len(), 1);
    }

    #[test]
    fn potential_pole_rows_are_empty() {
        // 1 + e^{iθ} vanishes at θ = π, i.e. r − R0 = π/(2α_I)
        let params = PhysicalParams { r0: 0.0, ..PhysicalParams::default() };
        let mut c = config(CommandKind::Potential, params, Variant::PtSymmetric { alpha_i: 0.5 }, 0);
        c.grid = RGrid { r_min: 0.0, r_max: 2.0 * std::f64::consts::PI, steps: 3 };
        let (csv, _, poles) = potential_table(&c, &c.variant, &[1.0]);
        assert_eq!(poles.len(), 1);
        assert!(csv.lines().any(|l| l.ends_with(",,")));
    }

    #[test]
    fn wavefunction_sign_changes() {
        let c = config(CommandKind::Wavefunction, verify::reference_params(), Variant::Real, 2);
        let (csv, series) = wavefunction_table(&c.params, 0..=2).unwrap();
        assert_eq!(data_rows(&csv).len(), 3 * S_POINTS);
        for (n, s) in series.iter().enumerate() {
            let changes = s.points.windows(2).filter(|w| w[0].1 * w[1].1 < 0.0).count();
            assert_eq!(changes, n);
        }
    }

    #[test]
    fn wavefunction_endpoint_decay() {
        // β = 12: t = 5.5, 2, 0.5; the decay bound is checked where t ≥ 1
        let params = PhysicalParams { v0: 6.0, ..verify::reference_params() };
        let (_, series) = wavefunction_table(&params, 0..=1).unwrap();
        for s in &series {
            let max = s.points.iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
            assert!(s.points[0].1.abs() < 0.05 * max);
            assert!(s.points[S_POINTS - 1].1.abs() < 0.05 * max);
        }
    }

    #[test]
    fn wavefunction_invalid_level_is_domain_error() {
        let c = config(CommandKind::Wavefunction, verify::reference_params(), Variant::Real, 3);
        let err = wavefunction_table(&c.params, 0..=3).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_report_shape() {
        let (report, passed) = verify_report(0.0);
        assert!(passed, "{report}");
        assert!(report.contains("NOTE"));
        assert!(report.contains("ERRATA"));
        let (_, passed) = verify_report(0.01);
        assert!(!passed);
    }
}
