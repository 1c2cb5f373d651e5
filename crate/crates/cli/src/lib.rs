//! Front-end for the `nu-spectra` binary: argument parsing, config files and
//! the five commands.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nu_spectra::woods_saxon::NUCLEON_HBAR2_OVER_2M;
use nu_spectra::{PhysicalParams, Variant};

use config::ConfigFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<nu_spectra::Error> for CliError {
    fn from(e: nu_spectra::Error) -> Self {
        use nu_spectra::Error as E;
        match e {
            E::QuantizationDivergence { .. } | E::EigenSolve(_) => CliError::Verification(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nu-spectra", version, about = "Woods-Saxon bound-state spectra by the Nikiforov-Uvarov method")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels as CSV
    Spectrum(CommonArgs),
    /// Potential on an r grid for each q
    Potential {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Normalized s-state wavefunctions of the real potential
    Wavefunction(CommonArgs),
    /// Run the oracle suite and print a pass/fail table
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Scale ε by (1 + x) in the residual checks
        #[arg(long, hide = true)]
        perturb_epsilon: Option<f64>,
    },
    /// Write fig1/fig2/fig3 data into the --out directory
    Figures {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantKind {
    Real,
    Pt,
    Nonpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QList(pub Vec<f64>);

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum)]
    pub variant: Option<VariantKind>,
    /// Depth V0 in MeV
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    /// Imaginary depth of the non-PT potential, MeV [default: v0]
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub v0i: Option<f64>,
    /// Radius R0 in fm
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub r0: Option<f64>,
    /// Diffuseness a in fm
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// alpha_I in 1/fm [default: 1/(2a)]
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub alpha_i: Option<f64>,
    /// q, or a comma-separated list for `potential`
    #[arg(long, value_parser = parse_q_list, allow_hyphen_values = true)]
    pub q: Option<QList>,
    /// hbar^2/2m in MeV fm^2, or `nucleon`
    #[arg(long = "hbar2-over-2m", value_parser = parse_hbar)]
    pub hbar2_over_2m: Option<f64>,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Output file (directory for `figures`)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// key=value parameter file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub r_min: Option<f64>,
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub r_max: Option<f64>,
    /// Number of r samples
    #[arg(long)]
    pub steps: Option<usize>,
}

pub fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_hbar(s: &str) -> Result<f64, String> {
    if s.trim().eq_ignore_ascii_case("nucleon") {
        Ok(NUCLEON_HBAR2_OVER_2M)
    } else {
        parse_number(s)
    }
}

pub fn parse_q_list(s: &str) -> Result<QList, String> {
    let values = s.split(',').map(parse_number).collect::<Result<Vec<_>, _>>()?;
    Ok(QList(values))
}

fn parse_u32(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_enum<T: ValueEnum>(s: &str) -> Result<T, String> {
    T::from_str(s.trim(), true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Potential,
    Wavefunction,
    Verify,
    Figures,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Potential => "potential",
            CommandKind::Wavefunction => "wavefunction",
            CommandKind::Verify => "verify",
            CommandKind::Figures => "figures",
        }
    }

    fn default_n_max(self) -> u32 {
        match self {
            CommandKind::Wavefunction => 2,
            _ => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
}

impl RGrid {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = (self.r_max - self.r_min) / (self.steps - 1) as f64;
        (0..self.steps).map(move |i| self.r_min + i as f64 * h)
    }
}

impl Default for RGrid {
    fn default() -> Self {
        RGrid { r_min: 0.0, r_max: 15.0, steps: 301 }
    }
}

/// Fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub params: PhysicalParams,
    pub variant: Variant,
    /// Every q requested; `params.q` is the first.
    pub q_values: Vec<f64>,
    pub n_max: u32,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub grid: RGrid,
    pub epsilon_perturbation: f64,
}

/// q values of the potential plot.
pub const DEFAULT_Q_LIST: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self, CliError> {
        let (command, common, grid, perturb) = match cli.command {
            Command::Spectrum(c) => (CommandKind::Spectrum, c, GridArgs::default(), None),
            Command::Potential { common, grid } => (CommandKind::Potential, common, grid, None),
            Command::Wavefunction(c) => (CommandKind::Wavefunction, c, GridArgs::default(), None),
            Command::Verify { common, perturb_epsilon } => {
                (CommandKind::Verify, common, GridArgs::default(), perturb_epsilon)
            }
            Command::Figures { common, grid } => (CommandKind::Figures, common, grid, None),
        };
        let file = match &common.config {
            Some(path) => ConfigFile::read(path)?,
            None => ConfigFile::default(),
        };

        let defaults = PhysicalParams::default();
        let v0 = common.v0.or(file.get("v0", parse_number)?).unwrap_or(defaults.v0);
        let a = common.a.or(file.get("a", parse_number)?).unwrap_or(defaults.a);
        let r0 = common.r0.or(file.get("r0", parse_number)?).unwrap_or(defaults.r0);
        let hbar2_over_2m = common
            .hbar2_over_2m
            .or(file.get("hbar2-over-2m", parse_hbar)?)
            .unwrap_or(defaults.hbar2_over_2m);
        let alpha_i = common.alpha_i.or(file.get("alpha-i", parse_number)?).unwrap_or(0.5 / a);
        let v0i = common.v0i.or(file.get("v0i", parse_number)?).unwrap_or(v0);
        let q_values = match common.q.clone().or(file.get("q", parse_q_list)?) {
            Some(QList(list)) => list,
            None if matches!(command, CommandKind::Potential | CommandKind::Figures) => DEFAULT_Q_LIST.to_vec(),
            None => vec![defaults.q],
        };
        if q_values.is_empty() {
            return Err(CliError::Usage("q list is empty".into()));
        }
        if q_values.len() > 1 && !matches!(command, CommandKind::Potential | CommandKind::Figures) {
            return Err(CliError::Usage(format!("`{}` takes a single q value", command.name())));
        }
        let kind = common.variant.or(file.get("variant", parse_enum)?).unwrap_or(VariantKind::Real);
        let variant = match kind {
            VariantKind::Real => Variant::Real,
            VariantKind::Pt => Variant::PtSymmetric { alpha_i },
            VariantKind::Nonpt => Variant::NonPtNonHermitian { v0i, alpha_i },
        };

        let grid_default = RGrid::default();
        let grid = RGrid {
            r_min: grid.r_min.or(file.get("r-min", parse_number)?).unwrap_or(grid_default.r_min),
            r_max: grid.r_max.or(file.get("r-max", parse_number)?).unwrap_or(grid_default.r_max),
            steps: grid.steps.or(file.get("steps", parse_usize)?).unwrap_or(grid_default.steps),
        };
        if grid.steps < 2 || grid.r_max <= grid.r_min {
            return Err(CliError::Usage("r grid needs r-max > r-min and at least 2 steps".into()));
        }

        let params = PhysicalParams { v0, r0, a, q: q_values[0], hbar2_over_2m };
        let config = RunConfig {
            command,
            params,
            variant,
            n_max: common.n_max.or(file.get("n-max", parse_u32)?).unwrap_or(command.default_n_max()),
            output_path: common.out.or(file.get("out", |s| Ok(PathBuf::from(s)))?),
            format: common.format.or(file.get("format", parse_enum)?).unwrap_or(Format::Csv),
            q_values,
            grid,
            epsilon_perturbation: perturb.unwrap_or(0.0),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        self.params.validate()?;
        self.variant.validate()?;
        for &q in &self.q_values {
            PhysicalParams { q, ..self.params }.validate()?;
        }
        Ok(())
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };
    let result = RunConfig::resolve(cli).and_then(|config| commands::execute(&config, stdout, stderr));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
