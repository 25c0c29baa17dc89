//! Command-line front end of the `grav-bell` binary.
//!
//! Exit codes: 0 on success, 2 for usage errors and invalid flag values
//! (the message names the flag), 3 when a numerical method fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arrays::{
    classify_post_selection, path_proper_times, standard_geometry, DEFAULT_COINCIDENCE_WINDOW,
};
use crate::chsh::critical_area;
use crate::quantum::{
    probability_amplitude_oracle, probability_gaussian, probability_quadrature, visibility, FrequencyGrid,
};
use crate::spacetime::{SPEED_OF_LIGHT, STANDARD_GRAVITY, WEAK_FIELD_LIMIT};
use crate::spectra::sigma_from_bandwidth;
use crate::sweep::{
    figure_csv, format_value, sweep_csv, Figure, Quantities, SigmaVariant, SourceConfig, SweepSpec,
    SweepVariable,
};
use crate::{
    ArrayKind, DetectionProbabilities, Error, GravityModel, JointSpectrum, PhasePair, PhaseSettings,
    TabulatedSpectrum,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const BANDWIDTH_NOTE: &str = "The figure tables use 644.8 nm for the broadest source. \
The other subcommands default to 644.2 nm, the value quoted with the published widths \
sigma1 = 2.224e15 and sigma2 = 3.076e15. Pass --bandwidth to choose either.";

#[derive(Debug, Parser)]
#[command(
    name = "grav-bell",
    version,
    about = "Franson and Hugged arrays in a weak gravitational field"
)]
pub struct Cli {
    /// Gravitational acceleration (m/s^2)
    #[arg(long, global = true, default_value_t = STANDARD_GRAVITY, allow_negative_numbers = true)]
    pub g: f64,
    /// Speed of light (m/s)
    #[arg(long, global = true, default_value_t = SPEED_OF_LIGHT, allow_negative_numbers = true)]
    pub c: f64,
    /// Write the report or CSV to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-path proper times, pairwise delays and post-selection feasibility
    Delays(DelaysArgs),
    /// Joint detection probabilities by closed form, quadrature and amplitudes
    Probabilities(ProbabilitiesArgs),
    /// Write the table behind one of the figures
    #[command(after_help = BANDWIDTH_NOTE)]
    Figure(FigureArgs),
    /// Sweep one parameter and tabulate probabilities, visibility and CHSH values
    #[command(after_help = BANDWIDTH_NOTE)]
    Sweep(SweepArgs),
    /// Proper area beyond which the CHSH inequality cannot be violated
    CriticalArea(CriticalAreaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Franson,
    FransonRotated,
    Hugged,
    HuggedRotated,
}

impl From<KindArg> for ArrayKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Franson => ArrayKind::Franson,
            KindArg::FransonRotated => ArrayKind::FransonRotatedBalanced,
            KindArg::Hugged => ArrayKind::Hugged,
            KindArg::HuggedRotated => ArrayKind::HuggedRotatedBalanced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Franson)]
    pub kind: KindArg,
    /// Proper length L2' of the upper horizontal segment (m)
    #[arg(long, default_value_t = 1e4, allow_negative_numbers = true)]
    pub l2p: f64,
    /// Proper height H (m)
    #[arg(long, default_value_t = 1e4, allow_negative_numbers = true)]
    pub height: f64,
    /// Post-selection offset between paired detections (s); ignored by rotated kinds
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub dtau: f64,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Central wavelength of photon 1 (m)
    #[arg(long, default_value_t = 806e-9, allow_negative_numbers = true)]
    pub lambda1: f64,
    /// Central wavelength of photon 2 (m)
    #[arg(long, default_value_t = 706e-9, allow_negative_numbers = true)]
    pub lambda2: f64,
    /// Bandwidth of both photons (m); overrides --bandwidth1 and --bandwidth2
    #[arg(long, allow_negative_numbers = true)]
    pub bandwidth: Option<f64>,
    /// Bandwidth of photon 1 (m)
    #[arg(long, default_value_t = 644.2e-9, allow_negative_numbers = true)]
    pub bandwidth1: f64,
    /// Bandwidth of photon 2 (m)
    #[arg(long, default_value_t = 644.2e-9, allow_negative_numbers = true)]
    pub bandwidth2: f64,
}

#[derive(Debug, Args)]
pub struct DelaysArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Coincidence window of the detectors (s)
    #[arg(long, default_value_t = DEFAULT_COINCIDENCE_WINDOW, allow_negative_numbers = true)]
    pub window: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ClosedForm,
    Quadrature,
    Amplitude,
    All,
}

#[derive(Debug, Args)]
pub struct ProbabilitiesArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    /// Left analyser phase (rad)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Right analyser phase (rad)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    /// Tabulated joint spectrum (header `omega1 omega2 density`) replacing the Gaussian source
    #[arg(long)]
    pub spectrum_file: Option<PathBuf>,
    /// Nodes per axis of the amplitude grid
    #[arg(long, default_value_t = crate::quantum::DEFAULT_GRID_POINTS)]
    pub grid_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// One of fig3a, fig3b, fig4, fig5, fig6a, fig6b
    #[arg(value_parser = parse_figure)]
    pub name: Figure,
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariableArg {
    Area,
    Height,
    Length,
    Bandwidth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaArg {
    Standard,
    Compensated,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub variable: VariableArg,
    /// First grid value, in SI units of the variable
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    /// Last grid value
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[command(flatten)]
    pub source: SourceArgs,
    /// Left analyser phase of the probability columns (rad)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Right analyser phase of the probability columns (rad)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, value_enum, default_value_t = SigmaArg::Standard)]
    pub sigma_variant: SigmaArg,
    /// Comma-separated subset of probabilities, visibility, sigma, sigma_classical
    #[arg(long, default_value = "probabilities,visibility,sigma,sigma_classical")]
    pub quantities: Quantities,
}

#[derive(Debug, Args)]
pub struct CriticalAreaArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Spectral width of photon 1 (rad/s); overrides the wavelength flags
    #[arg(long, allow_negative_numbers = true)]
    pub sigma1: Option<f64>,
    /// Spectral width of photon 2 (rad/s)
    #[arg(long, allow_negative_numbers = true)]
    pub sigma2: Option<f64>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn flag(flag: &str, reason: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: format!("invalid value for --{flag}: {reason}"),
        }
    }

    fn numerical(err: Error) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn require(flag: &str, value: f64, ok: bool, expectation: &str) -> CliResult<()> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(CliError::flag(flag, format!("{expectation}, got {value}")))
    }
}

fn non_negative(flag: &str, value: f64) -> CliResult<()> {
    require(flag, value, value >= 0.0, "must be finite and non-negative")
}

fn positive(flag: &str, value: f64) -> CliResult<()> {
    require(flag, value, value > 0.0, "must be finite and positive")
}

fn model_from(cli: &Cli) -> CliResult<GravityModel> {
    non_negative("g", cli.g)?;
    positive("c", cli.c)?;
    GravityModel::new(cli.g, cli.c, 0.0).map_err(|e| CliError::flag("g", e))
}

impl GeometryArgs {
    fn validate(&self, model: &GravityModel) -> CliResult<()> {
        non_negative("l2p", self.l2p)?;
        non_negative("height", self.height)?;
        non_negative("dtau", self.dtau)?;
        let ratio = model.g * self.height / model.c2();
        if ratio > WEAK_FIELD_LIMIT {
            return Err(CliError::flag(
                "height",
                format!("g H / c^2 = {ratio:.3e} leaves the weak-field regime (limit {WEAK_FIELD_LIMIT:e})"),
            ));
        }
        Ok(())
    }

    /// `(Δτ12, Δτ1'2', times, offset)` of the requested array.
    fn delays(&self, model: &GravityModel) -> CliResult<(crate::PathDelaySet, f64)> {
        self.validate(model)?;
        let kind = ArrayKind::from(self.kind);
        let geometry =
            standard_geometry(kind, self.l2p, self.height, self.dtau, model).map_err(CliError::numerical)?;
        let times = path_proper_times(&geometry, model).map_err(CliError::numerical)?;
        Ok((times, geometry.post_selection_offset()))
    }
}

impl SourceArgs {
    fn config(&self) -> CliResult<SourceConfig> {
        positive("lambda1", self.lambda1)?;
        positive("lambda2", self.lambda2)?;
        let (b1, b2, f1, f2) = match self.bandwidth {
            Some(b) => (b, b, "bandwidth", "bandwidth"),
            None => (self.bandwidth1, self.bandwidth2, "bandwidth1", "bandwidth2"),
        };
        for (flag, b, lambda) in [(f1, b1, self.lambda1), (f2, b2, self.lambda2)] {
            positive(flag, b)?;
            require(
                flag,
                b,
                b < 2.0 * lambda,
                "must be below twice the central wavelength",
            )?;
        }
        Ok(SourceConfig {
            lambda1: self.lambda1,
            bandwidth1: b1,
            lambda2: self.lambda2,
            bandwidth2: b2,
        })
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(output) => match &cli.out {
            Some(path) => match std::fs::write(path, output) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: invalid value for --out: {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                let _ = stdout.write_all(output.as_bytes());
                EXIT_OK
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command and returns its output.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let model = model_from(cli)?;
    match &cli.command {
        Command::Delays(args) => delays_report(args, &model),
        Command::Probabilities(args) => probabilities_report(args, &model),
        Command::Figure(args) => figure_csv(args.name, &model).map_err(CliError::numerical),
        Command::Sweep(args) => sweep_report(args, &model),
        Command::CriticalArea(args) => critical_area_report(args, &model),
    }
}

fn delays_report(args: &DelaysArgs, model: &GravityModel) -> CliResult<String> {
    non_negative("window", args.window)?;
    let (times, _) = args.geometry.delays(model)?;
    let report = classify_post_selection(&times, args.window).map_err(CliError::numerical)?;
    let mut rows: Vec<(String, String)> = Vec::new();
    rows.push(("kind".into(), ArrayKind::from(args.geometry.kind).name().into()));
    for path in crate::Path::ALL {
        rows.push((
            format!("tau_{}_s", path.label()),
            format_value(times.proper_time(path)),
        ));
    }
    for (label, value) in times.pairwise() {
        rows.push((format!("delta_{label}_s"), format_value(value)));
    }
    for (pair, signature) in report.signatures {
        let (a, b) = pair.paths();
        rows.push((
            format!("signature_{}_{}_s", a.label(), b.label()),
            format_value(signature),
        ));
    }
    rows.push(("window_s".into(), format_value(report.window)));
    rows.push(("timing_feasible".into(), report.timing_feasible.to_string()));
    rows.push((
        "local_post_selection".into(),
        report.local_post_selection.to_string(),
    ));
    rows.push(("feasible".into(), report.feasible().to_string()));
    Ok(render_pairs(&rows, args.format))
}

fn render_pairs(rows: &[(String, String)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
            for (k, v) in rows {
                let _ = writeln!(out, "{:width$}  {v}", format!("{k}:"), width = width + 1);
            }
        }
        Format::Csv => {
            out.push_str("quantity,value\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k},{v}");
            }
        }
    }
    out
}

fn probabilities_report(args: &ProbabilitiesArgs, model: &GravityModel) -> CliResult<String> {
    let (times, offset) = args.geometry.delays(model)?;
    let (d12, d1p2p) = (times.g1_g2(), times.g1p_g2p());
    let phases = PhasePair::new(args.alpha, args.beta);
    require("alpha", args.alpha, true, "must be finite")?;
    require("beta", args.beta, true, "must be finite")?;

    let (spectrum, gaussian) = match &args.spectrum_file {
        Some(path) => {
            let table = TabulatedSpectrum::load(path).map_err(|e| CliError::flag("spectrum-file", e))?;
            (JointSpectrum::Tabulated(table), None)
        }
        None => {
            let (l, r) = args
                .source
                .config()?
                .spectra(model)
                .map_err(|e| CliError::flag("lambda1", e))?;
            (JointSpectrum::product(l, r), Some((l, r)))
        }
    };
    let wants = |m: Method| args.method == m || args.method == Method::All;
    let mut results: Vec<(&str, DetectionProbabilities)> = Vec::new();
    if wants(Method::ClosedForm) {
        match gaussian {
            Some((l, r)) => results.push(("closed-form", probability_gaussian(d12, d1p2p, &l, &r, phases))),
            None if args.method == Method::ClosedForm => {
                return Err(CliError::flag(
                    "method",
                    "closed-form needs a Gaussian source, not --spectrum-file",
                ))
            }
            None => {}
        }
    }
    if wants(Method::Quadrature) {
        let p = probability_quadrature(d12, d1p2p, &spectrum, phases).map_err(CliError::numerical)?;
        results.push(("quadrature", p));
    }
    if wants(Method::Amplitude) {
        let grid = match (&gaussian, &spectrum) {
            (Some((l, r)), _) => FrequencyGrid::gaussian(l, r, args.grid_points).map_err(|e| match e {
                Error::GridTooCoarse { .. } | Error::InvalidParameter { .. } => {
                    CliError::flag("grid-points", e)
                }
                other => CliError::numerical(other),
            })?,
            (None, s) => FrequencyGrid::for_spectrum(s).map_err(CliError::numerical)?,
        };
        let p = probability_amplitude_oracle(&times, offset, phases, &grid).map_err(CliError::numerical)?;
        results.push(("amplitude", p));
    }

    let mut out = String::new();
    match args.format {
        Format::Text => {
            let _ = writeln!(out, "delta_g1_g2_s:    {}", format_value(d12));
            let _ = writeln!(out, "delta_g1p_g2p_s:  {}", format_value(d1p2p));
            if let Some((l, r)) = gaussian {
                let v = visibility(d12, d1p2p, l.sigma(), r.sigma());
                let _ = writeln!(out, "visibility:       {}", format_value(v));
            }
            let _ = writeln!(
                out,
                "{:<12} {:>18} {:>18} {:>18} {:>18} {:>18}",
                "method", "p_pp", "p_pm", "p_mp", "p_mm", "E"
            );
            for (name, p) in &results {
                let _ = write!(out, "{name:<12}");
                for v in p.to_array().into_iter().chain([p.correlation()]) {
                    let _ = write!(out, " {:>18}", format_value(v));
                }
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("method,p_pp,p_pm,p_mp,p_mm,E\n");
            for (name, p) in &results {
                let values: Vec<String> = p
                    .to_array()
                    .into_iter()
                    .chain([p.correlation()])
                    .map(format_value)
                    .collect();
                let _ = writeln!(out, "{name},{}", values.join(","));
            }
        }
    }
    Ok(out)
}

fn sweep_report(args: &SweepArgs, model: &GravityModel) -> CliResult<String> {
    args.geometry.validate(model)?;
    require("start", args.start, true, "must be finite")?;
    require("stop", args.stop, args.stop > args.start, "must exceed --start")?;
    if args.points < 2 {
        return Err(CliError::flag(
            "points",
            format!("need at least 2 points, got {}", args.points),
        ));
    }
    let variable = match args.variable {
        VariableArg::Area => SweepVariable::Area,
        VariableArg::Height => SweepVariable::Height,
        VariableArg::Length => SweepVariable::Length,
        VariableArg::Bandwidth => SweepVariable::Bandwidth,
    };
    match variable {
        SweepVariable::Bandwidth => positive("start", args.start)?,
        _ => non_negative("start", args.start)?,
    }
    if variable == SweepVariable::Area {
        positive("height", args.geometry.height)?;
    }
    if variable == SweepVariable::Height {
        let ratio = model.g * args.stop / model.c2();
        require(
            "stop",
            args.stop,
            ratio <= WEAK_FIELD_LIMIT,
            "leaves the weak-field regime",
        )?;
    }
    let source = args.source.config()?;
    if variable == SweepVariable::Bandwidth {
        let limit = 2.0 * source.lambda1.min(source.lambda2);
        require(
            "stop",
            args.stop,
            args.stop < limit,
            "bandwidth must stay below twice the central wavelength",
        )?;
    }
    let spec = SweepSpec {
        variable,
        start: args.start,
        stop: args.stop,
        points: args.points,
        kind: args.geometry.kind.into(),
        l2p: args.geometry.l2p,
        height: args.geometry.height,
        offset: args.geometry.dtau,
        source,
        phases: PhasePair::new(args.alpha, args.beta),
        settings: PhaseSettings::canonical(),
        sigma_variant: match args.sigma_variant {
            SigmaArg::Standard => SigmaVariant::Standard,
            SigmaArg::Compensated => SigmaVariant::Compensated,
        },
        quantities: args.quantities,
    };
    sweep_csv(&spec, model).map_err(CliError::numerical)
}

fn critical_area_report(args: &CriticalAreaArgs, model: &GravityModel) -> CliResult<String> {
    let (s1, s2) = match (args.sigma1, args.sigma2) {
        (Some(s1), Some(s2)) => {
            positive("sigma1", s1)?;
            positive("sigma2", s2)?;
            (s1, s2)
        }
        (Some(_), None) => return Err(CliError::flag("sigma2", "required together with --sigma1")),
        (None, Some(_)) => return Err(CliError::flag("sigma1", "required together with --sigma2")),
        (None, None) => {
            let source = args.source.config()?;
            let s1 = sigma_from_bandwidth(source.lambda1, source.bandwidth1, model)
                .map_err(|e| CliError::flag("bandwidth1", e))?;
            let s2 = sigma_from_bandwidth(source.lambda2, source.bandwidth2, model)
                .map_err(|e| CliError::flag("bandwidth2", e))?;
            (s1, s2)
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "sigma1_rad_s:      {}", format_value(s1));
    let _ = writeln!(out, "sigma2_rad_s:      {}", format_value(s2));
    match critical_area(s1, s2, model) {
        Ok(a) => {
            let _ = writeln!(out, "critical_area_m2:  {}", format_value(a));
        }
        Err(Error::ZeroGravity) => out.push_str("no finite critical area (g = 0)\n"),
        Err(e) => return Err(CliError::numerical(e)),
    }
    Ok(out)
}
