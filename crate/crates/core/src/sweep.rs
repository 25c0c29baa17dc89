//! Parameter sweeps and the tables behind the published figures.
//!
//! Every table is evaluated sequentially in grid order and rendered as CSV
//! with twelve significant digits, so output is byte-for-byte reproducible.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::arrays::{path_proper_times, standard_geometry};
use crate::chsh::{self, sigma_balanced, sigma_rotated_hugged};
use crate::quantum::{probability_gaussian, visibility};
use crate::{
    ArrayKind, DetectionProbabilities, Error, GaussianSpectrum, GravityModel, PhasePair, PhaseSettings,
    Result,
};

/// Bandwidths of the broadband source figures (m).
pub const FIGURE_BANDWIDTHS: [f64; 3] = [161.2e-9, 322.4e-9, 644.8e-9];

/// Carrier wavelengths of the broadband source (m).
pub const BROADBAND_WAVELENGTHS: (f64, f64) = (806e-9, 706e-9);

/// Idler and signal of the periodically poled SLT down-conversion source: `(λ, δλ)` each.
pub const SPDC_SOURCE: ((f64, f64), (f64, f64)) = ((3300e-9, 370e-9), (995e-9, 34e-9));

/// Proper height kept fixed when a figure sweeps the area (m).
pub const FIGURE_HEIGHT: f64 = 1e4;

/// A numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Print the first column as an integer row index.
    pub indexed: bool,
}

impl Table {
    fn new(header: Vec<String>, indexed: bool) -> Self {
        Self {
            header,
            rows: Vec::new(),
            indexed,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if k == 0 && self.indexed {
                    let _ = write!(out, "{}", *v as u64);
                } else {
                    out.push_str(&format_value(*v));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Twelve significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Wavelength pair and bandwidths of a Gaussian twin-photon source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceConfig {
    pub lambda1: f64,
    pub bandwidth1: f64,
    pub lambda2: f64,
    pub bandwidth2: f64,
}

impl SourceConfig {
    /// 806/706 nm carriers with a common bandwidth.
    pub fn broadband(bandwidth: f64) -> Self {
        let (lambda1, lambda2) = BROADBAND_WAVELENGTHS;
        Self {
            lambda1,
            bandwidth1: bandwidth,
            lambda2,
            bandwidth2: bandwidth,
        }
    }

    pub fn spdc() -> Self {
        let ((lambda1, bandwidth1), (lambda2, bandwidth2)) = SPDC_SOURCE;
        Self {
            lambda1,
            bandwidth1,
            lambda2,
            bandwidth2,
        }
    }

    pub fn spectra(&self, model: &GravityModel) -> Result<(GaussianSpectrum, GaussianSpectrum)> {
        Ok((
            GaussianSpectrum::from_bandwidth(self.lambda1, self.bandwidth1, model)?,
            GaussianSpectrum::from_bandwidth(self.lambda2, self.bandwidth2, model)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Proper area `A = L2' H` at fixed height.
    Area,
    Height,
    /// Proper length `L2'`.
    Length,
    /// Common bandwidth `δλ` of both photons.
    Bandwidth,
}

impl SweepVariable {
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Area => "area_m2",
            SweepVariable::Height => "height_m",
            SweepVariable::Length => "l2p_m",
            SweepVariable::Bandwidth => "bandwidth_m",
        }
    }
}

/// Which closed form fills the `sigma` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaVariant {
    /// Four correlations at the given settings, signed.
    #[default]
    Standard,
    /// Settings referred to the gravitational phases, leaving the envelope.
    Compensated,
}

/// Optional column groups of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quantities {
    pub probabilities: bool,
    pub visibility: bool,
    pub sigma: bool,
    pub sigma_classical: bool,
}

impl Quantities {
    pub const ALL: Quantities = Quantities {
        probabilities: true,
        visibility: true,
        sigma: true,
        sigma_classical: true,
    };
    pub const NONE: Quantities = Quantities {
        probabilities: false,
        visibility: false,
        sigma: false,
        sigma_classical: false,
    };
}

impl Default for Quantities {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for Quantities {
    type Err = String;

    /// Comma-separated subset of `probabilities, visibility, sigma, sigma_classical`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut q = Quantities::NONE;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "probabilities" => q.probabilities = true,
                "visibility" => q.visibility = true,
                "sigma" => q.sigma = true,
                "sigma_classical" => q.sigma_classical = true,
                other => return Err(format!("unknown quantity `{other}`")),
            }
        }
        if q == Quantities::NONE {
            return Err("no quantities requested".into());
        }
        Ok(q)
    }
}

/// A one-dimensional sweep over a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub kind: ArrayKind,
    pub l2p: f64,
    pub height: f64,
    pub offset: f64,
    pub source: SourceConfig,
    /// Phases of the probability columns.
    pub phases: PhasePair,
    pub settings: PhaseSettings,
    pub sigma_variant: SigmaVariant,
    pub quantities: Quantities,
}

impl SweepSpec {
    /// Area sweep of a balanced Franson array fed by the broad 644.8 nm source.
    pub fn area(start: f64, stop: f64, points: usize) -> Self {
        Self {
            variable: SweepVariable::Area,
            start,
            stop,
            points,
            kind: ArrayKind::Franson,
            l2p: 1e4,
            height: FIGURE_HEIGHT,
            offset: 0.0,
            source: SourceConfig::broadband(FIGURE_BANDWIDTHS[2]),
            phases: PhasePair::default(),
            settings: PhaseSettings::canonical(),
            sigma_variant: SigmaVariant::Standard,
            quantities: Quantities::ALL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::InvalidParameter {
                name: "start",
                reason: format!("start must be below stop, got {} and {}", self.start, self.stop),
            });
        }
        if self.points < 2 {
            return Err(Error::InvalidParameter {
                name: "points",
                reason: format!("need at least 2 points, got {}", self.points),
            });
        }
        let lower = match self.variable {
            SweepVariable::Bandwidth => self.start > 0.0,
            _ => self.start >= 0.0,
        };
        if !lower {
            return Err(Error::InvalidParameter {
                name: "start",
                reason: format!("{} cannot start at {}", self.variable.column(), self.start),
            });
        }
        if self.variable == SweepVariable::Area && self.height <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "height",
                reason: "an area sweep needs a positive height".into(),
            });
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.stop
                } else {
                    self.start + k as f64 * step
                }
            })
            .collect()
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec![
            "index".to_string(),
            self.variable.column().to_string(),
            "delta_tau_s".into(),
        ];
        let q = self.quantities;
        if q.visibility {
            h.push("visibility".into());
        }
        if q.probabilities {
            h.extend(["p_pp", "p_pm", "p_mp", "p_mm", "E"].map(String::from));
        }
        if q.sigma {
            h.push("sigma".into());
        }
        if q.sigma_classical {
            h.push("sigma_classical".into());
        }
        h
    }
}

/// Everything computed at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub value: f64,
    /// `Δτ_{γ1γ2}` (s).
    pub delta_tau: f64,
    pub visibility: f64,
    pub probabilities: DetectionProbabilities,
    pub sigma: f64,
    pub sigma_classical: f64,
}

pub fn run_sweep(spec: &SweepSpec, model: &GravityModel) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.values()
        .into_iter()
        .enumerate()
        .map(|(index, value)| {
            let (mut l2p, mut height, mut source) = (spec.l2p, spec.height, spec.source);
            match spec.variable {
                SweepVariable::Area => l2p = value / height,
                SweepVariable::Height => height = value,
                SweepVariable::Length => l2p = value,
                SweepVariable::Bandwidth => {
                    source.bandwidth1 = value;
                    source.bandwidth2 = value;
                }
            }
            let (left, right) = source.spectra(model)?;
            let geometry = standard_geometry(spec.kind, l2p, height, spec.offset, model)?;
            let times = path_proper_times(&geometry, model)?;
            let (d12, d1p2p) = (times.g1_g2(), times.g1p_g2p());
            let settings = match spec.sigma_variant {
                SigmaVariant::Standard => spec.settings,
                SigmaVariant::Compensated => {
                    PhaseSettings::compensated(d12, d1p2p, left.omega_bar(), right.omega_bar())
                }
            };
            Ok(SweepRow {
                index,
                value,
                delta_tau: d12,
                visibility: visibility(d12, d1p2p, left.sigma(), right.sigma()),
                probabilities: probability_gaussian(d12, d1p2p, &left, &right, spec.phases),
                sigma: chsh::sigma_gaussian(d12, d1p2p, &left, &right, &settings).sigma,
                sigma_classical: chsh::sigma_classical(
                    d12,
                    d1p2p,
                    left.sigma(),
                    right.sigma(),
                    left.omega_bar(),
                    right.omega_bar(),
                ),
            })
        })
        .collect()
}

pub fn sweep_table(spec: &SweepSpec, rows: &[SweepRow]) -> Table {
    let mut table = Table::new(spec.header(), true);
    let q = spec.quantities;
    for r in rows {
        let mut row = vec![r.index as f64, r.value, r.delta_tau];
        if q.visibility {
            row.push(r.visibility);
        }
        if q.probabilities {
            let p = r.probabilities;
            row.extend([p.p_pp, p.p_pm, p.p_mp, p.p_mm, p.correlation()]);
        }
        if q.sigma {
            row.push(r.sigma);
        }
        if q.sigma_classical {
            row.push(r.sigma_classical);
        }
        table.rows.push(row);
    }
    table
}

/// Runs a sweep and renders it as CSV.
pub fn sweep_csv(spec: &SweepSpec, model: &GravityModel) -> Result<String> {
    Ok(sweep_table(spec, &run_sweep(spec, model)?).to_csv())
}

/// The reproducible figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `p₊₊` against area for balanced arrays at three bandwidths.
    Fig3a,
    /// `p₊₊` against area for the rotated Hugged array.
    Fig3b,
    /// `Σ` over area and bandwidth with the critical area of each bandwidth.
    Fig4,
    /// `Σ` over `L2'` and `H` at 644.8 nm.
    Fig5,
    /// `p₊₊` for the SPDC source, balanced and rotated Hugged.
    Fig6a,
    /// `Σ` for the SPDC source, balanced and rotated Hugged.
    Fig6b,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig3a,
        Figure::Fig3b,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6a,
        Figure::Fig6b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig3a => "fig3a",
            Figure::Fig3b => "fig3b",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6a => "fig6a",
            Figure::Fig6b => "fig6b",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    let step = (stop - start) / (points - 1) as f64;
    (0..points)
        .map(|k| {
            if k + 1 == points {
                stop
            } else {
                start + k as f64 * step
            }
        })
        .collect()
}

/// Single-photon delays `(Δτ12, Δτ1'2')` of a standard array at the figure height.
fn area_delays(kind: ArrayKind, area: f64, model: &GravityModel) -> Result<(f64, f64)> {
    geometry_delays(kind, area / FIGURE_HEIGHT, FIGURE_HEIGHT, model)
}

fn geometry_delays(kind: ArrayKind, l2p: f64, height: f64, model: &GravityModel) -> Result<(f64, f64)> {
    let times = path_proper_times(&standard_geometry(kind, l2p, height, 0.0, model)?, model)?;
    Ok((times.g1_g2(), times.g1p_g2p()))
}

fn nm_label(bandwidth: f64) -> String {
    format!("{:.1}nm", bandwidth * 1e9)
}

/// Computes the table of a figure.
pub fn figure_table(figure: Figure, model: &GravityModel) -> Result<Table> {
    match figure {
        Figure::Fig3a => probability_vs_area(ArrayKind::Franson, model),
        Figure::Fig3b => probability_vs_area(ArrayKind::HuggedRotatedBalanced, model),
        Figure::Fig4 => sigma_over_area_and_bandwidth(model),
        Figure::Fig5 => sigma_over_length_and_height(model),
        Figure::Fig6a | Figure::Fig6b => spdc_figure(figure, model),
    }
}

pub fn figure_csv(figure: Figure, model: &GravityModel) -> Result<String> {
    Ok(figure_table(figure, model)?.to_csv())
}

fn probability_vs_area(kind: ArrayKind, model: &GravityModel) -> Result<Table> {
    let mut header = vec!["area_m2".to_string(), "delta_tau_s".to_string()];
    let mut sources = Vec::new();
    for bw in FIGURE_BANDWIDTHS {
        header.push(format!("visibility_{}", nm_label(bw)));
        header.push(format!("p_pp_{}", nm_label(bw)));
        sources.push(SourceConfig::broadband(bw).spectra(model)?);
    }
    let mut table = Table::new(header, false);
    for area in linspace(0.0, 5e9, 501) {
        let (d12, d1p2p) = area_delays(kind, area, model)?;
        let mut row = vec![area, d12];
        for (l, r) in &sources {
            row.push(visibility(d12, d1p2p, l.sigma(), r.sigma()));
            row.push(probability_gaussian(d12, d1p2p, l, r, PhasePair::default()).p_pp);
        }
        table.rows.push(row);
    }
    Ok(table)
}

fn sigma_over_area_and_bandwidth(model: &GravityModel) -> Result<Table> {
    let header = [
        "delta_lambda_m",
        "area_m2",
        "delta_tau_s",
        "visibility",
        "sigma",
        "critical_area_m2",
    ];
    let mut table = Table::new(header.map(String::from).to_vec(), false);
    let (lo, hi) = (FIGURE_BANDWIDTHS[0], FIGURE_BANDWIDTHS[2]);
    for bw in linspace(lo, hi, 13) {
        let (l, r) = SourceConfig::broadband(bw).spectra(model)?;
        let a_star = chsh::critical_area(l.sigma(), r.sigma(), model).unwrap_or(f64::INFINITY);
        for area in linspace(0.0, 5e9, 201) {
            let (d, _) = area_delays(ArrayKind::Franson, area, model)?;
            table.rows.push(vec![
                bw,
                area,
                d,
                visibility(d, d, l.sigma(), r.sigma()),
                sigma_balanced(d, l.sigma(), r.sigma(), l.omega_bar(), r.omega_bar()),
                a_star,
            ]);
        }
    }
    Ok(table)
}

fn sigma_over_length_and_height(model: &GravityModel) -> Result<Table> {
    let header = [
        "l2p_m",
        "height_m",
        "area_m2",
        "delta_tau_s",
        "visibility",
        "sigma",
    ];
    let mut table = Table::new(header.map(String::from).to_vec(), false);
    let (l, r) = SourceConfig::broadband(FIGURE_BANDWIDTHS[2]).spectra(model)?;
    for l2p in linspace(0.0, 2e4, 41) {
        for height in linspace(0.0, 2e4, 41) {
            let (d, _) = geometry_delays(ArrayKind::Franson, l2p, height, model)?;
            table.rows.push(vec![
                l2p,
                height,
                l2p * height,
                d,
                visibility(d, d, l.sigma(), r.sigma()),
                sigma_balanced(d, l.sigma(), r.sigma(), l.omega_bar(), r.omega_bar()),
            ]);
        }
    }
    Ok(table)
}

fn spdc_figure(figure: Figure, model: &GravityModel) -> Result<Table> {
    let (l, r) = SourceConfig::spdc().spectra(model)?;
    let names = if figure == Figure::Fig6a {
        ["p_pp_balanced", "p_pp_rotated_hugged"]
    } else {
        ["sigma_balanced", "sigma_rotated_hugged"]
    };
    let mut header = vec!["area_m2".to_string(), "delta_tau_s".into(), "visibility".into()];
    header.extend(names.map(String::from));
    let mut table = Table::new(header, false);
    for area in linspace(0.0, 5e10, 1001) {
        let (d, d_p) = area_delays(ArrayKind::Franson, area, model)?;
        let (h, h_p) = area_delays(ArrayKind::HuggedRotatedBalanced, area, model)?;
        let v = visibility(d, d_p, l.sigma(), r.sigma());
        let (balanced, rotated) = if figure == Figure::Fig6a {
            (
                probability_gaussian(d, d_p, &l, &r, PhasePair::default()).p_pp,
                probability_gaussian(h, h_p, &l, &r, PhasePair::default()).p_pp,
            )
        } else {
            let (s1, s2, w1, w2) = (l.sigma(), r.sigma(), l.omega_bar(), r.omega_bar());
            (
                sigma_balanced(d, s1, s2, w1, w2),
                sigma_rotated_hugged(h_p, s1, s2, w1, w2),
            )
        };
        table.rows.push(vec![area, d, v, balanced, rotated]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_twelve_significant_digits() {
        assert_eq!(format_value(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(format_value(0.0), "0.00000000000e0");
    }

    #[test]
    fn quantities_parse() {
        let q: Quantities = "sigma, visibility".parse().unwrap();
        assert!(q.sigma && q.visibility && !q.probabilities && !q.sigma_classical);
        assert!("bogus".parse::<Quantities>().is_err());
        assert!("".parse::<Quantities>().is_err());
    }

    #[test]
    fn header_drops_unrequested_columns() {
        let mut spec = SweepSpec::area(0.0, 1e9, 3);
        spec.quantities = "sigma".parse().unwrap();
        assert_eq!(spec.header(), ["index", "area_m2", "delta_tau_s", "sigma"]);
        let csv = sweep_csv(&spec, &GravityModel::earth()).unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("0,0.00000000000e0,"));
    }

    #[test]
    fn sweep_validation() {
        let m = GravityModel::earth();
        assert!(run_sweep(&SweepSpec::area(1.0, 0.0, 5), &m).is_err());
        assert!(run_sweep(&SweepSpec::area(0.0, 1.0, 1), &m).is_err());
        assert!(run_sweep(&SweepSpec::area(-1.0, 1.0, 3), &m).is_err());
    }

    #[test]
    fn compensated_sweep_crosses_two_at_critical_area() {
        let m = GravityModel::earth();
        let (l, r) = SourceConfig::broadband(FIGURE_BANDWIDTHS[2]).spectra(&m).unwrap();
        let a_star = chsh::critical_area(l.sigma(), r.sigma(), &m).unwrap();
        let mut spec = SweepSpec::area(0.0, 2.0 * a_star, 401);
        spec.sigma_variant = SigmaVariant::Compensated;
        let rows = run_sweep(&spec, &m).unwrap();
        let crossings: Vec<_> = rows
            .windows(2)
            .filter(|w| (w[0].sigma > 2.0) != (w[1].sigma > 2.0))
            .collect();
        assert_eq!(crossings.len(), 1);
        let w = crossings[0];
        assert!(w[0].value <= a_star * (1.0 + 1e-9) && w[1].value >= a_star * (1.0 - 1e-9));
    }

    #[test]
    fn bandwidth_sweep_envelope_is_nonincreasing() {
        let m = GravityModel::earth();
        let mut spec = SweepSpec::area(0.0, 1.0, 2);
        spec.variable = SweepVariable::Bandwidth;
        spec.start = 50e-9;
        spec.stop = 700e-9;
        spec.points = 40;
        spec.sigma_variant = SigmaVariant::Compensated;
        let rows = run_sweep(&spec, &m).unwrap();
        assert!(rows.windows(2).all(|w| w[1].sigma <= w[0].sigma));
    }

    #[test]
    fn flat_sweep_rows_share_sigma() {
        let rows = run_sweep(&SweepSpec::area(0.0, 1e10, 11), &GravityModel::flat()).unwrap();
        assert!(rows.iter().all(|r| r.sigma == rows[0].sigma));
    }

    #[test]
    fn figure_names_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.name().parse::<Figure>().unwrap(), f);
        }
        assert!(matches!("fig7".parse::<Figure>(), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn fig3a_starts_at_one_half() {
        let t = figure_table(Figure::Fig3a, &GravityModel::earth()).unwrap();
        for bw in FIGURE_BANDWIDTHS {
            assert_eq!(t.column(&format!("p_pp_{}", nm_label(bw))).unwrap()[0], 0.5);
        }
    }

    #[test]
    fn fig5_violates_at_ten_kilometres() {
        let t = figure_table(Figure::Fig5, &GravityModel::earth()).unwrap();
        let row = t.rows.iter().find(|r| r[0] == 1e4 && r[1] == 1e4).unwrap();
        assert!(row[5] > 2.0);
    }
}
