//! Twin-photon spectra.
//!
//! Probabilities only ever integrate `|f(ω1, ω2)|^2`, so spectra are stored
//! as normalized probability densities over the two angular frequencies. A
//! Gaussian amplitude of width `σ` has a density of standard deviation `σ/√2`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::path::Path;

use gauss_quad::legendre::GaussLegendre;

use crate::{Error, GravityModel, Result};

/// Half-width of the integration window around each mean, in units of `σ`.
pub const SPAN_SIGMAS: f64 = 6.0;

/// Tolerance on `∫∫|f|^2 = 1` for tabulated spectra.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Successive Gauss-Legendre estimates must agree to this before an integral is accepted.
pub const QUADRATURE_TOLERANCE: f64 = 1e-9;

const QUADRATURE_TARGET: f64 = 1e-13;
const MIN_ORDER: usize = 16;
const MAX_ORDER: usize = 1024;

/// Angular frequency `2πc/λ` (rad/s).
pub fn omega_from_wavelength(lambda: f64, model: &GravityModel) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::NonpositiveWavelength(lambda));
    }
    Ok(2.0 * PI * model.c / lambda)
}

/// Spectral width from a wavelength band: `σ = 2πc (1/λ_min − 1/λ_max)`
/// with `λ_min,max = λ0 ∓ δλ/2`.
pub fn sigma_from_bandwidth(lambda0: f64, delta_lambda: f64, model: &GravityModel) -> Result<f64> {
    if !(lambda0.is_finite() && lambda0 > 0.0) {
        return Err(Error::NonpositiveWavelength(lambda0));
    }
    if !(delta_lambda.is_finite() && delta_lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta_lambda",
            reason: format!("must be positive, got {delta_lambda}"),
        });
    }
    if delta_lambda >= 2.0 * lambda0 {
        return Err(Error::BandwidthExceedsCarrier {
            lambda0,
            delta_lambda,
        });
    }
    let lambda_min = lambda0 - delta_lambda / 2.0;
    let lambda_max = lambda0 + delta_lambda / 2.0;
    Ok(2.0 * PI * model.c * (1.0 / lambda_min - 1.0 / lambda_max))
}

/// Gaussian single-photon amplitude centred at `omega_bar` with width `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpectrum {
    omega_bar: f64,
    sigma: f64,
    bandwidth: Option<(f64, f64)>,
}

impl GaussianSpectrum {
    pub fn new(omega_bar: f64, sigma: f64) -> Result<Self> {
        if !(omega_bar.is_finite() && omega_bar > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega_bar",
                reason: format!("must be positive, got {omega_bar}"),
            });
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                reason: format!("must be positive, got {sigma}"),
            });
        }
        Ok(Self {
            omega_bar,
            sigma,
            bandwidth: None,
        })
    }

    /// Spectrum of a wave packet with central wavelength `lambda0` and bandwidth `delta_lambda`.
    pub fn from_bandwidth(lambda0: f64, delta_lambda: f64, model: &GravityModel) -> Result<Self> {
        let sigma = sigma_from_bandwidth(lambda0, delta_lambda, model)?;
        let omega_bar = omega_from_wavelength(lambda0, model)?;
        Ok(Self {
            omega_bar,
            sigma,
            bandwidth: Some((lambda0, delta_lambda)),
        })
    }

    pub fn omega_bar(&self) -> f64 {
        self.omega_bar
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `(λ0, δλ)` when built from a wavelength band.
    pub fn bandwidth(&self) -> Option<(f64, f64)> {
        self.bandwidth
    }

    /// Standard deviation of `|f|^2`.
    pub fn density_std(&self) -> f64 {
        self.sigma / std::f64::consts::SQRT_2
    }

    /// L2-normalized amplitude `f(ω)`.
    pub fn amplitude(&self, omega: f64) -> f64 {
        let u = (omega - self.omega_bar) / self.sigma;
        (PI * self.sigma * self.sigma).powf(-0.25) * (-0.5 * u * u).exp()
    }

    /// `|f(ω)|^2`, a normal density with mean `ω̄` and variance `σ²/2`.
    pub fn density(&self, omega: f64) -> f64 {
        let u = (omega - self.omega_bar) / self.sigma;
        (-u * u).exp() / (self.sigma * PI.sqrt())
    }

    fn window(&self) -> (f64, f64) {
        (
            self.omega_bar - SPAN_SIGMAS * self.sigma,
            self.omega_bar + SPAN_SIGMAS * self.sigma,
        )
    }
}

/// Joint density sampled on a rectilinear grid.
///
/// Between nodes the density is bilinear; outside the grid it is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSpectrum {
    omega1: Vec<f64>,
    omega2: Vec<f64>,
    /// Row-major: `density[i * omega2.len() + j]` sits at `(omega1[i], omega2[j])`.
    density: Vec<f64>,
}

impl TabulatedSpectrum {
    /// Builds a spectrum from a density tabulated on the tensor grid `omega1 × omega2`.
    pub fn new(omega1: Vec<f64>, omega2: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        for (name, axis) in [("omega1", &omega1), ("omega2", &omega2)] {
            if axis.len() < 2 {
                return Err(Error::InvalidSpectrum(format!(
                    "{name} axis needs at least two nodes"
                )));
            }
            if axis.iter().any(|v| !v.is_finite()) || axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidSpectrum(format!(
                    "{name} axis must be finite and strictly increasing"
                )));
            }
        }
        if density.len() != omega1.len() * omega2.len() {
            return Err(Error::InvalidSpectrum(format!(
                "expected {} density values, got {}",
                omega1.len() * omega2.len(),
                density.len()
            )));
        }
        if let Some(bad) = density.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(Error::InvalidSpectrum(format!(
                "density must be finite and >= 0, got {bad}"
            )));
        }
        let spectrum = Self {
            omega1,
            omega2,
            density,
        };
        let norm = spectrum.integrate(|_, _| 1.0);
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(spectrum)
    }

    /// Builds a spectrum from `(ω1, ω2, density)` rows covering a full grid in any order.
    pub fn from_rows(rows: &[(f64, f64, f64)]) -> Result<Self> {
        let axis = |pick: fn(&(f64, f64, f64)) -> f64| {
            let mut v: Vec<f64> = rows.iter().map(pick).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let omega1 = axis(|r| r.0);
        let omega2 = axis(|r| r.1);
        let n2 = omega2.len();
        let mut density = vec![f64::NAN; omega1.len() * n2];
        for &(w1, w2, d) in rows {
            let i = omega1.binary_search_by(|v| v.total_cmp(&w1)).unwrap();
            let j = omega2.binary_search_by(|v| v.total_cmp(&w2)).unwrap();
            let slot = &mut density[i * n2 + j];
            if !slot.is_nan() {
                return Err(Error::InvalidSpectrum(format!(
                    "duplicate grid point ({w1}, {w2})"
                )));
            }
            *slot = d;
        }
        if density.iter().any(|d| d.is_nan()) {
            return Err(Error::InvalidSpectrum(
                "rows do not cover a full rectilinear grid".into(),
            ));
        }
        Self::new(omega1, omega2, density)
    }

    /// Parses the plain-text format: a header line `omega1 omega2 density`
    /// followed by whitespace-separated rows in SI units. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, header)) if header.split_whitespace().eq(["omega1", "omega2", "density"]) => {}
            Some((n, header)) => {
                return Err(Error::InvalidSpectrum(format!(
                    "line {n}: expected header `omega1 omega2 density`, got `{header}`"
                )))
            }
            None => return Err(Error::InvalidSpectrum("empty file".into())),
        }
        let mut rows = Vec::new();
        for (n, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::InvalidSpectrum(format!("line {n}: expected 3 columns")));
            }
            let mut parsed = [0.0; 3];
            for (slot, field) in parsed.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| {
                    Error::InvalidSpectrum(format!("line {n}: cannot parse `{field}` as a number"))
                })?;
            }
            rows.push((parsed[0], parsed[1], parsed[2]));
        }
        Self::from_rows(&rows)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Serializes in the format read by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut out = String::from("omega1 omega2 density\n");
        for (i, w1) in self.omega1.iter().enumerate() {
            for (j, w2) in self.omega2.iter().enumerate() {
                let d = self.density[i * self.omega2.len() + j];
                let _ = writeln!(out, "{w1:e} {w2:e} {d:e}");
            }
        }
        out
    }

    /// Samples a Gaussian product on a uniform `points × points` grid spanning
    /// `±span_sigmas σ`, rescaled to unit trapezoidal norm.
    pub fn sample_product(
        left: &GaussianSpectrum,
        right: &GaussianSpectrum,
        points: usize,
        span_sigmas: f64,
    ) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidSpectrum("need at least two points per axis".into()));
        }
        let axis = |s: &GaussianSpectrum| uniform_axis(s.omega_bar, span_sigmas * s.sigma, points);
        let omega1 = axis(left);
        let omega2 = axis(right);
        let mut density: Vec<f64> = omega1
            .iter()
            .flat_map(|&w1| omega2.iter().map(move |&w2| left.density(w1) * right.density(w2)))
            .collect();
        let raw = Self {
            omega1,
            omega2,
            density: density.clone(),
        }
        .integrate(|_, _| 1.0);
        density.iter_mut().for_each(|d| *d /= raw);
        Self::new(
            uniform_axis(left.omega_bar, span_sigmas * left.sigma, points),
            uniform_axis(right.omega_bar, span_sigmas * right.sigma, points),
            density,
        )
    }

    pub fn omega1(&self) -> &[f64] {
        &self.omega1
    }

    pub fn omega2(&self) -> &[f64] {
        &self.omega2
    }

    /// Density at grid node `(i, j)`.
    pub fn node(&self, i: usize, j: usize) -> f64 {
        self.density[i * self.omega2.len() + j]
    }

    pub fn density_at(&self, omega1: f64, omega2: f64) -> f64 {
        let (Some((i, t)), Some((j, s))) = (locate(&self.omega1, omega1), locate(&self.omega2, omega2))
        else {
            return 0.0;
        };
        let n2 = self.omega2.len();
        let d = |a: usize, b: usize| self.density[a * n2 + b];
        (1.0 - t) * (1.0 - s) * d(i, j)
            + t * (1.0 - s) * d(i + 1, j)
            + (1.0 - t) * s * d(i, j + 1)
            + t * s * d(i + 1, j + 1)
    }

    /// Trapezoidal weights of each node, including the density.
    pub(crate) fn node_weights(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let w1 = trapezoid_weights(&self.omega1);
        let w2 = trapezoid_weights(&self.omega2);
        let n2 = self.omega2.len();
        (0..self.omega1.len()).flat_map(move |i| {
            let (w1, w2) = (w1[i], w2.clone());
            (0..n2).map(move |j| {
                (
                    self.omega1[i],
                    self.omega2[j],
                    w1 * w2[j] * self.density[i * n2 + j],
                )
            })
        })
    }

    /// Trapezoidal `∫∫ |f|^2 g`.
    pub fn integrate(&self, g: impl Fn(f64, f64) -> f64) -> f64 {
        self.node_weights().map(|(w1, w2, w)| w * g(w1, w2)).sum()
    }
}

/// Two-photon joint spectrum `|f(ω1, ω2)|^2`.
#[derive(Debug, Clone, PartialEq)]
pub enum JointSpectrum {
    /// Uncorrelated Gaussian photons.
    Product(GaussianSpectrum, GaussianSpectrum),
    /// Monochromatic photons at `(omega1, omega2)`.
    Delta {
        omega1: f64,
        omega2: f64,
    },
    Tabulated(TabulatedSpectrum),
}

impl JointSpectrum {
    pub fn product(left: GaussianSpectrum, right: GaussianSpectrum) -> Self {
        JointSpectrum::Product(left, right)
    }

    pub fn delta(omega1: f64, omega2: f64) -> Self {
        JointSpectrum::Delta { omega1, omega2 }
    }

    /// `|f(ω1, ω2)|^2`. The delta spectrum is infinite at its support and zero elsewhere.
    pub fn joint_density(&self, omega1: f64, omega2: f64) -> f64 {
        match self {
            JointSpectrum::Product(l, r) => l.density(omega1) * r.density(omega2),
            JointSpectrum::Delta { omega1: a, omega2: b } => {
                if omega1 == *a && omega2 == *b {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            JointSpectrum::Tabulated(t) => t.density_at(omega1, omega2),
        }
    }

    /// `∫∫ |f|^2 g dω1 dω2`.
    ///
    /// Product spectra use a tensor Gauss-Legendre rule on `ω̄ ± 6σ` per
    /// axis, doubling the order until successive estimates settle.
    pub fn expectation(&self, g: impl Fn(f64, f64) -> f64) -> Result<f64> {
        match self {
            JointSpectrum::Product(l, r) => gauss_legendre_2d(l, r, &g),
            JointSpectrum::Delta { omega1, omega2 } => Ok(g(*omega1, *omega2)),
            JointSpectrum::Tabulated(t) => Ok(t.integrate(g)),
        }
    }

    pub fn normalization(&self) -> Result<f64> {
        self.expectation(|_, _| 1.0)
    }

    /// Mean angular frequencies of the two photons.
    pub fn mean_frequencies(&self) -> (f64, f64) {
        match self {
            JointSpectrum::Product(l, r) => (l.omega_bar, r.omega_bar),
            JointSpectrum::Delta { omega1, omega2 } => (*omega1, *omega2),
            JointSpectrum::Tabulated(t) => (t.integrate(|w, _| w), t.integrate(|_, w| w)),
        }
    }
}

fn gauss_legendre_2d(
    left: &GaussianSpectrum,
    right: &GaussianSpectrum,
    g: &impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let estimate = |order: usize| {
        let rule = GaussLegendre::new(NonZeroUsize::new(order).unwrap());
        let (a1, b1) = left.window();
        let (a2, b2) = right.window();
        let map = |x: f64, a: f64, b: f64| 0.5 * ((b - a) * x + (b + a));
        let nodes = rule.as_node_weight_pairs();
        let mut total = 0.0;
        for &(x1, w1) in nodes {
            let om1 = map(x1, a1, b1);
            let d1 = w1 * left.density(om1);
            let mut row = 0.0;
            for &(x2, w2) in nodes {
                let om2 = map(x2, a2, b2);
                row += w2 * right.density(om2) * g(om1, om2);
            }
            total += d1 * row;
        }
        total * 0.25 * (b1 - a1) * (b2 - a2)
    };
    let mut order = MIN_ORDER;
    let mut previous = estimate(order);
    loop {
        order *= 2;
        let current = estimate(order);
        let difference = (current - previous).abs();
        if difference <= QUADRATURE_TARGET {
            return Ok(current);
        }
        if order >= MAX_ORDER {
            return if difference <= QUADRATURE_TOLERANCE {
                Ok(current)
            } else {
                Err(Error::QuadratureNotConverged { difference })
            };
        }
        previous = current;
    }
}

pub(crate) fn uniform_axis(centre: f64, half_width: f64, points: usize) -> Vec<f64> {
    let step = 2.0 * half_width / (points - 1) as f64;
    (0..points)
        .map(|k| centre - half_width + k as f64 * step)
        .collect()
}

fn trapezoid_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    (0..n)
        .map(|k| {
            let left = if k > 0 { axis[k] - axis[k - 1] } else { 0.0 };
            let right = if k + 1 < n { axis[k + 1] - axis[k] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

/// Cell index and fractional position of `x` on a sorted axis.
fn locate(axis: &[f64], x: f64) -> Option<(usize, f64)> {
    let (first, last) = (axis[0], axis[axis.len() - 1]);
    if !(x >= first && x <= last) {
        return None;
    }
    let i = axis
        .partition_point(|v| *v <= x)
        .saturating_sub(1)
        .min(axis.len() - 2);
    Some((i, (x - axis[i]) / (axis[i + 1] - axis[i])))
}
