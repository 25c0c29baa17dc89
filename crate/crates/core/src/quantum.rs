//! Joint detection probabilities of the post-selected two-photon state.
//!
//! Three independent routes are provided: the closed form for Gaussian
//! spectra, numerical quadrature of the universal probability over any joint
//! spectrum, and an amplitude-level calculation that propagates every path
//! branch through the output beam splitters on a frequency grid.

use num_complex::Complex64;

use crate::arrays::{Path, PathDelaySet, INDISTINGUISHABILITY_TOLERANCE};
use crate::spectra::{uniform_axis, GaussianSpectrum, JointSpectrum, SPAN_SIGMAS};
use crate::{Error, Result};

/// Default number of nodes per axis of the amplitude grid.
pub const DEFAULT_GRID_POINTS: usize = 201;

/// The amplitude grid must resolve each width `σ` at least this finely.
pub const MAX_GRID_SPACING_SIGMAS: f64 = 0.1;

/// Local phases `(α, β)` of the left and right analysers (rad).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePair {
    pub alpha: f64,
    pub beta: f64,
}

impl PhasePair {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta
    }
}

/// Probabilities of the four detector outcomes `(i, j) ∈ {+, −}²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionProbabilities {
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
}

impl DetectionProbabilities {
    /// Probabilities with correlation `e`: `p_ii = (1 + e)/4`, `p_ij = (1 − e)/4`.
    pub fn from_correlation(e: f64) -> Self {
        let same = 0.25 * (1.0 + e);
        let diff = 0.25 * (1.0 - e);
        Self {
            p_pp: same,
            p_pm: diff,
            p_mp: diff,
            p_mm: same,
        }
    }

    pub fn sum(&self) -> f64 {
        self.p_pp + self.p_pm + self.p_mp + self.p_mm
    }

    /// Expectation of the product of the two dichotomic outcomes.
    pub fn correlation(&self) -> f64 {
        self.p_pp + self.p_mm - self.p_pm - self.p_mp
    }

    /// `[p_pp, p_pm, p_mp, p_mm]`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.p_pp, self.p_pm, self.p_mp, self.p_mm]
    }

    /// Largest componentwise difference.
    pub fn max_difference(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Two-photon visibility `exp[−(Δτ12² σ1² + Δτ1'2'² σ2²)/4]`.
pub fn visibility(delta_tau_12: f64, delta_tau_1p2p: f64, sigma1: f64, sigma2: f64) -> f64 {
    let a = delta_tau_12 * sigma1;
    let b = delta_tau_1p2p * sigma2;
    (-(a * a + b * b) / 4.0).exp()
}

/// Interference phase `ω1 Δτ12 + ω2 Δτ1'2' + α + β`.
pub fn interference_phase(
    delta_tau_12: f64,
    delta_tau_1p2p: f64,
    omega1: f64,
    omega2: f64,
    phases: PhasePair,
) -> f64 {
    omega1 * delta_tau_12 + omega2 * delta_tau_1p2p + phases.sum()
}

/// Closed-form probabilities for uncorrelated Gaussian photons.
pub fn probability_gaussian(
    delta_tau_12: f64,
    delta_tau_1p2p: f64,
    left: &GaussianSpectrum,
    right: &GaussianSpectrum,
    phases: PhasePair,
) -> DetectionProbabilities {
    let v = visibility(delta_tau_12, delta_tau_1p2p, left.sigma(), right.sigma());
    let theta = interference_phase(
        delta_tau_12,
        delta_tau_1p2p,
        left.omega_bar(),
        right.omega_bar(),
        phases,
    );
    DetectionProbabilities::from_correlation(v * theta.cos())
}

/// Probabilities from numerical integration of `|f|^2 cos(ω1 Δτ12 + ω2 Δτ1'2' + α + β)`.
pub fn probability_quadrature(
    delta_tau_12: f64,
    delta_tau_1p2p: f64,
    spectrum: &JointSpectrum,
    phases: PhasePair,
) -> Result<DetectionProbabilities> {
    let e = spectral_average(delta_tau_12, delta_tau_1p2p, spectrum, phases.sum())?;
    Ok(DetectionProbabilities::from_correlation(e))
}

/// `∫∫ |f|^2 cos(ω1 d12 + ω2 d1p2p + offset)`, expanded about the mean
/// frequencies so that large carrier phases are never formed twice.
pub(crate) fn spectral_average(d12: f64, d1p2p: f64, spectrum: &JointSpectrum, offset: f64) -> Result<f64> {
    let (m1, m2) = spectrum.mean_frequencies();
    let theta0 = m1 * d12 + m2 * d1p2p + offset;
    spectrum.expectation(|w1, w2| (theta0 + (w1 - m1) * d12 + (w2 - m2) * d1p2p).cos())
}

/// Magnitude of the spectral average of `exp(i(ω1 d12 + ω2 d1p2p))`.
/// Equals the Gaussian visibility for product spectra.
pub fn spectral_visibility(d12: f64, d1p2p: f64, spectrum: &JointSpectrum) -> Result<f64> {
    let c = spectral_average(d12, d1p2p, spectrum, 0.0)?;
    let s = spectral_average(d12, d1p2p, spectrum, -std::f64::consts::FRAC_PI_2)?;
    Ok(c.hypot(s))
}

/// Discrete joint frequency distribution used by the amplitude calculation.
///
/// Each node carries the probability mass `|f|^2 dω1 dω2` of its cell; the
/// masses sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    nodes: Vec<(f64, f64, f64)>,
}

impl FrequencyGrid {
    /// Uniform `points × points` grid over `ω̄ ± 6σ` on each axis.
    pub fn gaussian(left: &GaussianSpectrum, right: &GaussianSpectrum, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameter {
                name: "points",
                reason: format!("need at least 2 nodes per axis, got {points}"),
            });
        }
        let spacing = 2.0 * SPAN_SIGMAS / (points - 1) as f64;
        if spacing > MAX_GRID_SPACING_SIGMAS {
            let sigma = left.sigma().min(right.sigma());
            return Err(Error::GridTooCoarse {
                spacing: spacing * sigma,
                limit: MAX_GRID_SPACING_SIGMAS * sigma,
            });
        }
        let axis1 = uniform_axis(left.omega_bar(), SPAN_SIGMAS * left.sigma(), points);
        let axis2 = uniform_axis(right.omega_bar(), SPAN_SIGMAS * right.sigma(), points);
        let mut nodes = Vec::with_capacity(points * points);
        for &w1 in &axis1 {
            let d1 = left.density(w1);
            for &w2 in &axis2 {
                nodes.push((w1, w2, d1 * right.density(w2)));
            }
        }
        Ok(Self::normalized(nodes))
    }

    /// A single node carrying all the weight.
    pub fn monochromatic(omega1: f64, omega2: f64) -> Self {
        Self {
            nodes: vec![(omega1, omega2, 1.0)],
        }
    }

    /// Grid matching a joint spectrum: the default uniform grid for Gaussian
    /// products, one node for a delta spectrum, the table nodes otherwise.
    pub fn for_spectrum(spectrum: &JointSpectrum) -> Result<Self> {
        match spectrum {
            JointSpectrum::Product(l, r) => Self::gaussian(l, r, DEFAULT_GRID_POINTS),
            JointSpectrum::Delta { omega1, omega2 } => Ok(Self::monochromatic(*omega1, *omega2)),
            JointSpectrum::Tabulated(t) => Ok(Self::normalized(t.node_weights().collect())),
        }
    }

    fn normalized(mut nodes: Vec<(f64, f64, f64)>) -> Self {
        let total: f64 = nodes.iter().map(|n| n.2).sum();
        nodes.iter_mut().for_each(|n| n.2 /= total);
        Self { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(ω1, ω2, weight)` for every node.
    pub fn nodes(&self) -> &[(f64, f64, f64)] {
        &self.nodes
    }

    /// Probabilities from the universal formula summed over this grid.
    pub fn probability(
        &self,
        delta_tau_12: f64,
        delta_tau_1p2p: f64,
        phases: PhasePair,
    ) -> DetectionProbabilities {
        let e = self
            .nodes
            .iter()
            .map(|&(w1, w2, w)| w * interference_phase(delta_tau_12, delta_tau_1p2p, w1, w2, phases).cos())
            .sum();
        DetectionProbabilities::from_correlation(e)
    }
}

/// Output-port amplitudes `[[1, 1], [1, −1]]/√2` of the final beam splitters,
/// indexed by `[port][arm]` with port 0 = `+` and arm 0 = the short path.
const BEAM_SPLITTER: [[f64; 2]; 2] = [
    [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
    [std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2],
];

/// Probabilities computed from the two-photon amplitude.
///
/// Every path branch `(γa, γ'b)` gets the amplitude `½ exp(−i(ω1 τa + ω2 τ'b))`
/// times the local phases of the long arms. Post-selection keeps the
/// `(γ1, γ'1)` and `(γ2, γ'2)` branches, which are renormalized and sent
/// through the output beam splitters. Phases are referred to `τ'1` so only
/// small time differences are ever multiplied by optical frequencies.
///
/// Arrays that post-select by arrival time must have
/// `Δτ_{11'} = Δτ_{22'} = offset`; Hugged arrays post-select locally and
/// skip this check.
pub fn probability_amplitude_oracle(
    path_times: &PathDelaySet,
    offset: f64,
    phases: PhasePair,
    grid: &FrequencyGrid,
) -> Result<DetectionProbabilities> {
    if !path_times.kind().is_hugged() {
        let residual = path_times.indistinguishability_residual(offset);
        if residual > INDISTINGUISHABILITY_TOLERANCE {
            return Err(Error::IndistinguishabilityViolated { residual });
        }
    }
    let reference = Path::Gamma1Prime;
    let left_times = [
        path_times.delay(Path::Gamma1, reference),
        path_times.delay(Path::Gamma2, reference),
    ];
    let right_times = [0.0, path_times.delay(Path::Gamma2Prime, reference)];
    let local = [[0.0, phases.beta], [phases.alpha, phases.alpha + phases.beta]];
    let kept = [(0usize, 0usize), (1, 1)];
    let all_branches = 4.0;
    let renormalization = (all_branches / kept.len() as f64).sqrt();

    let mut p = [[0.0f64; 2]; 2];
    for &(w1, w2, weight) in grid.nodes() {
        let branch = |a: usize, b: usize| {
            let phase = local[a][b] - w1 * left_times[a] - w2 * right_times[b];
            Complex64::from_polar(0.5 * renormalization, phase)
        };
        let amplitudes = kept.map(|(a, b)| (a, b, branch(a, b)));
        for (i, row) in p.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let amplitude: Complex64 = amplitudes
                    .iter()
                    .map(|&(a, b, c)| c * (BEAM_SPLITTER[i][a] * BEAM_SPLITTER[j][b]))
                    .sum();
                *cell += weight * amplitude.norm_sqr();
            }
        }
    }
    Ok(DetectionProbabilities {
        p_pp: p[0][0],
        p_pm: p[0][1],
        p_mp: p[1][0],
        p_mm: p[1][1],
    })
}
