//! CHSH correlations and the functional `Σ = E(α,β) + E(α',β) + E(α,β') − E(α',β')`.
//!
//! [`sigma_general`] and [`sigma_gaussian`] evaluate the four correlations
//! and report `Σ` with its sign. The remaining `sigma_*` functions are the
//! closed forms for specific arrays and return magnitudes.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use crate::quantum::{probability_gaussian, probability_quadrature, spectral_visibility, visibility};
use crate::{
    DetectionProbabilities, Error, GaussianSpectrum, GravityModel, JointSpectrum, PhasePair, Result,
};

/// Tsirelson's bound `2√2`.
pub const TSIRELSON_BOUND: f64 = 2.0 * SQRT_2;

/// Bound obeyed by local hidden-variable models.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// Analyser phases `(α, β, α', β')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSettings {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_p: f64,
    pub beta_p: f64,
}

impl Default for PhaseSettings {
    fn default() -> Self {
        Self::canonical()
    }
}

impl PhaseSettings {
    pub fn new(alpha: f64, beta: f64, alpha_p: f64, beta_p: f64) -> Self {
        Self {
            alpha,
            beta,
            alpha_p,
            beta_p,
        }
    }

    /// `(π/4, 0, −π/4, −π/2)`, maximal violation for `E = cos(α + β)`.
    pub fn canonical() -> Self {
        Self::new(FRAC_PI_4, 0.0, -FRAC_PI_4, -FRAC_PI_2)
    }

    /// Canonical settings measured relative to the gravitational phases at
    /// the mean frequencies: `α = φ_a − ω̄1 Δτ12`, `β = φ_b − ω̄2 Δτ1'2'`.
    pub fn compensated(delta_tau_12: f64, delta_tau_1p2p: f64, omega1: f64, omega2: f64) -> Self {
        let c = Self::canonical();
        let a = omega1 * delta_tau_12;
        let b = omega2 * delta_tau_1p2p;
        Self::new(c.alpha - a, c.beta - b, c.alpha_p - a, c.beta_p - b)
    }

    /// The four phase pairs in the order `(α,β), (α',β), (α,β'), (α',β')`.
    pub fn pairs(&self) -> [PhasePair; 4] {
        [
            PhasePair::new(self.alpha, self.beta),
            PhasePair::new(self.alpha_p, self.beta),
            PhasePair::new(self.alpha, self.beta_p),
            PhasePair::new(self.alpha_p, self.beta_p),
        ]
    }
}

/// Value of the functional together with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    pub sigma: f64,
    /// `E(α,β), E(α',β), E(α,β'), E(α',β')`.
    pub correlations: [f64; 4],
    pub visibility: f64,
    /// `|Σ| > 2`.
    pub violated: bool,
}

impl ChshResult {
    pub fn from_correlations(correlations: [f64; 4], visibility: f64) -> Self {
        let [e1, e2, e3, e4] = correlations;
        let sigma = e1 + e2 + e3 - e4;
        Self {
            sigma,
            correlations,
            visibility,
            violated: sigma.abs() > CLASSICAL_BOUND,
        }
    }
}

/// `E = p₊₊ + p₋₋ − p₊₋ − p₋₊`.
pub fn correlation(p: &DetectionProbabilities) -> f64 {
    p.correlation()
}

/// `Σ` for any joint spectrum, each correlation obtained by quadrature.
pub fn sigma_general(
    delta_tau_12: f64,
    delta_tau_1p2p: f64,
    spectrum: &JointSpectrum,
    settings: &PhaseSettings,
) -> Result<ChshResult> {
    let mut correlations = [0.0; 4];
    for (e, phases) in correlations.iter_mut().zip(settings.pairs()) {
        *e = probability_quadrature(delta_tau_12, delta_tau_1p2p, spectrum, phases)?.correlation();
    }
    let v = spectral_visibility(delta_tau_12, delta_tau_1p2p, spectrum)?;
    Ok(ChshResult::from_correlations(correlations, v))
}

/// `Σ` for Gaussian photons from the closed-form probabilities.
pub fn sigma_gaussian(
    delta_tau_12: f64,
    delta_tau_1p2p: f64,
    left: &GaussianSpectrum,
    right: &GaussianSpectrum,
    settings: &PhaseSettings,
) -> ChshResult {
    let correlations = settings
        .pairs()
        .map(|phases| probability_gaussian(delta_tau_12, delta_tau_1p2p, left, right, phases).correlation());
    let v = visibility(delta_tau_12, delta_tau_1p2p, left.sigma(), right.sigma());
    ChshResult::from_correlations(correlations, v)
}

fn envelope(delta_tau: f64, sigma1: f64, sigma2: f64) -> f64 {
    visibility(delta_tau, delta_tau, sigma1, sigma2)
}

/// Balanced Franson or Hugged array with equal delays `Δτ`:
/// `2√2 e^{−Δτ²(σ1²+σ2²)/4} |cos(Δτ(ω1+ω2))|`.
pub fn sigma_balanced(delta_tau: f64, sigma1: f64, sigma2: f64, omega1: f64, omega2: f64) -> f64 {
    TSIRELSON_BOUND * envelope(delta_tau, sigma1, sigma2) * (delta_tau * (omega1 + omega2)).cos().abs()
}

/// Rotated Hugged array with opposite delays `∓Δτ`:
/// `2√2 e^{−Δτ²(σ1²+σ2²)/4} |cos(Δτ(ω1−ω2))|`.
pub fn sigma_rotated_hugged(delta_tau: f64, sigma1: f64, sigma2: f64, omega1: f64, omega2: f64) -> f64 {
    TSIRELSON_BOUND * envelope(delta_tau, sigma1, sigma2) * (delta_tau * (omega1 - omega2)).cos().abs()
}

/// Phases referred to the gravitational delays leave the pure envelope
/// `2√2 e^{−(Δτ12² σ1² + Δτ1'2'² σ2²)/4}`.
pub fn sigma_phase_compensated(delta_tau_12: f64, delta_tau_1p2p: f64, sigma1: f64, sigma2: f64) -> f64 {
    TSIRELSON_BOUND * visibility(delta_tau_12, delta_tau_1p2p, sigma1, sigma2)
}

/// Classical-light value `(2√2/4) V |cos(ω1 Δτ12 + ω2 Δτ1'2')|`, never above `√2/2`.
pub fn sigma_classical(
    delta_tau_12: f64,
    delta_tau_1p2p: f64,
    sigma1: f64,
    sigma2: f64,
    omega1: f64,
    omega2: f64,
) -> f64 {
    let v = visibility(delta_tau_12, delta_tau_1p2p, sigma1, sigma2);
    TSIRELSON_BOUND / 4.0 * v * (omega1 * delta_tau_12 + omega2 * delta_tau_1p2p).cos().abs()
}

/// Proper area `A* = √(ln 4) c³ / (g √(σ1² + σ2²))` beyond which the
/// compensated functional cannot exceed 2.
pub fn critical_area(sigma1: f64, sigma2: f64, model: &GravityModel) -> Result<f64> {
    for (name, s) in [("sigma1", sigma1), ("sigma2", sigma2)] {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be positive, got {s}"),
            });
        }
    }
    if model.g == 0.0 {
        return Err(Error::ZeroGravity);
    }
    let c3 = model.c * model.c * model.c;
    Ok(4f64.ln().sqrt() * c3 / (model.g * sigma1.hypot(sigma2)))
}
