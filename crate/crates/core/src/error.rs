use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weak-field approximation violated: |phi|/c^2 = {ratio:.3e} exceeds 1e-3")]
    WeakFieldViolation { ratio: f64 },

    #[error("{name} must be non-negative, got {value}")]
    NegativeExtent { name: &'static str, value: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operation does not support array kind {0:?}")]
    UnsupportedKind(crate::arrays::ArrayKind),

    #[error("bandwidth {delta_lambda} m must be smaller than twice the carrier wavelength {lambda0} m")]
    BandwidthExceedsCarrier { lambda0: f64, delta_lambda: f64 },

    #[error("wavelength must be positive, got {0}")]
    NonpositiveWavelength(f64),

    #[error("spectrum is not normalized: integral of |f|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("invalid tabulated spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("quadrature did not converge: successive estimates differ by {difference:.3e}")]
    QuadratureNotConverged { difference: f64 },

    #[error("paths are distinguishable: indistinguishability residual {residual:.3e} s")]
    IndistinguishabilityViolated { residual: f64 },

    #[error("frequency grid too coarse: spacing {spacing:.3e} rad/s exceeds {limit:.3e} rad/s")]
    GridTooCoarse { spacing: f64, limit: f64 },

    #[error("critical area is unbounded without gravity (g = 0)")]
    ZeroGravity,

    #[error("unknown figure {0:?}")]
    UnknownFigure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
