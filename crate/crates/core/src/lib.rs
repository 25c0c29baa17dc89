//! Two-photon energy-time interferometry in a weak gravitational field.
//!
//! The crate models Franson and Hugged interferometric arrays whose arms sit at
//! different gravitational potentials. It is organised bottom-up:
//!
//! - [`spacetime`]: first-order weak-field metric primitives.
//! - [`arrays`]: array geometries, balancing constraints, per-path proper times
//!   and the post-selection classifier.
//! - [`spectra`]: Gaussian, monochromatic and tabulated twin-photon spectra.
//! - [`quantum`]: joint detection probabilities (closed form, quadrature and an
//!   amplitude-level oracle) and the two-photon visibility.
//! - [`chsh`]: CHSH correlations, every closed-form variant of the functional,
//!   the classical-light value and the critical proper area.
//! - [`sweep`]: parameter sweeps and figure tables written as CSV.
//! - [`cli`]: the command-line front end used by the `grav-bell` binary.
//!
//! All quantities are SI. Angular frequencies are in rad/s.

pub mod arrays;
pub mod chsh;
pub mod cli;
mod error;
pub mod quantum;
pub mod spacetime;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};

pub use arrays::{ArrayGeometry, ArrayKind, DistinguishabilityReport, Path, PathDelaySet};
pub use chsh::{ChshResult, PhaseSettings};
pub use quantum::{DetectionProbabilities, FrequencyGrid, PhasePair};
pub use spacetime::GravityModel;
pub use spectra::{GaussianSpectrum, JointSpectrum, TabulatedSpectrum};
