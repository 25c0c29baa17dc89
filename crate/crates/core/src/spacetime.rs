//! Weak-field metric primitives in isotropic coordinates.
//!
//! Every operation is the first-order truncation in `phi/c^2` of the
//! corresponding isotropic Schwarzschild expression, with the Newtonian
//! potential `phi(z) = g (z - R)` vanishing at the reference height `R`.

use crate::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Standard surface gravity (m/s^2).
pub const STANDARD_GRAVITY: f64 = 9.81;

/// Largest `|phi|/c^2` accepted before an input is rejected.
pub const WEAK_FIELD_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityModel {
    /// Surface gravitational acceleration (m/s^2).
    pub g: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Height at which the potential is zero; detectors sit here (m).
    pub reference_height: f64,
}

impl Default for GravityModel {
    fn default() -> Self {
        Self::earth()
    }
}

impl GravityModel {
    pub fn new(g: f64, c: f64, reference_height: f64) -> Result<Self> {
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "g",
                reason: format!("must be finite and non-negative, got {g}"),
            });
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter {
                name: "c",
                reason: format!("must be finite and positive, got {c}"),
            });
        }
        if !reference_height.is_finite() {
            return Err(Error::InvalidParameter {
                name: "reference_height",
                reason: "must be finite".into(),
            });
        }
        Ok(Self {
            g,
            c,
            reference_height,
        })
    }

    /// Earth surface gravity with the reference height at zero.
    pub fn earth() -> Self {
        Self {
            g: STANDARD_GRAVITY,
            c: SPEED_OF_LIGHT,
            reference_height: 0.0,
        }
    }

    /// Flat spacetime (`g = 0`).
    pub fn flat() -> Self {
        Self {
            g: 0.0,
            ..Self::earth()
        }
    }

    pub fn with_g(self, g: f64) -> Result<Self> {
        Self::new(g, self.c, self.reference_height)
    }

    pub fn c2(&self) -> f64 {
        self.c * self.c
    }

    /// `g |z - R| / c^2`, checked against the weak-field limit.
    fn check(&self, z: f64) -> Result<f64> {
        let phi = self.g * (z - self.reference_height);
        let ratio = phi.abs() / self.c2();
        if !ratio.is_finite() || ratio > WEAK_FIELD_LIMIT {
            return Err(Error::WeakFieldViolation { ratio });
        }
        Ok(phi)
    }

    /// Newtonian potential `phi(z) = g (z - R)` in m^2/s^2.
    pub fn potential(&self, z: f64) -> Result<f64> {
        self.check(z)
    }

    /// Dimensionless `phi(z)/c^2`.
    pub fn potential_ratio(&self, z: f64) -> Result<f64> {
        Ok(self.check(z)? / self.c2())
    }

    /// Proper length of a horizontal segment spanning `coordinate_extent` at height `z`.
    pub fn proper_length_horizontal(&self, coordinate_extent: f64, z: f64) -> Result<f64> {
        non_negative("coordinate_extent", coordinate_extent)?;
        Ok((1.0 - self.potential_ratio(z)?) * coordinate_extent)
    }

    /// Proper height of a vertical segment of coordinate height `h` rising from `z_base`.
    pub fn proper_height(&self, coordinate_height: f64, z_base: f64) -> Result<f64> {
        non_negative("coordinate_height", coordinate_height)?;
        Ok((1.0 - self.potential_ratio(z_base)?) * coordinate_height)
    }

    /// Inverse of [`proper_height`](Self::proper_height) to first order: `h = H (1 + phi/c^2)`.
    pub fn coordinate_height(&self, proper_height: f64, z_base: f64) -> Result<f64> {
        non_negative("proper_height", proper_height)?;
        Ok((1.0 + self.potential_ratio(z_base)?) * proper_height)
    }

    /// Coordinate time for light crossing a horizontal segment of proper length `L` at height `z`.
    pub fn coord_time_horizontal(&self, proper_length: f64, z: f64) -> Result<f64> {
        non_negative("proper_length", proper_length)?;
        Ok(proper_length / self.c * (1.0 - self.potential_ratio(z)?))
    }

    /// Coordinate time for light climbing a vertical segment of coordinate height `h`,
    /// to first order in `h`.
    pub fn coord_time_vertical(&self, coordinate_height: f64, z_base: f64) -> Result<f64> {
        non_negative("coordinate_height", coordinate_height)?;
        self.check(z_base + coordinate_height)?;
        Ok(coordinate_height / self.c * (1.0 - 2.0 * self.potential_ratio(z_base)?))
    }

    /// Proper time read by a static clock at `z_observer` for a coordinate interval.
    pub fn proper_time_at_observer(&self, coordinate_time: f64, z_observer: f64) -> Result<f64> {
        Ok((1.0 + self.potential_ratio(z_observer)?) * coordinate_time)
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_nan() || value < 0.0 {
        return Err(Error::NegativeExtent { name, value });
    }
    Ok(())
}
