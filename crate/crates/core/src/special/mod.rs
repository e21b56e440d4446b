//! Special functions: the Lobachevsky function `Λ`, the hyperbolic integral
//! `Γ`, and the angle functions `θ`, `φ`, `φ_h`.
//!
//! | Function | Definition |
//! |----------|------------|
//! | [`lobachevsky`] | `Λ(x) = -∫_0^x log|2 sin t| dt` |
//! | [`hyperbolic_gamma`] | `Γ(z) = ∫_0^z log(2 sinh t) dt` |
//! | [`theta`] | `arccos(cos 2πr − ½)` |
//! | [`phi`] | `arccos(cos 2πr + ½)` |
//! | [`phi_hyperbolic`] | `arccosh(cosh 2πs − ½)` |
//!
//! Every function is pure and double precision; the quadrature variants are
//! independent evaluation routes kept for cross-checking.

mod angles;
mod hyperbolic;
mod lobachevsky;
pub mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use angles::{cos_turns, imaginary_threshold, phi, phi_hyperbolic, theta, ENDPOINT_SLACK};
pub use hyperbolic::{hyperbolic_gamma, hyperbolic_gamma_quadrature};
pub use lobachevsky::{lobachevsky, lobachevsky_fourier, lobachevsky_quadrature};

/// An angle in radians; always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Radians(f64);

impl Radians {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Radians(value))
        } else {
            Err(Error::domain("Radians", format!("non-finite angle {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Precision knobs shared by the special functions and the evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Significand bits of the multiprecision evaluation path.
    pub working_bits: u32,
    /// Target absolute error for series and quadrature truncation.
    pub abs_tol: f64,
}

impl PrecisionConfig {
    pub const DEFAULT_BITS: u32 = 128;
    pub const DEFAULT_ABS_TOL: f64 = 1e-14;

    pub fn new(working_bits: u32, abs_tol: f64) -> Result<Self> {
        if working_bits < 53 {
            return Err(Error::InvalidInput(format!(
                "working_bits must be at least 53, got {working_bits}"
            )));
        }
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(Error::InvalidInput(format!("abs_tol must be positive, got {abs_tol}")));
        }
        Ok(PrecisionConfig {
            working_bits,
            abs_tol,
        })
    }

    pub fn with_bits(self, working_bits: u32) -> Result<Self> {
        Self::new(working_bits, self.abs_tol)
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            working_bits: Self::DEFAULT_BITS,
            abs_tol: Self::DEFAULT_ABS_TOL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(PrecisionConfig::new(52, 1e-14).is_err());
        assert!(PrecisionConfig::new(53, 0.0).is_err());
        assert!(PrecisionConfig::new(53, f64::NAN).is_err());
        let d = PrecisionConfig::default();
        assert_eq!((d.working_bits, d.abs_tol), (128, 1e-14));
    }
}
