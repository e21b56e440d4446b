//! `Γ(z) = ∫_0^z log(2 sinh x) dx`.
//!
//! Writing `log 2 sinh x = x + log(1 - e^{-2x})` and integrating termwise
//! gives `Γ(z) = z²/2 - π²/12 + ½ Li₂(e^{-2z})`, free of the singularity at 0.

use std::f64::consts::PI;

use super::{quadrature, PrecisionConfig};
use crate::error::{Error, Result};

/// `Li₂(x)` for `x ∈ [0, 1]`; `one_minus_x` must equal `1 - x` and is passed
/// separately so callers can supply it without cancellation.
fn dilog_unit(x: f64, one_minus_x: f64, abs_tol: f64) -> f64 {
    if x <= 0.5 {
        dilog_series(x, abs_tol)
    } else if one_minus_x == 0.0 {
        PI * PI / 6.0
    } else {
        // Euler reflection
        PI * PI / 6.0 - x.ln() * one_minus_x.ln() - dilog_series(one_minus_x, abs_tol)
    }
}

fn dilog_series(x: f64, abs_tol: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = x;
    let mut n = 1.0_f64;
    while power > 0.0 {
        let term = power / (n * n);
        sum += term;
        // remaining tail ≤ term · x/(1-x) ≤ term for x ≤ 1/2
        if term < abs_tol * 1e-3 {
            break;
        }
        power *= x;
        n += 1.0;
    }
    sum
}

pub fn hyperbolic_gamma(z: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::domain("hyperbolic_gamma", format!("need finite z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let x = (-2.0 * z).exp();
    let one_minus_x = -(-2.0 * z).exp_m1();
    // ln x = -2z exactly; fold it in to avoid a rounded logarithm
    let li2 = if x <= 0.5 {
        dilog_series(x, cfg.abs_tol)
    } else {
        PI * PI / 6.0 + 2.0 * z * one_minus_x.ln() - dilog_series(one_minus_x, cfg.abs_tol)
    };
    debug_assert!((li2 - dilog_unit(x, one_minus_x, cfg.abs_tol)).abs() < 1e-12);
    Ok(0.5 * z * z - PI * PI / 12.0 + 0.5 * li2)
}

/// `Γ(z)` by adaptive quadrature with the `ln x` singularity removed in
/// closed form; the independent cross-check for [`hyperbolic_gamma`].
pub fn hyperbolic_gamma_quadrature(z: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::domain(
            "hyperbolic_gamma_quadrature",
            format!("need finite z >= 0, got {z}"),
        ));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    // log(2 sinh x) - ln x = x + ln(1 - e^{-2x}) - ln x, smooth with limit ln 2 at 0
    let h = |x: f64| x + (-(-2.0 * x).exp_m1()).ln() - x.ln();
    Ok(z * z.ln() - z + quadrature::integrate(h, 0.0, z, cfg.abs_tol * 1e-2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn zero_and_domain() {
        assert_eq!(hyperbolic_gamma(0.0, &cfg()).unwrap(), 0.0);
        assert!(hyperbolic_gamma(-1e-9, &cfg()).is_err());
        assert!(hyperbolic_gamma(f64::NAN, &cfg()).is_err());
    }

    #[test]
    fn value_at_one() {
        // mpmath: z²/2 - π²/12 + polylog(2, e^{-2})/2 and quad agree to 40 digits
        let g = hyperbolic_gamma(1.0, &cfg()).unwrap();
        assert!((g - (-0.252_360_742_478_669_13)).abs() < 1e-15);
    }

    #[test]
    fn derivative_is_log_two_sinh() {
        let h = 1e-6;
        let d = (hyperbolic_gamma(1.0 + h, &cfg()).unwrap()
            - hyperbolic_gamma(1.0 - h, &cfg()).unwrap())
            / (2.0 * h);
        assert!((d - (2.0 * 1f64.sinh()).ln()).abs() < 1e-8);
    }

    #[test]
    fn series_and_quadrature_agree() {
        for i in 0..=60 {
            let z = 0.001 + 6.0 * i as f64 / 60.0;
            let a = hyperbolic_gamma(z, &cfg()).unwrap();
            let b = hyperbolic_gamma_quadrature(z, &cfg()).unwrap();
            assert!((a - b).abs() < 1e-12, "z={z}: {a} vs {b}");
        }
    }

    #[test]
    fn dilog_reference_points() {
        assert!((dilog_unit(0.5, 0.5, 1e-16) - (PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2))).abs() < 1e-15);
        assert!((dilog_unit(1.0, 0.0, 1e-16) - PI * PI / 6.0).abs() < 1e-15);
    }
}
