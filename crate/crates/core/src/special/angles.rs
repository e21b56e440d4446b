//! Angle functions `θ(r) = arccos(cos 2πr − ½)`, `φ(r) = arccos(cos 2πr + ½)`
//! and the hyperbolic `φ_h(s) = arccosh(cosh 2πs − ½)`.

use std::f64::consts::PI;

use super::Radians;
use crate::error::{Error, Result};

/// Slack accepted outside the edges of the arccos / arccosh domains.
pub const ENDPOINT_SLACK: f64 = 1e-12;

/// Arguments this close to ±1 are snapped onto the endpoint; closer than
/// the rounding noise of `cos 2πr ± ½` the distinction is meaningless.
const SNAP: f64 = 4.0 * f64::EPSILON;

/// `cos(2π t)` with the period reduced first, so integer and half-integer
/// turns land on the exact values.
pub fn cos_turns(t: f64) -> f64 {
    let mut u = t - t.floor(); // [0, 1)
    if u > 0.5 {
        u = 1.0 - u;
    }
    let mut sign = 1.0;
    if u > 0.25 {
        u = 0.5 - u;
        sign = -1.0;
    }
    let v = if u > 0.125 {
        (2.0 * PI * (0.25 - u)).sin()
    } else {
        (2.0 * PI * u).cos()
    };
    sign * v
}

fn clamped_acos(arg: f64, function: &'static str, r: f64) -> Result<Radians> {
    if !arg.is_finite() || !(-1.0 - ENDPOINT_SLACK..=1.0 + ENDPOINT_SLACK).contains(&arg) {
        return Err(Error::domain(
            function,
            format!("arccos argument {arg} outside [-1, 1] at r = {r}"),
        ));
    }
    let arg = if arg >= 1.0 - SNAP {
        1.0
    } else if arg <= -1.0 + SNAP {
        -1.0
    } else {
        arg
    };
    Radians::new(arg.acos())
}

pub fn theta(r: f64) -> Result<Radians> {
    clamped_acos(cos_turns(r) - 0.5, "theta", r)
}

pub fn phi(r: f64) -> Result<Radians> {
    clamped_acos(cos_turns(r) + 0.5, "phi", r)
}

/// `arccosh(cosh 2πs − ½)`, defined once `2πs ≥ arccosh(3/2)`.
pub fn phi_hyperbolic(s: f64) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::domain("phi_hyperbolic", format!("need finite s > 0, got {s}")));
    }
    let y = 2.0 * PI * s;
    if y > 30.0 {
        // arccosh(w) = ln(2w) − 1/(4w²) − …, and 1/(4w²) < e^{-2y} is negligible
        return Ok(y + (-(-y).exp() + (-2.0 * y).exp()).ln_1p());
    }
    let w = y.cosh() - 0.5;
    if w < 1.0 - ENDPOINT_SLACK {
        return Err(Error::domain(
            "phi_hyperbolic",
            format!("2πs = {y} is below arccosh(3/2); cosh(2πs) − 1/2 = {w} < 1"),
        ));
    }
    Ok(if w <= 1.0 + SNAP { 0.0 } else { w.acosh() })
}

/// `arccosh(3/2)/(2π)`, the threshold magnitude for imaginary parameters.
pub fn imaginary_threshold() -> f64 {
    1.5f64.acosh() / (2.0 * PI)
}
