//! Parameter regimes and the closed-form growth constants.
//!
//! With `V(r) = Λ(πr + θ/2) − Λ(πr − θ/2)` the circular growth constant is
//! `vhat(r) = 2V(r)/r`, the limit (or limsup) of `2π·ln|J_N|/N`. For an
//! imaginary parameter the limit of `ln J_N / N` is
//! `[2Γ(πs + φ_h/2) − 2Γ(πs − φ_h/2)] / (2πs)` above the threshold
//! `2πs = arccosh(3/2)` and zero at or below it.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::Parameter;
use crate::special::{
    hyperbolic_gamma, imaginary_threshold, lobachevsky, phi, phi_hyperbolic, theta, PrecisionConfig,
    Radians, ENDPOINT_SLACK,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeTag {
    /// `0 ≤ r < 1/6`
    ZeroSmallR,
    /// `5/6 < r < 7/6`, real-kind or `r = 1`
    MainIrrational,
    /// `5/6 < r < 7/6`, rational and `r ≠ 1`
    MainRational,
    /// `1/6 ≤ |1 − r| < 1/4`, real-kind
    NearMainIrrational,
    /// `2πs > arccosh(3/2)`
    ImaginaryAbove,
    /// `2πs ≤ arccosh(3/2)`
    ImaginaryAtOrBelow,
    Uncovered,
}

impl RegimeTag {
    pub fn label(self) -> &'static str {
        match self {
            RegimeTag::ZeroSmallR => "zero-small-r",
            RegimeTag::MainIrrational => "main-irrational",
            RegimeTag::MainRational => "main-rational",
            RegimeTag::NearMainIrrational => "near-main-irrational",
            RegimeTag::ImaginaryAbove => "imaginary-above",
            RegimeTag::ImaginaryAtOrBelow => "imaginary-at-or-below",
            RegimeTag::Uncovered => "uncovered",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How the observed growth is normalised before comparing with a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthScale {
    /// `2π · ln|J_N| / N` (circular parameters)
    TwoPiLogOverN,
    /// `ln J_N / N` (imaginary parameters)
    LogOverN,
}

impl GrowthScale {
    pub fn apply(self, log_abs: f64, n: u64) -> f64 {
        match self {
            GrowthScale::TwoPiLogOverN => 2.0 * PI * log_abs / n as f64,
            GrowthScale::LogOverN => log_abs / n as f64,
        }
    }
}

/// A regime and its predicted limiting behaviour. Predictions are `None`
/// for uncovered parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub tag: RegimeTag,
    pub limsup: Option<f64>,
    pub liminf: Option<f64>,
    pub limit_exists: bool,
    pub scale: GrowthScale,
}

impl Regime {
    /// The value a scan compares against: the limit, or the limsup.
    pub fn prediction(&self) -> Option<f64> {
        self.limsup
    }

    fn limit(tag: RegimeTag, value: f64, scale: GrowthScale) -> Self {
        Regime {
            tag,
            limsup: Some(value),
            liminf: Some(value),
            limit_exists: true,
            scale,
        }
    }

    fn uncovered() -> Self {
        Regime {
            tag: RegimeTag::Uncovered,
            limsup: None,
            liminf: None,
            limit_exists: false,
            scale: GrowthScale::TwoPiLogOverN,
        }
    }
}

/// Position of a circular `r` relative to the regime boundaries, computed
/// exactly for rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Band {
    Negative,
    Small,
    Near,
    Main,
    Other,
}

fn band_of(param: &Parameter) -> Band {
    // Compare r against c/d as sign(r·d − c); exact for rationals.
    let cmp = |c: i64, d: i64| -> std::cmp::Ordering {
        match *param {
            Parameter::CircularRational { q, p } => {
                (q as i128 * d as i128).cmp(&(c as i128 * p as i128))
            }
            _ => param.value().total_cmp(&(c as f64 / d as f64)),
        }
    };
    use std::cmp::Ordering::*;
    if cmp(0, 1) == Less {
        Band::Negative
    } else if cmp(1, 6) == Less {
        Band::Small
    } else if cmp(5, 6) == Greater && cmp(7, 6) == Less {
        Band::Main
    } else if (cmp(3, 4) == Greater && cmp(5, 6) != Greater) || (cmp(7, 6) != Less && cmp(5, 4) == Less) {
        Band::Near
    } else {
        Band::Other
    }
}

/// [`classify_with`] at the default precision.
pub fn classify(param: &Parameter) -> Regime {
    classify_with(param, &PrecisionConfig::default())
}

/// The regime containing `param`, with predictions filled in.
pub fn classify_with(param: &Parameter, cfg: &PrecisionConfig) -> Regime {
    match *param {
        Parameter::Imaginary { s } => {
            let scale = GrowthScale::LogOverN;
            if s <= imaginary_threshold() {
                return Regime::limit(RegimeTag::ImaginaryAtOrBelow, 0.0, scale);
            }
            match imaginary_growth(s, cfg) {
                Ok(v) => Regime::limit(RegimeTag::ImaginaryAbove, v, scale),
                Err(_) => Regime::uncovered(),
            }
        }
        _ => {
            let scale = GrowthScale::TwoPiLogOverN;
            let r = param.value();
            let rational_not_one = matches!(*param, Parameter::CircularRational { q, p } if q as i128 != p as i128);
            match band_of(param) {
                Band::Small => Regime::limit(RegimeTag::ZeroSmallR, 0.0, scale),
                Band::Main => match vhat_value(r, cfg) {
                    Ok(v) if rational_not_one => Regime {
                        tag: RegimeTag::MainRational,
                        limsup: Some(v),
                        liminf: Some(0.0),
                        limit_exists: false,
                        scale,
                    },
                    Ok(v) => Regime::limit(RegimeTag::MainIrrational, v, scale),
                    Err(_) => Regime::uncovered(),
                },
                Band::Near if !matches!(param, Parameter::CircularRational { .. }) => {
                    match vhat_value(r, cfg) {
                        Ok(v) => Regime::limit(RegimeTag::NearMainIrrational, v, scale),
                        Err(_) => Regime::uncovered(),
                    }
                }
                _ => Regime::uncovered(),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthPrediction {
    pub vhat: f64,
    pub theta_used: Radians,
    pub regime: Regime,
}

fn vhat_value(r: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if r == 0.0 {
        return Err(Error::domain("vhat", "r = 0"));
    }
    Ok(2.0 * appendix_v(r, cfg)? / r)
}

/// `vhat(r) = (2Λ(πr + θ/2) − 2Λ(πr − θ/2)) / r`; `r` is classified as a
/// real-kind parameter.
pub fn vhat(r: f64, cfg: &PrecisionConfig) -> Result<GrowthPrediction> {
    let value = vhat_value(r, cfg)?;
    let regime = match Parameter::real(r) {
        Ok(p) => classify_with(&p, cfg),
        Err(_) => Regime::uncovered(),
    };
    Ok(GrowthPrediction {
        vhat: value,
        theta_used: theta(r)?,
        regime,
    })
}

/// `Λ(πr + a/2) − Λ(πr − a/2)`.
fn lambda_difference(r: f64, angle: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let x = PI * r;
    let plus = lobachevsky(Radians::new(x + angle / 2.0)?, cfg)?;
    let minus = lobachevsky(Radians::new(x - angle / 2.0)?, cfg)?;
    Ok(plus - minus)
}

/// `V(r) = Λ(πr + θ(r)/2) − Λ(πr − θ(r)/2)`.
pub fn appendix_v(r: f64, cfg: &PrecisionConfig) -> Result<f64> {
    lambda_difference(r, theta(r)?.value(), cfg)
}

/// `W(r) = V(r) + Λ(πr + φ(r)/2) − Λ(πr − φ(r)/2)`.
pub fn appendix_w(r: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let phi_part = lambda_difference(r, phi(r)?.value(), cfg)?;
    Ok(appendix_v(r, cfg)? + phi_part)
}

/// `dV/dr = 2π · ln|2 sin(πr − θ(r)/2)|`.
pub fn appendix_dv(r: f64, _cfg: &PrecisionConfig) -> Result<f64> {
    let s = 2.0 * (PI * r - theta(r)?.value() / 2.0).sin();
    if s == 0.0 {
        return Err(Error::domain("appendix_dv", format!("sin(πr − θ/2) = 0 at r = {r}")));
    }
    Ok(2.0 * PI * s.abs().ln())
}

/// The gap `δ(r) = W(r)` between the growth at `⌊D⌋` and at `⌊A⌋`.
pub fn delta_gap(r: f64, cfg: &PrecisionConfig) -> Result<f64> {
    appendix_w(r, cfg)
}

/// Volume of the cone manifold on the figure-eight knot with the given
/// cone angle, `2V(1 − angle/2π)`, for angles in `[0, 2π/3]`.
pub fn cone_manifold_volume(cone_angle: Radians, cfg: &PrecisionConfig) -> Result<f64> {
    let a = cone_angle.value();
    let max = 2.0 * PI / 3.0;
    if a < -ENDPOINT_SLACK || a > max + ENDPOINT_SLACK {
        return Err(Error::domain(
            "cone_manifold_volume",
            format!("cone angle {a} outside [0, 2π/3]"),
        ));
    }
    let a = a.clamp(0.0, max);
    Ok(2.0 * appendix_v(1.0 - a / (2.0 * PI), cfg)?)
}

/// Predicted `lim ln J_N / N` for the imaginary parameter of magnitude `s`.
pub fn imaginary_growth(s: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::domain("imaginary_growth", format!("need finite s > 0, got {s}")));
    }
    if s <= imaginary_threshold() {
        return Ok(0.0);
    }
    let half = phi_hyperbolic(s)? / 2.0;
    let x = PI * s;
    let upper = hyperbolic_gamma(x + half, cfg)?;
    let lower = hyperbolic_gamma((x - half).max(0.0), cfg)?;
    Ok((2.0 * upper - 2.0 * lower) / (2.0 * PI * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const VHAT_1: f64 = 2.029_883_212_819_307_2;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn real(r: f64) -> Parameter {
        Parameter::real(r).unwrap()
    }

    #[test]
    fn classify_examples() {
        let reg = classify(&real(1.0));
        assert_eq!(reg.tag, RegimeTag::MainIrrational);
        assert!(reg.limit_exists);
        assert!((reg.limsup.unwrap() - VHAT_1).abs() < 1e-12);

        let reg = classify(&Parameter::rational(9, 10).unwrap());
        assert_eq!(reg.tag, RegimeTag::MainRational);
        assert_eq!(reg.liminf, Some(0.0));
        assert!(!reg.limit_exists);

        assert_eq!(classify(&real(0.5)).tag, RegimeTag::Uncovered);
        let reg = classify(&real(0.05));
        assert_eq!((reg.tag, reg.limsup, reg.liminf), (RegimeTag::ZeroSmallR, Some(0.0), Some(0.0)));
    }

    #[test]
    fn classify_boundaries() {
        let rat = |q, p| classify(&Parameter::rational(q, p).unwrap()).tag;
        assert_eq!(rat(1, 1), RegimeTag::MainIrrational);
        assert_eq!(rat(1, 6), RegimeTag::Uncovered);
        assert_eq!(rat(5, 6), RegimeTag::Uncovered);
        assert_eq!(rat(-1, 2), RegimeTag::Uncovered);
        assert_eq!(rat(1, 7), RegimeTag::ZeroSmallR);
        assert_eq!(rat(0, 1), RegimeTag::ZeroSmallR);
        assert_eq!(classify(&real(0.8)).tag, RegimeTag::NearMainIrrational);
        assert_eq!(classify(&real(1.2)).tag, RegimeTag::NearMainIrrational);
        assert_eq!(classify(&real(0.75)).tag, RegimeTag::Uncovered);
        assert_eq!(classify(&real(1.25)).tag, RegimeTag::Uncovered);
        assert_eq!(
            classify(&Parameter::imaginary(imaginary_threshold()).unwrap()).tag,
            RegimeTag::ImaginaryAtOrBelow
        );
        let reg = classify(&Parameter::imaginary(1.0).unwrap());
        assert_eq!((reg.tag, reg.scale), (RegimeTag::ImaginaryAbove, GrowthScale::LogOverN));
    }

    #[test]
    fn vhat_examples() {
        assert!((vhat(1.0, &cfg()).unwrap().vhat - VHAT_1).abs() < 1e-12);
        assert!(vhat(2.0 / 3.0, &cfg()).unwrap().vhat.abs() < 1e-12);
        assert!(vhat(0.0, &cfg()).is_err());
        assert!(vhat(0.5, &cfg()).is_err());
        // mpmath, 40 digits
        assert!((vhat(0.9, &cfg()).unwrap().vhat - 1.898_412_164_775_873_5).abs() < 1e-12);
    }

    #[test]
    fn appendix_values() {
        assert!(appendix_v(2.0 / 3.0, &cfg()).unwrap().abs() < 1e-12);
        assert!((appendix_v(1.0, &cfg()).unwrap() - 1.014_941_606_409_653_6).abs() < 1e-12);
        assert!(appendix_w(0.75, &cfg()).unwrap().abs() < 1e-12);
        assert!((delta_gap(0.8, &cfg()).unwrap() - 0.399_133_733_428_869_01).abs() < 1e-12);
        assert!((appendix_dv(0.9, &cfg()).unwrap() - 3.023_543_068_855_573_9).abs() < 1e-11);
    }

    #[test]
    fn dv_vanishes_where_sine_is_half() {
        // πr − θ/2 = 5π/6 with θ = arccos(cos 2πr − 1/2); solve by bisection
        let f = |r: f64| PI * r - theta(r).unwrap().value() / 2.0 - 5.0 * PI / 6.0;
        let (mut lo, mut hi) = (0.9, 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!(appendix_dv(lo, &cfg()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn cone_volume() {
        let v0 = cone_manifold_volume(Radians::new(0.0).unwrap(), &cfg()).unwrap();
        assert!((v0 - VHAT_1).abs() < 1e-12);
        let vmax = cone_manifold_volume(Radians::new(2.0 * PI / 3.0).unwrap(), &cfg()).unwrap();
        assert!(vmax.abs() < 1e-12);
        let v = cone_manifold_volume(Radians::new(PI / 3.0).unwrap(), &cfg()).unwrap();
        assert!((v - 1.221_287_458_902_958_7).abs() < 1e-12);
        assert!(cone_manifold_volume(Radians::new(2.2).unwrap(), &cfg()).is_err());
        assert!(cone_manifold_volume(Radians::new(-0.1).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn imaginary_examples() {
        assert_eq!(imaginary_growth(imaginary_threshold(), &cfg()).unwrap(), 0.0);
        assert_eq!(imaginary_growth(0.1, &cfg()).unwrap(), 0.0);
        assert!((imaginary_growth(1.0, &cfg()).unwrap() - 6.021_683_827_061_042_4).abs() < 1e-12);
        assert!(imaginary_growth(-1.0, &cfg()).is_err());
    }

    #[test]
    fn delta_symmetry() {
        let a = delta_gap(0.78, &cfg()).unwrap();
        let b = delta_gap(1.22, &cfg()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn v_symmetric(r in 0.67f64..1.33) {
            let a = appendix_v(r, &cfg()).unwrap();
            let b = appendix_v(2.0 - r, &cfg()).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn w_symmetric(r in 0.7501f64..0.8333) {
            let a = appendix_w(r, &cfg()).unwrap();
            let b = appendix_w(2.0 - r, &cfg()).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn classify_is_total(r in -3.0f64..3.0, q in -50i64..50, p in 1i64..50, s in 1e-3f64..3.0) {
            let cases = [
                Parameter::CircularReal { r },
                Parameter::rational(q, p).unwrap(),
                Parameter::imaginary(s).unwrap(),
            ];
            for c in cases {
                let reg = classify(&c);
                if let (Some(lo), Some(hi)) = (reg.liminf, reg.limsup) {
                    prop_assert!(lo <= hi);
                    if reg.limit_exists { prop_assert_eq!(lo, hi); }
                }
                if matches!(reg.tag, RegimeTag::ZeroSmallR | RegimeTag::ImaginaryAtOrBelow) {
                    prop_assert_eq!((reg.liminf, reg.limsup), (Some(0.0), Some(0.0)));
                }
            }
        }

        #[test]
        fn vhat_nonnegative_when_covered(r in 0.76f64..1.24) {
            let reg = classify(&Parameter::real(r).unwrap());
            if let Some(v) = reg.limsup {
                prop_assert!(v >= 0.0);
            }
        }
    }
}
