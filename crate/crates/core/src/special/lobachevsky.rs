//! The Lobachevsky function `Λ(x) = -∫_0^x log|2 sin t| dt`.
//!
//! Primary scheme: reduce `x` modulo π to `[-π/2, π/2]`, use oddness, and
//! evaluate `Λ(x) = Cl₂(2x)/2` with the Bernoulli expansion
//!
//! ```text
//! Cl₂(t) = t - t ln t + Σ_{n≥1} |B_{2n}| t^{2n+1} / (2n (2n+1)!)
//! ```
//!
//! which converges like `(t/2π)^{2n}`, i.e. at least as fast as `4^{-n}` on
//! `t ∈ [0, π]`. Two independent cross-check schemes are exposed: adaptive
//! quadrature of the defining integral and the Fourier sine series.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{quadrature, PrecisionConfig, Radians};
use crate::error::{Error, Result};

const TERMS: usize = 60;

/// `ζ(2n)` for `n ≥ 1`, summed from the smallest term up.
fn zeta_even(n: u32) -> f64 {
    match n {
        1 => return PI.powi(2) / 6.0,
        2 => return PI.powi(4) / 90.0,
        _ => {}
    }
    // tail after K terms is below K^(1-2n)/(2n-1); K^(1-2n) < 2^-60 suffices
    let k_max = (2f64.powf(60.0 / (2 * n - 1) as f64)).ceil() as u64 + 1;
    (1..=k_max).rev().map(|k| (k as f64).powi(-(2 * n as i32))).sum()
}

/// `|B_{2n}| / (2n (2n+1)!)` for `n = 1..=TERMS`, via
/// `|B_{2n}| = 2 (2n)! ζ(2n) / (2π)^{2n}`.
fn clausen_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        (1..=TERMS as u32)
            .map(|n| {
                let m = 2 * n as i32;
                2.0 * zeta_even(n) / ((m * (m + 1)) as f64 * (2.0 * PI).powi(m))
            })
            .collect()
    })
}

/// `Cl₂(t)` for `t ∈ [0, π]`.
fn clausen_reduced(t: f64, abs_tol: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let t2 = t * t;
    let mut power = t * t2;
    let mut sum = t - t * t.ln();
    for &c in clausen_coefficients() {
        let term = c * power;
        sum += term;
        if term < abs_tol * 1e-3 {
            break;
        }
        power *= t2;
    }
    sum
}

/// Reduce modulo π into `[-π/2, π/2]`.
fn reduce(x: f64) -> f64 {
    let k = (x / PI).round();
    let y = x - k * PI;
    y.clamp(-PI / 2.0, PI / 2.0)
}

/// `Λ(x)` to absolute error `cfg.abs_tol` (floored at double precision).
pub fn lobachevsky(x: Radians, cfg: &PrecisionConfig) -> Result<f64> {
    let x = x.value();
    if !x.is_finite() {
        return Err(Error::domain("lobachevsky", format!("non-finite argument {x}")));
    }
    let y = reduce(x);
    let v = 0.5 * clausen_reduced(2.0 * y.abs(), cfg.abs_tol);
    Ok(if y < 0.0 { -v } else { v })
}

/// `Λ(x)` by adaptive quadrature of `-∫_0^x log|2 sin t| dt`, split at the
/// multiples of π with the logarithmic singularities at both ends of each
/// piece integrated in closed form. Independent of the series path.
pub fn lobachevsky_quadrature(x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(
            "lobachevsky_quadrature",
            format!("non-finite argument {x}"),
        ));
    }
    if x < 0.0 {
        return lobachevsky_quadrature(-x, cfg).map(|v| -v);
    }
    let mut total = 0.0;
    let mut a = 0.0;
    let mut k = 0.0;
    while a < x {
        let cell_end = (k + 1.0) * PI;
        let b = x.min(cell_end);
        total += log_sin_piece(a - k * PI, b - k * PI, cfg.abs_tol);
        a = b;
        k += 1.0;
    }
    Ok(-total)
}

/// `∫_u0^u1 log|2 sin u| du` for `0 ≤ u0 ≤ u1 ≤ π`.
fn log_sin_piece(u0: f64, u1: f64, tol: f64) -> f64 {
    // log|2 sin u| = ln 2 + ln u + ln(π - u) + h(u),  h smooth on [0, π]
    let xlogx = |v: f64| if v == 0.0 { 0.0 } else { v * v.ln() - v };
    let left = xlogx(u1) - xlogx(u0);
    let right = xlogx(PI - u0) - xlogx(PI - u1);
    let h = |u: f64| (u.sin() / (u * (PI - u))).ln();
    let smooth = quadrature::integrate(h, u0, u1, tol * 1e-2);
    (u1 - u0) * std::f64::consts::LN_2 + left + right + smooth
}

/// Partial sum of the Fourier series `½ Σ_{n≤terms} sin(2nx)/n²`.
/// Converges only like `1/terms`; used as a coarse third cross-check.
pub fn lobachevsky_fourier(x: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=terms {
        let nf = n as f64;
        let term = (2.0 * nf * x).sin() / (nf * nf);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    0.5 * (sum + comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, ToPrimitive, Zero};

    /// Exact Bernoulli numbers `B_0..=B_max` (with `B_1 = -1/2`).
    fn bernoulli_numbers(max: usize) -> Vec<BigRational> {
        // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k
        let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
        b.push(BigRational::one());
        for m in 1..=max {
            let mut binom = BigInt::one(); // C(m+1, 0)
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    #[test]
    fn coefficients_match_exact_bernoulli() {
        let b = bernoulli_numbers(40);
        let mut fact = BigInt::one();
        let mut m = 1u64;
        for n in 1..=20u64 {
            while m < 2 * n + 1 {
                m += 1;
                fact *= BigInt::from(m);
            }
            let exact = (b[2 * n as usize].abs() / BigRational::from_integer(&fact * BigInt::from(2 * n)))
                .to_f64()
                .unwrap();
            let c = clausen_coefficients()[n as usize - 1];
            assert!(((c - exact) / exact).abs() < 1e-14, "n={n}: {c} vs {exact}");
        }
    }

    fn lam(x: f64) -> f64 {
        lobachevsky(Radians::new(x).unwrap(), &PrecisionConfig::default()).unwrap()
    }

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_numbers(12);
        let f = |i: usize| b[i].to_f64().unwrap();
        assert_eq!(f(1), -0.5);
        assert_eq!(f(2), 1.0 / 6.0);
        assert_eq!(f(4), -1.0 / 30.0);
        assert_eq!(f(6), 1.0 / 42.0);
        assert_eq!(f(3), 0.0);
        assert!((f(12) - (-691.0 / 2730.0)).abs() < 1e-16);
    }

    #[test]
    fn trivial_values() {
        assert_eq!(lam(0.0), 0.0);
        assert!(lam(PI / 2.0).abs() < 1e-15);
        assert!(lam(PI).abs() < 1e-15);
    }

    #[test]
    fn value_at_pi_over_six() {
        // mpmath: clsin(2, pi/3)/2 at 40 digits
        assert!((lam(PI / 6.0) - 0.507_470_803_204_826_8).abs() < 1e-15);
    }

    #[test]
    fn maximum_at_pi_over_six() {
        let m = lam(PI / 6.0);
        assert!(lam(PI / 6.0 - 1e-3) < m && lam(PI / 6.0 + 1e-3) < m);
    }

    #[test]
    fn periodic_shift() {
        assert!((lam(PI + 0.3) - lam(0.3)).abs() < 1e-15);
        assert!((lam(-0.3) + lam(0.3)).abs() < 1e-16);
    }

    #[test]
    fn quadrature_agrees_on_grid() {
        let cfg = PrecisionConfig::default();
        for i in 0..=40 {
            let x = -7.0 + 14.0 * i as f64 / 40.0;
            let q = lobachevsky_quadrature(x, &cfg).unwrap();
            assert!((q - lam(x)).abs() < 1e-12, "x={x}: {q} vs {}", lam(x));
        }
    }

    #[test]
    fn fourier_series_is_consistent() {
        // the tail of Σ 1/n² after M terms is below 1/M
        for &x in &[0.2, 0.7, 1.3, 2.9] {
            assert!((lobachevsky_fourier(x, 20_000) - lam(x)).abs() < 1e-4);
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Radians::new(f64::NAN).is_err());
        assert!(lobachevsky_quadrature(f64::INFINITY, &PrecisionConfig::default()).is_err());
    }
}
