//! Finite-`N` checks of the sandwich, subsequence, small-`r`, local-maxima
//! and imaginary-parameter statements.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::scan::log_abs_jones;
use super::{Check, SuiteReport, REAL_KIND_NOTE};
use crate::asymptotics::{classify_with, delta_gap, imaginary_growth, RegimeTag};
use crate::error::{Error, Result};
use crate::evaluator::{
    critical_indices, f_max, for_each_term_mp, jones_value, partial_products, Parameter, TermSequence,
};
use crate::mp::MpFloat;
use crate::special::{imaginary_threshold, PrecisionConfig};

/// Allowed `|s_N − vhat|` along non-multiples of `q` at the probe sizes.
pub const SUBSEQUENCE_TOL: f64 = 0.15;

/// `c · ln N / N` with `c = 4π`: sandwich slack plus Riemann-sum error.
fn convergence_band(n: u64) -> f64 {
    4.0 * PI * (n as f64).ln() / n as f64
}

/// `ln((2πr)^6 / (360 N^6))`, the lower bound on `|J_N|` whenever `f(1)`
/// is the last nonzero term with `|g(1)|` bounded below by its Taylor term.
fn log_sixth_power_bound(r: f64, n: u64) -> f64 {
    6.0 * (2.0 * PI * r).ln() - 360f64.ln() - 6.0 * (n as f64).ln()
}

fn require(param: &Parameter, cfg: &PrecisionConfig, allowed: &[RegimeTag], suite: &str) -> Result<RegimeTag> {
    let tag = classify_with(param, cfg).tag;
    if allowed.contains(&tag) {
        Ok(tag)
    } else {
        let names: Vec<_> = allowed.iter().map(|t| t.label()).collect();
        Err(Error::RegimeMismatch(format!(
            "{suite} needs regime {}; {param} is {tag}",
            names.join(" or ")
        )))
    }
}

/// `F_N − 1 ≤ |J_N| ≤ N·F_N`, compared at working precision.
pub fn sandwich_check(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<SuiteReport> {
    require(param, cfg, &[RegimeTag::MainIrrational], "sandwich check")?;
    let bits = cfg.working_bits;
    let mut sum = MpFloat::zero();
    let mut max = MpFloat::zero();
    for_each_term_mp(param, n, cfg, |_, f| {
        sum = sum.add(f, bits);
        if f.cmp_abs(&max).is_gt() {
            max = f.abs();
        }
    })?;
    let j_abs = sum.abs();
    let lower = max.sub(&MpFloat::one(), bits);
    let upper = max.mul(&MpFloat::from_u64(n), bits);
    let log_j = j_abs.ln_abs();

    let mut rep = SuiteReport::new(format!("sandwich r={param} N={n}"));
    let lower_bound = (!lower.is_zero()).then(|| lower.ln_abs());
    rep.push(Check::new(
        "F_N - 1 <= |J_N| (logs)",
        lower.cmp_value(&j_abs).is_le(),
        log_j,
        lower_bound,
    ));
    rep.push(Check::new(
        "|J_N| <= N F_N (logs)",
        j_abs.cmp_value(&upper).is_le(),
        log_j,
        Some(upper.ln_abs()),
    ));

    let idx = critical_indices(param, n)?;
    if let Some(d) = idx.d {
        let m = f_max(param, n)?;
        rep.push(Check::new(
            format!("argmax |f(k)| = floor(D) = {}", d.floor),
            m.argmax as i64 == d.floor,
            m.argmax as f64,
            Some(d.floor as f64),
        ));
    }
    let reg = classify_with(param, cfg);
    if let Some(v) = reg.prediction() {
        let s = reg.scale.apply(log_j, n);
        rep.push(Check::at_most(
            "|s_N - vhat| <= 4 pi ln N / N",
            (s - v).abs(),
            convergence_band(n),
        ));
    }
    if matches!(param, Parameter::CircularReal { .. }) {
        rep.note(REAL_KIND_NOTE);
    }
    Ok(rep)
}

/// The `q | N` split for a rational parameter in the main range: on
/// multiples of `q` the sum is pinned between `(2πr)^6/(360N^6)` and
/// `N|1 − 1/r|`; on the `probes` (non-multiples) `s_N` stays near vhat.
pub fn subsequence_analysis(
    param: &Parameter,
    n_max: u64,
    probes: &[u64],
    cfg: &PrecisionConfig,
) -> Result<SuiteReport> {
    require(param, cfg, &[RegimeTag::MainRational], "subsequence analysis")?;
    let (q, r) = match *param {
        Parameter::CircularRational { q, .. } => (q.unsigned_abs(), param.value()),
        _ => unreachable!("main-rational parameters are rational"),
    };
    let vhat = classify_with(param, cfg).limsup.expect("main-rational has a limsup");
    let mut rep = SuiteReport::new(format!("subsequence r={param} N<={n_max}"));

    let multiples: Vec<u64> = (1..=n_max / q).map(|k| k * q).collect();
    let logs: Vec<Result<f64>> = multiples
        .par_iter()
        .map(|&n| jones_value(param, n, cfg).map(|ev| ev.log_abs))
        .collect();
    let mut trend = Vec::new();
    for (&n, log) in multiples.iter().zip(logs) {
        let log = log?;
        let hi = (n as f64 * (1.0 - 1.0 / r).abs()).ln();
        let lo = log_sixth_power_bound(r, n);
        rep.push(Check::below(format!("N={n}: ln|J_N| < ln(N|1-1/r|)"), log, hi));
        rep.push(Check::above(format!("N={n}: ln|J_N| > ln((2 pi r)^6/(360 N^6))"), log, lo));
        trend.push((n, 2.0 * PI * log / n as f64));
    }
    if let (Some(first), Some(last)) = (trend.first(), trend.last()) {
        rep.note(format!(
            "multiples of {q}: s_N goes from {:.6} at N={} to {:.6} at N={} (liminf 0 trend)",
            first.1, first.0, last.1, last.0
        ));
    }

    for &n in probes {
        if n % q == 0 {
            return Err(Error::InvalidInput(format!("probe N={n} is a multiple of {q}")));
        }
        let s = 2.0 * PI * log_abs_jones(param, n, cfg)? / n as f64;
        rep.push(Check::at_most(
            format!("N={n} (non-multiple): |s_N - vhat| <= {SUBSEQUENCE_TOL}"),
            (s - vhat).abs(),
            SUBSEQUENCE_TOL,
        ));
    }
    rep.note(format!(
        "non-multiples track vhat = {vhat:.12}; the limsup itself is only observed, not certified"
    ));
    Ok(rep)
}

/// `(2πr)^6/(360N^6) < |J_N| < N` for `0 < r < 1/6`, and `J_N = 1` at `r = 0`.
pub fn small_r_check(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<SuiteReport> {
    require(param, cfg, &[RegimeTag::ZeroSmallR], "small-r check")?;
    let r = param.value();
    let mut rep = SuiteReport::new(format!("small-r r={param} N={n}"));
    let ev = jones_value(param, n, cfg)?;
    if r == 0.0 {
        rep.push(Check::new("J_N = 1 exactly", ev.value == MpFloat::one(), ev.value_f64(), Some(1.0)));
        return Ok(rep);
    }
    let log = ev.log_abs;
    let lo = log_sixth_power_bound(r, n);
    let hi = (n as f64).ln();
    rep.push(Check::above("ln|J_N| > ln((2 pi r)^6/(360 N^6))", log, lo));
    rep.push(Check::below("ln|J_N| < ln N", log, hi));
    let s = 2.0 * PI * log / n as f64;
    let band = (2.0 * PI * lo / n as f64, 2.0 * PI * hi / n as f64);
    rep.push(Check::new(
        format!("s_N in [{:.6}, {:.6}]", band.0, band.1),
        s >= band.0 && s <= band.1,
        s,
        Some(band.1),
    ));
    rep.note(format!("s_N = {s:.3e}; both band edges shrink like ln N / N"));
    Ok(rep)
}

/// Indices `k` with `|f(k−1)| < |f(k)| ≥ |f(k+1)|` (edges compare one side).
pub fn local_maxima(terms: &TermSequence) -> Vec<u64> {
    let l = &terms.log_abs;
    (0..l.len())
        .filter(|&k| {
            let left = k == 0 || l[k] > l[k - 1];
            let right = k + 1 == l.len() || l[k] >= l[k + 1];
            l[k].is_finite() && left && right
        })
        .map(|k| k as u64)
        .collect()
}

/// Locations of the local maxima of `|f(k)|` in the near-main range.
pub fn local_maxima_audit(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<SuiteReport> {
    require(param, cfg, &[RegimeTag::NearMainIrrational], "local maxima audit")?;
    let r = param.value();
    let terms = partial_products(param, n)?;
    let found = local_maxima(&terms);
    let idx = critical_indices(param, n)?;
    let mut expected = vec![("A", idx.a), ("D", idx.d)];
    if r > 1.0 {
        expected.push(("A''", idx.a_double_prime));
    }
    let mut rep = SuiteReport::new(format!("local maxima r={param} N={n}"));
    rep.note(format!("local maxima found at {found:?}"));
    rep.push(Check::new(
        format!("exactly {} local maxima", expected.len()),
        found.len() == expected.len(),
        found.len() as f64,
        Some(expected.len() as f64),
    ));
    for (name, t) in &expected {
        let Some(t) = t else {
            rep.push(Check::new(format!("{name} defined"), false, 0.0, None));
            continue;
        };
        let nearest = found
            .iter()
            .map(|&k| (k as i64 - t.floor).abs())
            .min()
            .unwrap_or(i64::MAX);
        rep.push(Check::at_most(
            format!("local maximum within 1 of floor({name}) = {}", t.floor),
            nearest as f64,
            1.0,
        ));
    }
    let m = f_max(param, n)?;
    if let Some(d) = idx.d {
        rep.push(Check::at_most(
            format!("global maximum within 1 of floor(D) = {}", d.floor),
            (m.argmax as i64 - d.floor).abs() as f64,
            1.0,
        ));
    }
    if r > 1.0 {
        if let Some(t) = idx.a_double_prime {
            let k = t.floor.clamp(0, n as i64 - 1) as usize;
            rep.push(Check::below("ln|f(floor(A''))| < 0", terms.log_abs[k], 0.0));
        }
    }
    rep.push(Check::above("delta(r) > 0", delta_gap(r, cfg)?, 0.0));
    rep.note(REAL_KIND_NOTE);
    Ok(rep)
}

/// Imaginary parameter: above the threshold `ln J_N / N` is within `tol` of
/// the predicted limit; at or below it `g(0) − ε < J_N < N` with `ε = 0.01`.
pub fn imaginary_check(s: f64, n: u64, tol: f64, cfg: &PrecisionConfig) -> Result<SuiteReport> {
    let param = Parameter::imaginary(s)?;
    let log = log_abs_jones(&param, n, cfg)?;
    let per_n = log / n as f64;
    let mut rep = SuiteReport::new(format!("imaginary s={s} N={n}"));
    if s > imaginary_threshold() {
        let pred = imaginary_growth(s, cfg)?;
        rep.push(Check::at_most("|ln J_N / N - limit|", (per_n - pred).abs(), tol));
        rep.note(format!("ln J_N / N = {per_n:.12}, limit {pred:.12}"));
    } else {
        let eps = 0.01;
        let g0 = 2.0 * (2.0 * PI * s).cosh() - 2.0;
        let lo = (g0 - eps).ln() / n as f64;
        let hi = (n as f64).ln() / n as f64;
        rep.push(Check::above("ln J_N / N > ln(g(0) - 0.01) / N", per_n, lo));
        rep.push(Check::below("ln J_N / N < ln N / N", per_n, hi));
        rep.note("at or below the threshold the limit is 0");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn sandwich_small_r1() {
        let rep = sandwich_check(&Parameter::real(1.0).unwrap(), 4, &cfg()).unwrap();
        assert!(rep.overall, "{rep}");
        // 15 <= 27 <= 64
        assert!((rep.checks[0].bound.unwrap() - 15f64.ln()).abs() < 1e-12);
        assert!((rep.checks[0].measured - 27f64.ln()).abs() < 1e-12);
        assert!((rep.checks[1].bound.unwrap() - 64f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn regime_gates() {
        assert!(matches!(
            sandwich_check(&Parameter::real(0.5).unwrap(), 10, &cfg()),
            Err(Error::RegimeMismatch(_))
        ));
        assert!(subsequence_analysis(&Parameter::real(1.0).unwrap(), 90, &[], &cfg()).is_err());
        assert!(small_r_check(&Parameter::real(0.9).unwrap(), 10, &cfg()).is_err());
        assert!(local_maxima_audit(&Parameter::real(0.9).unwrap(), 10, &cfg()).is_err());
    }

    #[test]
    fn small_r_zero_is_exact() {
        let rep = small_r_check(&Parameter::real(0.0).unwrap(), 5, &cfg()).unwrap();
        assert!(rep.overall);
        let rep = small_r_check(&Parameter::real(0.15).unwrap(), 300, &cfg()).unwrap();
        assert!(rep.overall, "{rep}");
    }

    #[test]
    fn subsequence_small() {
        let p = Parameter::rational(9, 10).unwrap();
        let rep = subsequence_analysis(&p, 90, &[91], &cfg()).unwrap();
        assert!(rep.overall, "{rep}");
        assert!(subsequence_analysis(&p, 90, &[81], &cfg()).is_err());
    }

    #[test]
    fn local_maxima_of_simple_sequence() {
        let t = TermSequence {
            n: 6,
            sign: vec![1; 6],
            log_abs: vec![0.0, 1.0, 0.5, 0.7, 0.7, 0.1],
            zero_from: None,
            near_zero: vec![],
        };
        assert_eq!(local_maxima(&t), vec![1, 3]);
    }

    #[test]
    fn near_main_low_audit() {
        let rep = local_maxima_audit(&Parameter::real(0.8).unwrap(), 400, &cfg()).unwrap();
        assert!(rep.overall, "{rep}");
    }

    #[test]
    fn imaginary_below_threshold() {
        let rep = imaginary_check(0.1, 1000, 1e-3, &cfg()).unwrap();
        assert!(rep.overall, "{rep}");
    }
}
