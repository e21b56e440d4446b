//! Double-precision factors `g(j)` and log-space partial products `f(k)`.

use serde::{Deserialize, Serialize};

use super::Parameter;
use crate::error::{Error, Result};
use crate::special::cos_turns;

/// `|g(j)|` below this (but nonzero) is flagged as a near-zero factor.
pub const NEAR_ZERO: f64 = 1e-13;

/// Two log-magnitudes closer than this are treated as equal when locating
/// maxima; the larger index wins.
pub const TIE_LOG_TOL: f64 = 1e-9;

fn check_index(j: u64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if j > n {
        return Err(Error::InvalidInput(format!("j = {j} outside 0..={n}")));
    }
    Ok(())
}

/// `(qj mod pN) / (pN)` as turns in `[0, 1)`.
fn rational_turns(num: i128, den: i128) -> f64 {
    num.rem_euclid(den) as f64 / den as f64
}

/// `g(j)` exactly zero for a rational parameter: `rj/N ≡ ±r (mod 1)`.
pub(crate) fn is_exact_zero(param: &Parameter, j: u64, n: u64) -> bool {
    match *param {
        Parameter::CircularRational { q, p } => {
            let q = q as i128;
            let modulus = p as i128 * n as i128;
            let (j, n) = (j as i128, n as i128);
            (q * (j - n)).rem_euclid(modulus) == 0 || (q * (j + n)).rem_euclid(modulus) == 0
        }
        _ => false,
    }
}

/// `cos(2π r)` and `cos(2π r j/N)` for a circular parameter.
fn circular_cosines(param: &Parameter, j: u64, n: u64) -> (f64, f64) {
    match *param {
        Parameter::CircularRational { q, p } => {
            let (q, p) = (q as i128, p as i128);
            (
                cos_turns(rational_turns(q, p)),
                cos_turns(rational_turns(q * j as i128, p * n as i128)),
            )
        }
        Parameter::CircularReal { r } => (cos_turns(r), cos_turns(r * j as f64 / n as f64)),
        Parameter::Imaginary { .. } => unreachable!("circular_cosines on imaginary parameter"),
    }
}

/// `g(j) = 2cos(2πr) − 2cos(2πrj/N)`, or `2cosh(2πs) − 2cosh(2πsj/N)`.
pub fn g_factor(j: u64, param: &Parameter, n: u64) -> Result<f64> {
    check_index(j, n)?;
    if is_exact_zero(param, j, n) {
        return Ok(0.0);
    }
    Ok(match *param {
        Parameter::Imaginary { s } => {
            let a = 2.0 * std::f64::consts::PI * s;
            2.0 * a.cosh() - 2.0 * (a * j as f64 / n as f64).cosh()
        }
        _ => {
            let (c0, cj) = circular_cosines(param, j, n);
            2.0 * c0 - 2.0 * cj
        }
    })
}

/// The product form `4 sin(πrj/N + πr) sin(πrj/N − πr)`; an independent
/// route to `g(j)` for circular parameters.
pub fn g_factor_product_form(j: u64, param: &Parameter, n: u64) -> Result<f64> {
    check_index(j, n)?;
    if !param.is_circular() {
        return Err(Error::InvalidInput("product form is for circular parameters".into()));
    }
    let r = param.value();
    let x = std::f64::consts::PI * r * j as f64 / n as f64;
    let y = std::f64::consts::PI * r;
    Ok(4.0 * (x + y).sin() * (x - y).sin())
}

/// `ln|g(j)|`, overflow-free for large imaginary magnitudes.
fn log_abs_g(j: u64, param: &Parameter, n: u64) -> Result<(i8, f64)> {
    match *param {
        Parameter::Imaginary { s } => {
            // 2cosh a − 2cosh b = 4 sinh((a+b)/2) sinh((a−b)/2) with a ≥ b ≥ 0
            let a = 2.0 * std::f64::consts::PI * s;
            let b = a * j as f64 / n as f64;
            let u = 0.5 * (a + b);
            let v = 0.5 * (a - b);
            if v <= 0.0 {
                return Ok((0, f64::NEG_INFINITY));
            }
            Ok((1, 4f64.ln() + ln_sinh(u) + ln_sinh(v)))
        }
        _ => {
            let g = g_factor(j, param, n)?;
            if g == 0.0 {
                Ok((0, f64::NEG_INFINITY))
            } else {
                Ok((if g > 0.0 { 1 } else { -1 }, g.abs().ln()))
            }
        }
    }
}

fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Signs and log-magnitudes of `f(0..N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSequence {
    pub n: u64,
    /// Sign of `f(k)`: `+1`, `-1`, or `0`.
    pub sign: Vec<i8>,
    /// `ln|f(k)|`; `-inf` where `sign[k] == 0`.
    pub log_abs: Vec<f64>,
    /// First `k` with `f(k) = 0`; every later term vanishes too.
    pub zero_from: Option<u64>,
    /// Indices `j` whose factor `g(j)` is nonzero but below [`NEAR_ZERO`].
    pub near_zero: Vec<u64>,
}

/// Walk `(k, sign f(k), ln|f(k)|)` for `k = 0..N` without materialising.
pub(crate) fn for_each_term<F>(param: &Parameter, n: u64, mut visit: F) -> Result<(Option<u64>, Vec<u64>)>
where
    F: FnMut(u64, i8, f64),
{
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    visit(0, 1, 0.0);
    let mut sign: i8 = 1;
    let mut log = CompensatedSum::default();
    let mut zero_from = None;
    let mut near_zero = Vec::new();
    for k in 1..n {
        if zero_from.is_some() {
            visit(k, 0, f64::NEG_INFINITY);
            continue;
        }
        let (s, lg) = log_abs_g(k, param, n)?;
        if s == 0 {
            zero_from = Some(k);
            visit(k, 0, f64::NEG_INFINITY);
            continue;
        }
        if lg < NEAR_ZERO.ln() {
            near_zero.push(k);
        }
        sign *= s;
        log.add(lg);
        visit(k, sign, log.value());
    }
    Ok((zero_from, near_zero))
}

pub fn partial_products(param: &Parameter, n: u64) -> Result<TermSequence> {
    let cap = n as usize;
    let mut sign = Vec::with_capacity(cap);
    let mut log_abs = Vec::with_capacity(cap);
    let (zero_from, near_zero) = for_each_term(param, n, |_, s, l| {
        sign.push(s);
        log_abs.push(l);
    })?;
    Ok(TermSequence {
        n,
        sign,
        log_abs,
        zero_from,
        near_zero,
    })
}

/// Location and size of the largest `|f(k)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FMax {
    pub argmax: u64,
    /// `ln F_N`
    pub log_f_n: f64,
    /// Every `f(k)`, `k ≥ 1`, vanishes and the maximum is `f(0) = 1`.
    pub degenerate: bool,
}

/// Streaming maximum of `|f(k)|` over `0 ≤ k < N`; near-ties go to the
/// larger index, which lands on `⌊D⌋` when `g(⌊D⌋) = 1` exactly.
pub fn f_max(param: &Parameter, n: u64) -> Result<FMax> {
    let mut best = (0u64, 0.0f64);
    let (zero_from, _) = for_each_term(param, n, |k, s, l| {
        if s != 0 && l >= best.1 - TIE_LOG_TOL {
            best = (k, best.1.max(l));
        }
    })?;
    Ok(FMax {
        argmax: best.0,
        log_f_n: best.1,
        degenerate: zero_from == Some(1),
    })
}

/// `ln Σ_k f(k)` for an all-positive sequence (imaginary parameters),
/// by streaming log-sum-exp.
pub fn log_sum_positive(param: &Parameter, n: u64) -> Result<f64> {
    let mut max = f64::NEG_INFINITY;
    let mut acc = 0.0f64; // Σ exp(l - max)
    let mut neg = false;
    for_each_term(param, n, |_, s, l| {
        if s < 0 {
            neg = true;
        }
        if s == 0 {
            return;
        }
        if l > max {
            acc = acc * (max - l).exp() + 1.0;
            max = l;
        } else {
            acc += (l - max).exp();
        }
    })?;
    if neg {
        return Err(Error::InvalidInput(
            "log_sum_positive needs a sequence with no negative terms".into(),
        ));
    }
    Ok(max + acc.ln())
}
