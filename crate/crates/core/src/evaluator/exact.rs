//! The sum `J_N = Σ f(k)` at a caller-chosen significand width.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};

use super::{is_exact_zero, Parameter};
use crate::error::{Error, Result};
use crate::mp::{f64_to_dyadic, FixedTrig, MpFloat};
use crate::special::PrecisionConfig;

/// Largest binary exponent the evaluator will let a term reach.
const EXPONENT_LIMIT: f64 = (1u64 << 60) as f64;

/// Bits carried by the fixed-point factors beyond the significand width.
const FACTOR_GUARD: u32 = 32;

/// Result of a multiprecision evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct JonesEvaluation {
    pub value: MpFloat,
    /// `ln|value|`; `-inf` if the sum vanished.
    pub log_abs: f64,
    pub n: u64,
    pub parameter: Parameter,
    pub precision_bits_used: u32,
}

impl JonesEvaluation {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Exact argument `num/den` turns (a circular or hyperbolic angle over 2π).
fn turns(param: &Parameter, j: u64, n: u64) -> (BigInt, BigUint) {
    match *param {
        Parameter::CircularRational { q, p } => (
            BigInt::from(q) * BigInt::from(j),
            BigUint::from(p) * BigUint::from(n),
        ),
        Parameter::CircularReal { r: x } | Parameter::Imaginary { s: x } => {
            let (m, e) = f64_to_dyadic(x);
            let num = m * BigInt::from(j);
            if e >= 0 {
                (num << e as u64, BigUint::from(n))
            } else {
                (num, BigUint::from(n) << (-e) as u64)
            }
        }
    }
}

/// Streams `g(j)` as fixed-point integers at scale `2^frac_bits`.
struct FactorSource {
    param: Parameter,
    n: u64,
    trig: FixedTrig,
    /// `2cos(2πr)` or `2cosh(2πs)`, fixed point.
    twice_base: BigInt,
}

impl FactorSource {
    fn new(param: &Parameter, n: u64, frac_bits: u32) -> Self {
        let trig = FixedTrig::new(frac_bits);
        let (num, den) = turns(param, n, n);
        let base = Self::kernel(&trig, param, &num, &den);
        FactorSource {
            param: *param,
            n,
            trig,
            twice_base: base * 2,
        }
    }

    fn kernel(trig: &FixedTrig, param: &Parameter, num: &BigInt, den: &BigUint) -> BigInt {
        if param.is_circular() {
            trig.cos_turns(num, den)
        } else {
            trig.cosh_turns(num, den)
        }
    }

    fn g(&self, j: u64) -> BigInt {
        if is_exact_zero(&self.param, j, self.n) {
            return BigInt::from(0);
        }
        let (num, den) = turns(&self.param, j, self.n);
        &self.twice_base - Self::kernel(&self.trig, &self.param, &num, &den) * 2
    }
}

/// Binary exponent needed by the largest term, `N · log2 max|g|`.
fn exponent_budget(param: &Parameter, n: u64) -> f64 {
    let max_g = match *param {
        Parameter::Imaginary { s } => {
            // 2cosh a − 2 = 4 sinh²(a/2)
            let a = 2.0 * PI * s;
            2.0 * std::f64::consts::LN_2 + 2.0 * (a / 2.0).sinh().ln()
        }
        _ => 4f64.ln(),
    };
    64.0 + n as f64 * max_g.max(0.0) / std::f64::consts::LN_2
}

fn check_inputs(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if cfg.working_bits < 53 {
        return Err(Error::InvalidInput("working_bits must be at least 53".into()));
    }
    let budget = exponent_budget(param, n);
    if !(budget < EXPONENT_LIMIT) {
        return Err(Error::Precision(format!(
            "terms need about 2^{budget:.3e} of exponent range, beyond the 2^60 budget; \
             reduce N or the parameter magnitude"
        )));
    }
    Ok(())
}

/// Visit `(k, f(k))` for `k = 0..N` at `bits` significand bits.
pub fn for_each_term_mp<F>(param: &Parameter, n: u64, cfg: &PrecisionConfig, mut visit: F) -> Result<()>
where
    F: FnMut(u64, &MpFloat),
{
    check_inputs(param, n, cfg)?;
    let bits = cfg.working_bits;
    let frac = bits + FACTOR_GUARD;
    let source = FactorSource::new(param, n, frac);
    let mut f = MpFloat::one();
    visit(0, &f);
    for k in 1..n {
        if !f.is_zero() {
            let g = MpFloat::from_fixed(&source.g(k), frac, bits + FACTOR_GUARD);
            f = f.mul(&g, bits);
        }
        visit(k, &f);
    }
    Ok(())
}

/// `f(0..N)` at working precision.
pub fn partial_products_mp(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<Vec<MpFloat>> {
    let mut out = Vec::with_capacity(n as usize);
    for_each_term_mp(param, n, cfg, |_, f| out.push(f.clone()))?;
    Ok(out)
}

/// `J_N = Σ_{k<N} f(k)`, each `f(k)` accumulated multiplicatively.
pub fn jones_value(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<JonesEvaluation> {
    let bits = cfg.working_bits;
    let mut sum = MpFloat::zero();
    for_each_term_mp(param, n, cfg, |_, f| {
        sum = sum.add(f, bits);
    })?;
    Ok(JonesEvaluation {
        log_abs: sum.ln_abs(),
        value: sum,
        n,
        parameter: *param,
        precision_bits_used: bits,
    })
}

/// `2π · ln|J_N| / N`.
pub fn jones_log_growth(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<f64> {
    let ev = jones_value(param, n, cfg)?;
    if ev.value.is_zero() {
        return Err(Error::UndefinedGrowth { n });
    }
    Ok(2.0 * PI * ev.log_abs / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{g_factor, partial_products};

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn small_values_at_r1() {
        let one = Parameter::real(1.0).unwrap();
        for (n, v) in [(1, 1.0), (2, 5.0), (3, 13.0), (4, 27.0)] {
            let ev = jones_value(&one, n, &cfg()).unwrap();
            assert!((ev.value_f64() - v).abs() < 1e-30, "N={n}: {:?}", ev.value);
        }
        let rat = Parameter::rational(1, 1).unwrap();
        assert_eq!(jones_value(&rat, 3, &cfg()).unwrap().value_f64(), 13.0);
    }

    #[test]
    fn zero_parameter_gives_one() {
        for p in [Parameter::rational(0, 1).unwrap(), Parameter::real(0.0).unwrap()] {
            let ev = jones_value(&p, 17, &cfg()).unwrap();
            assert_eq!(ev.value, MpFloat::one());
            assert_eq!(jones_log_growth(&p, 10, &cfg()).unwrap(), 0.0);
        }
    }

    #[test]
    fn growth_at_two() {
        let g = jones_log_growth(&Parameter::real(1.0).unwrap(), 2, &cfg()).unwrap();
        assert!((g - PI * 5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn factors_agree_with_double_path() {
        for p in [
            Parameter::rational(9, 10).unwrap(),
            Parameter::real(0.93).unwrap(),
            Parameter::imaginary(0.4).unwrap(),
        ] {
            let n = 37;
            let src = FactorSource::new(&p, n, 160);
            for j in 0..=n {
                let mp = MpFloat::from_fixed(&src.g(j), 160, 128).to_f64();
                let d = g_factor(j, &p, n).unwrap();
                assert!((mp - d).abs() < 1e-12 * (1.0 + d.abs()), "{p} j={j}: {mp} vs {d}");
            }
        }
    }

    #[test]
    fn terms_agree_with_log_path() {
        let p = Parameter::real(0.97).unwrap();
        let t = partial_products(&p, 300).unwrap();
        let mp = partial_products_mp(&p, 300, &cfg()).unwrap();
        for k in 0..300 {
            assert_eq!(mp[k].signum(), t.sign[k]);
            assert!((mp[k].ln_abs() - t.log_abs[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_zero_n_and_huge_budget() {
        assert!(jones_value(&Parameter::real(1.0).unwrap(), 0, &cfg()).is_err());
        let big = Parameter::imaginary(1e300).unwrap();
        assert!(matches!(jones_value(&big, 10, &cfg()), Err(Error::Precision(_))));
    }
}
