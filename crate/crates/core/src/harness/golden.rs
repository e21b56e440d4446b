//! Reference values frozen from independent high-precision oracles
//! (`data/golden.json`, regenerated by `data/oracles.py`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Check, SuiteReport};
use crate::asymptotics::{appendix_dv, appendix_v, cone_manifold_volume, delta_gap, imaginary_growth, vhat};
use crate::error::{Error, Result};
use crate::evaluator::{f_max, jones_log_growth, jones_value, log_sum_positive, parse_parameter, Parameter};
use crate::special::{hyperbolic_gamma, lobachevsky, phi_hyperbolic, PrecisionConfig, Radians};

const GOLDEN_JSON: &str = include_str!("../../data/golden.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub name: String,
    pub function: String,
    pub args: Value,
    pub value: f64,
    pub tolerance: f64,
    /// How the reference value was produced.
    pub oracle: String,
}

#[derive(Deserialize)]
struct GoldenFile {
    entries: Vec<GoldenEntry>,
}

pub fn golden_entries() -> Result<Vec<GoldenEntry>> {
    serde_json::from_str::<GoldenFile>(GOLDEN_JSON)
        .map(|f| f.entries)
        .map_err(|e| Error::InvalidInput(format!("golden.json: {e}")))
}

fn num(args: &Value, key: &str) -> Result<f64> {
    args.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| Error::InvalidInput(format!("golden entry lacks numeric {key:?}")))
}

fn count(args: &Value) -> Result<u64> {
    args.get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidInput("golden entry lacks integer \"n\"".into()))
}

fn param(args: &Value) -> Result<Parameter> {
    let text = args
        .get("r")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("golden entry lacks parameter text \"r\"".into()))?;
    parse_parameter(text)
}

impl GoldenEntry {
    /// Recompute the entry with this library.
    pub fn evaluate(&self, cfg: &PrecisionConfig) -> Result<f64> {
        let a = &self.args;
        match self.function.as_str() {
            "lobachevsky" => lobachevsky(Radians::new(num(a, "x")?)?, cfg),
            "hyperbolic_gamma" => hyperbolic_gamma(num(a, "z")?, cfg),
            "phi_hyperbolic" => phi_hyperbolic(num(a, "s")?),
            "vhat" => vhat(num(a, "r")?, cfg).map(|g| g.vhat),
            "appendix_v" => appendix_v(num(a, "r")?, cfg),
            "appendix_dv" => appendix_dv(num(a, "r")?, cfg),
            "delta_gap" => delta_gap(num(a, "r")?, cfg),
            "cone_manifold_volume" => cone_manifold_volume(Radians::new(num(a, "angle")?)?, cfg),
            "imaginary_growth" => imaginary_growth(num(a, "s")?, cfg),
            "jones_value" => jones_value(&param(a)?, count(a)?, cfg).map(|e| e.value_f64()),
            "jones_log_growth" => jones_log_growth(&param(a)?, count(a)?, cfg),
            "product_growth" => {
                let n = count(a)?;
                f_max(&param(a)?, n).map(|m| 2.0 * PI * m.log_f_n / n as f64)
            }
            "imaginary_log_growth" => {
                let n = count(a)?;
                log_sum_positive(&Parameter::imaginary(num(a, "s")?)?, n).map(|l| l / n as f64)
            }
            other => Err(Error::InvalidInput(format!("unknown golden function {other:?}"))),
        }
    }
}

/// Recompute every golden entry and compare within its tolerance.
pub fn golden_suite(cfg: &PrecisionConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("golden");
    for e in golden_entries()? {
        let got = e.evaluate(cfg)?;
        rep.push(Check::at_most(
            format!("{}: |value - {:e}|", e.name, e.value),
            (got - e.value).abs(),
            e.tolerance,
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_file_parses() {
        let e = golden_entries().unwrap();
        assert!(e.len() >= 15);
        assert!(e.iter().all(|x| x.tolerance > 0.0 && !x.oracle.is_empty()));
    }

    #[test]
    fn cheap_entries_match() {
        let cfg = PrecisionConfig::default();
        for e in golden_entries().unwrap() {
            if e.args.get("n").and_then(Value::as_u64).unwrap_or(0) > 2000 {
                continue;
            }
            let got = e.evaluate(&cfg).unwrap();
            assert!((got - e.value).abs() <= e.tolerance, "{}: {got} vs {}", e.name, e.value);
        }
    }
}
