use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation parameter.
///
/// Circular parameters evaluate at `t = exp(2πr√-1/N)`; imaginary ones at
/// `t = exp(2πs/N)` with `s = |r|`. Rational parameters are the only kind
/// for which exact zeros of the factors `g(j)` are recognised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Parameter {
    /// `r = q/p`, `gcd(|q|, p) = 1`, `p > 0`.
    CircularRational { q: i64, p: u64 },
    /// Inexact real `r ≥ 0`, treated as irrational for regime logic.
    CircularReal { r: f64 },
    /// Purely imaginary parameter with magnitude `s > 0`.
    Imaginary { s: f64 },
}

impl Parameter {
    /// `q/p` reduced to lowest terms.
    pub fn rational(q: i64, p: i64) -> Result<Self> {
        if p <= 0 {
            return Err(Error::InvalidInput(format!("denominator must be positive, got {p}")));
        }
        let g = q.gcd(&p);
        Ok(Parameter::CircularRational {
            q: q / g,
            p: (p / g) as u64,
        })
    }

    pub fn real(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidInput(format!("real parameter must be finite and >= 0, got {r}")));
        }
        Ok(Parameter::CircularReal { r })
    }

    pub fn imaginary(s: f64) -> Result<Self> {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "imaginary magnitude must be finite and > 0, got {s}"
            )));
        }
        Ok(Parameter::Imaginary { s })
    }

    /// `r` for circular kinds, `s` for the imaginary kind.
    pub fn value(&self) -> f64 {
        match *self {
            Parameter::CircularRational { q, p } => q as f64 / p as f64,
            Parameter::CircularReal { r } => r,
            Parameter::Imaginary { s } => s,
        }
    }

    pub fn is_circular(&self) -> bool {
        !matches!(self, Parameter::Imaginary { .. })
    }

    pub fn kind_label(&self) -> &'static str {
        match self {
            Parameter::CircularRational { .. } => "rational",
            Parameter::CircularReal { .. } => "real",
            Parameter::Imaginary { .. } => "imaginary",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Parameter::CircularRational { q, p } => write!(f, "{q}/{p}"),
            Parameter::CircularReal { r } => write!(f, "{r:?}"),
            Parameter::Imaginary { s } => write!(f, "i{s:?}"),
        }
    }
}

/// Parse `"0.9"` (real), `"9/10"` (rational, reduced), `"i0.5"` / `"0.5i"`
/// (imaginary).
pub fn parse_parameter(text: &str) -> Result<Parameter> {
    let err = |position: usize, message: String| Error::Parse { position, message };
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(err(0, "empty parameter".into()));
    }

    if let Some(rest) = body.strip_prefix('i') {
        let s = parse_decimal(rest, lead + 1)?;
        return Parameter::imaginary(s).map_err(|e| err(lead + 1, e.to_string()));
    }
    if let Some(rest) = body.strip_suffix('i') {
        let s = parse_decimal(rest, lead)?;
        return Parameter::imaginary(s).map_err(|e| err(lead, e.to_string()));
    }
    if let Some(slash) = body.find('/') {
        let (num, den) = (&body[..slash], &body[slash + 1..]);
        let q: i64 = num
            .trim()
            .parse()
            .map_err(|_| err(lead, format!("numerator {num:?} is not an integer")))?;
        let den_pos = lead + slash + 1;
        let p: i64 = den
            .trim()
            .parse()
            .map_err(|_| err(den_pos, format!("denominator {den:?} is not an integer")))?;
        if p == 0 {
            return Err(err(den_pos, "denominator is zero".into()));
        }
        if p < 0 {
            return Err(err(den_pos, "denominator must be positive".into()));
        }
        return Parameter::rational(q, p);
    }
    let r = parse_decimal(body, lead)?;
    Parameter::real(r).map_err(|e| err(lead, e.to_string()))
}

fn parse_decimal(text: &str, position: usize) -> Result<f64> {
    let ok = !text.is_empty()
        && text
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    match text.parse::<f64>() {
        Ok(v) if ok && v.is_finite() => Ok(v),
        _ => {
            let bad = text
                .char_indices()
                .find(|(_, c)| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
                .map_or(0, |(i, _)| i);
            Err(Error::Parse {
                position: position + bad,
                message: format!("{text:?} is not a decimal number"),
            })
        }
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_parameter(s)
    }
}
