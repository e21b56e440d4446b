//! Critical indices where `g(j)` crosses `-1`, `0` or `+1`, and the band
//! table they induce.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{g_factor, is_exact_zero, Parameter};
use crate::error::{Error, Result};
use crate::special::{phi, theta};

/// A real threshold and its mathematical floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: f64,
    pub floor: i64,
}

impl Threshold {
    fn new(value: f64) -> Self {
        Threshold {
            value,
            floor: value.floor() as i64,
        }
    }
}

/// `A, B, C, D, B′, A′, A″` for one `(r, N)`; an index is present when its
/// angle is defined and its value lies in `[0, N)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CriticalIndices {
    pub a: Option<Threshold>,
    pub b: Option<Threshold>,
    pub c: Option<Threshold>,
    pub d: Option<Threshold>,
    pub b_prime: Option<Threshold>,
    pub a_prime: Option<Threshold>,
    pub a_double_prime: Option<Threshold>,
    /// Why angle-dependent indices are missing, if any are.
    pub notes: Vec<String>,
}

impl CriticalIndices {
    /// Present indices in increasing order, labelled.
    pub fn ordered(&self) -> Vec<(IndexName, Threshold)> {
        let mut v: Vec<(IndexName, Threshold)> = IndexName::ALL
            .iter()
            .filter_map(|&name| self.get(name).map(|t| (name, t)))
            .collect();
        v.sort_by(|x, y| x.1.value.total_cmp(&y.1.value));
        v
    }

    pub fn get(&self, name: IndexName) -> Option<Threshold> {
        match name {
            IndexName::A => self.a,
            IndexName::B => self.b,
            IndexName::C => self.c,
            IndexName::D => self.d,
            IndexName::BPrime => self.b_prime,
            IndexName::APrime => self.a_prime,
            IndexName::ADoublePrime => self.a_double_prime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexName {
    A,
    B,
    C,
    D,
    BPrime,
    APrime,
    ADoublePrime,
}

impl IndexName {
    pub const ALL: [IndexName; 7] = [
        IndexName::A,
        IndexName::B,
        IndexName::C,
        IndexName::D,
        IndexName::BPrime,
        IndexName::APrime,
        IndexName::ADoublePrime,
    ];
}

impl fmt::Display for IndexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexName::A => "A",
            IndexName::B => "B",
            IndexName::C => "C",
            IndexName::D => "D",
            IndexName::BPrime => "B'",
            IndexName::APrime => "A'",
            IndexName::ADoublePrime => "A''",
        })
    }
}

pub fn critical_indices(param: &Parameter, n: u64) -> Result<CriticalIndices> {
    if !param.is_circular() {
        return Err(Error::RegimeMismatch(
            "critical indices are defined for circular parameters only".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let r = param.value();
    let mut out = CriticalIndices::default();
    if r <= 0.0 {
        out.notes.push("r <= 0: no thresholds".into());
        return Ok(out);
    }
    let nf = n as f64;
    let keep = |x: f64| (0.0..nf).contains(&x).then(|| Threshold::new(x));
    let scale = nf / (2.0 * PI * r);

    out.b = keep(nf * (1.0 - r).abs() / r);
    out.b_prime = keep(nf * (2.0 - r) / r);
    match theta(r) {
        Ok(t) => {
            out.c = keep(scale * t.value());
            out.d = keep(scale * (2.0 * PI - t.value()));
        }
        Err(e) => out.notes.push(format!("C, D undefined: {e}")),
    }
    match phi(r) {
        Ok(p) => {
            out.a = keep(scale * p.value());
            out.a_prime = keep(scale * (2.0 * PI - p.value()));
            out.a_double_prime = keep(scale * (2.0 * PI + p.value()));
        }
        Err(e) => out.notes.push(format!("A, A', A'' undefined: {e}")),
    }
    Ok(out)
}

/// Open interval a factor `g(j)` must lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Band {
    /// `g < -1`
    BelowMinusOne,
    /// `-1 < g < 0`
    MinusOneToZero,
    /// `0 < g < 1`
    ZeroToOne,
    /// `g > 1`
    AboveOne,
}

impl Band {
    fn bounds(self) -> (f64, f64) {
        match self {
            Band::BelowMinusOne => (f64::NEG_INFINITY, -1.0),
            Band::MinusOneToZero => (-1.0, 0.0),
            Band::ZeroToOne => (0.0, 1.0),
            Band::AboveOne => (1.0, f64::INFINITY),
        }
    }

    fn contains(self, g: f64, slack: f64) -> bool {
        let (lo, hi) = self.bounds();
        g >= lo - slack && g <= hi + slack
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Band::BelowMinusOne => "g < -1",
            Band::MinusOneToZero => "-1 < g < 0",
            Band::ZeroToOne => "0 < g < 1",
            Band::AboveOne => "g > 1",
        })
    }
}

/// Slack on band edges, absorbing rounding when `j` sits on a threshold.
pub const BAND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub j: u64,
    pub g: f64,
    pub expected: Band,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignTableReport {
    pub parameter: Parameter,
    pub n: u64,
    pub passed: bool,
    /// `(start index, band)` rows of the table, in order.
    pub table: Vec<(String, Band)>,
    pub checked: u64,
    /// Indices with `g(j) = 0` exactly (rational parameters only).
    pub exact_zeros: Vec<u64>,
    pub first_violation: Option<Violation>,
}

/// The band rows in force for `r`, each starting at the named index.
fn band_table(r: f64) -> Option<Vec<(Option<IndexName>, Band)>> {
    use Band::*;
    use IndexName::*;
    let common = [
        (Some(B), ZeroToOne),
        (Some(C), AboveOne),
        (Some(D), ZeroToOne),
    ];
    let mut rows = Vec::new();
    let near_low = r > 0.75 && r <= 5.0 / 6.0;
    let main_low = r > 5.0 / 6.0 && r <= 1.0;
    let main_high = r > 1.0 && r < 7.0 / 6.0;
    let near_high = (7.0 / 6.0..1.25).contains(&r);
    if near_low || near_high {
        rows.push((None, BelowMinusOne));
        rows.push((Some(A), MinusOneToZero));
    } else if main_low || main_high {
        rows.push((None, MinusOneToZero));
    } else {
        return None;
    }
    rows.extend(common);
    if main_high || near_high {
        rows.push((Some(BPrime), MinusOneToZero));
    }
    if near_high {
        rows.push((Some(APrime), BelowMinusOne));
        rows.push((Some(ADoublePrime), MinusOneToZero));
    }
    Some(rows)
}

/// Check every `0 < j < N` against the band table for `r ∈ (3/4, 5/4)`.
pub fn sign_table_check(param: &Parameter, n: u64) -> Result<SignTableReport> {
    let r = param.value();
    let rows = match (param.is_circular(), band_table(r)) {
        (true, Some(rows)) => rows,
        _ => {
            return Err(Error::RegimeMismatch(format!(
                "sign table needs a circular parameter with 3/4 < r < 5/4, got {param}"
            )))
        }
    };
    let idx = critical_indices(param, n)?;
    // Resolve each row's start; rows whose index is absent are dropped.
    let mut starts: Vec<(f64, Band, String)> = Vec::new();
    for (name, band) in rows {
        match name {
            None => starts.push((0.0, band, "0".into())),
            Some(name) => {
                if let Some(t) = idx.get(name) {
                    starts.push((t.value, band, name.to_string()));
                }
            }
        }
    }
    let mut report = SignTableReport {
        parameter: *param,
        n,
        passed: true,
        table: starts.iter().map(|(_, b, s)| (s.clone(), *b)).collect(),
        checked: 0,
        exact_zeros: Vec::new(),
        first_violation: None,
    };
    for j in 1..n {
        let x = j as f64;
        let row = starts.iter().rposition(|(s, _, _)| *s <= x).unwrap_or(0);
        let band = starts[row].1;
        let g = g_factor(j, param, n)?;
        if is_exact_zero(param, j, n) {
            report.exact_zeros.push(j);
        }
        report.checked += 1;
        // On a threshold either neighbouring closed band is acceptable.
        let on_edge = starts
            .iter()
            .enumerate()
            .find(|(_, (s, _, _))| (x - s).abs() <= BAND_SLACK * n as f64)
            .map(|(i, _)| i);
        let ok = band.contains(g, BAND_SLACK)
            || on_edge.is_some_and(|i| i > 0 && starts[i - 1].1.contains(g, BAND_SLACK));
        if !ok && report.first_violation.is_none() {
            report.passed = false;
            report.first_violation = Some(Violation { j, g, expected: band });
        }
    }
    Ok(report)
}
