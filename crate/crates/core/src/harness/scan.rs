use rayon::prelude::*;

use super::{ScanMode, ScanRow, SubseqClass};
use crate::asymptotics::{classify_with, Regime, RegimeTag};
use crate::error::{Error, Result};
use crate::evaluator::{f_max, jones_value, log_sum_positive, Parameter};
use crate::special::PrecisionConfig;

/// Largest `N` a full-sum scan evaluates unless the cap is lifted.
pub const DEFAULT_FULL_SUM_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// `None` lifts the cap.
    pub full_sum_cap: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            full_sum_cap: Some(DEFAULT_FULL_SUM_CAP),
        }
    }
}

pub(crate) fn subseq_class(param: &Parameter, regime: &Regime, n: u64) -> SubseqClass {
    match (*param, regime.tag) {
        (Parameter::CircularRational { q, .. }, RegimeTag::MainRational) => {
            if n.is_multiple_of(q.unsigned_abs()) {
                SubseqClass::MultipleOfQ
            } else {
                SubseqClass::NonMultiple
            }
        }
        _ => SubseqClass::NotApplicable,
    }
}

/// `ln|J_N|`: log-sum-exp for imaginary parameters (every term is
/// positive), the multiprecision sum otherwise.
pub(crate) fn log_abs_jones(param: &Parameter, n: u64, cfg: &PrecisionConfig) -> Result<f64> {
    if !param.is_circular() {
        return log_sum_positive(param, n);
    }
    let ev = jones_value(param, n, cfg)?;
    if ev.value.is_zero() {
        return Err(Error::UndefinedGrowth { n });
    }
    Ok(ev.log_abs)
}

fn scan_row(
    param: &Parameter,
    regime: &Regime,
    n: u64,
    mode: ScanMode,
    cfg: &PrecisionConfig,
    opts: &ScanOptions,
) -> ScanRow {
    let mut row = ScanRow {
        n,
        mode,
        log_abs: None,
        s_n: None,
        prediction: regime.prediction(),
        abs_error: None,
        subseq_class: subseq_class(param, regime, n),
        failure: None,
    };
    let log = match mode {
        ScanMode::ProductOnly => f_max(param, n).map(|m| m.log_f_n),
        ScanMode::FullSum => match opts.full_sum_cap {
            Some(cap) if n > cap && param.is_circular() => Err(Error::InvalidInput(format!(
                "N = {n} exceeds the full-sum cap {cap}; lift the cap to evaluate"
            ))),
            _ => log_abs_jones(param, n, cfg),
        },
    };
    match log {
        Ok(l) => {
            let s = regime.scale.apply(l, n);
            row.log_abs = Some(l);
            row.s_n = Some(s);
            row.abs_error = row.prediction.map(|p| (s - p).abs());
        }
        Err(e) => row.failure = Some(e.to_string()),
    }
    row
}

/// One row per `N`, computed in parallel and returned in `N` order.
pub fn growth_scan(
    param: &Parameter,
    n_list: &[u64],
    mode: ScanMode,
    cfg: &PrecisionConfig,
    opts: &ScanOptions,
) -> Result<Vec<ScanRow>> {
    if n_list.is_empty() {
        return Err(Error::InvalidInput("empty N list".into()));
    }
    if n_list[0] == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("N list must be strictly increasing".into()));
    }
    let regime = classify_with(param, cfg);
    Ok(n_list
        .par_iter()
        .map(|&n| scan_row(param, &regime, n, mode, cfg, opts))
        .collect())
}

/// Scan `ln J_N / N` for the imaginary parameter of magnitude `s`.
pub fn imaginary_scan(s: f64, n_list: &[u64], cfg: &PrecisionConfig) -> Result<Vec<ScanRow>> {
    let param = Parameter::imaginary(s)?;
    growth_scan(&param, n_list, ScanMode::FullSum, cfg, &ScanOptions::default())
}
