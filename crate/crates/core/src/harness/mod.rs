//! Experiments over the evaluator: growth scans and verification suites that
//! produce machine-readable reports.

mod appendix;
mod golden;
mod scan;
mod suites;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use appendix::{appendix_suite, continuity_check, special_suite, APPENDIX_SEED};
pub use golden::{golden_entries, golden_suite, GoldenEntry};
pub use scan::{growth_scan, imaginary_scan, ScanOptions, DEFAULT_FULL_SUM_CAP};
pub use suites::{
    imaginary_check, local_maxima, local_maxima_audit, sandwich_check, small_r_check,
    subsequence_analysis, SUBSEQUENCE_TOL,
};

/// Caveat attached to every report that uses real-kind parameters.
pub const REAL_KIND_NOTE: &str =
    "real-kind parameters are machine numbers standing in for irrational r";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// `ln|J_N|` from the multiprecision sum.
    FullSum,
    /// `ln F_N = max_k ln|f(k)|` from the double-precision log path.
    ProductOnly,
}

impl ScanMode {
    pub fn label(self) -> &'static str {
        match self {
            ScanMode::FullSum => "full-sum",
            ScanMode::ProductOnly => "product-only",
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Membership of `N` in the `q | N` split used for rational parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubseqClass {
    MultipleOfQ,
    NonMultiple,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl SubseqClass {
    pub fn label(self) -> &'static str {
        match self {
            SubseqClass::MultipleOfQ => "multiple-of-q",
            SubseqClass::NonMultiple => "non-multiple",
            SubseqClass::NotApplicable => "n/a",
        }
    }
}

impl fmt::Display for SubseqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One observation of a scan. A failed row carries `failure` and no values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub mode: ScanMode,
    /// `ln|J_N|` (full sum) or `ln F_N` (product only).
    pub log_abs: Option<f64>,
    /// `log_abs` normalised by the regime's growth scale.
    pub s_n: Option<f64>,
    pub prediction: Option<f64>,
    /// `|s_N − prediction|`
    pub abs_error: Option<f64>,
    pub subseq_class: SubseqClass,
    pub failure: Option<String>,
}

/// A single pass/fail line of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub passed: bool,
    pub measured: f64,
    /// `None` when the check has no numeric bound (or it is vacuous).
    pub bound: Option<f64>,
}

impl Check {
    pub fn new(description: impl Into<String>, passed: bool, measured: f64, bound: Option<f64>) -> Self {
        Check {
            description: description.into(),
            passed,
            measured,
            bound,
        }
    }

    /// `measured ≤ bound`
    pub fn at_most(description: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(description, measured <= bound, measured, Some(bound))
    }

    /// `measured > bound`
    pub fn above(description: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(description, measured > bound, measured, Some(bound))
    }

    /// `measured < bound`
    pub fn below(description: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(description, measured < bound, measured, Some(bound))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    /// Conjunction of every check.
    pub overall: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            checks: Vec::new(),
            notes: Vec::new(),
            overall: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.overall &= check.passed;
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Checks that failed.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}", self.suite, if self.overall { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {} (measured {:e}",
                if c.passed { "pass" } else { "FAIL" },
                c.description,
                c.measured
            )?;
            if let Some(b) = c.bound {
                write!(f, ", bound {b:e}")?;
            }
            writeln!(f, ")")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_is_conjunction() {
        let mut r = SuiteReport::new("t");
        assert!(r.overall);
        r.push(Check::at_most("a", 1.0, 2.0));
        assert!(r.overall);
        r.push(Check::below("b", 3.0, 2.0));
        assert!(!r.overall);
        assert_eq!(r.failures().count(), 1);
        r.push(Check::above("c", 3.0, 2.0));
        assert!(!r.overall);
    }

    #[test]
    fn labels_serialize() {
        assert_eq!(serde_json::to_string(&SubseqClass::NotApplicable).unwrap(), "\"n/a\"");
        assert_eq!(serde_json::to_string(&ScanMode::ProductOnly).unwrap(), "\"product-only\"");
    }
}
