//! Argument handling, dispatch and output formatting for the `fig8` binary.

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fig8_jones::asymptotics::{classify_with, vhat, GrowthScale};
use fig8_jones::evaluator::{jones_value, sign_table_check};
use fig8_jones::harness::{
    appendix_suite, continuity_check, golden_suite, growth_scan, imaginary_check, imaginary_scan,
    local_maxima_audit, sandwich_check, small_r_check, special_suite, subsequence_analysis, ScanMode,
    ScanOptions, ScanRow, SuiteReport,
};
use fig8_jones::{parse_parameter, Parameter, PrecisionConfig};
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "fig8", version, about = "Colored Jones growth of the figure-eight knot")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Working precision of the multiprecision path, in bits.
    #[arg(long, global = true, env = "FIG8_PRECISION_BITS", default_value_t = PrecisionConfig::DEFAULT_BITS)]
    pub bits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate J_N at one parameter.
    Eval {
        /// Parameter: `0.9`, `9/10`, `i0.5` or `0.5i`.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Report the regime and predicted growth rate.
    Predict {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Growth rates over a list of N.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// `1000`, `10,20,30`, `a:b:step` or `a:b:xfactor`; items may be mixed.
        #[arg(long = "N")]
        n: String,
        #[arg(long, value_enum, default_value_t = Mode::FullSum)]
        mode: Mode,
        /// Allow full sums above the default size cap.
        #[arg(long)]
        no_cap: bool,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Parameter for suites that take one (each has a default).
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long = "N")]
        n: Option<u64>,
        /// Probe indices for the subsequence suite.
        #[arg(long, value_delimiter = ',')]
        probes: Vec<u64>,
        /// Tolerance for the imaginary suite.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Check the signs of the factors g(j) against the band table.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Scan an imaginary parameter i·s.
    Imaginary {
        #[arg(long)]
        s: f64,
        #[arg(long = "N")]
        n: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    FullSum,
    ProductOnly,
}

impl From<Mode> for ScanMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::FullSum => ScanMode::FullSum,
            Mode::ProductOnly => ScanMode::ProductOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Special,
    Sandwich,
    Subsequence,
    SmallR,
    LocalMaxima,
    Imaginary,
    Golden,
    Continuity,
    All,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] fig8_jones::Error),
    #[error("invalid N specification {spec:?}: {reason}")]
    NSpec { spec: String, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{failed} of {total} rows could not be evaluated")]
    RowsFailed { failed: usize, total: usize },
}

/// Outcome of a successful dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ChecksFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ChecksFailed => 1,
        }
    }
}

/// Exit code for errors: invalid input, domain and regime errors alike.
pub const ERROR_EXIT: u8 = 2;

fn parse_count(text: &str, spec: &str) -> Result<u64, CliError> {
    let bad = |reason: String| CliError::NSpec {
        spec: spec.to_string(),
        reason,
    };
    let t = text.trim();
    if let Ok(n) = t.parse::<u64>() {
        return Ok(n);
    }
    // accept scientific notation such as 1e6 when it names an integer
    match t.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63) => Ok(x as u64),
        _ => Err(bad(format!("{t:?} is not a non-negative integer"))),
    }
}

/// Expand an N specification into a strictly increasing list.
pub fn parse_n_list(spec: &str) -> Result<Vec<u64>, CliError> {
    let bad = |reason: &str| CliError::NSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let mut out = Vec::new();
    for item in spec.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(parse_count(one, spec)?),
            [a, b, step] => {
                let (a, b) = (parse_count(a, spec)?, parse_count(b, spec)?);
                if let Some(factor) = step.trim().strip_prefix('x') {
                    let f: f64 = factor.parse().map_err(|_| bad("geometric factor is not a number"))?;
                    if !(f > 1.0) || a == 0 {
                        return Err(bad("geometric ladder needs factor > 1 and a start >= 1"));
                    }
                    let mut x = a as f64;
                    while x.round() as u64 <= b {
                        out.push(x.round() as u64);
                        x *= f;
                    }
                } else {
                    let step = parse_count(step, spec)?;
                    if step == 0 {
                        return Err(bad("step must be positive"));
                    }
                    out.extend((a..=b).step_by(step as usize));
                }
            }
            _ => return Err(bad("expected N, a:b:step or a:b:xfactor")),
        }
    }
    out.dedup();
    if out.is_empty() {
        return Err(bad("no values"));
    }
    Ok(out)
}

/// A scan row flattened for CSV and JSON output.
#[derive(Debug, Serialize)]
struct OutRow {
    #[serde(rename = "N")]
    n: u64,
    r_kind: &'static str,
    r: String,
    mode: &'static str,
    log_abs: Option<f64>,
    #[serde(rename = "s_N")]
    s_n: Option<f64>,
    prediction: Option<f64>,
    abs_error: Option<f64>,
    subseq_class: &'static str,
}

impl OutRow {
    fn new(p: &Parameter, row: &ScanRow) -> Self {
        OutRow {
            n: row.n,
            r_kind: p.kind_label(),
            r: parameter_text(p),
            mode: row.mode.label(),
            log_abs: row.log_abs,
            s_n: row.s_n,
            prediction: row.prediction,
            abs_error: row.abs_error,
            subseq_class: row.subseq_class.label(),
        }
    }
}

fn parameter_text(p: &Parameter) -> String {
    match *p {
        Parameter::CircularRational { q, p } => format!("{q}/{p}"),
        Parameter::CircularReal { r } => format!("{r:?}"),
        Parameter::Imaginary { s } => format!("{s:?}"),
    }
}

fn meta(p: Option<&Parameter>, cfg: &PrecisionConfig) -> Value {
    match p {
        Some(p) => json!({
            "parameter": p.to_string(),
            "regime": classify_with(p, cfg).tag.label(),
            "version": VERSION,
        }),
        None => json!({ "parameter": null, "regime": null, "version": VERSION }),
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:?}"))
}

/// Top-level JSON object: `meta`, `rows`, then any extra sections.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize + ?Sized> {
    meta: Value,
    rows: &'a T,
    #[serde(flatten)]
    extra: serde_json::Map<String, Value>,
}

impl<'a, T: Serialize + ?Sized> Envelope<'a, T> {
    fn new(meta: Value, rows: &'a T) -> Self {
        Envelope {
            meta,
            rows,
            extra: serde_json::Map::new(),
        }
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.extra.insert(key.to_string(), v);
        self
    }
}

struct Emitter<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Emitter<'_> {
    fn json<T: Serialize + ?Sized>(&mut self, v: &T) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *self.out, v)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn csv<T: Serialize>(&mut self, rows: &[T]) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(&mut *self.out);
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    fn scan(&mut self, p: &Parameter, rows: &[ScanRow], cfg: &PrecisionConfig) -> Result<(), CliError> {
        let flat: Vec<OutRow> = rows.iter().map(|r| OutRow::new(p, r)).collect();
        match self.format {
            Format::Csv => self.csv(&flat),
            Format::Json => self.json(&Envelope::new(meta(Some(p), cfg), &flat)),
            Format::Text => {
                writeln!(self.out, "{p} ({})", classify_with(p, cfg).tag)?;
                for (row, f) in rows.iter().zip(&flat) {
                    write!(
                        self.out,
                        "N={:<8} {:<12} log_abs={:<22} s_N={:<22} prediction={:<20} abs_error={:<22} {}",
                        f.n,
                        f.mode,
                        fmt_opt(f.log_abs),
                        fmt_opt(f.s_n),
                        fmt_opt(f.prediction),
                        fmt_opt(f.abs_error),
                        f.subseq_class
                    )?;
                    match &row.failure {
                        Some(msg) => writeln!(self.out, " FAILED: {msg}")?,
                        None => writeln!(self.out)?,
                    }
                }
                Ok(())
            }
        }
    }

    fn reports(&mut self, reports: &[SuiteReport], cfg: &PrecisionConfig) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct CheckRow<'a> {
            suite: &'a str,
            description: &'a str,
            passed: bool,
            measured: f64,
            bound: Option<f64>,
        }
        let rows: Vec<CheckRow> = reports
            .iter()
            .flat_map(|rep| {
                rep.checks.iter().map(move |c| CheckRow {
                    suite: &rep.suite,
                    description: &c.description,
                    passed: c.passed,
                    measured: c.measured,
                    bound: c.bound,
                })
            })
            .collect();
        match self.format {
            Format::Csv => self.csv(&rows),
            Format::Json => {
                let notes: Vec<Value> = reports.iter().map(|r| json!({ "suite": r.suite, "notes": r.notes, "overall": r.overall })).collect();
                self.json(&Envelope::new(meta(None, cfg), &rows).with("suites", Value::from(notes)))
            }
            Format::Text => {
                for rep in reports {
                    writeln!(self.out, "{rep}")?;
                }
                Ok(())
            }
        }
    }
}

fn default_param(r: &Option<String>, fallback: &str) -> Result<Parameter, CliError> {
    Ok(parse_parameter(r.as_deref().unwrap_or(fallback))?)
}

fn suite_reports(
    suite: Suite,
    r: &Option<String>,
    n: Option<u64>,
    probes: &[u64],
    tol: f64,
    cfg: &PrecisionConfig,
) -> Result<Vec<SuiteReport>, CliError> {
    Ok(match suite {
        Suite::Appendix => vec![appendix_suite(cfg)?],
        Suite::Special => vec![special_suite(cfg)?],
        Suite::Golden => vec![golden_suite(cfg)?],
        Suite::Continuity => vec![continuity_check(cfg)?],
        Suite::Sandwich => vec![sandwich_check(&default_param(r, "1")?, n.unwrap_or(1000), cfg)?],
        Suite::Subsequence => {
            let probes = if probes.is_empty() { &[91, 901][..] } else { probes };
            vec![subsequence_analysis(&default_param(r, "9/10")?, n.unwrap_or(900), probes, cfg)?]
        }
        Suite::SmallR => vec![small_r_check(&default_param(r, "0.1")?, n.unwrap_or(1000), cfg)?],
        Suite::LocalMaxima => match r {
            Some(_) => vec![local_maxima_audit(&default_param(r, "")?, n.unwrap_or(2000), cfg)?],
            None => ["0.8", "1.2"]
                .iter()
                .map(|t| local_maxima_audit(&parse_parameter(t)?, n.unwrap_or(2000), cfg))
                .collect::<Result<_, _>>()?,
        },
        Suite::Imaginary => {
            let s = match r {
                Some(t) => match parse_parameter(t)? {
                    Parameter::Imaginary { s } => s,
                    other => {
                        return Err(fig8_jones::Error::RegimeMismatch(format!(
                            "imaginary suite needs an imaginary parameter, got {other}"
                        ))
                        .into())
                    }
                },
                None => 1.0,
            };
            vec![imaginary_check(s, n.unwrap_or(100_000), tol, cfg)?]
        }
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Appendix,
                Suite::Special,
                Suite::Continuity,
                Suite::Golden,
                Suite::Sandwich,
                Suite::Subsequence,
                Suite::SmallR,
                Suite::LocalMaxima,
                Suite::Imaginary,
            ] {
                all.extend(suite_reports(s, &None, None, &[], tol, cfg)?);
            }
            all
        }
    })
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::ChecksFailed => "checks failed",
        })
    }
}

/// Run one command, writing to `--output` or to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let cfg = PrecisionConfig::default().with_bits(cli.common.bits)?;
    match &cli.common.output {
        Some(path) => {
            let mut file = io::BufWriter::new(File::create(path)?);
            let status = dispatch(&cli.command, &cfg, cli.common.format, &mut file)?;
            file.flush()?;
            Ok(status)
        }
        None => dispatch(&cli.command, &cfg, cli.common.format, stdout),
    }
}

fn dispatch(cmd: &Command, cfg: &PrecisionConfig, format: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    let mut em = Emitter { format, out };
    match cmd {
        Command::Eval { r, n } => {
            let p = parse_parameter(r)?;
            let ev = jones_value(&p, *n, cfg)?;
            let v = ev.value_f64();
            let value = v.is_finite().then_some(v);
            let s_n = classify_with(&p, cfg).scale.apply(ev.log_abs, *n);
            let s_n = s_n.is_finite().then_some(s_n);
            let log_abs = ev.log_abs.is_finite().then_some(ev.log_abs);
            #[derive(Serialize)]
            struct EvalRow {
                #[serde(rename = "N")]
                n: u64,
                r_kind: &'static str,
                r: String,
                value: Option<f64>,
                sign: i8,
                log_abs: Option<f64>,
                #[serde(rename = "s_N")]
                s_n: Option<f64>,
                bits: u32,
            }
            let row = EvalRow {
                n: *n,
                r_kind: p.kind_label(),
                r: parameter_text(&p),
                value,
                sign: ev.value.signum(),
                log_abs,
                s_n,
                bits: ev.precision_bits_used,
            };
            match format {
                Format::Csv => em.csv(&[row])?,
                Format::Json => em.json(&Envelope::new(meta(Some(&p), cfg), &[row]))?,
                Format::Text => {
                    match value {
                        Some(v) => writeln!(em.out, "J_{n}({p}) = {v}")?,
                        None => writeln!(em.out, "J_{n}({p}) = {}exp({:?})", if row.sign < 0 { "-" } else { "" }, ev.log_abs)?,
                    }
                    writeln!(em.out, "log_abs = {}", fmt_opt(log_abs))?;
                    writeln!(em.out, "s_N = {}", fmt_opt(s_n))?;
                }
            }
        }
        Command::Predict { r } => {
            let p = parse_parameter(r)?;
            let reg = classify_with(&p, cfg);
            let v = match p {
                Parameter::Imaginary { .. } => None,
                _ => vhat(p.value(), cfg).ok(),
            };
            #[derive(Serialize)]
            struct PredictRow {
                regime: &'static str,
                limsup: Option<f64>,
                liminf: Option<f64>,
                limit_exists: bool,
                scale: GrowthScale,
                vhat: Option<f64>,
                theta: Option<f64>,
            }
            let row = PredictRow {
                regime: reg.tag.label(),
                limsup: reg.limsup,
                liminf: reg.liminf,
                limit_exists: reg.limit_exists,
                scale: reg.scale,
                vhat: v.map(|g| g.vhat),
                theta: v.map(|g| g.theta_used.value()),
            };
            match format {
                Format::Json => em.json(&Envelope::new(meta(Some(&p), cfg), &[row]))?,
                Format::Csv => {
                    writeln!(em.out, "r_kind,r,regime,limsup,liminf,limit_exists")?;
                    writeln!(
                        em.out,
                        "{},{},{},{},{},{}",
                        p.kind_label(),
                        parameter_text(&p),
                        reg.tag,
                        reg.limsup.map_or(String::new(), |x| format!("{x:?}")),
                        reg.liminf.map_or(String::new(), |x| format!("{x:?}")),
                        reg.limit_exists
                    )?;
                }
                Format::Text => {
                    writeln!(em.out, "parameter: {p}")?;
                    writeln!(em.out, "regime: {}", reg.tag)?;
                    writeln!(em.out, "limsup: {}", fmt_opt(reg.limsup))?;
                    writeln!(em.out, "liminf: {}", fmt_opt(reg.liminf))?;
                    writeln!(em.out, "limit exists: {}", reg.limit_exists)?;
                }
            }
        }
        Command::Scan { r, n, mode, no_cap } => {
            let p = parse_parameter(r)?;
            let ns = parse_n_list(n)?;
            let opts = if *no_cap {
                ScanOptions { full_sum_cap: None }
            } else {
                ScanOptions::default()
            };
            let rows = growth_scan(&p, &ns, (*mode).into(), cfg, &opts)?;
            em.scan(&p, &rows, cfg)?;
            let failed = rows.iter().filter(|r| r.failure.is_some()).count();
            if failed > 0 {
                return Err(CliError::RowsFailed {
                    failed,
                    total: rows.len(),
                });
            }
        }
        Command::Imaginary { s, n } => {
            let p = Parameter::imaginary(*s)?;
            let rows = imaginary_scan(*s, &parse_n_list(n)?, cfg)?;
            em.scan(&p, &rows, cfg)?;
        }
        Command::Verify { suite, r, n, probes, tol } => {
            let reports = suite_reports(*suite, r, *n, probes, *tol, cfg)?;
            em.reports(&reports, cfg)?;
            if reports.iter().any(|r| !r.overall) {
                return Ok(Status::ChecksFailed);
            }
        }
        Command::Table { r, n } => {
            let p = parse_parameter(r)?;
            let rep = sign_table_check(&p, *n)?;
            match format {
                Format::Json => em.json(&Envelope::new(meta(Some(&p), cfg), &rep.table).with("report", serde_json::to_value(&rep)?))?,
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Band {
                        from: String,
                        band: String,
                    }
                    let rows: Vec<Band> = rep
                        .table
                        .iter()
                        .map(|(i, b)| Band {
                            from: i.clone(),
                            band: b.to_string(),
                        })
                        .collect();
                    em.csv(&rows)?;
                }
                Format::Text => {
                    writeln!(em.out, "sign table for {p}, N = {n}")?;
                    for (i, b) in &rep.table {
                        writeln!(em.out, "  from {i:<6} g in {b}")?;
                    }
                    writeln!(em.out, "checked {} factors, exact zeros at {:?}", rep.checked, rep.exact_zeros)?;
                    match &rep.first_violation {
                        Some(v) => writeln!(em.out, "FAIL: g({}) = {:?} outside {}", v.j, v.g, v.expected)?,
                        None => writeln!(em.out, "PASS")?,
                    }
                }
            }
            if !rep.passed {
                return Ok(Status::ChecksFailed);
            }
        }
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("5").unwrap(), vec![5]);
        assert_eq!(parse_n_list("10:40:10,45").unwrap(), vec![10, 20, 30, 40, 45]);
        assert_eq!(parse_n_list("1e3:1e5:x10").unwrap(), vec![1000, 10_000, 100_000]);
        assert_eq!(parse_n_list("1:2:x1.5").unwrap(), vec![1, 2]);
        for bad in ["", "a", "1:2", "1:5:0", "0:5:x2", "3:9:x1", "1.5", "-3"] {
            assert!(parse_n_list(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn rational_text_is_reduced() {
        assert_eq!(parameter_text(&parse_parameter("18/20").unwrap()), "9/10");
        assert_eq!(parameter_text(&parse_parameter("i0.5").unwrap()), "0.5");
    }
}
