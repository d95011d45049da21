//! Batch verification: configurable check suites, machine-readable reports
//! and a small function-spec language for tabulating kernels.

mod errata;
mod funcspec;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use errata::{errata_table, Erratum};
pub use funcspec::{eval_function, parse_points, parse_spec, tabulate, EvalRecord, FunctionKind, FunctionSpec, MAX_TRUNCATION};

/// Named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Clifford,
    Cpoly,
    Hermite,
    Bargmann,
    M2,
    Gn,
    Framework,
    All,
}

impl Suite {
    pub const ALL_SUITES: [Suite; 7] =
        [Suite::Clifford, Suite::Cpoly, Suite::Hermite, Suite::Bargmann, Suite::M2, Suite::Gn, Suite::Framework];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Cpoly => "cpoly",
            Suite::Hermite => "hermite",
            Suite::Bargmann => "bargmann",
            Suite::M2 => "m2",
            Suite::Gn => "gn",
            Suite::Framework => "framework",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL_SUITES
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidConfig(format!("unknown format `{s}`"))),
        }
    }
}

pub const MAX_SUITE_N: usize = 6;
pub const MAX_SUITE_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Algebra dimension; quadrature-backed checks clamp it to their caps.
    pub n: usize,
    pub degree: usize,
    pub quad: usize,
    pub h: f64,
    /// Multiplies every tolerance.
    pub tol_scale: f64,
    pub seed: u64,
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            n: 2,
            degree: 8,
            quad: crate::numerics::DEFAULT_ORDER,
            h: crate::numerics::DEFAULT_STEP,
            tol_scale: 1.0,
            seed: 0,
            format: Format::Json,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n == 0 || self.n > MAX_SUITE_N {
            return bad(format!("n must be in 1..={MAX_SUITE_N}, got {}", self.n));
        }
        if self.degree == 0 || self.degree > MAX_SUITE_DEGREE {
            return bad(format!("degree must be in 1..={MAX_SUITE_DEGREE}, got {}", self.degree));
        }
        if self.quad < 2 || self.quad > crate::numerics::MAX_ORDER {
            return bad(format!("quadrature order must be in 2..={}, got {}", crate::numerics::MAX_ORDER, self.quad));
        }
        if !(self.h > 0.0 && self.h < 1.0) {
            return bad(format!("finite-difference step must be in (0, 1), got {}", self.h));
        }
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return bad(format!("tolerance scale must be positive, got {}", self.tol_scale));
        }
        Ok(())
    }
}

/// One measured check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// Diagnostic checks are reported but never affect the exit status.
    pub diagnostic: bool,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub errata: Vec<Erratum>,
}

impl Report {
    pub fn new(config: SuiteConfig, checks: Vec<CheckRecord>) -> Self {
        Self { suite: config.suite.name().to_string(), config, checks, errata: errata_table() }
    }

    /// Every non-diagnostic check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.diagnostic || c.pass)
    }

    pub fn failed_asserted(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.diagnostic && !c.pass)
    }

    pub fn failed_diagnostic(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.diagnostic && !c.pass)
    }
}

/// Run the configured suite; `All` runs every suite in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    cfg.validate()?;
    let mut out = Vec::new();
    let list: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::ALL_SUITES.to_vec(),
        s => vec![s],
    };
    for s in list {
        out.extend(suites::run(s, cfg)?);
    }
    Ok(out)
}

/// Serialize a report.
pub fn emit_report(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| Error::InvalidConfig(e.to_string())),
        Format::Csv => emit_csv(report),
        Format::Text => Ok(emit_text(report)),
    }
}

fn emit_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidConfig(e.to_string());
    w.write_record(["suite", "id", "params", "residual", "tol", "pass", "diagnostic", "notes"]).map_err(io)?;
    for c in &report.checks {
        let params = serde_json::to_string(&c.params).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        w.write_record([
            report.suite.as_str(),
            &c.id,
            &params,
            &format!("{:e}", c.residual),
            &format!("{:e}", c.tol),
            &c.pass.to_string(),
            &c.diagnostic.to_string(),
            &c.notes,
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidConfig(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidConfig(e.to_string()))
}

fn emit_text(report: &Report) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let asserted = report.checks.iter().filter(|c| !c.diagnostic).count();
    let failed = report.failed_asserted().count();
    let _ = writeln!(s, "suite {}  n={} degree={} quad={} h={:e} tol-scale={} seed={}",
        report.suite, report.config.n, report.config.degree, report.config.quad,
        report.config.h, report.config.tol_scale, report.config.seed);
    for c in &report.checks {
        let status = match (c.diagnostic, c.pass) {
            (true, true) => "info",
            (true, false) => "WARN",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        let _ = write!(s, "{status:<4}  {:<48} residual={:<12.3e} tol={:.1e}", c.id, c.residual, c.tol);
        if !c.notes.is_empty() {
            let _ = write!(s, "  # {}", c.notes);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "\n{} asserted checks, {} failed; {} diagnostic", asserted, failed,
        report.checks.len() - asserted);
    let _ = writeln!(s, "\nErrata ({} entries)", report.errata.len());
    for (i, e) in report.errata.iter().enumerate() {
        let _ = writeln!(s, "{}. {}\n   stated:      {}\n   implemented: {}", i + 1, e.topic, e.stated, e.implemented);
    }
    s
}
