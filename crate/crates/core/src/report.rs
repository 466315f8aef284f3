//! Structured documents: verification reports and number formatting shared by
//! the character-table and certificate writers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::numerics::c64;

pub const FORMAT_VERSION: u32 = 1;

/// Rounds to 12 significant digits; values below 1e-12 in magnitude become 0.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-12 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

pub fn complex_pair(z: c64) -> [f64; 2] {
    [round_sig(z.re), round_sig(z.im)]
}

/// Residuals are reported in scientific notation with 3 significant digits,
/// which keeps reports byte-stable across harmless last-bit differences.
pub fn round_residual(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.2e}").parse().expect("formatted float")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format_version: u32,
    pub suite: String,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    /// Wall time; excluded from the structured document so identical runs
    /// produce identical bytes.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            format_version: FORMAT_VERSION,
            suite: suite.into(),
            parameters: serde_json::Map::new(),
            checks: Vec::new(),
            summary: Summary::default(),
            elapsed_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("serialisable"));
        self
    }

    /// Records a check that passes iff `ok`.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, residual: f64, detail: impl Into<String>) -> bool {
        self.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: round_residual(residual),
            detail: detail.into(),
        });
        ok
    }

    /// Passes iff `residual <= tol` (and is finite).
    pub fn bound(&mut self, name: impl Into<String>, residual: f64, tol: f64) -> bool {
        let ok = residual.is_finite() && residual <= tol;
        self.check(name, ok, residual, format!("tol {tol:e}"))
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(Check { name: name.into(), status: Status::Skip, residual: 0.0, detail: detail.into() });
    }

    pub fn push(&mut self, check: Check) {
        match check.status {
            Status::Pass => self.summary.passed += 1,
            Status::Fail => self.summary.failed += 1,
            Status::Skip => self.summary.skipped += 1,
        }
        self.checks.push(check);
    }

    /// Appends all checks of `other`, prefixing names with its suite.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.push(c);
        }
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).filter(|r| r.is_finite()).fold(0.0, f64::max)
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {}", self.suite);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = writeln!(s, "[{tag}] {} residual={:.2e} {}", c.name, c.residual, c.detail);
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped; max residual {:.2e}; {} ms",
            self.summary.passed,
            self.summary.failed,
            self.summary.skipped,
            self.max_residual(),
            self.elapsed_ms
        );
        s
    }
}
