use serde::Serialize;
use serde_json::Value;

use crate::tables::format_float;

pub const SCHEMA: &str = "photonfield-report/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// A check passes when its residual is strictly below the tolerance, so
    /// a zero tolerance always fails.
    pub fn new(check: &str, params: Value, residual: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            params,
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub scenario: Option<String>,
    pub seed: u64,
    pub tolerance_scale: f64,
    pub pass: bool,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(scenario: Option<String>, seed: u64, tolerance_scale: f64, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.check.cmp(&b.check));
        let pass = records.iter().all(|r| r.pass);
        Self {
            schema: SCHEMA,
            scenario,
            seed,
            tolerance_scale,
            pass,
            records,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check: `PASS name residual=… tolerance=…`.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {} residual={} tolerance={}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                format_float(r.residual),
                format_float(r.tolerance)
            ));
        }
        out
    }
}
