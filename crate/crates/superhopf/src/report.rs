//! Check records and report serialization.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::ground_ring::GroundElem;

/// One verified identity or property.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub indices: Vec<i64>,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub cite: String,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Record {
    /// An equality `lhs = rhs` of ground ring elements.
    pub fn eq(suite: &str, check: &str, indices: &[i64], lhs: &GroundElem, rhs: &GroundElem, cite: &str) -> Self {
        Record {
            suite: suite.into(),
            check: check.into(),
            indices: indices.to_vec(),
            pass: lhs == rhs,
            lhs: lhs.to_json(),
            rhs: rhs.to_json(),
            cite: cite.into(),
            elapsed: Duration::ZERO,
        }
    }

    /// A property that holds or not; `detail` is recorded on the left-hand side.
    pub fn flag(suite: &str, check: &str, indices: &[i64], pass: bool, detail: impl Into<Value>, cite: &str) -> Self {
        Record {
            suite: suite.into(),
            check: check.into(),
            indices: indices.to_vec(),
            pass,
            lhs: detail.into(),
            rhs: Value::Bool(true),
            cite: cite.into(),
            elapsed: Duration::ZERO,
        }
    }

    /// An equality of integers (dimensions, counts).
    pub fn count(suite: &str, check: &str, indices: &[i64], lhs: u64, rhs: u64, cite: &str) -> Self {
        Record {
            suite: suite.into(),
            check: check.into(),
            indices: indices.to_vec(),
            pass: lhs == rhs,
            lhs: json!(lhs),
            rhs: json!(rhs),
            cite: cite.into(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn timed(mut self, d: Duration) -> Self {
        self.elapsed = d;
        self
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(records: Vec<Record>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary { total: records.len(), passed, failed: records.len() - passed };
        Report { records, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Canonical JSON: struct fields in declaration order, no timing data.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w_suite = self.records.iter().map(|r| r.suite.len()).max().unwrap_or(5).max(5);
        let w_check = self.records.iter().map(|r| r.check.chars().count()).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<w_suite$}  {:<w_check$}  {:<14}  {:<4}  reference", "suite", "check", "indices", "ok");
        for r in &self.records {
            let idx = format!("{:?}", r.indices);
            let _ = writeln!(
                out,
                "{:<w_suite$}  {:<w_check$}  {:<14}  {:<4}  {}",
                r.suite,
                r.check,
                idx,
                if r.pass { "PASS" } else { "FAIL" },
                r.cite
            );
            if !r.pass {
                let _ = writeln!(out, "    lhs = {}\n    rhs = {}", r.lhs, r.rhs);
            }
        }
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground_ring::Mode;

    #[test]
    fn empty_report_has_zero_summary() {
        let r = Report::new(Vec::new());
        assert!(r.all_passed());
        assert!(r.to_text().contains("0 checks, 0 passed, 0 failed"));
    }

    #[test]
    fn failing_record_keeps_both_sides() {
        let one = GroundElem::one(Mode::Full);
        let q = GroundElem::q(Mode::Full);
        let r = Report::new(vec![Record::eq("s", "c", &[1], &one, &q, "")]);
        assert_eq!(r.summary.failed, 1);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["records"][0]["lhs"], json!([[0, 0, 1]]));
        assert_eq!(v["records"][0]["rhs"], json!([[1, 0, 1]]));
    }
}
