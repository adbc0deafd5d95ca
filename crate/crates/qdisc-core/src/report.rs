//! Verification reports: named check records with pass/fail status, shared
//! by the relation suites and the CLI.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified identity: a stable name, the equation label it reproduces,
/// the outcome, and (on failure) both canonical forms.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: String,
    pub status: Status,
    pub detail: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A named collection of check records with summary counts.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    /// Wall-clock time; not part of the serialized report.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn from_checks(suite: impl Into<String>, checks: Vec<CheckRecord>, elapsed: Duration) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Report { suite: suite.into(), checks, passed, failed, elapsed }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} checks, {} passed, {} failed ({:.2?})",
            self.suite,
            self.checks.len(),
            self.passed,
            self.failed,
            self.elapsed
        )?;
        for check in &self.checks {
            if !check.passed() {
                writeln!(f, "  FAIL {} [{}]: {}", check.name, check.paper_ref, check.detail)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(name: &str, status: Status) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            paper_ref: "(disc)".into(),
            status,
            detail: String::new(),
        }
    }

    #[test]
    fn counts_match_records() {
        let report = Report::from_checks(
            "demo",
            vec![record("a", Status::Pass), record("b", Status::Fail), record("c", Status::Pass)],
            Duration::from_millis(5),
        );
        assert_eq!(report.passed, 2);
        assert_eq!(report.failed, 1);
        assert!(!report.all_passed());
        assert!(report.find("b").is_some());
        assert!(report.find("missing").is_none());
    }

    #[test]
    fn serializes_without_elapsed() {
        let report = Report::from_checks("demo", vec![record("a", Status::Pass)], Duration::ZERO);
        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("elapsed").is_none());
        assert_eq!(json["suite"], "demo");
        assert_eq!(json["checks"][0]["status"], "pass");
        assert_eq!(json["passed"], 1);
        assert_eq!(json["failed"], 0);
    }
}
