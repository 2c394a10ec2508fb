//! Suite reports as JSON or as a fixed-width text table.

use std::fmt::Write as _;

use fibrantkit_core::Verdict;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Certified,
    Consistent,
    Refuted,
    SizeCap,
    Skipped,
}

impl Status {
    pub fn from_verdict(v: &Verdict) -> Status {
        match v {
            Verdict::Certified(_) => Status::Certified,
            Verdict::Consistent { .. } => Status::Consistent,
            Verdict::Refuted(_) => Status::Refuted,
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Refuted)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Certified => "certified",
            Status::Consistent => "consistent",
            Status::Refuted => "refuted",
            Status::SizeCap => "size-cap",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: String,
    pub ms: u64,
}

impl Check {
    pub fn new(id: &str, anchor: &str, status: Status, witness: impl Into<String>) -> Check {
        Check { id: id.to_string(), anchor: anchor.to_string(), status, witness: witness.into(), ms: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub fixture: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status.is_failure())
    }

    /// Whether the run matched the fixture's declared expectations.
    pub fn as_expected(&self) -> bool {
        self.check(crate::suite::EXPECT_ID).is_some_and(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = format!("fixture {}\n", self.fixture);
        for c in &self.checks {
            let _ = write!(out, "{:width$}  {:10}  {}", c.id, c.status.as_str(), c.anchor);
            if c.ms > 0 {
                let _ = write!(out, " [{} ms]", c.ms);
            }
            out.push('\n');
            if !c.witness.is_empty() {
                let _ = writeln!(out, "{:width$}  {:10}  {}", "", "", c.witness);
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failing", self.checks.len(), failed);
        out
    }
}
