//! Check reports and their text and JSON renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The derivation stands; a published table or display disagrees.
    DiffReported,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::DiffReported => "DIFF",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    pub summary: String,
    pub details: Value,
    /// Milliseconds, present only when timings are requested.
    pub elapsed: Option<u64>,
    /// Extra lines for the text rendering.
    #[serde(skip)]
    pub lines: Vec<String>,
}

/// What a check body produces before timing and error handling.
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub details: Value,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn new(status: Status, summary: impl Into<String>, details: impl Serialize) -> Self {
        Self {
            status,
            summary: summary.into(),
            details: serde_json::to_value(details).unwrap_or(Value::Null),
            lines: Vec::new(),
        }
    }

    pub fn pass(summary: impl Into<String>, details: impl Serialize) -> Self {
        Self::new(Status::Pass, summary, details)
    }

    /// Pass when `ok`, otherwise fail.
    pub fn verdict(ok: bool, summary: impl Into<String>, details: impl Serialize) -> Self {
        Self::new(if ok { Status::Pass } else { Status::Fail }, summary, details)
    }

    pub fn with_lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }
}

/// Runs one check body. Library errors become a failing report.
pub fn run_check(id: &str, timings: bool, body: impl FnOnce() -> h3_core::Result<Outcome>) -> CheckReport {
    let start = Instant::now();
    let outcome = body().unwrap_or_else(|e| Outcome::new(Status::Fail, e.to_string(), Value::Null));
    CheckReport {
        check_id: id.to_string(),
        status: outcome.status,
        summary: outcome.summary,
        details: outcome.details,
        elapsed: timings.then(|| start.elapsed().as_millis() as u64),
        lines: outcome.lines,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub diff: usize,
}

impl Summary {
    pub fn of(checks: &[CheckReport]) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        Self {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            diff: count(Status::DiffReported),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport<'a> {
    pub config: &'a RunConfig,
    pub checks: &'a [CheckReport],
    pub summary: Summary,
}

impl<'a> RunReport<'a> {
    pub fn new(config: &'a RunConfig, checks: &'a [CheckReport]) -> Self {
        Self {
            config,
            checks,
            summary: Summary::of(checks),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in self.checks {
            let _ = write!(out, "{}  {}: {}", c.status.label(), c.check_id, c.summary);
            if let Some(ms) = c.elapsed {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
            for l in &c.lines {
                let _ = writeln!(out, "      {l}");
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} with reported diffs", s.pass, s.fail, s.diff);
        out
    }
}
