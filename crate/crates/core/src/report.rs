//! Machine-readable verification reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;
pub const MAX_FAILURES: usize = 10;

/// Result of one suite, optionally restricted to one chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub chart: Option<usize>,
    pub samples_or_cells: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failures: Vec<String>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn success(&self) -> bool {
        self.failed == 0 && self.samples_or_cells > 0
    }

    /// One human-readable summary line.
    pub fn summary(&self) -> String {
        let chart = self.chart.map(|k| format!(" chart {k}")).unwrap_or_default();
        let status = if self.success() { "PASS" } else { "FAIL" };
        format!(
            "{status} {}{chart}: {}/{} passed ({} ms)",
            self.suite, self.passed, self.samples_or_cells, self.elapsed_ms
        )
    }
}

/// Accumulates pass/fail counts for a suite.
pub struct Tally {
    suite: String,
    chart: Option<usize>,
    passed: usize,
    failed: usize,
    first_failures: Vec<String>,
    notes: Vec<String>,
    start: Instant,
}

impl Tally {
    pub fn new(suite: &str, chart: Option<usize>) -> Self {
        Tally {
            suite: suite.to_string(),
            chart,
            passed: 0,
            failed: 0,
            first_failures: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.fail(describe());
        }
    }

    pub fn pass(&mut self) {
        self.passed += 1;
    }

    pub fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.first_failures.len() < MAX_FAILURES {
            self.first_failures.push(what);
        }
    }

    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn finish(self) -> SuiteReport {
        SuiteReport {
            schema: SCHEMA,
            suite: self.suite,
            chart: self.chart,
            samples_or_cells: self.passed + self.failed,
            passed: self.passed,
            failed: self.failed,
            first_failures: self.first_failures,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            notes: self.notes,
        }
    }
}

/// Every suite of one `verify` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub success: bool,
    pub suites: Vec<SuiteReport>,
}

impl RunReport {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        RunReport { schema: SCHEMA, success: suites.iter().all(SuiteReport::success), suites }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
