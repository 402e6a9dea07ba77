//! Suite reports with matching text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelIdentity {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Exact residual of a failing check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, detail: detail.into(), residual: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, residual: Option<String>) -> Self {
        Check { name: name.into(), passed: false, detail: detail.into(), residual }
    }

    pub fn from_result(name: impl Into<String>, detail: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name, detail),
            Some(r) => Check::fail(name, detail, Some(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub model: ModelIdentity,
    pub seed: u64,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Wall-clock time; only present when requested, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: &str, model: ModelIdentity, seed: u64) -> Self {
        Report { suite: suite.into(), model, seed, parameters: BTreeMap::new(), checks: Vec::new(), passed: true, elapsed_ms: None }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite: {}", self.suite);
        let _ = writeln!(s, "model: {} (sha256 {})", self.model.name, self.model.sha256);
        let _ = writeln!(s, "seed: {}", self.seed);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "{k}: {v}");
        }
        for c in &self.checks {
            let _ = writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            if let Some(r) = &c.residual {
                let _ = writeln!(s, "     residual: {r}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {ms} ms");
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "result: {} ({} checks, {} failed)", if self.passed { "pass" } else { "fail" }, self.checks.len(), failed);
        s
    }
}
