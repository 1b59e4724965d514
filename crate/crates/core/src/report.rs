//! Pass/fail reports for the executable structure lemmas.

use serde::{Deserialize, Serialize};

/// One named check with its verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// First counterexample or other diagnostic; absent when passing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An ordered list of check results. Failures are entries, not errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: true,
            detail: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        });
    }

    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check, `PASS name` / `FAIL name: detail`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed {
                out.push_str(&format!("PASS {}\n", c.name));
            } else {
                out.push_str(&format!(
                    "FAIL {}: {}\n",
                    c.name,
                    c.detail.as_deref().unwrap_or("")
                ));
            }
        }
        out
    }
}
