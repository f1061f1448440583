//! Pass/fail reports produced by the verification suites.

use std::fmt;

/// One verified identity: a stable key naming the identity by content, the
/// verdict, and a rendered detail string (the classes involved or the
/// counterexample).
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub key: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(key: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            key: key.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(key: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            key: key.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    pub fn from_eq(key: impl Into<String>, equal: bool, lhs: &str, rhs: &str) -> Self {
        if equal {
            CheckReport::pass(key, format!("both sides equal {lhs}"))
        } else {
            CheckReport::fail(key, format!("left = {lhs}, right = {rhs}"))
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.key,
            self.detail
        )
    }
}

/// True when every report in the slice passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
