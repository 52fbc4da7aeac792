//! Named pass/fail results shared by the verification routines.

use serde::{Deserialize, Serialize};

use crate::golden::GoldenRat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Exact residual, `"0"` when the identity holds.
    pub residual: String,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            residual: if passed { "0".into() } else { "-".into() },
            detail: detail.into(),
        }
    }

    /// Passes iff every residual component is zero; reports the first nonzero one.
    pub fn residual(name: impl Into<String>, residual: &[GoldenRat], detail: impl Into<String>) -> Check {
        let bad = residual.iter().enumerate().find(|(_, r)| !r.is_zero());
        let (passed, residual, extra) = match bad {
            None => (true, "0".to_string(), String::new()),
            Some((i, r)) => (false, r.to_string(), format!(" (component {i})")),
        };
        Check { name: name.into(), passed, residual, detail: format!("{}{extra}", detail.into()) }
    }
}

/// Collection of checks with an overall verdict.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}
