//! Schema-versioned verification reports.

use serde::{Deserialize, Serialize};

/// One executed check: a named residual against a tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Worst observed residual, when the check is quantitative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn residual(name: &str, residual: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            pass: residual <= tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    pub fn boolean(name: &str, pass: bool, detail: &str) -> Check {
        Check {
            name: name.into(),
            pass,
            residual: None,
            tolerance: None,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: &str) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

/// A suite report; `pass` holds exactly when every check passes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub v: u32,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>) -> Report {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            v: 1,
            suite: suite.into(),
            seed,
            checks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
