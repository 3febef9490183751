//! Shared JSON report document.

use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), pass: false, witness: Some(witness.into()) }
    }

    /// Passing when `witnesses` is empty, otherwise failing with them joined.
    pub fn from_witnesses(name: impl Into<String>, witnesses: &[String]) -> Self {
        if witnesses.is_empty() {
            Check::pass(name)
        } else {
            Check::fail(name, witnesses.join("; "))
        }
    }
}

/// The document every CLI subcommand writes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub presentation_name: String,
    pub checks: Vec<Check>,
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(presentation_name: impl Into<String>, checks: Vec<Check>, data: serde_json::Value) -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            presentation_name: presentation_name.into(),
            checks,
            data,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
