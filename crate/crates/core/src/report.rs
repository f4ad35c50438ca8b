//! Machine-readable run reports: `{command, params, findings, failures, timing}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One counterexample or broken check, with enough to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    /// Rewiring in `v|del|add` form, when one is involved.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
}

impl Failure {
    pub fn new(check: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            message: message.into(),
            graph6: None,
            spec: None,
        }
    }

    pub fn with_graph(mut self, g6: impl Into<String>) -> Self {
        self.graph6 = Some(g6.into());
        self
    }

    pub fn with_spec(mut self, spec: impl Into<String>) -> Self {
        self.spec = Some(spec.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub findings: Vec<Value>,
    pub failures: Vec<Failure>,
    /// Wall-clock seconds, or null when the run should be reproducible byte for byte.
    pub timing: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value) -> Self {
        Self {
            command: command.into(),
            params,
            findings: Vec::new(),
            failures: Vec::new(),
            timing: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
