//! Self-describing JSON reports.

use std::time::Instant;

use serde_json::{json, Value};

use crate::config::RunConfig;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug)]
pub struct Report {
    command: String,
    config: Value,
    checks: Vec<Check>,
    details: serde_json::Map<String, Value>,
    started: Instant,
}

/// Relative deviation with an absolute floor for tiny references.
pub fn rel_err(actual: f64, expected: f64) -> f64 {
    let scale = expected.abs().max(1e-300);
    if expected == 0.0 { actual.abs() } else { (actual - expected).abs() / scale }
}

impl Report {
    pub fn new(command: &str, cfg: &RunConfig) -> Self {
        Self {
            command: command.to_string(),
            config: cfg.to_json(),
            checks: Vec::new(),
            details: serde_json::Map::new(),
            started: Instant::now(),
        }
    }

    /// Numeric check: passes when the relative error is within `tol`.
    pub fn close(&mut self, name: impl Into<String>, expected: f64, actual: f64, tol: f64) {
        let pass = rel_err(actual, expected) <= tol;
        self.push(name, json!(expected), json!(actual), tol, pass);
    }

    /// Numeric check against an absolute bound.
    pub fn within(&mut self, name: impl Into<String>, expected: f64, actual: f64, tol: f64) {
        let pass = (actual - expected).abs() <= tol;
        self.push(name, json!(expected), json!(actual), tol, pass);
    }

    /// Exact equality of two displayable values.
    pub fn exact(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let pass = e == a;
        self.push(name, json!(e), json!(a), 0.0, pass);
    }

    pub fn push(&mut self, name: impl Into<String>, expected: Value, actual: Value, tolerance: f64, pass: bool) {
        self.checks.push(Check { name: name.into(), expected, actual, tolerance, pass });
    }

    pub fn detail(&mut self, key: &str, value: Value) {
        self.details.insert(key.to_string(), value);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "tolerance": c.tolerance,
                    "pass": c.pass,
                })
            })
            .collect();
        json!({
            "schema": 1,
            "command": self.command,
            "config": self.config,
            "checks": checks,
            "details": self.details,
            "pass": self.all_pass(),
            "wall_time_s": self.started.elapsed().as_secs_f64(),
        })
    }
}
