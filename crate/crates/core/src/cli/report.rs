use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::numerics::{Axis, Grid2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One verdict: a residual compared against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Trapezoid-weighted L2 norm of the residual field, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l2: Option<f64>,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridInfo {
    pub u: Axis,
    pub v: Axis,
}

impl<T> From<&Grid2D<T>> for GridInfo {
    fn from(g: &Grid2D<T>) -> Self {
        Self { u: g.u, v: g.v }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

/// The JSON document written next to every command's outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Every tolerance a check used, by check name.
    pub tolerances: BTreeMap<String, f64>,
    pub grid: Option<GridInfo>,
    /// Classification outcomes and reported values that carry no verdict.
    pub info: BTreeMap<String, Value>,
    pub outputs: Vec<String>,
    pub error: Option<ErrorRecord>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            pass: true,
            checks: Vec::new(),
            tolerances: BTreeMap::new(),
            grid: None,
            info: BTreeMap::new(),
            outputs: Vec::new(),
            error: None,
        }
    }

    pub fn info(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.info.insert(key.into(), v);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn finish(&mut self) {
        self.pass = self.error.is_none() && self.checks.iter().all(|c| c.pass);
    }
}

/// Collects checks into a report, resolving each tolerance from the document
/// overrides, then `CHEBYLIFT_TOL` for headline checks, then the default.
#[derive(Debug, Clone)]
pub struct Checker {
    pub report: RunReport,
    overrides: BTreeMap<String, f64>,
    env: Option<f64>,
}

impl Checker {
    pub fn new(command: &str, overrides: BTreeMap<String, f64>, env: Option<f64>) -> Self {
        Self { report: RunReport::new(command), overrides, env }
    }

    fn tolerance(&self, name: &str, default: f64, headline: bool) -> f64 {
        match (self.overrides.get(name), headline) {
            (Some(&t), _) => t,
            (None, true) => self.env.unwrap_or(default),
            (None, false) => default,
        }
    }

    pub fn resolve(&self, name: &str, default: f64) -> f64 {
        self.tolerance(name, default, false)
    }

    pub fn resolve_headline(&self, name: &str, default: f64) -> f64 {
        self.tolerance(name, default, true)
    }

    fn push(&mut self, name: &str, value: f64, l2: Option<f64>, tolerance: f64, comparison: Comparison) -> bool {
        let pass = match comparison {
            Comparison::AtMost => value <= tolerance,
            Comparison::AtLeast => value >= tolerance,
        };
        self.report.tolerances.insert(name.into(), tolerance);
        self.report.checks.push(Check { name: name.into(), value, l2, tolerance, comparison, pass });
        pass
    }

    pub fn at_most(&mut self, name: &str, value: f64, default: f64) -> bool {
        let t = self.tolerance(name, default, false);
        self.push(name, value, None, t, Comparison::AtMost)
    }

    pub fn at_most_l2(&mut self, name: &str, (sup, l2): (f64, f64), default: f64) -> bool {
        let t = self.tolerance(name, default, false);
        self.push(name, sup, Some(l2), t, Comparison::AtMost)
    }

    /// Like [`Checker::at_most`], but `CHEBYLIFT_TOL` applies.
    pub fn headline(&mut self, name: &str, value: f64, default: f64) -> bool {
        let t = self.tolerance(name, default, true);
        self.push(name, value, None, t, Comparison::AtMost)
    }

    pub fn at_least(&mut self, name: &str, value: f64, default: f64) -> bool {
        let t = self.tolerance(name, default, false);
        self.push(name, value, None, t, Comparison::AtLeast)
    }

    /// A yes/no verdict, stored as a 0/1 residual against tolerance 0.
    pub fn holds(&mut self, name: &str, ok: bool) -> bool {
        self.push(name, if ok { 0.0 } else { 1.0 }, None, 0.0, Comparison::AtMost)
    }

    pub fn info(&mut self, key: &str, value: impl Serialize) {
        self.report.info(key, value);
    }

    pub fn grid<T>(&mut self, g: &Grid2D<T>) {
        self.report.grid = Some(g.into());
    }

    pub fn into_report(mut self) -> RunReport {
        self.report.finish();
        self.report
    }
}
