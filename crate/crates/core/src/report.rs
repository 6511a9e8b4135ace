//! Machine-readable reports: sectioned checks plus named exact quantities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::document::Exact;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::validation::{Check, Status, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCheck {
    pub section: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Scalar(Exact),
    Vector(Vec<Exact>),
    Matrix(Vec<Vec<Exact>>),
}

impl Quantity {
    pub fn scalar(r: &Rational) -> Self {
        Quantity::Scalar(Exact(r.clone()))
    }

    pub fn vector<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Self {
        Quantity::Vector(xs.into_iter().cloned().map(Exact).collect())
    }

    pub fn matrix(a: &Array2<Rational>) -> Self {
        Quantity::Matrix(a.rows().into_iter().map(|r| r.iter().cloned().map(Exact).collect()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    /// True iff no gating check failed.
    pub passed: bool,
    pub checks: Vec<ReportCheck>,
    pub quantities: BTreeMap<String, Quantity>,
    /// Non-numeric outcomes such as classifications and solver status.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: impl Into<String>, subject: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            subject: subject.into(),
            passed: true,
            checks: Vec::new(),
            quantities: BTreeMap::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, section: &str, check: Check) {
        if check.status == Status::Fail && !check.informational {
            self.passed = false;
        }
        self.checks.push(ReportCheck { section: section.to_string(), check });
    }

    pub fn extend(&mut self, section: &str, report: ValidationReport) {
        for c in report.checks {
            self.push(section, c);
        }
    }

    pub fn quantity(&mut self, name: impl Into<String>, q: Quantity) {
        self.quantities.insert(name.into(), q);
    }

    pub fn label(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.labels.insert(name.into(), value.into());
    }

    pub fn check(&self, section: &str, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.section == section && c.check.name == name).map(|c| &c.check)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportCheck> {
        self.checks.iter().filter(|c| c.check.status == Status::Fail && !c.check.informational)
    }

    /// 0 when every gating check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { path: String::new(), message: e.to_string() })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.subject);
        let mut section = None;
        for c in &self.checks {
            if section != Some(&c.section) {
                let _ = writeln!(out, "[{}]", c.section);
                section = Some(&c.section);
            }
            let status = match c.check.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a ",
            };
            let note = if c.check.informational { " (informational)" } else { "" };
            let _ = write!(out, "  {status} {}{note}", c.check.name);
            if let Some(w) = &c.check.witness {
                let idx: Vec<String> = w.indices.iter().map(|i| i.to_string()).collect();
                let _ = write!(out, " at ({}): {} != {}", idx.join(","), w.lhs, w.rhs);
            }
            out.push('\n');
        }
        if !self.labels.is_empty() {
            out.push_str("[labels]\n");
            for (k, v) in &self.labels {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        if !self.quantities.is_empty() {
            out.push_str("[quantities]\n");
            for (k, q) in &self.quantities {
                match q {
                    Quantity::Scalar(x) => {
                        let _ = writeln!(out, "  {k} = {x}");
                    }
                    Quantity::Vector(v) => {
                        let _ = writeln!(out, "  {k} = ({})", join(v));
                    }
                    Quantity::Matrix(rows) => {
                        let _ = writeln!(out, "  {k} =");
                        for r in rows {
                            let _ = writeln!(out, "    [{}]", join(r));
                        }
                    }
                }
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }
}

fn join(xs: &[Exact]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
