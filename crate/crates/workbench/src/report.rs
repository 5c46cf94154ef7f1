//! Check results and the `report.v1` document.

use hofib_core::{Error, Result, Status, ValidationReport};
use serde_json::{json, Value};

use crate::json::Node;
use crate::schema::REPORT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// Schema or resource problem: the check could not be decided.
    Error,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Error => "error",
        }
    }

    fn parse(n: &Node<'_>) -> Result<Self> {
        match n.str()? {
            "pass" => Ok(Outcome::Pass),
            "fail" => Ok(Outcome::Fail),
            "error" => Ok(Outcome::Error),
            other => Err(n.err(format!("unknown status `{other}`"))),
        }
    }
}

/// One decided statement about one subject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: String,
    pub name: String,
    /// The statement the check embodies, in words.
    pub anchor: String,
    pub subject: String,
    pub status: Outcome,
    pub violations: usize,
    pub first_failure: Option<String>,
    /// Sizes and counts worth recording, e.g. simplex counts per dimension.
    pub detail: String,
}

impl Check {
    pub fn new(suite: &str, name: &str, anchor: &str, subject: impl Into<String>) -> Self {
        Check {
            suite: suite.into(),
            name: name.into(),
            anchor: anchor.into(),
            subject: subject.into(),
            status: Outcome::Pass,
            violations: 0,
            first_failure: None,
            detail: String::new(),
        }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    /// Fails with a summary if `ok` is false.
    pub fn expect(mut self, ok: bool, failure: impl FnOnce() -> String) -> Self {
        if !ok && self.status == Outcome::Pass {
            self.status = Outcome::Fail;
            self.violations = self.violations.max(1);
            self.first_failure = Some(failure());
        }
        self
    }

    pub fn with_report(mut self, r: &ValidationReport) -> Self {
        self.absorb(r);
        self
    }

    pub fn absorb(&mut self, r: &ValidationReport) {
        if r.violations.is_empty() {
            return;
        }
        self.violations += r.violations.len();
        let status = match r.status {
            Status::ResourceLimited => Outcome::Error,
            _ if r.has_schema_errors() => Outcome::Error,
            _ => Outcome::Fail,
        };
        self.status = self.status.max(status);
        if self.first_failure.is_none() {
            let v = &r.violations[0];
            let mut s = format!("{} at {}", v.axiom, v.instance);
            if !v.lhs.is_empty() || !v.rhs.is_empty() {
                s.push_str(&format!(": {} vs {}", v.lhs, v.rhs));
            }
            self.first_failure = Some(s);
        }
    }

    pub fn with_violations(self, subject: &str, v: Vec<hofib_core::Violation>) -> Self {
        self.with_report(&ValidationReport::new(subject, v))
    }

    /// Records an error that prevented the check from running.
    pub fn error(mut self, e: &Error) -> Self {
        self.violations += 1;
        self.status = if e.is_schema_or_resource() { Outcome::Error } else { Outcome::Fail };
        if self.first_failure.is_none() {
            self.first_failure = Some(e.to_string());
        }
        self
    }

    fn to_value(&self) -> Value {
        json!({
            "suite": self.suite,
            "name": self.name,
            "anchor": self.anchor,
            "subject": self.subject,
            "status": self.status.as_str(),
            "violations": self.violations,
            "first_failure": self.first_failure,
            "detail": self.detail,
        })
    }

    fn parse(n: &Node<'_>) -> Result<Self> {
        let s = |k: &str| -> Result<String> { Ok(n.field(k)?.str()?.to_string()) };
        Ok(Check {
            suite: s("suite")?,
            name: s("name")?,
            anchor: s("anchor")?,
            subject: s("subject")?,
            status: Outcome::parse(&n.field("status")?)?,
            violations: n.field("violations")?.u64()? as usize,
            first_failure: n.opt_field("first_failure")?.map(|x| x.str().map(str::to_string)).transpose()?,
            detail: s("detail")?,
        })
    }

    /// One line of the human-readable report.
    pub fn line(&self) -> String {
        let mark = match self.status {
            Outcome::Pass => "ok  ",
            Outcome::Fail => "FAIL",
            Outcome::Error => "ERR ",
        };
        let mut s = format!("{mark} {}/{} [{}] {}", self.suite, self.name, self.anchor, self.subject);
        if !self.detail.is_empty() {
            s.push_str(&format!(" ({})", self.detail));
        }
        if let Some(f) = &self.first_failure {
            s.push_str(&format!("\n       {} violation(s); first: {f}", self.violations));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub seed: Option<u64>,
    pub max_cells: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn status(&self) -> Outcome {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Outcome::Pass)
    }

    /// 0 when every check passes, 1 on a failed check, 2 when some check
    /// hit a schema or resource error.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
        }
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.checks.iter().filter(|c| c.status == o).count()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status != Outcome::Pass)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": REPORT,
            "name": format!("run {}", self.suite),
            "suite": self.suite,
            "seed": self.seed,
            "max_cells": self.max_cells,
            "status": self.status().as_str(),
            "summary": {
                "checks": self.checks.len(),
                "passed": self.count(Outcome::Pass),
                "failed": self.count(Outcome::Fail),
                "errors": self.count(Outcome::Error),
            },
            "checks": self.checks.iter().map(Check::to_value).collect::<Vec<_>>(),
        })
    }

    pub(crate) fn parse(n: &Node<'_>) -> Result<Self> {
        let checks = n.field("checks")?.items()?.iter().map(Check::parse).collect::<Result<Vec<_>>>()?;
        let r = Report {
            suite: n.field("suite")?.str()?.to_string(),
            seed: n.opt_field("seed")?.map(|x| x.u64()).transpose()?,
            max_cells: n.field("max_cells")?.u64()? as usize,
            checks,
        };
        // the derived fields must agree with the checks
        let st = n.field("status")?;
        if Outcome::parse(&st)? != r.status() {
            return Err(st.err("status disagrees with the checks"));
        }
        let sm = n.field("summary")?;
        for (k, want) in [("checks", r.checks.len()), ("passed", r.count(Outcome::Pass)), ("failed", r.count(Outcome::Fail)), ("errors", r.count(Outcome::Error))] {
            let f = sm.field(k)?;
            if f.u64()? as usize != want {
                return Err(f.err(format!("summary says {}, checks give {want}", f.u64()?)));
            }
        }
        Ok(r)
    }

    /// Human-readable report: one line per check and a summary.
    pub fn human(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.line());
            s.push('\n');
        }
        s.push_str(&format!(
            "{}: {} checks, {} passed, {} failed, {} errors\n",
            self.suite,
            self.checks.len(),
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Error)
        ));
        if let Some(c) = self.first_failure() {
            s.push_str(&format!(
                "first failure: {}/{} on {}: {}\n",
                c.suite,
                c.name,
                c.subject,
                c.first_failure.as_deref().unwrap_or("")
            ));
        }
        s
    }
}
