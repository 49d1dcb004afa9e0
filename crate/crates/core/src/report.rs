//! Verification reports: an ordered list of named checks.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// Could not be decided within the configured bounds.
    Undecided(String),
    /// Reported for information only; never affects the outcome.
    Info(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.checks.push(Check { name: name.into(), verdict });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Verdict::Pass);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Verdict::Fail(detail.into()));
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail());
        }
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}{}", c.name), verdict: c.verdict });
        }
    }

    /// True when no check failed or was left undecided.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.verdict, Verdict::Pass | Verdict::Info(_)))
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| matches!(c.verdict, Verdict::Fail(_)))
    }

    pub fn has_undecided(&self) -> bool {
        self.checks.iter().any(|c| matches!(c.verdict, Verdict::Undecided(_)))
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.verdict)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.verdict {
                Verdict::Pass => writeln!(f, "{}: ok", c.name)?,
                Verdict::Fail(d) => writeln!(f, "{}: FAILED ({d})", c.name)?,
                Verdict::Undecided(d) => writeln!(f, "{}: undecided ({d})", c.name)?,
                Verdict::Info(d) => writeln!(f, "{}: note ({d})", c.name)?,
            }
        }
        Ok(())
    }
}
