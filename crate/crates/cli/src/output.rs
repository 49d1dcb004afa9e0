use std::io::{self, Write};

use leavitt::report::{Report, Verdict};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

/// One line of output: a computed value or a named check.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Value {
        key: String,
        value: String,
    },
    Check {
        name: String,
        status: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        detail: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Success,
    Undecided,
    Failed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failed => 1,
            Outcome::Undecided => 3,
        }
    }
}

#[derive(Debug, Default)]
pub struct Output {
    records: Vec<Record>,
}

impl Output {
    pub fn value(&mut self, key: &str, value: impl ToString) {
        self.records.push(Record::Value { key: key.into(), value: value.to_string().trim_end().to_string() });
    }

    /// Appends the checks of `report`, prefixing names, and returns the
    /// outcome they imply.
    pub fn report(&mut self, prefix: &str, report: &Report) -> Outcome {
        for c in &report.checks {
            let (status, detail) = match &c.verdict {
                Verdict::Pass => ("pass", None),
                Verdict::Fail(d) => ("fail", Some(d.clone())),
                Verdict::Undecided(d) => ("undecided", Some(d.clone())),
                Verdict::Info(d) => ("info", Some(d.clone())),
            };
            self.records.push(Record::Check { name: format!("{prefix}{}", c.name), status, detail });
        }
        outcome_of(report)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        for r in &self.records {
            match format {
                Format::JsonLines => {
                    serde_json::to_writer(&mut *out, r)?;
                    writeln!(out)?;
                }
                Format::Text => match r {
                    Record::Value { key, value } if value.contains('\n') => {
                        writeln!(out, "{key}:")?;
                        for line in value.lines() {
                            writeln!(out, "  {line}")?;
                        }
                    }
                    Record::Value { key, value } => writeln!(out, "{key}: {value}")?,
                    Record::Check { name, status, detail } => {
                        let word = match *status {
                            "pass" => "ok",
                            "fail" => "FAILED",
                            "undecided" => "undecided",
                            _ => "note",
                        };
                        match detail {
                            Some(d) => writeln!(out, "{name}: {word} ({d})")?,
                            None => writeln!(out, "{name}: {word}")?,
                        }
                    }
                },
            }
        }
        Ok(())
    }
}

pub fn outcome_of(report: &Report) -> Outcome {
    if report.first_failure().is_some() {
        Outcome::Failed
    } else if report.has_undecided() {
        Outcome::Undecided
    } else {
        Outcome::Success
    }
}
