use std::fmt;

use hoops::format::dump_hoop;
use hoops::FiniteHoop;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Version of the JSON layout below.
pub const SCHEMA: u32 = 1;

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Content hash of the canonical table text.
pub fn fingerprint(h: &FiniteHoop) -> String {
    digest(&dump_hoop(h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The outcome of one command, printable as text or JSON.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub fingerprint: Option<String>,
    pub status: Status,
    pub result: Value,
    pub findings: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            schema: SCHEMA,
            command,
            fingerprint: None,
            status: Status::Pass,
            result: Value::Null,
            findings: Vec::new(),
            text: String::new(),
        }
    }

    /// Record a violated check or a finding; either fails the run.
    pub fn finding(&mut self, message: impl Into<String>) {
        self.findings.push(message.into());
        self.status = Status::Fail;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = self.text.clone();
        for f in &self.findings {
            s.push_str(&format!("finding: {f}\n"));
        }
        s.push_str(match self.status {
            Status::Pass => "status: pass\n",
            Status::Fail => "status: fail\n",
        });
        s
    }
}

/// Errors that end a run with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}
